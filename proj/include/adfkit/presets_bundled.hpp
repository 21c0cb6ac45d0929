#pragma once

// The four training-data compositions shipped with the toolkit.
//
// Iteration 2/3 validation: the quoted MLAAD, CodecFake and Famous Figures
// counts are training portions; their validation share is ceil(train / 4)
// (80-20), and ASVspoof 2019 LA contributes its dev partition
// (2,548 bonafide + 22,296 spoof). With those, the train/val totals come out
// at exactly 108,423 / 45,606.
//
// Iteration 4: the component quotas do not sum to the declared totals
// (207,300 vs 200,000 train; 56,800 vs 56,600 val). Both are kept as given;
// validate_manifest reports the gap as an arithmetic note.

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "adfkit/error.hpp"
#include "adfkit/preset.hpp"

namespace adfkit::presets {

inline constexpr std::string_view kIter1 = R"json({
  "format_version": 1,
  "name": "iter1",
  "iteration": 1,
  "segment_length_s": 4,
  "quotas": [
    {"dataset": "ASVspoof19LA", "label": "bonafide", "split": "train", "count": 2580},
    {"dataset": "ASVspoof19LA", "label": "spoof",    "split": "train", "count": 22800}
  ],
  "declared_totals": {"train_total": 25380, "train_bonafide": 2580, "train_spoof": 22800},
  "training": {"frontend": "none", "backend": "AASIST", "optimizer": "adam", "learning_rate": 1e-6,
               "loss": "bce_class_weighted", "epochs": 50, "augmentation": "rawboost_series"}
})json";

inline constexpr std::string_view kIter23Quotas = R"json(
  "quotas": [
    {"dataset": "ASVspoof19LA", "label": "bonafide", "split": "train", "count": 2580},
    {"dataset": "ASVspoof19LA", "label": "spoof",    "split": "train", "count": 22800},
    {"dataset": "ASVspoof19LA", "label": "bonafide", "split": "val",   "count": 2548},
    {"dataset": "ASVspoof19LA", "label": "spoof",    "split": "val",   "count": 22296},
    {"dataset": "MAILABS", "label": "bonafide", "split": "train", "count": 16000,
     "languages": ["en", "fr", "de", "it", "pl", "ru", "es", "uk"]},
    {"dataset": "MAILABS", "label": "bonafide", "split": "val",   "count": 4000,
     "languages": ["en", "fr", "de", "it", "pl", "ru", "es", "uk"]},
    {"dataset": "MLAAD", "label": "spoof", "split": "train", "count": 47200,
     "languages": ["en", "fr", "de", "it", "pl", "ru", "es", "uk", "hi"]},
    {"dataset": "MLAAD", "label": "spoof", "split": "val",   "count": 11800,
     "languages": ["en", "fr", "de", "it", "pl", "ru", "es", "uk", "hi"]},
    {"dataset": "CodecFakeA2", "label": "spoof", "split": "train", "count": 7109},
    {"dataset": "CodecFakeA2", "label": "spoof", "split": "val",   "count": 1778},
    {"dataset": "FamousFigures", "label": "bonafide", "split": "train", "count": 7200},
    {"dataset": "FamousFigures", "label": "bonafide", "split": "val",   "count": 1800},
    {"dataset": "FamousFigures", "label": "spoof",    "split": "train", "count": 5534},
    {"dataset": "FamousFigures", "label": "spoof",    "split": "val",   "count": 1384}
  ],
  "declared_totals": {"train_total": 108423, "train_bonafide": 25780, "train_spoof": 82643,
                      "val_total": 45606},)json";

inline const std::string kIter2 = std::string(R"json({
  "format_version": 1,
  "name": "iter2",
  "iteration": 2,
  "segment_length_s": 4,)json") + std::string(kIter23Quotas) + R"json(
  "training": {"frontend": "wavlm_large|mae_ast_frame", "backend": "AASIST", "optimizer": "adam",
               "learning_rate": 1e-6, "loss": "bce_class_weighted", "epochs": 50,
               "augmentation": "rawboost_series"}
})json";

inline const std::string kIter3 = std::string(R"json({
  "format_version": 1,
  "name": "iter3",
  "iteration": 3,
  "segment_length_s": 12,)json") + std::string(kIter23Quotas) + R"json(
  "training": {"frontend": "wavlm_large", "backend": "AASIST", "optimizer": "adam",
               "learning_rate": 1e-6, "loss": "bce_class_weighted", "epochs": 50,
               "augmentation": "rawboost_series"}
})json";

inline constexpr std::string_view kIter4 = R"json({
  "format_version": 1,
  "name": "iter4",
  "iteration": 4,
  "segment_length_s": 12,
  "quotas": [
    {"dataset": "SpoofCeleb", "label": "bonafide", "split": "train", "count": 50000},
    {"dataset": "SpoofCeleb", "label": "spoof",    "split": "train", "count": 50000},
    {"dataset": "SpoofCeleb", "label": "bonafide", "split": "val",   "count": 10000},
    {"dataset": "SpoofCeleb", "label": "spoof",    "split": "val",   "count": 10000},
    {"dataset": "MAILABS", "label": "bonafide", "split": "train", "count": 44000,
     "languages": ["en", "fr", "de", "it", "pl", "ru", "es", "uk"]},
    {"dataset": "MAILABS", "label": "bonafide", "split": "val",   "count": 16000,
     "languages": ["en", "fr", "de", "it", "pl", "ru", "es", "uk"]},
    {"dataset": "CodecFakeA2", "label": "spoof", "split": "train", "count": 6500},
    {"dataset": "CodecFakeA2", "label": "spoof", "split": "val",   "count": 1600},
    {"dataset": "FamousFigures", "label": "bonafide", "split": "train", "count": 6400},
    {"dataset": "FamousFigures", "label": "bonafide", "split": "val",   "count": 1600},
    {"dataset": "FamousFigures", "label": "spoof", "split": "train", "count": 6400,
     "source_prefixes": ["donald_trump/", "jd_vance/"]},
    {"dataset": "FamousFigures", "label": "spoof", "split": "val",   "count": 1600,
     "source_prefixes": ["donald_trump/", "jd_vance/"]}
  ],
  "mlaad_rules": [
    {"language": "en", "placement": "split", "min_systems": 36, "val_systems": 7, "train_count": 7000, "val_count": 2000},
    {"language": "uk", "placement": "all_val", "val_count": 5000},
    {"language": "de", "placement": "split", "min_systems": 3, "val_systems": 2, "train_count": 7000, "val_count": 2000},
    {"language": "es", "placement": "split", "min_systems": 3, "val_systems": 2, "train_count": 6000, "val_count": 2000},
    {"language": "fr", "placement": "split", "min_systems": 3, "val_systems": 2, "train_count": 6000, "val_count": 2000},
    {"language": "it", "placement": "split", "min_systems": 3, "val_systems": 2, "train_count": 6000, "val_count": 2000},
    {"language": "pl", "placement": "split", "min_systems": 2, "val_systems": 1, "train_count": 5000, "val_count": 1000},
    {"language": "ru", "placement": "all_train", "train_count": 5000},
    {"language": "hi", "placement": "all_train", "train_count": 2000}
  ],
  "declared_totals": {"train_total": 200000, "train_bonafide": 101200, "train_spoof": 99600,
                      "val_total": 56600, "val_bonafide": 29200, "val_spoof": 27400},
  "training": {"frontend": "wavlm_large|mae_ast_frame", "backend": "AASIST", "optimizer": "adam",
               "learning_rate": 1e-6, "loss": "bce_class_weighted", "epochs": 50,
               "augmentation": "rawboost_series"}
})json";

inline constexpr std::array<std::string_view, 4> kNames = {"iter1", "iter2", "iter3", "iter4"};

inline std::optional<std::string_view> bundled_text(std::string_view name) {
  if (name == "iter1") return kIter1;
  if (name == "iter2") return kIter2;
  if (name == "iter3") return kIter3;
  if (name == "iter4") return kIter4;
  return std::nullopt;
}

inline CompositionPreset bundled(std::string_view name) {
  const auto t = bundled_text(name);
  if (!t) throw InputError("unknown preset \"" + std::string(name) + "\" (expected iter1..iter4)");
  return parse_preset(*t);
}

}  // namespace adfkit::presets
