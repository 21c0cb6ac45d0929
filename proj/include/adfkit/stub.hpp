#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <map>
#include <numbers>
#include <string>
#include <tuple>
#include <vector>

#include "adfkit/audio/clip.hpp"
#include "adfkit/catalog.hpp"
#include "adfkit/error.hpp"
#include "adfkit/preset.hpp"
#include "adfkit/rng.hpp"

namespace adfkit::stub {

// Synthetic catalogs with the cardinalities a preset needs. Used by tests,
// demos and the CLI smoke flow; real datasets come in as user catalogs.

struct StubOptions {
  double margin = 0.10;  // extra eligible entries per group, as a fraction
  std::uint64_t seed = 0;
  /// Famous Figures spoof entries for speakers outside any source prefix,
  /// so prefix filters have something to reject.
  std::size_t decoys_per_group = 25;
};

namespace detail {

inline std::string pad_index(std::size_t i, int width = 6) {
  std::string s = std::to_string(i);
  if (static_cast<int>(s.size()) < width) s.insert(0, static_cast<std::size_t>(width) - s.size(), '0');
  return s;
}

inline std::size_t with_margin(std::size_t n, double margin) {
  return static_cast<std::size_t>(std::ceil(static_cast<double>(n) * (1.0 + margin) - 1e-9));
}

inline std::string dataset_slug(Dataset d) {
  switch (d) {
    case Dataset::ASVspoof19LA: return "asv19";
    case Dataset::MAILABS: return "mailabs";
    case Dataset::MLAAD: return "mlaad";
    case Dataset::CodecFakeA2: return "codecfake";
    case Dataset::FamousFigures: return "ff";
    case Dataset::SpoofCeleb: return "spoofceleb";
    case Dataset::Other: return "other";
  }
  return "other";
}

inline std::string bonafide_source(Dataset d) {
  switch (d) {
    case Dataset::ASVspoof19LA: return "vctk";
    case Dataset::MAILABS: return "librivox";
    case Dataset::FamousFigures: return "speeches";
    case Dataset::SpoofCeleb: return "voxceleb1";
    default: return "recordings";
  }
}

class Builder {
 public:
  Builder(Catalog& cat, SplitMix64& rng) : cat_(cat), rng_(rng) {}

  void add(Dataset d, Label l, const std::string& language, const std::string& source) {
    const std::string slug = dataset_slug(d);
    const std::size_t k = next_[slug]++;
    CatalogEntry e;
    e.sample_id = slug + "_" + pad_index(k);
    e.path = slug + "/" + language + "/" + e.sample_id + ".wav";
    e.label = l;
    e.dataset = d;
    e.language = language;
    e.source_system = source;
    e.duration_s = 1.0 + static_cast<double>(rng_.below(40)) / 10.0;
    cat_.entries.push_back(std::move(e));
  }

 private:
  Catalog& cat_;
  SplitMix64& rng_;
  std::map<std::string, std::size_t> next_;
};

}  // namespace detail

/// A catalog on which build_manifest(preset) succeeds for any seed.
///
/// Quota lines sharing a filter are pooled and served with
/// ceil(sum * (1 + margin)) entries. Spoof entries rotate over a handful of
/// synthetic systems; when the filter has source prefixes the system names
/// start with them. MLAAD rules get max(min_systems, val_systems + 1)
/// systems per language, each large enough that any choice of validation
/// systems leaves both sides with enough samples.
inline Catalog generate_stub_catalog(const CompositionPreset& preset, const StubOptions& opt = {}) {
  if (opt.margin < 0) throw InputError("stub margin must be nonnegative");
  Catalog cat;
  SplitMix64 rng(derive_seed(opt.seed, "stub"));
  detail::Builder b(cat, rng);

  using Key = std::tuple<Dataset, Label, std::vector<std::string>, std::vector<std::string>>;
  std::map<Key, std::size_t> groups;
  std::vector<Key> order;
  for (const auto& q : preset.quotas) {
    Key k{q.dataset, q.label, q.languages, q.source_prefixes};
    if (!groups.count(k)) order.push_back(k);
    groups[k] += q.count;
  }

  for (const auto& k : order) {
    const auto& [dataset, label, languages, prefixes] = k;
    const std::size_t n = detail::with_margin(groups[k], opt.margin);
    const std::vector<std::string> langs = languages.empty() ? std::vector<std::string>{"en"} : languages;
    for (std::size_t i = 0; i < n; ++i) {
      const std::string& lang = langs[i % langs.size()];
      std::string source;
      if (label == Label::bonafide) {
        source = detail::bonafide_source(dataset);
      } else {
        const std::string system = "tts_" + detail::pad_index(i % 8, 2);
        source = prefixes.empty() ? system : prefixes[(i / 8) % prefixes.size()] + system;
      }
      b.add(dataset, label, lang, source);
    }
    if (label == Label::spoof && dataset == Dataset::FamousFigures && !prefixes.empty())
      for (std::size_t i = 0; i < opt.decoys_per_group; ++i)
        b.add(dataset, label, langs.front(), "other_speaker_" + std::to_string(i % 3) + "/tts_00");
  }

  for (const auto& r : preset.mlaad_rules) {
    std::size_t systems = std::max<std::size_t>(r.min_systems, 1);
    std::size_t per_system = 0;
    switch (r.placement) {
      case MlaadPlacement::split: {
        systems = std::max(systems, r.val_systems + 1);
        const std::size_t v = std::max<std::size_t>(r.val_systems, 1);
        per_system = std::max((r.val_count + v - 1) / v, (r.train_count + systems - v - 1) / (systems - v));
        break;
      }
      case MlaadPlacement::all_val:
      case MlaadPlacement::all_train: {
        systems = std::max<std::size_t>(systems, 3);
        const std::size_t need = r.placement == MlaadPlacement::all_val ? r.val_count : r.train_count;
        per_system = (need + systems - 1) / systems;
        break;
      }
    }
    per_system = detail::with_margin(per_system, opt.margin);
    for (std::size_t s = 0; s < systems; ++s)
      for (std::size_t i = 0; i < per_system; ++i)
        b.add(Dataset::MLAAD, Label::spoof, r.language, r.language + "_system_" + detail::pad_index(s, 2));
  }
  return cat;
}

/// Deterministic placeholder audio for a catalog entry: a low tone
/// (150-600 Hz) for bonafide and a tone above 4.5 kHz for spoof, at a
/// rate chosen from {16, 22.05, 44.1, 48} kHz so resampling is exercised.
inline audio::AudioClip synth_clip(const CatalogEntry& e, std::uint64_t seed, double default_seconds = 2.0) {
  SplitMix64 rng(derive_seed(seed, e.sample_id));
  static constexpr int kRates[] = {16000, 22050, 44100, 48000};
  const int rate = kRates[rng.below(4)];
  const double f = e.label == Label::bonafide ? rng.uniform(150.0, 600.0) : rng.uniform(4800.0, 6400.0);
  const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const double seconds = e.duration_s.value_or(default_seconds);
  const auto n = static_cast<std::size_t>(std::llround(seconds * rate));
  audio::AudioClip clip{rate, std::vector<float>(n)};
  for (std::size_t i = 0; i < n; ++i)
    clip.samples[i] = static_cast<float>(0.5 * std::sin(2.0 * std::numbers::pi * f * static_cast<double>(i) / rate + phase));
  return clip;
}

}  // namespace adfkit::stub
