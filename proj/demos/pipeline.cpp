// In-memory walk through the toolkit: preset -> stub catalog -> manifest ->
// 16 kHz fixed-length segments (RawBoost on train rows) -> reference
// scores -> BA / EER.

#include <iostream>
#include <vector>

#include "adfkit/adfkit.hpp"

int main() {
  using namespace adfkit;

  auto preset = parse_preset(R"({
    "format_version": 1, "name": "demo", "iteration": 2, "segment_length_s": 4,
    "quotas": [
      {"dataset": "ASVspoof19LA", "label": "bonafide", "split": "train", "count": 6},
      {"dataset": "ASVspoof19LA", "label": "spoof",    "split": "train", "count": 6},
      {"dataset": "ASVspoof19LA", "label": "bonafide", "split": "val",   "count": 4},
      {"dataset": "ASVspoof19LA", "label": "spoof",    "split": "val",   "count": 4}
    ]})");

  const Catalog catalog = stub::generate_stub_catalog(preset, {.margin = 0.5, .seed = 1});
  const Manifest manifest = build_manifest(catalog, preset, 42);
  std::cout << render_validation(validate_manifest(manifest, preset));

  augment::AugmentationRecipe recipe;  // series convolutive -> impulsive, default ranges
  std::vector<double> scores;
  std::vector<Label> labels;
  for (const auto& row : manifest.entries) {
    auto clip = audio::resample(stub::synth_clip(row.entry, 1), 16000);
    audio::SegmentSpec spec{audio::segment_seconds_for_iteration(row.iteration)};
    if (row.split == Split::train) {
      spec.crop_mode = audio::CropMode::seeded_random;
      spec.crop_seed = derive_seed(42, row.entry.sample_id);
      clip = audio::fix_length(clip, spec);
      recipe.seed = derive_seed(7, row.entry.sample_id);
      clip = augment::apply_recipe(clip, recipe);
      continue;  // a real run would hand these to a trainer
    }
    clip = audio::fix_length(clip, spec);
    scores.push_back(eval::reference_score(clip));
    labels.push_back(row.entry.label);
  }

  const auto eer = eval::compute_eer(scores, labels);
  std::cout << "val BA @ 0.5: " << eval::balanced_accuracy(scores, labels, 0.5) << "\n"
            << "val EER: " << eer.eer_percent << "%\n";
}
