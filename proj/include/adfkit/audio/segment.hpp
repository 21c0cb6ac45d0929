#pragma once

#include <cmath>
#include <cstdint>

#include "adfkit/audio/clip.hpp"
#include "adfkit/error.hpp"
#include "adfkit/rng.hpp"

namespace adfkit::audio {

enum class PadMode { repeat, zero };
enum class CropMode { head, seeded_random };

struct SegmentSpec {
  double target_length_s = 4.0;
  PadMode pad_mode = PadMode::repeat;
  CropMode crop_mode = CropMode::head;
  std::uint64_t crop_seed = 0;
};

/// Fixed segment length for a training iteration: 4 s for 1-2, 12 s for 3-4.
inline double segment_seconds_for_iteration(int iteration) { return iteration <= 2 ? 4.0 : 12.0; }

inline std::size_t target_samples(const SegmentSpec& spec, int sample_rate_hz) {
  return static_cast<std::size_t>(std::llround(spec.target_length_s * sample_rate_hz));
}

/// Pads (cyclic tiling or trailing zeros) or crops (head or seeded offset) to
/// exactly target_length_s * sample_rate_hz samples.
inline AudioClip fix_length(const AudioClip& clip, const SegmentSpec& spec) {
  if (clip.sample_rate_hz <= 0) throw InputError("sample rate must be positive");
  if (!(spec.target_length_s > 0) || !std::isfinite(spec.target_length_s))
    throw InputError("segment length must be positive");
  const std::size_t target = target_samples(spec, clip.sample_rate_hz);
  const std::size_t n = clip.samples.size();

  AudioClip out;
  out.sample_rate_hz = clip.sample_rate_hz;
  if (n == target) {
    out.samples = clip.samples;
  } else if (n < target) {
    if (spec.pad_mode == PadMode::repeat) {
      if (n == 0) throw InputError("cannot repeat-pad an empty clip");
      out.samples.resize(target);
      for (std::size_t i = 0; i < target; ++i) out.samples[i] = clip.samples[i % n];
    } else {
      out.samples = clip.samples;
      out.samples.resize(target, 0.0f);
    }
  } else {
    std::size_t offset = 0;
    if (spec.crop_mode == CropMode::seeded_random) {
      SplitMix64 rng(spec.crop_seed);
      offset = static_cast<std::size_t>(rng.below(n - target + 1));
    }
    out.samples.assign(clip.samples.begin() + static_cast<std::ptrdiff_t>(offset),
                       clip.samples.begin() + static_cast<std::ptrdiff_t>(offset + target));
  }
  return out;
}

}  // namespace adfkit::audio
