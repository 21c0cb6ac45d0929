#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "adfkit/error.hpp"

namespace adfkit::audio {

/// Mono PCM at a known rate. Amplitudes are nominally in [-1, 1].
struct AudioClip {
  int sample_rate_hz = 16000;
  std::vector<float> samples;

  double duration_s() const { return static_cast<double>(samples.size()) / sample_rate_hz; }

  friend bool operator==(const AudioClip&, const AudioClip&) = default;
};

inline bool all_finite(const AudioClip& c) {
  return std::all_of(c.samples.begin(), c.samples.end(), [](float v) { return std::isfinite(v); });
}

inline void require_valid(const AudioClip& c) {
  if (c.sample_rate_hz <= 0) throw InputError("sample rate must be positive");
  if (!all_finite(c)) throw InputError("clip contains non-finite samples");
}

inline double peak(const std::vector<float>& s) {
  double p = 0;
  for (const float v : s) p = std::max(p, static_cast<double>(std::fabs(v)));
  return p;
}

inline double rms(const std::vector<float>& s) {
  if (s.empty()) return 0;
  double acc = 0;
  for (const float v : s) acc += static_cast<double>(v) * v;
  return std::sqrt(acc / static_cast<double>(s.size()));
}

}  // namespace adfkit::audio
