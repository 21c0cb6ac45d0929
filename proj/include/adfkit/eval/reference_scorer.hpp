#pragma once

#include <complex>
#include <vector>

#include "adfkit/audio/clip.hpp"
#include "adfkit/audio/spectrum.hpp"
#include "adfkit/error.hpp"

namespace adfkit::eval {

/// Frequency splitting "low" from "high" band energy.
inline constexpr double kReferenceSplitHz = 4000.0;

/// Share of spectral energy above kReferenceSplitHz (DC excluded).
/// Returns 0 for a silent clip.
inline double high_band_energy_ratio(const audio::AudioClip& clip) {
  audio::require_valid(clip);
  if (clip.samples.empty()) throw InputError("cannot score an empty clip");
  const std::vector<double> x(clip.samples.begin(), clip.samples.end());
  const std::size_t n = x.size() % 2 == 0 ? x.size() : x.size() + 1;
  std::vector<double> padded(x);
  padded.resize(n, 0.0);
  const auto spec = audio::rfft(padded);
  double hi = 0, total = 0;
  for (std::size_t k = 1; k < spec.size(); ++k) {
    const double f = static_cast<double>(k) * clip.sample_rate_hz / static_cast<double>(n);
    const double e = std::norm(spec[k]);
    total += e;
    if (f > kReferenceSplitHz) hi += e;
  }
  return total > 0 ? hi / total : 0.0;
}

/// Smoke-test backend: 0.01 + 0.98 * (1 - high-band energy share), so the
/// score lies in (0, 1) and rises for low-frequency content. Carries no
/// claim of detection accuracy.
inline double reference_score(const audio::AudioClip& clip) {
  return 0.01 + 0.98 * (1.0 - high_band_energy_ratio(clip));
}

}  // namespace adfkit::eval
