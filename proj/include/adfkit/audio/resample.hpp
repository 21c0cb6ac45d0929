#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <vector>

#include "adfkit/audio/clip.hpp"
#include "adfkit/error.hpp"

namespace adfkit::audio {

/// Kaiser-windowed sinc polyphase resampler parameters.
struct ResamplerDesign {
  static constexpr int kTapsPerPhase = 64;
  /// Cutoff as a fraction of min(input Nyquist, output Nyquist).
  double cutoff_fraction = 0.9;
  double kaiser_beta = 8.0;
};

namespace detail {

/// Phase table is precomputed up to this many phases; beyond that taps are
/// evaluated per output sample.
constexpr std::int64_t kMaxTabulatedPhases = 4096;

inline double sinc(double x) {
  if (x == 0.0) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

/// Normalized taps for input offsets k = -31..32 around a fractional
/// position `frac` in [0, 1). `fc` is the cutoff in cycles per input sample.
inline void design_phase(double frac, double fc, double beta, double* taps) {
  constexpr int half = ResamplerDesign::kTapsPerPhase / 2;
  const double i0_beta = std::cyl_bessel_i(0.0, beta);
  double sum = 0;
  for (int i = 0; i < ResamplerDesign::kTapsPerPhase; ++i) {
    const double t = static_cast<double>(i - half + 1) - frac;  // offsets -31..32
    const double r = t / half;
    const double w = (r * r >= 1.0) ? 0.0 : std::cyl_bessel_i(0.0, beta * std::sqrt(1.0 - r * r)) / i0_beta;
    taps[i] = 2.0 * fc * sinc(2.0 * fc * t) * w;
    sum += taps[i];
  }
  for (int i = 0; i < ResamplerDesign::kTapsPerPhase; ++i) taps[i] /= sum;  // unity DC gain
}

}  // namespace detail

/// Output length for a rate change: round(n * target / source), halves up.
inline std::size_t resampled_length(std::size_t n, int source_hz, int target_hz) {
  const std::uint64_t num = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(target_hz);
  return static_cast<std::size_t>((2 * num + static_cast<std::uint64_t>(source_hz)) / (2 * static_cast<std::uint64_t>(source_hz)));
}

/// Rational polyphase resampling. Returns the input unchanged when the rates
/// already match. Samples outside the clip are treated as zero.
inline AudioClip resample(const AudioClip& clip, int target_hz, const ResamplerDesign& design = {}) {
  if (target_hz <= 0) throw InputError("target sample rate must be positive");
  if (clip.sample_rate_hz <= 0) throw InputError("source sample rate must be positive");
  if (clip.sample_rate_hz == target_hz) return clip;

  const std::int64_t src = clip.sample_rate_hz;
  const std::int64_t g = std::gcd(src, static_cast<std::int64_t>(target_hz));
  const std::int64_t up = target_hz / g;   // phases
  const std::int64_t down = src / g;       // input step per output, in phases
  const double cutoff_hz = design.cutoff_fraction * 0.5 * static_cast<double>(std::min<std::int64_t>(src, target_hz));
  const double fc = cutoff_hz / static_cast<double>(src);

  constexpr int taps_n = ResamplerDesign::kTapsPerPhase;
  constexpr int half = taps_n / 2;
  const bool tabulate = up <= detail::kMaxTabulatedPhases;
  std::vector<double> table;
  if (tabulate) {
    table.resize(static_cast<std::size_t>(up * taps_n));
    for (std::int64_t p = 0; p < up; ++p)
      detail::design_phase(static_cast<double>(p) / static_cast<double>(up), fc, design.kaiser_beta,
                           &table[static_cast<std::size_t>(p * taps_n)]);
  }

  const auto& x = clip.samples;
  const std::int64_t n_in = static_cast<std::int64_t>(x.size());
  AudioClip out;
  out.sample_rate_hz = target_hz;
  out.samples.resize(resampled_length(x.size(), clip.sample_rate_hz, target_hz));

  std::vector<double> scratch(taps_n);
  for (std::size_t j = 0; j < out.samples.size(); ++j) {
    const std::int64_t pos = static_cast<std::int64_t>(j) * down;
    const std::int64_t base = pos / up;
    const std::int64_t phase = pos % up;
    const double* taps;
    if (tabulate) {
      taps = &table[static_cast<std::size_t>(phase * taps_n)];
    } else {
      detail::design_phase(static_cast<double>(phase) / static_cast<double>(up), fc, design.kaiser_beta, scratch.data());
      taps = scratch.data();
    }
    double acc = 0;
    for (int i = 0; i < taps_n; ++i) {
      const std::int64_t k = base + i - half + 1;
      if (k >= 0 && k < n_in) acc += taps[i] * x[static_cast<std::size_t>(k)];
    }
    out.samples[j] = static_cast<float>(acc);
  }
  return out;
}

}  // namespace adfkit::audio
