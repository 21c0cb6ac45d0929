#pragma once

// RawBoost-style waveform augmentation: linear and non-linear convolutive
// noise, and impulsive signal-dependent additive noise.
//
// Defaults follow the logical-access configuration of the original method
// and are toolkit defaults rather than published values.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include <json.hpp>

#include "adfkit/audio/clip.hpp"
#include "adfkit/audio/spectrum.hpp"
#include "adfkit/error.hpp"
#include "adfkit/rng.hpp"

namespace adfkit::augment {

using audio::AudioClip;

struct ConvolutiveParams {
  int n_bands_min = 1;
  int n_bands_max = 5;
  double center_min_hz = 20;
  double center_max_hz = 8000;
  double notch_min_width_hz = 20;
  double notch_max_width_hz = 1000;
  double band_gain_db_min = -5;
  double band_gain_db_max = 5;
  /// Highest power of the signal that is filtered and mixed in.
  int nonlinearity_order = 5;
  /// Term k is attenuated by (k - 1) * order_gain_decay_db.
  double order_gain_decay_db = 10;
  int kernel_taps = 1024;
};

struct ImpulsiveParams {
  double p_percent_min = 0;
  double p_percent_max = 10;
  double gain_db_min = -5;
  double gain_db_max = 5;
};

enum class Mode { none, convolutive, impulsive, series_conv_then_imp };

struct AugmentationRecipe {
  Mode mode = Mode::series_conv_then_imp;
  ConvolutiveParams conv;
  ImpulsiveParams imp;
  std::uint64_t seed = 0;
};

/// One band of the composite response: gain applied over [lo, hi] Hz.
struct Band {
  double center_hz = 0;
  double width_hz = 0;
  double gain_db = 0;
};

// ---------------------------------------------------------------------------

inline void validate(const ConvolutiveParams& p) {
  if (p.n_bands_min < 1 || p.n_bands_max > 8 || p.n_bands_min > p.n_bands_max)
    throw InputError("n_bands range must satisfy 1 <= min <= max <= 8");
  if (!(p.center_min_hz <= p.center_max_hz)) throw InputError("band center range is not ordered");
  if (!(p.notch_min_width_hz > 0 && p.notch_min_width_hz <= p.notch_max_width_hz))
    throw InputError("notch width range must be positive and ordered");
  if (!(p.band_gain_db_min <= p.band_gain_db_max)) throw InputError("band gain range is not ordered");
  if (p.nonlinearity_order < 1) throw InputError("nonlinearity order must be >= 1");
  if (p.kernel_taps < 2 || p.kernel_taps % 2 != 0) throw InputError("kernel_taps must be even and >= 2");
}

inline void validate(const ImpulsiveParams& p) {
  if (!(p.p_percent_min >= 0 && p.p_percent_min <= p.p_percent_max && p.p_percent_max <= 100))
    throw InputError("p_percent range must satisfy 0 <= min <= max <= 100");
  if (!(p.gain_db_min <= p.gain_db_max)) throw InputError("impulsive gain range is not ordered");
}

inline std::vector<Band> draw_bands(const ConvolutiveParams& p, double sample_rate_hz, SplitMix64& rng) {
  const int n = static_cast<int>(rng.uniform_int(p.n_bands_min, p.n_bands_max));
  const double hi = std::min(p.center_max_hz, sample_rate_hz / 2);
  const double lo = std::min(p.center_min_hz, hi);
  std::vector<Band> bands(static_cast<std::size_t>(n));
  for (auto& b : bands) {
    b.center_hz = rng.uniform(lo, hi);
    b.width_hz = rng.uniform(p.notch_min_width_hz, p.notch_max_width_hz);
    b.gain_db = rng.uniform(p.band_gain_db_min, p.band_gain_db_max);
  }
  return bands;
}

/// Frequency-sampling FIR design. The target magnitude is the product of the
/// band gains on a `taps`-point grid; the zero-phase impulse response is
/// centred at taps/2 and shaped by a periodic Hann window. A flat target
/// (every band at 0 dB) yields an exact unit impulse.
inline std::vector<double> design_kernel(const std::vector<Band>& bands, double sample_rate_hz, int taps) {
  const auto n = static_cast<std::size_t>(taps);
  std::vector<double> kernel(n, 0.0);
  std::vector<double> mag(n / 2 + 1, 1.0);
  for (std::size_t k = 0; k < mag.size(); ++k) {
    const double f = static_cast<double>(k) * sample_rate_hz / static_cast<double>(n);
    for (const auto& b : bands)
      if (std::fabs(f - b.center_hz) <= b.width_hz / 2) mag[k] *= std::pow(10.0, b.gain_db / 20.0);
  }
  const std::size_t centre = n / 2;
  if (std::all_of(mag.begin(), mag.end(), [](double m) { return m == 1.0; })) {
    kernel[centre] = 1.0;
    return kernel;
  }
  std::vector<double> cos_table(n);
  for (std::size_t m = 0; m < n; ++m)
    cos_table[m] = std::cos(2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    // Zero-phase response at lag (i - centre), real and even in frequency.
    const std::size_t lag = (i + n - centre) % n;
    double acc = mag[0];
    for (std::size_t k = 1; k < n / 2; ++k) acc += 2.0 * mag[k] * cos_table[(k * lag) % n];
    acc += mag[n / 2] * cos_table[((n / 2) * lag) % n];
    const double window = 0.5 - 0.5 * cos_table[i];
    kernel[i] = acc / static_cast<double>(n) * window;
  }
  return kernel;
}

/// Length-preserving convolution aligned on the kernel centre:
/// y[t] = sum_m h[m] x[t + centre - m]. Uses the FFT above `fft_threshold`
/// multiply-adds; both routes agree to ~1e-12.
inline std::vector<double> convolve_same(const std::vector<double>& x, const std::vector<double>& h,
                                         std::size_t fft_threshold = std::size_t{1} << 22) {
  if (x.empty()) return {};
  const std::size_t centre = h.size() / 2;
  const auto full = x.size() * h.size() > fft_threshold ? audio::fft_convolve(x, h) : audio::direct_convolve(x, h);
  return std::vector<double>(full.begin() + static_cast<std::ptrdiff_t>(centre),
                             full.begin() + static_cast<std::ptrdiff_t>(centre + x.size()));
}

namespace detail {

inline bool is_unit_impulse(const std::vector<double>& h) {
  std::size_t ones = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (h[i] == 1.0 && i == h.size() / 2) ++ones;
    else if (h[i] != 0.0) return false;
  }
  return ones == 1;
}

}  // namespace detail

/// Filters the signal and its powers x^2..x^K through independently drawn
/// band responses, sums them with per-order decaying gains and rescales the
/// result to the input peak.
inline AudioClip convolutive_noise(const AudioClip& clip, const ConvolutiveParams& params, std::uint64_t seed) {
  audio::require_valid(clip);
  validate(params);
  if (clip.samples.empty()) throw InputError("convolutive noise needs a non-empty clip");
  SplitMix64 rng(seed);

  const std::size_t n = clip.samples.size();
  std::vector<double> x(clip.samples.begin(), clip.samples.end());
  std::vector<double> y(n, 0.0);
  std::vector<double> xk(n);
  for (int k = 1; k <= params.nonlinearity_order; ++k) {
    for (std::size_t i = 0; i < n; ++i) xk[i] = std::pow(x[i], k);
    const auto bands = draw_bands(params, clip.sample_rate_hz, rng);
    const auto h = design_kernel(bands, clip.sample_rate_hz, params.kernel_taps);
    const double gain = std::pow(10.0, -params.order_gain_decay_db * (k - 1) / 20.0);
    if (detail::is_unit_impulse(h)) {
      for (std::size_t i = 0; i < n; ++i) y[i] += gain * xk[i];
    } else {
      const auto filtered = convolve_same(xk, h);
      for (std::size_t i = 0; i < n; ++i) y[i] += gain * filtered[i];
    }
  }

  double in_peak = audio::peak(clip.samples);
  double out_peak = 0;
  for (const double v : y) out_peak = std::max(out_peak, std::fabs(v));
  AudioClip out;
  out.sample_rate_hz = clip.sample_rate_hz;
  out.samples.resize(n);
  const double scale = out_peak > 0 ? in_peak / out_peak : 0.0;
  for (std::size_t i = 0; i < n; ++i) out.samples[i] = static_cast<float>(y[i] * scale);
  return out;
}

/// Perturbs floor(p% * length) positions, p drawn from the configured range:
/// y[i] = x[i] + g * x[i] * u1 * u2 with u1, u2 ~ U(-1, 1) and g drawn from
/// the gain range in dB. Every other position is copied unchanged.
inline AudioClip impulsive_noise(const AudioClip& clip, const ImpulsiveParams& params, std::uint64_t seed) {
  audio::require_valid(clip);
  validate(params);
  SplitMix64 rng(seed);
  const double p = rng.uniform(params.p_percent_min, params.p_percent_max);
  const std::size_t n = clip.samples.size();
  const auto count = static_cast<std::size_t>(std::floor(p * static_cast<double>(n) / 100.0));

  AudioClip out = clip;
  if (count == 0) return out;
  std::vector<std::size_t> positions(n);
  std::iota(positions.begin(), positions.end(), std::size_t{0});
  select_prefix(positions, count, rng);
  for (const std::size_t i : positions) {
    const double g = std::pow(10.0, rng.uniform(params.gain_db_min, params.gain_db_max) / 20.0);
    const double f = (2.0 * rng.unit() - 1.0) * (2.0 * rng.unit() - 1.0);
    const double xi = clip.samples[i];
    out.samples[i] = static_cast<float>(xi + g * xi * f);
  }
  return out;
}

/// Sub-seeds for series mode: convolutive uses `seed`, impulsive `seed ^ 1`.
inline AudioClip apply_recipe(const AudioClip& clip, const AugmentationRecipe& recipe) {
  audio::require_valid(clip);
  AudioClip out;
  switch (recipe.mode) {
    case Mode::none: out = clip; break;
    case Mode::convolutive: out = convolutive_noise(clip, recipe.conv, recipe.seed); break;
    case Mode::impulsive: out = impulsive_noise(clip, recipe.imp, recipe.seed); break;
    case Mode::series_conv_then_imp:
      out = impulsive_noise(convolutive_noise(clip, recipe.conv, recipe.seed), recipe.imp, recipe.seed ^ 1ULL);
      break;
  }
  for (auto& v : out.samples) v = std::isfinite(v) ? std::clamp(v, -1.0f, 1.0f) : 0.0f;
  return out;
}

// ---------------------------------------------------------------------------
// Recipe files (JSON)

inline std::string_view mode_name(Mode m) {
  switch (m) {
    case Mode::none: return "none";
    case Mode::convolutive: return "convolutive";
    case Mode::impulsive: return "impulsive";
    case Mode::series_conv_then_imp: return "series_conv_then_imp";
  }
  return "none";
}

inline AugmentationRecipe recipe_from_json(const nlohmann::json& j) {
  AugmentationRecipe r;
  try {
    const std::string mode = j.value("mode", std::string("series_conv_then_imp"));
    if (mode == "none") r.mode = Mode::none;
    else if (mode == "convolutive") r.mode = Mode::convolutive;
    else if (mode == "impulsive") r.mode = Mode::impulsive;
    else if (mode == "series_conv_then_imp") r.mode = Mode::series_conv_then_imp;
    else throw InputError("unknown augmentation mode \"" + mode + "\"");
    r.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("convolutive")) {
      const auto& c = j.at("convolutive");
      if (c.contains("n_bands_range")) {
        r.conv.n_bands_min = c.at("n_bands_range").at(0).get<int>();
        r.conv.n_bands_max = c.at("n_bands_range").at(1).get<int>();
      }
      if (c.contains("center_range_hz")) {
        r.conv.center_min_hz = c.at("center_range_hz").at(0).get<double>();
        r.conv.center_max_hz = c.at("center_range_hz").at(1).get<double>();
      }
      r.conv.notch_min_width_hz = c.value("notch_min_width_hz", r.conv.notch_min_width_hz);
      r.conv.notch_max_width_hz = c.value("notch_max_width_hz", r.conv.notch_max_width_hz);
      if (c.contains("band_gain_db_range")) {
        r.conv.band_gain_db_min = c.at("band_gain_db_range").at(0).get<double>();
        r.conv.band_gain_db_max = c.at("band_gain_db_range").at(1).get<double>();
      }
      r.conv.nonlinearity_order = c.value("nonlinearity_order", r.conv.nonlinearity_order);
      r.conv.order_gain_decay_db = c.value("order_gain_decay_db", r.conv.order_gain_decay_db);
      r.conv.kernel_taps = c.value("kernel_taps", r.conv.kernel_taps);
    }
    if (j.contains("impulsive")) {
      const auto& c = j.at("impulsive");
      if (c.contains("p_percent_range")) {
        r.imp.p_percent_min = c.at("p_percent_range").at(0).get<double>();
        r.imp.p_percent_max = c.at("p_percent_range").at(1).get<double>();
      }
      if (c.contains("gain_db_range")) {
        r.imp.gain_db_min = c.at("gain_db_range").at(0).get<double>();
        r.imp.gain_db_max = c.at("gain_db_range").at(1).get<double>();
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed augmentation recipe: ") + e.what());
  }
  validate(r.conv);
  validate(r.imp);
  return r;
}

inline nlohmann::json recipe_to_json(const AugmentationRecipe& r) {
  return {{"format_version", 1},
          {"mode", mode_name(r.mode)},
          {"seed", r.seed},
          {"convolutive",
           {{"n_bands_range", {r.conv.n_bands_min, r.conv.n_bands_max}},
            {"center_range_hz", {r.conv.center_min_hz, r.conv.center_max_hz}},
            {"notch_min_width_hz", r.conv.notch_min_width_hz},
            {"notch_max_width_hz", r.conv.notch_max_width_hz},
            {"band_gain_db_range", {r.conv.band_gain_db_min, r.conv.band_gain_db_max}},
            {"nonlinearity_order", r.conv.nonlinearity_order},
            {"order_gain_decay_db", r.conv.order_gain_decay_db},
            {"kernel_taps", r.conv.kernel_taps}}},
          {"impulsive",
           {{"p_percent_range", {r.imp.p_percent_min, r.imp.p_percent_max}},
            {"gain_db_range", {r.imp.gain_db_min, r.imp.gain_db_max}}}}};
}

inline AugmentationRecipe parse_recipe(std::string_view json_text) {
  try {
    return recipe_from_json(nlohmann::json::parse(json_text));
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("recipe is not valid JSON: ") + e.what());
  }
}

}  // namespace adfkit::augment
