#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "adfkit/augment/rawboost.hpp"
#include "oracles.hpp"

using namespace adfkit;
using namespace adfkit::augment;

namespace {

AudioClip noise_clip(std::size_t n, std::uint64_t seed, int rate = 16000) {
  SplitMix64 r(seed);
  AudioClip c{rate, std::vector<float>(n)};
  for (auto& v : c.samples) v = static_cast<float>(r.uniform(-0.8, 0.8));
  return c;
}

AudioClip impulse(std::size_t n, std::size_t at, float amp = 1.0f) {
  AudioClip c{16000, std::vector<float>(n, 0.0f)};
  c.samples[at] = amp;
  return c;
}

std::size_t count_diff(const std::vector<float>& a, const std::vector<float>& b) {
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

ConvolutiveParams single_notch() {
  ConvolutiveParams p;
  p.n_bands_min = p.n_bands_max = 1;
  p.center_min_hz = p.center_max_hz = 2000;
  p.notch_min_width_hz = p.notch_max_width_hz = 400;
  p.band_gain_db_min = p.band_gain_db_max = -5;
  p.nonlinearity_order = 1;
  return p;
}

}  // namespace

TEST(Convolutive, SilenceStaysSilent) {
  const AudioClip zero{16000, std::vector<float>(4000, 0.0f)};
  EXPECT_EQ(convolutive_noise(zero, {}, 3).samples, zero.samples);
}

TEST(Convolutive, DeterministicAndSeedSensitive) {
  const auto x = noise_clip(8000, 1);
  const auto a = convolutive_noise(x, {}, 11);
  EXPECT_EQ(a.samples, convolutive_noise(x, {}, 11).samples);
  EXPECT_NE(a.samples, convolutive_noise(x, {}, 12).samples);
  EXPECT_EQ(a.samples.size(), x.samples.size());
}

TEST(Convolutive, OutputPeakMatchesInputPeak) {
  const auto x = noise_clip(8000, 2);
  const auto y = convolutive_noise(x, {}, 5);
  EXPECT_NEAR(audio::peak(y.samples), audio::peak(x.samples), 1e-6);
}

TEST(Convolutive, ImpulseResponseMatchesDirectConvolution) {
  const auto p = single_notch();
  const std::size_t n = 4096, at = 1500;
  const auto y = convolutive_noise(impulse(n, at), p, 21);

  SplitMix64 rng(21);
  const auto bands = draw_bands(p, 16000, rng);
  ASSERT_EQ(bands.size(), 1u);
  EXPECT_EQ(bands[0].center_hz, 2000);
  const auto h = design_kernel(bands, 16000, p.kernel_taps);

  std::vector<double> x(n, 0.0);
  x[at] = 1.0;
  const auto full = oracle::convolve(x, h);
  std::vector<double> want(full.begin() + static_cast<std::ptrdiff_t>(h.size() / 2),
                           full.begin() + static_cast<std::ptrdiff_t>(h.size() / 2 + n));
  double pk = 0;
  for (double v : want) pk = std::max(pk, std::fabs(v));
  for (std::size_t i = 0; i < n; ++i) ASSERT_NEAR(y.samples[i], want[i] / pk, 1e-6) << i;
}

TEST(Convolutive, NonlinearOrdersMatchOracleSum) {
  // Impulse of height a: x^k is an impulse of height a^k, so the output is
  // sum_k decay_k * a^k * h_k, rescaled to peak a.
  ConvolutiveParams p;
  p.nonlinearity_order = 3;
  const std::size_t n = 3000, at = 1200;
  const double a = 0.5;
  const auto y = convolutive_noise(impulse(n, at, static_cast<float>(a)), p, 8);

  SplitMix64 rng(8);
  std::vector<double> want(n, 0.0);
  for (int k = 1; k <= 3; ++k) {
    const auto h = design_kernel(draw_bands(p, 16000, rng), 16000, p.kernel_taps);
    std::vector<double> xk(n, 0.0);
    xk[at] = std::pow(a, k);
    const auto full = oracle::convolve(xk, h);
    const double g = std::pow(10.0, -p.order_gain_decay_db * (k - 1) / 20.0);
    for (std::size_t i = 0; i < n; ++i) want[i] += g * full[i + h.size() / 2];
  }
  double pk = 0;
  for (double v : want) pk = std::max(pk, std::fabs(v));
  for (std::size_t i = 0; i < n; ++i) ASSERT_NEAR(y.samples[i], want[i] * a / pk, 1e-6) << i;
}

TEST(Convolutive, ZeroGainBandsAreIdentityAtOrderOne) {
  ConvolutiveParams p;
  p.band_gain_db_min = p.band_gain_db_max = 0;
  p.nonlinearity_order = 1;
  const auto x = noise_clip(5000, 4);
  EXPECT_EQ(convolutive_noise(x, p, 99).samples, x.samples);
  EXPECT_EQ(design_kernel({{1000, 200, 0.0}}, 16000, 1024), design_kernel({}, 16000, 1024));
}

TEST(Convolutive, KernelMatchesInverseDftOfTarget) {
  // Independent frequency-sampling design: inverse DFT of the target
  // magnitude, circularly shifted to the centre, Hann-windowed.
  const std::vector<Band> bands = {{3000, 800, -4.0}, {500, 100, 3.0}};
  const int taps = 256;
  const auto h = design_kernel(bands, 16000, taps);
  std::vector<double> mag(taps);
  for (int k = 0; k < taps; ++k) {
    const int kk = k <= taps / 2 ? k : taps - k;
    const double f = kk * 16000.0 / taps;
    mag[k] = 1;
    for (const auto& b : bands)
      if (std::fabs(f - b.center_hz) <= b.width_hz / 2) mag[k] *= std::pow(10.0, b.gain_db / 20);
  }
  for (int i = 0; i < taps; ++i) {
    const int lag = i - taps / 2;
    double acc = 0;
    for (int k = 0; k < taps; ++k) acc += mag[k] * std::cos(2 * std::numbers::pi * k * lag / taps);
    const double w = 0.5 - 0.5 * std::cos(2 * std::numbers::pi * i / taps);
    EXPECT_NEAR(h[i], acc / taps * w, 1e-12) << i;
  }
}

TEST(Convolutive, FftAndDirectPathsAgree) {
  const auto x = noise_clip(6000, 6);
  std::vector<double> xd(x.samples.begin(), x.samples.end());
  SplitMix64 rng(3);
  const auto h = design_kernel(draw_bands({}, 16000, rng), 16000, 1024);
  const auto direct = convolve_same(xd, h, ~std::size_t{0});
  const auto fft = convolve_same(xd, h, 0);
  ASSERT_EQ(direct.size(), fft.size());
  for (std::size_t i = 0; i < direct.size(); ++i) ASSERT_NEAR(direct[i], fft[i], 1e-6);
}

TEST(Impulsive, SilenceStaysSilent) {
  const AudioClip zero{16000, std::vector<float>(1000, 0.0f)};
  ImpulsiveParams p;
  p.p_percent_min = p.p_percent_max = 50;
  EXPECT_EQ(impulsive_noise(zero, p, 1).samples, zero.samples);
}

TEST(Impulsive, ZeroRateIsIdentity) {
  ImpulsiveParams p;
  p.p_percent_min = p.p_percent_max = 0;
  const auto x = noise_clip(1000, 7);
  EXPECT_EQ(impulsive_noise(x, p, 1).samples, x.samples);
}

TEST(Impulsive, TenPercentChangesExactlyOneHundredOfOneThousand) {
  ImpulsiveParams p;
  p.p_percent_min = p.p_percent_max = 10;
  const auto x = noise_clip(1000, 8);
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) EXPECT_EQ(count_diff(impulsive_noise(x, p, seed).samples, x.samples), 100u);
}

TEST(Impulsive, PerturbationIsBoundedBySignal) {
  ImpulsiveParams p;
  p.p_percent_min = p.p_percent_max = 100;
  const auto x = noise_clip(2000, 9);
  const auto y = impulsive_noise(x, p, 4);
  const double gmax = std::pow(10.0, p.gain_db_max / 20);
  for (std::size_t i = 0; i < x.samples.size(); ++i)
    ASSERT_LE(std::fabs(y.samples[i] - x.samples[i]), gmax * std::fabs(x.samples[i]) + 1e-7);
}

TEST(Recipe, NoneIsBitExactIdentity) {
  AugmentationRecipe r;
  r.mode = Mode::none;
  const auto x = noise_clip(3000, 10);
  EXPECT_EQ(apply_recipe(x, r).samples, x.samples);
}

TEST(Recipe, SeriesEqualsManualChaining) {
  AugmentationRecipe r;
  r.seed = 1234;
  const auto x = noise_clip(4000, 11);
  const auto chained = impulsive_noise(convolutive_noise(x, r.conv, 1234), r.imp, 1234 ^ 1ULL);
  auto clamped = chained.samples;
  for (auto& v : clamped) v = std::clamp(v, -1.0f, 1.0f);
  EXPECT_EQ(apply_recipe(x, r).samples, clamped);
}

TEST(Recipe, OutputIsClampedAndFinite) {
  AugmentationRecipe r;
  r.mode = Mode::impulsive;
  r.imp.p_percent_min = r.imp.p_percent_max = 100;
  r.imp.gain_db_min = r.imp.gain_db_max = 20;  // |g| = 10, large overshoot
  AudioClip x{16000, std::vector<float>(2000, 0.95f)};
  for (std::uint64_t s = 0; s < 5; ++s) {
    r.seed = s;
    const auto y = apply_recipe(x, r);
    EXPECT_LE(audio::peak(y.samples), 1.0);
    EXPECT_TRUE(audio::all_finite(y));
  }
}

TEST(Recipe, SilenceThroughSeries) {
  AugmentationRecipe r;
  const AudioClip zero{16000, std::vector<float>(4000, 0.0f)};
  EXPECT_EQ(apply_recipe(zero, r).samples, zero.samples);
}

TEST(Recipe, JsonRoundTripAndValidation) {
  AugmentationRecipe r;
  r.mode = Mode::convolutive;
  r.seed = 77;
  r.conv.n_bands_max = 8;
  r.imp.p_percent_max = 20;
  const auto back = recipe_from_json(recipe_to_json(r));
  EXPECT_EQ(back.mode, Mode::convolutive);
  EXPECT_EQ(back.seed, 77u);
  EXPECT_EQ(back.conv.n_bands_max, 8);
  EXPECT_EQ(back.imp.p_percent_max, 20);
  EXPECT_EQ(parse_recipe("{}").mode, Mode::series_conv_then_imp);
  EXPECT_THROW(parse_recipe(R"({"mode": "reverb"})"), InputError);
  EXPECT_THROW(parse_recipe(R"({"impulsive": {"p_percent_range": [5, 1]}})"), InputError);
  EXPECT_THROW(parse_recipe(R"({"convolutive": {"n_bands_range": [1, 9]}})"), InputError);
  EXPECT_THROW(parse_recipe(R"({"convolutive": {"nonlinearity_order": 0}})"), InputError);
  EXPECT_THROW(parse_recipe("[1,"), InputError);
}

TEST(Recipe, LengthPreservedInEveryMode) {
  const auto x = noise_clip(1234, 12);
  for (Mode m : {Mode::none, Mode::convolutive, Mode::impulsive, Mode::series_conv_then_imp}) {
    AugmentationRecipe r;
    r.mode = m;
    EXPECT_EQ(apply_recipe(x, r).samples.size(), x.samples.size());
  }
}
