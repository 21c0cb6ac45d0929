#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <unsupported/Eigen/FFT>

namespace adfkit::audio {

inline std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

/// One-sided spectrum (bins 0..n/2) of a real signal.
inline std::vector<std::complex<double>> rfft(const std::vector<double>& x) {
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spec;
  fft.SetFlag(Eigen::FFT<double>::HalfSpectrum);
  fft.fwd(spec, x);
  return spec;
}

/// Full linear convolution (length a + b - 1) through zero-padded FFTs.
inline std::vector<double> fft_convolve(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t out_n = a.size() + b.size() - 1;
  const std::size_t n = next_pow2(out_n);
  std::vector<double> pa(a), pb(b);
  pa.resize(n, 0.0);
  pb.resize(n, 0.0);
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> fa, fb;
  fft.fwd(fa, pa);
  fft.fwd(fb, pb);
  for (std::size_t i = 0; i < fa.size(); ++i) fa[i] *= fb[i];
  std::vector<double> y;
  fft.inv(y, fa);
  y.resize(out_n);
  return y;
}

/// Full linear convolution, straightforward double loop.
inline std::vector<double> direct_convolve(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<double> y(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) y[i + j] += a[i] * b[j];
  }
  return y;
}

}  // namespace adfkit::audio
