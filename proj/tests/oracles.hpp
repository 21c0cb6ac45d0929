#pragma once

// Reference computations written independently of the library, used as
// test oracles. Deliberately naive.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <unistd.h>

namespace oracle {

enum class Cls { bona, spoof };

/// Straight confusion counting at a threshold.
inline double balanced_accuracy(const std::vector<double>& s, const std::vector<bool>& bona, double thr) {
  double tp = 0, fn = 0, tn = 0, fp = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const bool accept = s[i] >= thr;
    if (bona[i]) accept ? ++tp : ++fn;
    else accept ? ++fp : ++tn;
  }
  return (tp / (tp + fn) + tn / (tn + fp)) / 2;
}

/// Exhaustive scan: FAR/FRR recounted from scratch at every distinct score
/// and at +inf, then the first crossing is interpolated linearly.
inline double eer_percent(const std::vector<double>& s, const std::vector<bool>& bona) {
  std::vector<double> thr(s);
  std::sort(thr.begin(), thr.end());
  thr.erase(std::unique(thr.begin(), thr.end()), thr.end());
  thr.push_back(std::numeric_limits<double>::infinity());
  double nb = 0, ns = 0;
  for (bool b : bona) b ? ++nb : ++ns;
  double prev_far = 0, prev_frr = 0;
  for (std::size_t t = 0; t < thr.size(); ++t) {
    double fa = 0, fr = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (!bona[i] && s[i] >= thr[t]) ++fa;
      if (bona[i] && s[i] < thr[t]) ++fr;
    }
    const double far = fa / ns, frr = fr / nb;
    if (frr >= far) {
      if (frr == far) return 100 * far;
      // Intersect the segment (prev_far - prev_frr) -> (far - frr) with zero.
      const double a = prev_far - prev_frr, b = far - frr;
      const double u = a / (a - b);
      return 100 * (prev_far + u * (far - prev_far));
    }
    prev_far = far;
    prev_frr = frr;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

/// O(n^2) DFT magnitude at bin k.
inline double dft_magnitude(const std::vector<float>& x, std::size_t k) {
  std::complex<double> acc = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    acc += static_cast<double>(x[i]) * std::polar(1.0, -2 * std::numbers::pi * static_cast<double>(k * i % x.size()) / n);
  return std::abs(acc);
}

/// Argmax bin of the one-sided DFT.
inline std::size_t dft_peak_bin(const std::vector<float>& x) {
  std::size_t best = 0;
  double best_mag = -1;
  for (std::size_t k = 1; k <= x.size() / 2; ++k) {
    const double m = dft_magnitude(x, k);
    if (m > best_mag) best_mag = m, best = k;
  }
  return best;
}

/// Full linear convolution, textbook double loop.
inline std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> y(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) y[i + j] += a[i] * b[j];
  return y;
}

/// Mean silhouette over points with binary labels, all pairs.
inline double silhouette(const std::vector<std::vector<double>>& p, const std::vector<int>& lab) {
  double total = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    double same = 0, other = 0, ns = 0, no = 0;
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (i == j) continue;
      double d = 0;
      for (std::size_t t = 0; t < p[i].size(); ++t) d += (p[i][t] - p[j][t]) * (p[i][t] - p[j][t]);
      d = std::sqrt(d);
      if (lab[i] == lab[j]) same += d, ++ns;
      else other += d, ++no;
    }
    const double a = same / ns, b = other / no;
    total += (b - a) / std::max(a, b);
  }
  return total / static_cast<double>(p.size());
}

// Reference sampler: its own copy of the documented generator and seed
// derivation, used to rebuild manifests without going through the library.
struct Rng {
  std::uint64_t s;
  std::uint64_t next() {
    s += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t lim = (0 - n) % n;
    while (true) {
      const std::uint64_t r = next();
      if (r >= lim) return r % n;
    }
  }
};

inline std::uint64_t derive(std::uint64_t parent, const std::string& name) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : name) h = (h ^ c) * 1099511628211ULL;
  return Rng{parent ^ h}.next();
}

/// Scratch directory removed on destruction.
struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& tag) {
    path = std::filesystem::temp_directory_path() / ("adfkit_" + tag + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  std::filesystem::path operator/(const std::string& s) const { return path / s; }
};

}  // namespace oracle
