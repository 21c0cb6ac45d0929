#pragma once

#include <cstdint>
#include <limits>
#include <string_view>
#include <utility>
#include <vector>

namespace adfkit {

/// SplitMix64. The only generator used anywhere in the toolkit, so that
/// every seeded result is reproducible across platforms and standard
/// libraries (std::uniform_int_distribution is implementation-defined).
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [0, bound). Rejection sampling, no modulo bias.
  constexpr std::uint64_t below(std::uint64_t bound) noexcept {
    if (bound <= 1) return 0;
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  /// Uniform double in [0, 1) with 53 random bits.
  constexpr double unit() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi]; returns lo exactly when lo == hi.
  constexpr double uniform(double lo, double hi) noexcept {
    return lo == hi ? lo : lo + (hi - lo) * unit();
  }

  /// Uniform integer in [lo, hi].
  constexpr std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) noexcept {
    if (hi <= lo) return lo;
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

 private:
  std::uint64_t state_;
};

/// Finalizer-quality mix of a single value; used to derive sub-seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  return SplitMix64(x).next();
}

/// FNV-1a over bytes, for stable per-string seed derivation.
constexpr std::uint64_t fnv1a64(std::string_view s) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (const char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

/// Seed for one named stream below a parent seed.
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::string_view name) noexcept {
  return mix64(parent ^ fnv1a64(name));
}

/// Partial Fisher-Yates: moves a uniform sample of k items (without
/// replacement) to the front of `items` and truncates to k. Consumes exactly
/// k draws from `rng`.
template <typename T>
void select_prefix(std::vector<T>& items, std::size_t k, SplitMix64& rng) {
  const std::size_t n = items.size();
  if (k > n) k = n;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
    if (j != i) std::swap(items[i], items[j]);
  }
  items.resize(k);
}

}  // namespace adfkit
