#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "adfkit/rng.hpp"
#include "adfkit/text.hpp"
#include "oracles.hpp"

using namespace adfkit;

TEST(SplitMix64, MatchesPublishedSequence) {
  SplitMix64 r(1234567);
  EXPECT_EQ(r.next(), 6457827717110365317ULL);
  EXPECT_EQ(r.next(), 3203168211198807973ULL);
  EXPECT_EQ(r.next(), 9817491932198370423ULL);
  EXPECT_EQ(r.next(), 4593380528125082431ULL);
  EXPECT_EQ(r.next(), 16408922859458223821ULL);
}

TEST(SplitMix64, AgreesWithReferenceCopy) {
  for (std::uint64_t seed : {0ULL, 1ULL, 42ULL, ~0ULL}) {
    SplitMix64 a(seed);
    oracle::Rng b{seed};
    for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.below(997), b.below(997));
  }
  EXPECT_EQ(derive_seed(7, "quotas"), oracle::derive(7, "quotas"));
}

TEST(SplitMix64, UnitAndBelowStayInRange) {
  SplitMix64 r(9);
  std::vector<int> hist(10, 0);
  for (int i = 0; i < 100000; ++i) {
    const double u = r.unit();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    ++hist[r.below(10)];
  }
  for (int h : hist) EXPECT_NEAR(h, 10000, 500);
  EXPECT_EQ(r.below(0), 0u);
  EXPECT_EQ(r.below(1), 0u);
  EXPECT_EQ(r.uniform(3.5, 3.5), 3.5);
  for (int i = 0; i < 1000; ++i) {
    const auto v = r.uniform_int(-2, 2);
    ASSERT_TRUE(v >= -2 && v <= 2);
  }
}

TEST(DeriveSeed, SeparatesStreams) {
  std::set<std::uint64_t> seen;
  for (const char* name : {"quotas", "mlaad", "en", "de", "crop:a", "crop:b"}) seen.insert(derive_seed(1, name));
  EXPECT_EQ(seen.size(), 6u);
  EXPECT_NE(derive_seed(1, "en"), derive_seed(2, "en"));
}

TEST(SelectPrefix, IsASubsetWithoutRepeats) {
  std::vector<int> v(100);
  std::iota(v.begin(), v.end(), 0);
  SplitMix64 r(3);
  select_prefix(v, 30, r);
  ASSERT_EQ(v.size(), 30u);
  std::set<int> s(v.begin(), v.end());
  EXPECT_EQ(s.size(), 30u);
  EXPECT_TRUE(std::all_of(v.begin(), v.end(), [](int x) { return x >= 0 && x < 100; }));
}

TEST(SelectPrefix, EachItemEquallyLikely) {
  std::vector<int> counts(10, 0);
  SplitMix64 r(11);
  for (int trial = 0; trial < 20000; ++trial) {
    std::vector<int> v(10);
    std::iota(v.begin(), v.end(), 0);
    select_prefix(v, 3, r);
    for (int x : v) ++counts[x];
  }
  for (int c : counts) EXPECT_NEAR(c, 6000, 300);
}

TEST(Text, SplitsOnTabsKeepingEmptyFields) {
  const auto cols = text::split("a\t\tb\t");
  ASSERT_EQ(cols.size(), 4u);
  EXPECT_EQ(cols[1], "");
  EXPECT_EQ(cols[3], "");
}

TEST(Text, NumbersRoundTrip) {
  for (double v : {0.1, 1e-300, 123456.789, -2.5, 0.0}) EXPECT_EQ(*text::parse_double(text::format_double(v)), v);
  EXPECT_FALSE(text::parse_double("1.5x"));
  EXPECT_FALSE(text::parse_double(""));
  EXPECT_EQ(*text::parse_u64("18446744073709551615"), ~0ULL);
  EXPECT_FALSE(text::parse_u64("-1"));
  EXPECT_EQ(text::fixed(0.8104, 3), "0.810");
  EXPECT_EQ(text::fixed(8.4249, 2), "8.42");
}

TEST(Text, LineIterationSkipsBlankAndStripsCr) {
  std::vector<std::pair<std::size_t, std::string>> got;
  text::for_each_line("a\r\n\nb\n", [&](std::size_t n, std::string_view l) { got.emplace_back(n, std::string(l)); });
  ASSERT_EQ(got.size(), 2u);
  EXPECT_EQ(got[0], (std::pair<std::size_t, std::string>{1, "a"}));
  EXPECT_EQ(got[1], (std::pair<std::size_t, std::string>{3, "b"}));
}
