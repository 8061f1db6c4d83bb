#include "here/stabbing.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace here;

TEST(StabLinear, Empty) {
  const auto r = stab_linear({});
  EXPECT_EQ(r.count, 0u);
  EXPECT_TRUE(r.stabbed.empty());
  EXPECT_TRUE(std::isfinite(r.stabber));
}

TEST(StabLinear, Single) {
  const std::vector<Interval> iv{{0.0, 1.0, 7}};
  const auto r = stab_linear(iv);
  EXPECT_EQ(r.count, 1u);
  EXPECT_GE(r.stabber, 0.0);
  EXPECT_LE(r.stabber, 1.0);
  EXPECT_EQ(r.stabbed, (std::vector<std::size_t>{7}));
}

TEST(StabLinear, ThreeIntervals) {
  const std::vector<Interval> iv{{0, 2, 0}, {1, 3, 1}, {5, 6, 2}};
  const auto r = stab_linear(iv);
  EXPECT_EQ(r.count, 2u);
  EXPECT_DOUBLE_EQ(r.stabber, 1.0);
  EXPECT_DOUBLE_EQ(r.region_hi, 2.0);
  EXPECT_EQ(r.stabbed, (std::vector<std::size_t>{0, 1}));
}

TEST(StabLinear, TouchingClosedIntervalsBothCount) {
  const std::vector<Interval> iv{{0, 1, 0}, {1, 2, 1}};
  const auto r = stab_linear(iv);
  EXPECT_EQ(r.count, 2u);
  EXPECT_DOUBLE_EQ(r.stabber, 1.0);
  EXPECT_DOUBLE_EQ(r.region_hi, 1.0);
}

TEST(StabLinear, ZeroWidthInterval) {
  const std::vector<Interval> iv{{0, 4, 0}, {3, 3, 1}, {5, 9, 2}};
  const auto r = stab_linear(iv);
  EXPECT_EQ(r.count, 2u);
  EXPECT_DOUBLE_EQ(r.stabber, 3.0);
}

TEST(StabLinear, TieGoesToSmallestLeftEndpoint) {
  const std::vector<Interval> iv{{4, 5, 0}, {4.5, 6, 1}, {0, 1, 2}, {0.5, 2, 3}};
  const auto r = stab_linear(iv);
  EXPECT_EQ(r.count, 2u);
  EXPECT_DOUBLE_EQ(r.stabber, 0.5);
  EXPECT_EQ(r.stabbed, (std::vector<std::size_t>{2, 3}));
}

TEST(StabLinear, OwnerCountedOnce) {
  const std::vector<Interval> iv{{0, 2, 0}, {1, 3, 0}, {1.5, 4, 1}};
  const auto r = stab_linear(iv);
  EXPECT_EQ(r.count, 2u);
  EXPECT_EQ(r.stabbed, (std::vector<std::size_t>{0, 1}));
}

TEST(StabLinear, MatchesBruteForce) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  std::uniform_int_distribution<int> len(1, 200);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Interval> iv(len(rng));
    for (std::size_t i = 0; i < iv.size(); ++i) {
      double a = u(rng), b = a + 0.5 * u(rng) * u(rng) / 10.0;
      // snap some endpoints to a coarse grid to exercise ties
      if (trial % 3 == 0) {
        a = std::round(a);
        b = std::round(b);
      }
      iv[i] = {a, b, i};
    }
    const auto r = stab_linear(iv);
    ASSERT_EQ(r.count, oracle::max_linear(iv));
    ASSERT_EQ(r.count, r.stabbed.size());
    ASSERT_EQ(oracle::count_linear_at(iv, r.stabber), r.count);
    ASSERT_EQ(oracle::count_linear_at(iv, r.region_mid()), r.count);
    for (const auto o : r.stabbed) ASSERT_TRUE(iv[o].lo <= r.stabber && r.stabber <= iv[o].hi);
  }
}

TEST(StabCircular, WrappingArc) {
  const std::vector<Arc> arcs{{1.5 * kPi, 0.5 * kPi, 0}};
  const auto r = stab_circular(arcs);
  EXPECT_EQ(r.count, 1u);
  EXPECT_TRUE(oracle::arc_contains(arcs[0], r.stabber));
}

TEST(StabCircular, OverlappingPair) {
  const std::vector<Arc> arcs{{0.0, kPi, 0}, {0.5 * kPi, 1.5 * kPi, 1}};
  const auto r = stab_circular(arcs);
  EXPECT_EQ(r.count, 2u);
  EXPECT_GE(r.stabber, 0.5 * kPi);
  EXPECT_LE(r.stabber, kPi);
}

TEST(StabCircular, FullCirclePlusArc) {
  const std::vector<Arc> arcs{Arc::full(0), {2.0, 3.0, 1}};
  const auto r = stab_circular(arcs);
  EXPECT_EQ(r.count, 2u);
  EXPECT_GE(r.region_mid(), 2.0);
  EXPECT_LE(r.region_mid(), 3.0);
}

TEST(StabCircular, WrappedOwnerNotDoubleCounted) {
  // A wrapping arc touches both ends of [0, 2π); it must count once.
  const std::vector<Arc> arcs{{6.0, 0.5, 0}, {0.2, 0.4, 1}};
  const auto r = stab_circular(arcs);
  EXPECT_EQ(r.count, 2u);
  EXPECT_EQ(r.stabbed, (std::vector<std::size_t>{0, 1}));
}

TEST(StabCircular, MatchesBruteForce) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, kTwoPi);
  std::uniform_int_distribution<int> len(1, 150);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Arc> arcs(len(rng));
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      if (trial % 17 == 0 && i == 0) {
        arcs[i] = Arc::full(i);
        continue;
      }
      arcs[i] = {u(rng), u(rng), i};
    }
    const auto r = stab_circular(arcs);
    ASSERT_EQ(r.count, oracle::max_circular(arcs));
    ASSERT_EQ(oracle::count_circular_at(arcs, r.stabber), r.count);
    for (const auto o : r.stabbed) ASSERT_TRUE(oracle::arc_contains(arcs[o], r.stabber));
  }
}

TEST(Arcs, WrapTwoPi) {
  EXPECT_DOUBLE_EQ(wrap_two_pi(-0.5), kTwoPi - 0.5);
  EXPECT_DOUBLE_EQ(wrap_two_pi(kTwoPi + 1.0), 1.0);
  EXPECT_GE(wrap_two_pi(-1e-18), 0.0);
  EXPECT_LT(wrap_two_pi(-1e-18), kTwoPi);
}

TEST(Arcs, ArcAround) {
  EXPECT_TRUE(arc_around(1.0, 4.0, 0).is_full());
  const Arc a = arc_around(0.1, 0.3, 0);
  EXPECT_GT(a.start, a.end);
  EXPECT_TRUE(oracle::arc_contains(a, 0.0));
  EXPECT_TRUE(oracle::arc_contains(a, 0.39));
  EXPECT_FALSE(oracle::arc_contains(a, 0.41));
  EXPECT_NEAR(a.length(), 0.6, 1e-12);
}

TEST(Arcs, CosBandMatchesDirectEvaluation) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-1.3, 1.3), c(0.0, kTwoPi);
  for (int trial = 0; trial < 300; ++trial) {
    double lo = u(rng), hi = u(rng);
    if (lo > hi) std::swap(lo, hi);
    const double center = c(rng);
    std::vector<Arc> arcs;
    append_cos_band_arcs(center, lo, hi, 0, arcs);
    for (int k = 0; k < 720; ++k) {
      const double phi = kTwoPi * k / 720.0;
      const double v = std::cos(phi - center);
      bool in = false;
      for (const auto& a : arcs) in = in || oracle::arc_contains(a, phi);
      if (std::abs(v - lo) < 1e-9 || std::abs(v - hi) < 1e-9) continue;
      ASSERT_EQ(in, v >= lo && v <= hi) << "phi=" << phi << " lo=" << lo << " hi=" << hi;
    }
  }
}

TEST(Arcs, IntersectionMatchesDirectEvaluation) {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> u(0.0, kTwoPi);
  for (int trial = 0; trial < 300; ++trial) {
    const Arc a = trial % 11 == 0 ? Arc::full(3) : Arc{u(rng), u(rng), 3};
    const Arc b = trial % 13 == 0 ? Arc::full(4) : Arc{u(rng), u(rng), 4};
    std::vector<Arc> out;
    append_arc_intersection(a, b, out);
    for (const auto& p : out) EXPECT_EQ(p.owner, 3u);
    for (int k = 0; k < 1000; ++k) {
      const double phi = kTwoPi * (k + 0.5) / 1000.0;
      bool in = false;
      for (const auto& p : out) in = in || oracle::arc_contains(p, phi);
      ASSERT_EQ(in, oracle::arc_contains(a, phi) && oracle::arc_contains(b, phi));
    }
  }
}
