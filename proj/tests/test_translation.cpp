#include "here/translation.hpp"

#include "here/synth.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

using namespace here;

namespace {

std::vector<std::size_t> range(std::size_t lo, std::size_t hi) {
  std::vector<std::size_t> v(hi - lo);
  std::iota(v.begin(), v.end(), lo);
  return v;
}

}  // namespace

TEST(Shell, SurfaceRadii) {
  EXPECT_DOUBLE_EQ(surface_radius(2.0, 0.1, 1, 1), 2.0);
  EXPECT_DOUBLE_EQ(surface_radius(2.0, 0.1, 2, 1), 1.9);
  EXPECT_DOUBLE_EQ(surface_radius(2.0, 0.1, 2, 2), 2.1);
  EXPECT_NEAR(surface_radius(2.0, 0.1, 3, 2), 2.0, 1e-15);
  Correspondence c{Vec3(0.01, 0.0, 0.0), Vec3(1, 2, 3), 0};
  const auto shell = SphericalShell::of(c, 0.05);
  EXPECT_EQ(shell.r_in, 0.0);
  EXPECT_DOUBLE_EQ(shell.r_out, 0.06);
  // the inner surface radius is negative and gets dropped
  const auto surfaces = discretize_shell(c, 0.05, 2);
  ASSERT_EQ(surfaces.size(), 1u);
  EXPECT_DOUBLE_EQ(surfaces[0].radius, 0.06);
}

TEST(Shell, MeridianChord) {
  const SphericalSurface s{Vec3(0, 0, 1), 2.0};
  EXPECT_DOUBLE_EQ(meridian_chord(s, 1.0, 1.0), 0.0);
  // from the equator to the pole: chord of a quarter circle
  EXPECT_NEAR(meridian_chord(s, 1.0, 3.0), 2.0 * std::sqrt(2.0), 1e-12);
  const Branch b{-1.0, 3.0, 0};
  EXPECT_NEAR(branch_radius(s, b), 2.0 * std::sqrt(2.0), 1e-12);
}

TEST(Shell, CircleIntervalsDegenerateAxis) {
  const SphericalSurface s{Vec3::Zero(), 1.0};
  // y on the vertical axis through the centre: distance constant in φ
  const Correspondence hit{Vec3(1.0, 0, 0), Vec3(0, 0, 1.0), 0};
  const auto full = circle_shell_intervals(s, 0.5, hit, 0.01);
  ASSERT_EQ(full.size(), 1u);
  EXPECT_TRUE(full[0].is_full());
  const Correspondence miss{Vec3(3.0, 0, 0), Vec3(0, 0, 1.0), 0};
  EXPECT_TRUE(circle_shell_intervals(s, 0.5, miss, 0.01).empty());
}

TEST(Shell, CircleIntervalsWholeCircle) {
  const SphericalSurface s{Vec3::Zero(), 1.0};
  // shell so thick that every point of the circle is inside
  const Correspondence c{Vec3(1.0, 0, 0), Vec3(0.3, 0, 0), 0};
  const auto arcs = circle_shell_intervals(s, 0.0, c, 2.0);
  ASSERT_EQ(arcs.size(), 1u);
  EXPECT_TRUE(arcs[0].is_full());
}

TEST(Shell, CircleIntervalsMatchResidual) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-1.0, 1.0), pos(0.2, 1.5);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const SphericalSurface s{Vec3(u(rng), u(rng), u(rng)), pos(rng)};
    const double t3 = s.center.z() + 0.95 * s.radius * u(rng);
    const Correspondence c{Vec3(u(rng), u(rng), u(rng)), Vec3(u(rng), u(rng), u(rng)), 0};
    const double thr = 0.05 + 0.3 * pos(rng);
    const auto arcs = circle_shell_intervals(s, t3, c, thr);
    for (int k = 0; k < 4096; ++k) {
      const double phi = kTwoPi * k / 4096.0;
      const double g = std::abs((c.y - s.point(t3, phi)).norm() - c.x.norm());
      if (std::abs(g - thr) <= 1e-9) continue;
      bool in = false;
      for (const auto& a : arcs) in = in || oracle::arc_contains(a, phi);
      ASSERT_EQ(in, g <= thr) << "trial " << trial << " phi " << phi;
      ++checked;
    }
  }
  EXPECT_GT(checked, 1000000);
}

TEST(Bounds, ZeroWidthBranchIsTight) {
  std::mt19937_64 rng(32);
  const auto inst = oracle::planted_surface_instance(rng, 40, 20, 0.01);
  const auto s = discretize_shell(inst[0], 0.05, 1)[0];
  const auto cand = range(1, inst.size());
  const double h = s.center.z() + 0.3 * s.radius;
  const auto bd = compute_bounds({h, h, 0}, s, cand, inst, 0.05);
  EXPECT_EQ(bd.lower, bd.upper);
}

TEST(Bounds, WholeSurfaceInsideShell) {
  const SphericalSurface s{Vec3::Zero(), 0.1};
  CorrespondenceSet set;
  set.push_back(Vec3(1.0, 0, 0), Vec3(0, 0, 0));
  set.push_back(Vec3(1.0, 0, 0), Vec3(0.05, 0, 0));
  const std::vector<std::size_t> cand{1};
  const Branch b{-0.1, 0.1, 0};
  const auto bd = compute_bounds(b, s, cand, set, 1.0);
  EXPECT_EQ(bd.lower, 1u);
  EXPECT_EQ(bd.upper, 1u);
}

TEST(Bounds, OutsideRangeIsZero) {
  const SphericalSurface s{Vec3::Zero(), 0.1};
  CorrespondenceSet set;
  set.push_back(Vec3(1.0, 0, 0), Vec3(0, 0, 0));
  const std::vector<std::size_t> cand{0};
  const auto bd = compute_bounds({0.5, 0.7, 0}, s, cand, set, 1.0);
  EXPECT_EQ(bd.upper, 0u);
}

// upper must dominate the exact optimum anywhere in the branch.
TEST(Bounds, UpperIsSound) {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const auto set = oracle::planted_surface_instance(rng, 40, 15, 0.01);
    const auto s = discretize_shell(set[0], 0.05, 2)[trial % 2];
    const auto cand = range(1, set.size());
    const double a = s.z_lo() + u(rng) * 2.0 * s.radius;
    const double w = 0.2 * u(rng) * s.radius;
    const Branch b{a, std::min(a + w, s.z_hi()), 0};
    const auto bd = compute_bounds(b, s, cand, set, 0.05);
    std::size_t exact = 0;
    for (int k = 0; k <= 200; ++k) {
      const double t3 = b.t3_lo + (b.t3_hi - b.t3_lo) * k / 200.0;
      exact = std::max(exact, stab_circle(s, t3, cand, set, 0.05).count);
    }
    EXPECT_GE(bd.upper, exact);
    EXPECT_LE(bd.lower, exact);
  }
}

TEST(Search, EmptyCandidates) {
  const SphericalSurface s{Vec3::Zero(), 1.0};
  CorrespondenceSet set;
  set.push_back(Vec3::UnitX(), Vec3::Zero());
  const auto r = search_surface(s, {}, set, 0.05, 1e-3);
  EXPECT_EQ(r.count, 0u);
}

TEST(Search, SingleCandidate) {
  const SphericalSurface s{Vec3::Zero(), 1.0};
  CorrespondenceSet set;
  set.push_back(Vec3::UnitX(), Vec3::Zero());
  set.push_back(Vec3(0.5, 0, 0), Vec3(1.2, 0.3, 0.1));
  const std::vector<std::size_t> cand{1};
  const auto r = search_surface(s, cand, set, 0.05, 1e-3);
  EXPECT_EQ(r.count, 1u);
  EXPECT_TRUE(oracle::shell_ok(set[1], r.translation, 0.05));
}

TEST(Search, ConstructedIntersection) {
  // Two shells through a known point on the unit sphere.
  const SphericalSurface s{Vec3::Zero(), 1.0};
  const Vec3 p = Vec3(0.3, -0.5, 0.6).normalized();
  CorrespondenceSet set;
  set.push_back(Vec3::UnitX(), Vec3::Zero());
  const Vec3 y1{1.5, 0.2, -0.4}, y2{-0.8, 1.1, 0.9};
  set.push_back(Vec3((y1 - p).norm(), 0, 0), y1);
  set.push_back(Vec3(0, (y2 - p).norm(), 0), y2);
  const std::vector<std::size_t> cand{1, 2};
  const auto r = search_surface(s, cand, set, 0.02, 1e-3);
  EXPECT_EQ(r.count, 2u);
  EXPECT_TRUE(oracle::shell_ok(set[1], r.translation, 0.02));
  EXPECT_TRUE(oracle::shell_ok(set[2], r.translation, 0.02));
  EXPECT_NEAR(std::abs(r.translation.norm() - 1.0), 0.0, 1e-12);
}

TEST(Search, MatchesDenseGrid) {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 5; ++trial) {
    const auto set = oracle::planted_surface_instance(rng, 50, 20, 0.01);
    const auto s = discretize_shell(set[0], 0.05, 1)[0];
    const auto cand = range(1, set.size());
    const auto r = search_surface(s, cand, set, 0.05, 1e-3);
    const auto grid = oracle::dense_surface_max(s, cand, set, 0.05, 5e-4, 4096);
    EXPECT_EQ(r.count, grid) << "trial " << trial;
    std::size_t direct = 0;
    for (const auto i : cand) direct += oracle::shell_ok(set[i], r.translation, 0.05) ? 1 : 0;
    EXPECT_EQ(direct, r.count);
    EXPECT_EQ(r.consensus.size(), r.count);
  }
}

TEST(Stage1, NoiselessInliersSatisfyShellConstraint) {
  SynthConfig sc;
  sc.n = 200;
  sc.rho = 0.5;
  sc.noise_radius = 0.0;
  sc.seed = 35;
  const auto inst = generate(sc);
  PipelineConfig cfg;
  cfg.xi = 0.02;
  const auto W = build_affinity(inst.set, cfg.xi);
  const auto table = compute_priorities(W);
  const auto r = solve_stage1(inst.set, W, table, cfg);
  EXPECT_GE(r.consensus.size(), inst.inlier_count());
  EXPECT_TRUE(r.consensus.contains(r.sample));
  // with m = 2 the sample's surfaces lie on its shell boundary
  for (const auto i : r.consensus.indices) {
    const double slack = i == r.sample ? 1e-12 : 0.0;
    EXPECT_TRUE(oracle::shell_ok(inst.set[i], r.t, cfg.xi + slack)) << i;
  }
}

TEST(Stage1, ForcedOutlierSamplesDoNotCrash) {
  CorrespondenceSet set;
  std::mt19937_64 rng(36);
  for (int i = 0; i < 30; ++i) set.push_back(uniform_in_ball(rng, 1.0), uniform_in_ball(rng, 5.0));
  PipelineConfig cfg;
  const auto W = build_affinity(set, cfg.xi);
  const auto table = compute_priorities(W);
  const auto r = solve_stage1(set, W, table, cfg);
  EXPECT_GE(r.consensus.size(), 1u);
}

TEST(Stage1, RelaxationOfFullConstraint) {
  SynthConfig sc;
  sc.n = 300;
  sc.rho = 0.8;
  sc.seed = 37;
  const auto inst = generate(sc);
  PipelineConfig cfg;
  const auto W = build_affinity(inst.set, cfg.xi);
  const auto r = solve_stage1(inst.set, W, compute_priorities(W), cfg);
  // for any rotation, full-constraint inliers at t are shell inliers at t
  std::mt19937_64 rng(5);
  for (int k = 0; k < 20; ++k) {
    const RigidTransform T{random_rotation(rng), r.t};
    for (const auto i : consensus(T, inst.set, cfg.xi).indices)
      EXPECT_TRUE(r.consensus.contains(i));
  }
}
