#include "here/eval.hpp"

#include "here/synth.hpp"

#include <gtest/gtest.h>

using namespace here;

TEST(Metrics, RotationError) {
  EXPECT_NEAR(rotation_error_deg(Mat3::Identity(), Mat3::Identity()), 0.0, 1e-6);
  const Mat3 R = rotation_about(Vec3::UnitX(), kPi / 6);
  EXPECT_NEAR(rotation_error_deg(R, Mat3::Identity()), 30.0, 1e-9);
  EXPECT_NEAR(rotation_error_deg(rotation_about(Vec3::UnitY(), kPi), Mat3::Identity()), 180.0,
              1e-6);
  std::mt19937_64 rng(91);
  for (int k = 0; k < 100; ++k) {
    const Mat3 A = random_rotation(rng), B = random_rotation(rng);
    const double e = rotation_error_deg(A, B);
    EXPECT_GE(e, 0.0);
    EXPECT_LE(e, 180.0);
    EXPECT_NEAR(e, rotation_error_deg(B, A), 1e-9);
  }
}

TEST(Metrics, TranslationError) {
  EXPECT_DOUBLE_EQ(translation_error(Vec3(3, 4, 0), Vec3::Zero()), 5.0);
}

TEST(Metrics, InlierMetrics) {
  const std::vector<bool> mask{true, true, false, false, true};
  const auto m = inlier_metrics(ConsensusSet::from_unsorted({0, 2}, Stage::Final), mask);
  EXPECT_DOUBLE_EQ(m.precision, 0.5);
  EXPECT_DOUBLE_EQ(m.recall, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(m.f1, 0.4);
  const auto empty = inlier_metrics({}, mask);
  EXPECT_EQ(empty.precision, 0.0);
  EXPECT_EQ(empty.recall, 0.0);
  EXPECT_EQ(empty.f1, 0.0);
  const std::vector<bool> none(3, false);
  EXPECT_EQ(inlier_metrics({}, none).precision, 1.0);
  EXPECT_EQ(inlier_metrics({}, none).recall, 1.0);
}

TEST(Metrics, SuccessIsStrict) {
  const SuccessThresholds th;
  EXPECT_TRUE(success(4.99, 0.099, th));
  EXPECT_FALSE(success(5.0, 0.05, th));
  EXPECT_FALSE(success(1.0, 0.1, th));
}

TEST(Ransac, RecoversAtLowOutliers) {
  SynthConfig sc;
  sc.n = 300;
  sc.rho = 0.5;
  sc.seed = 92;
  const auto inst = generate(sc);
  const auto r = ransac_baseline(inst.set, 0.05, 1000, 1);
  EXPECT_LT(rotation_error_deg(r.transform.R, inst.truth.R), 2.0);
  EXPECT_LT(translation_error(r.transform.t, inst.truth.t), 0.05);
  EXPECT_EQ(r.iterations_used, 1000u);
  for (const auto i : r.consensus.indices) EXPECT_LE(residual(r.transform, inst.set[i]), 0.05);
}

TEST(Ransac, DeterministicAndGuarded) {
  SynthConfig sc;
  sc.n = 100;
  sc.rho = 0.8;
  sc.seed = 93;
  const auto inst = generate(sc);
  const auto a = ransac_baseline(inst.set, 0.05, 200, 4);
  const auto b = ransac_baseline(inst.set, 0.05, 200, 4);
  EXPECT_EQ(a.consensus.indices, b.consensus.indices);
  CorrespondenceSet two;
  two.push_back(Vec3::Zero(), Vec3::Zero());
  two.push_back(Vec3::UnitX(), Vec3::UnitX());
  EXPECT_THROW(ransac_baseline(two, 0.05, 10, 0), RegistrationError);
}
