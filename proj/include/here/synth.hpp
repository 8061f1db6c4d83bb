#pragma once

#include "here/core.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace here {

struct SynthConfig {
  std::size_t n = 1000;
  double rho = 0.0;            // outlier ratio in [0, 1)
  double noise_radius = 0.02;  // inlier noise, uniform in a ball
  double outlier_radius = 5.0; // outlier targets, uniform in a ball at the origin
  double t_max = 1.0;          // translation uniform in a ball of this radius
  std::uint64_t seed = 0;
  // Optional source cloud; when non-empty it replaces the unit-cube points
  // and n is taken from its size.
  std::vector<Vec3> source;

  void validate() const;
};

struct SynthInstance {
  CorrespondenceSet set;
  RigidTransform truth;
  std::vector<bool> inlier_mask;  // true for generated inliers

  std::size_t inlier_count() const;
};

// Haar-uniform rotation from a normalized Gaussian quaternion.
Mat3 random_rotation(std::mt19937_64& rng);
Vec3 uniform_in_ball(std::mt19937_64& rng, double radius);

// Source points uniform in [0, 1]³ (or cfg.source), targets R*x + t* + noise,
// then ⌈ρN⌉ targets replaced by outliers.
SynthInstance generate(const SynthConfig& cfg);

}  // namespace here
