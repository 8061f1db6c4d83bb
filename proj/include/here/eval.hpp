#pragma once

#include "here/core.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace here {

// Geodesic angle between two rotations, degrees in [0, 180].
double rotation_error_deg(const Mat3& R_hat, const Mat3& R_star);
double translation_error(const Vec3& t_hat, const Vec3& t_star);

struct InlierMetrics {
  double precision = 0.0;  // kept true inliers / kept
  double recall = 0.0;     // kept true inliers / true inliers
  double f1 = 0.0;
};

// Empty kept set: precision 1 if there are no true inliers, else 0.
// No true inliers: recall 1.
InlierMetrics inlier_metrics(const ConsensusSet& kept, const std::vector<bool>& true_mask);

struct SuccessThresholds {
  double rotation_deg = 5.0;
  double translation = 0.1;
};

// Strict: both errors below their thresholds.
bool success(double rotation_deg, double translation, const SuccessThresholds& th);

struct RansacResult {
  RigidTransform transform;
  ConsensusSet consensus;
  std::size_t iterations_used = 0;
};

// Plain RANSAC: 3-point least-squares hypotheses, closed consensus at xi,
// best hypothesis refit on its consensus. No local optimization.
// Throws RegistrationError(TooFewCorrespondences) for N < 3.
RansacResult ransac_baseline(const CorrespondenceSet& set, double xi, std::size_t iterations,
                             std::uint64_t seed);

}  // namespace here
