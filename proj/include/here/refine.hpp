#pragma once

#include "here/core.hpp"

#include <cstddef>
#include <span>

namespace here {

// Least-squares rigid fit (centroids, cross-covariance SVD, reflection guard)
// over the selected pairs.
// Throws RegistrationError(TooFewInliers) for fewer than 3 pairs and
// RegistrationError(DegenerateFit) when the two smallest singular values of
// the cross-covariance fall below 1e-12 of the largest.
RigidTransform fit_rigid(const CorrespondenceSet& set, std::span<const std::size_t> indices);

struct FinalResult {
  RigidTransform transform;
  ConsensusSet consensus;
  bool refined = false;  // false: the assembled stage transform was kept
};

// Assembles (r′, θ, t′), recounts on the full set, then fits and recounts
// twice, keeping the fit with the larger consensus. With fewer than 3
// consensus members the assembled transform is returned as is.
FinalResult finalize(const CorrespondenceSet& set, const Vec3& t_prime, const Vec3& r_prime,
                     double theta, double xi);

}  // namespace here
