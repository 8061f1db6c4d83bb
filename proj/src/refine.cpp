#include "here/refine.hpp"

#include <Eigen/SVD>

namespace here {

RigidTransform fit_rigid(const CorrespondenceSet& set, std::span<const std::size_t> indices) {
  if (indices.size() < 3) {
    throw RegistrationError(Signal::TooFewInliers,
                            "rigid fit needs 3 pairs, got " + std::to_string(indices.size()));
  }
  Vec3 x_mean = Vec3::Zero();
  Vec3 y_mean = Vec3::Zero();
  for (const auto i : indices) {
    x_mean += set[i].x;
    y_mean += set[i].y;
  }
  x_mean /= static_cast<double>(indices.size());
  y_mean /= static_cast<double>(indices.size());

  Mat3 H = Mat3::Zero();
  for (const auto i : indices) H += (set[i].x - x_mean) * (set[i].y - y_mean).transpose();

  const Eigen::JacobiSVD<Mat3> svd(H, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vec3 sv = svd.singularValues();
  if (!(sv(0) > 0.0) || sv(1) <= 1e-12 * sv(0)) {
    throw RegistrationError(Signal::DegenerateFit, "source points are collinear or coincident");
  }
  const Mat3& U = svd.matrixU();
  const Mat3& V = svd.matrixV();
  Mat3 D = Mat3::Identity();
  if ((V * U.transpose()).determinant() < 0.0) D(2, 2) = -1.0;

  RigidTransform T;
  T.R = V * D * U.transpose();
  T.t = y_mean - T.R * x_mean;
  return T;
}

FinalResult finalize(const CorrespondenceSet& set, const Vec3& t_prime, const Vec3& r_prime,
                     double theta, double xi) {
  FinalResult assembled;
  assembled.transform = {rotation_about(r_prime.normalized(), theta), t_prime};
  assembled.consensus = consensus(assembled.transform, set, xi);

  FinalResult best = assembled;
  const ConsensusSet* members = &assembled.consensus;
  FinalResult fits[2];
  for (auto& fit : fits) {
    try {
      fit.transform = fit_rigid(set, members->indices);
    } catch (const RegistrationError&) {
      break;
    }
    fit.consensus = consensus(fit.transform, set, xi);
    fit.refined = true;
    if (!best.refined || fit.consensus.size() >= best.consensus.size()) best = fit;
    members = &fit.consensus;
  }
  best.consensus.stage = Stage::Final;
  return best;
}

}  // namespace here
