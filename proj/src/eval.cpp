#include "here/eval.hpp"

#include "here/refine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

namespace here {

double rotation_error_deg(const Mat3& R_hat, const Mat3& R_star) {
  const double c = std::clamp(((R_hat.transpose() * R_star).trace() - 1.0) / 2.0, -1.0, 1.0);
  return std::acos(c) * 180.0 / kPi;
}

double translation_error(const Vec3& t_hat, const Vec3& t_star) { return (t_hat - t_star).norm(); }

InlierMetrics inlier_metrics(const ConsensusSet& kept, const std::vector<bool>& true_mask) {
  const auto n_true =
      static_cast<std::size_t>(std::count(true_mask.begin(), true_mask.end(), true));
  std::size_t hit = 0;
  for (const auto i : kept.indices) {
    if (i < true_mask.size() && true_mask[i]) ++hit;
  }
  InlierMetrics m;
  if (kept.empty()) {
    m.precision = n_true == 0 ? 1.0 : 0.0;
  } else {
    m.precision = static_cast<double>(hit) / static_cast<double>(kept.size());
  }
  m.recall = n_true == 0 ? 1.0 : static_cast<double>(hit) / static_cast<double>(n_true);
  const double s = m.precision + m.recall;
  m.f1 = s > 0.0 ? 2.0 * m.precision * m.recall / s : 0.0;
  return m;
}

bool success(double rotation_deg, double translation, const SuccessThresholds& th) {
  return rotation_deg < th.rotation_deg && translation < th.translation;
}

RansacResult ransac_baseline(const CorrespondenceSet& set, double xi, std::size_t iterations,
                             std::uint64_t seed) {
  const std::size_t n = set.size();
  if (n < 3) {
    throw RegistrationError(Signal::TooFewCorrespondences,
                            "RANSAC needs at least 3 correspondences, got " + std::to_string(n));
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);

  RansacResult best;
  bool have = false;
  for (std::size_t it = 0; it < iterations; ++it) {
    std::array<std::size_t, 3> s{pick(rng), 0, 0};
    do s[1] = pick(rng); while (s[1] == s[0]);
    do s[2] = pick(rng); while (s[2] == s[0] || s[2] == s[1]);

    RigidTransform T;
    try {
      T = fit_rigid(set, s);
    } catch (const RegistrationError&) {
      continue;
    }
    auto c = consensus(T, set, xi);
    if (!have || c.size() > best.consensus.size()) {
      best.transform = T;
      best.consensus = std::move(c);
      have = true;
    }
  }
  best.iterations_used = iterations;
  if (have && best.consensus.size() >= 3) {
    try {
      const auto T = fit_rigid(set, best.consensus.indices);
      best.transform = T;
      best.consensus = consensus(T, set, xi);
    } catch (const RegistrationError&) {
      // keep the minimal-sample hypothesis
    }
  }
  best.consensus.stage = Stage::Final;
  return best;
}

}  // namespace here
