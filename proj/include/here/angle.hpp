#pragma once

// Rotation-angle stage: with t′ and the axis r′ fixed, each correspondence
// admits an arc of angles θ with ‖y_i − t′ − R(θ)x_i‖ ≤ ξ, and one circular
// stabbing picks θ.

#include "here/core.hpp"
#include "here/stabbing.hpp"

#include <cstddef>
#include <optional>
#include <span>

namespace here {

struct AngleInterval {
  enum class Kind { Empty, Full, Arc };

  Kind kind = Kind::Empty;
  double theta_lo = 0.0;  // [0, 2π); theta_lo > theta_hi wraps through 0
  double theta_hi = 0.0;
  std::size_t owner = 0;

  std::optional<here::Arc> arc() const;
};

AngleInterval angle_interval(const Correspondence& c, const Vec3& t_prime, const Vec3& r_prime,
                             double xi);

struct Stage3Result {
  double theta = 0.0;
  ConsensusSet consensus;
  bool fallback = false;
};

// Throws RegistrationError(NoAngle) when I2 is empty or every interval is.
Stage3Result solve_stage3(const ConsensusSet& I2, const Vec3& t_prime, const Vec3& r_prime,
                          const CorrespondenceSet& set, double xi);

// Least-squares angle about r′ over the given members:
// θ = atan2(Σ a⊥·(r′ × x⊥), Σ a⊥·x⊥) with a = y − t′.
double best_fit_angle(std::span<const std::size_t> members, const Vec3& t_prime,
                      const Vec3& r_prime, const CorrespondenceSet& set);

// Keeps I2 and uses best_fit_angle.
Stage3Result stage3_fallback(const ConsensusSet& I2, const Vec3& t_prime, const Vec3& r_prime,
                             const CorrespondenceSet& set);

}  // namespace here
