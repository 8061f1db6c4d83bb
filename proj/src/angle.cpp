#include "here/angle.hpp"

#include <cmath>
#include <vector>

namespace here {

std::optional<Arc> AngleInterval::arc() const {
  switch (kind) {
    case Kind::Empty: return std::nullopt;
    case Kind::Full: return Arc::full(owner);
    case Kind::Arc: return here::Arc{theta_lo, theta_hi, owner};
  }
  return std::nullopt;
}

AngleInterval angle_interval(const Correspondence& c, const Vec3& t_prime, const Vec3& r_prime,
                             double xi) {
  AngleInterval out;
  out.owner = c.index;

  const Vec3 a = c.y - t_prime;
  const Vec3 x_par = r_prime * r_prime.dot(c.x);
  const Vec3 x_perp = c.x - x_par;
  const Vec3 a_par = r_prime * r_prime.dot(a);
  const Vec3 a_perp = a - a_par;

  // ‖a − R(θ)x‖² = base − amp·cos(θ − θ₀)
  const double base = (a_par - x_par).squaredNorm() + a_perp.squaredNorm() + x_perp.squaredNorm();
  const double amp = 2.0 * a_perp.norm() * x_perp.norm();
  const double xi_sq = xi * xi;

  if (amp <= 1e-14 * std::max(1.0, base)) {
    out.kind = base <= xi_sq ? AngleInterval::Kind::Full : AngleInterval::Kind::Empty;
    return out;
  }
  const double c0 = (base - xi_sq) / amp;
  if (c0 > 1.0) return out;
  if (c0 <= -1.0) {
    out.kind = AngleInterval::Kind::Full;
    return out;
  }
  const double theta0 = std::atan2(a_perp.dot(r_prime.cross(x_perp)), a_perp.dot(x_perp));
  const Arc arc = arc_around(theta0, std::acos(c0), c.index);
  if (arc.is_full()) {
    out.kind = AngleInterval::Kind::Full;
    return out;
  }
  out.kind = AngleInterval::Kind::Arc;
  out.theta_lo = arc.start;
  out.theta_hi = arc.end;
  return out;
}

Stage3Result solve_stage3(const ConsensusSet& I2, const Vec3& t_prime, const Vec3& r_prime,
                          const CorrespondenceSet& set, double xi) {
  std::vector<Arc> arcs;
  arcs.reserve(I2.size());
  for (const auto i : I2.indices) {
    if (auto a = angle_interval(set[i], t_prime, r_prime, xi).arc()) arcs.push_back(*a);
  }
  if (arcs.empty()) {
    throw RegistrationError(Signal::NoAngle, "no correspondence admits a rotation angle");
  }
  auto res = stab_circular(arcs);
  Stage3Result out;
  out.theta = wrap_two_pi(res.region_mid());
  out.consensus = ConsensusSet::from_unsorted(std::move(res.stabbed), Stage::Angle);
  return out;
}

double best_fit_angle(std::span<const std::size_t> members, const Vec3& t_prime,
                      const Vec3& r_prime, const CorrespondenceSet& set) {
  double sin_sum = 0.0;
  double cos_sum = 0.0;
  for (const auto i : members) {
    const Vec3 a = set[i].y - t_prime;
    const Vec3 x_perp = set[i].x - r_prime * r_prime.dot(set[i].x);
    const Vec3 a_perp = a - r_prime * r_prime.dot(a);
    sin_sum += a_perp.dot(r_prime.cross(x_perp));
    cos_sum += a_perp.dot(x_perp);
  }
  if (sin_sum == 0.0 && cos_sum == 0.0) return 0.0;
  return wrap_two_pi(std::atan2(sin_sum, cos_sum));
}

Stage3Result stage3_fallback(const ConsensusSet& I2, const Vec3& t_prime, const Vec3& r_prime,
                             const CorrespondenceSet& set) {
  Stage3Result out;
  out.fallback = true;
  out.theta = best_fit_angle(I2.indices, t_prime, r_prime, set);
  out.consensus = I2;
  out.consensus.stage = Stage::Angle;
  return out;
}

}  // namespace here
