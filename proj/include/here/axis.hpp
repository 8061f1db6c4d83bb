#pragma once

// Rotation-axis stage. With t′ fixed, every inlier satisfies |d_iᵀ r| ≤ ξ_i for
// the rotation axis r, with d_i the normalized y_i − t′ − x_i. Each sampled
// correspondence's girdle is cut into planes d_jᵀ r = offset, and each plane's
// circle is searched by interval stabbing over its intrinsic angle u.

#include "here/compat.hpp"
#include "here/core.hpp"
#include "here/observer.hpp"
#include "here/stabbing.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace here {

// Displacements shorter than this leave d undefined.
constexpr double kMinAxisDisplacement = 1e-9;

struct AxisConstraint {
  Vec3 d = Vec3::UnitZ();
  double xi_i = 0.0;
  // d undefined: |dᵀr| ≤ ξ_i holds for every axis.
  bool unconstrained = false;

  static AxisConstraint of(const Correspondence& c, const Vec3& t_prime, double xi);
  bool satisfied_by(const Vec3& r) const {
    return unconstrained || std::abs(d.dot(r)) <= xi_i;
  }
};

// Circle {r : dᵀr = offset, ‖r‖ = 1}, parameterized as
// r(u) = offset·d + sqrt(1 − offset²)·(cos u·e1 + sin u·e2).
// Only its r₃ ≥ 0 part is searched.
struct HalfCircle {
  Vec3 d = Vec3::UnitZ();
  double offset = 0.0;
  Vec3 e1 = Vec3::UnitX();
  Vec3 e2 = Vec3::UnitY();

  static HalfCircle make(const Vec3& d, double offset);
  double scale() const { return std::sqrt(std::max(0.0, 1.0 - offset * offset)); }
  Vec3 point(double u) const;
};

// Orthonormal pair spanning the plane ⊥ d, by Gram–Schmidt against the
// coordinate axis where |d| is smallest.
void plane_basis(const Vec3& d, Vec3& e1, Vec3& e2);

// Offset of the q-th (1-based) of n planes across the girdle; n = 1 gives 0.
double half_circle_offset(double xi_j, int n, int q);

// The n planes of the sample's girdle; |offset| > 1 planes are dropped.
// ξ_j is capped at 1.
std::vector<HalfCircle> discretize_girdle(const AxisConstraint& sample, int n);

// The arc of u with r₃(u) ≥ 0, or nothing when the circle lies below.
std::optional<Arc> hemisphere_arc(const HalfCircle& hc);

// Arcs of u where |d_iᵀ r(u)| ≤ ξ_i and r₃(u) ≥ 0.
std::vector<Arc> circle_girdle_intervals(const HalfCircle& hc, const AxisConstraint& c,
                                         std::size_t owner);
void append_circle_girdle_arcs(const HalfCircle& hc, const std::optional<Arc>& hemisphere,
                               const AxisConstraint& c, std::size_t owner,
                               std::vector<Arc>& out);

struct Stage2Result {
  Vec3 r = Vec3::UnitZ();     // canonical hemisphere
  ConsensusSet consensus;     // subset of the stage input, sample included
  std::size_t sample = 0;
  bool fallback = false;
};

// Throws RegistrationError(DegenerateAxis) when |I1| < 2 or every sample has
// zero displacement.
Stage2Result solve_stage2(const ConsensusSet& I1, const Vec3& t_prime,
                          const CorrespondenceSet& set, const AffinityMatrix& W,
                          const PriorityTable& table, const PipelineConfig& cfg,
                          CandidateObserver* observer = nullptr);

// Keeps I1 and takes the axis of a least-squares rotation on its three
// highest-priority members.
Stage2Result stage2_fallback(const ConsensusSet& I1, const CorrespondenceSet& set,
                             const PriorityTable& table);

}  // namespace here
