#include "here/axis.hpp"

#include "here/refine.hpp"

#include <cmath>
#include <limits>

namespace here {

AxisConstraint AxisConstraint::of(const Correspondence& c, const Vec3& t_prime, double xi) {
  const Vec3 v = c.y - t_prime - c.x;
  const double len = v.norm();
  if (len < kMinAxisDisplacement) {
    return {Vec3::UnitZ(), std::numeric_limits<double>::infinity(), true};
  }
  return {v / len, xi / len, false};
}

void plane_basis(const Vec3& d, Vec3& e1, Vec3& e2) {
  int k = 0;
  if (std::abs(d.y()) < std::abs(d[k])) k = 1;
  if (std::abs(d.z()) < std::abs(d[k])) k = 2;
  const Vec3 axis = Vec3::Unit(k);
  e1 = (axis - d * d.dot(axis)).normalized();
  e2 = d.cross(e1);
}

HalfCircle HalfCircle::make(const Vec3& d, double offset) {
  HalfCircle hc;
  hc.d = d;
  hc.offset = offset;
  plane_basis(d, hc.e1, hc.e2);
  return hc;
}

Vec3 HalfCircle::point(double u) const {
  return offset * d + scale() * (std::cos(u) * e1 + std::sin(u) * e2);
}

double half_circle_offset(double xi_j, int n, int q) {
  if (n <= 1) return 0.0;
  return static_cast<double>(2 * q - n - 1) / static_cast<double>(n - 1) * xi_j;
}

std::vector<HalfCircle> discretize_girdle(const AxisConstraint& sample, int n) {
  std::vector<HalfCircle> out;
  const double xi_j = std::min(sample.xi_i, 1.0);
  for (int q = 1; q <= std::max(n, 1); ++q) {
    const double offset = half_circle_offset(xi_j, n, q);
    if (std::abs(offset) <= 1.0) out.push_back(HalfCircle::make(sample.d, offset));
  }
  return out;
}

namespace {

// Arcs of u where A cos u + B sin u + C ∈ [lo, hi].
void append_harmonic_band(double A, double B, double C, double lo, double hi, std::size_t owner,
                          std::vector<Arc>& out) {
  const double amp = std::hypot(A, B);
  if (amp <= 1e-14) {
    if (lo <= C && C <= hi) out.push_back(Arc::full(owner));
    return;
  }
  append_cos_band_arcs(std::atan2(B, A), (lo - C) / amp, (hi - C) / amp, owner, out);
}

}  // namespace

std::optional<Arc> hemisphere_arc(const HalfCircle& hc) {
  const double k = hc.scale();
  std::vector<Arc> arcs;
  append_harmonic_band(k * hc.e1.z(), k * hc.e2.z(), hc.offset * hc.d.z(), 0.0,
                       std::numeric_limits<double>::infinity(), 0, arcs);
  if (arcs.empty()) return std::nullopt;
  return arcs.front();
}

void append_circle_girdle_arcs(const HalfCircle& hc, const std::optional<Arc>& hemisphere,
                               const AxisConstraint& c, std::size_t owner,
                               std::vector<Arc>& out) {
  if (!hemisphere) return;
  if (c.unconstrained) {
    out.push_back({hemisphere->start, hemisphere->end, owner});
    return;
  }
  const double k = hc.scale();
  thread_local std::vector<Arc> band;
  band.clear();
  append_harmonic_band(k * c.d.dot(hc.e1), k * c.d.dot(hc.e2), hc.offset * c.d.dot(hc.d),
                       -c.xi_i, c.xi_i, owner, band);
  for (const auto& a : band) append_arc_intersection(a, *hemisphere, out);
}

std::vector<Arc> circle_girdle_intervals(const HalfCircle& hc, const AxisConstraint& c,
                                         std::size_t owner) {
  std::vector<Arc> out;
  append_circle_girdle_arcs(hc, hemisphere_arc(hc), c, owner, out);
  return out;
}

Stage2Result solve_stage2(const ConsensusSet& I1, const Vec3& t_prime,
                          const CorrespondenceSet& set, const AffinityMatrix& W,
                          const PriorityTable& table, const PipelineConfig& cfg,
                          CandidateObserver* observer) {
  if (I1.size() < 2) {
    throw RegistrationError(Signal::DegenerateAxis, "axis stage needs at least 2 correspondences");
  }
  const auto samples = select_samples(table, set.size(), static_cast<std::size_t>(cfg.k_r), &I1,
                                      cfg.sampling, cfg.seed + 1);

  bool searched = false;
  Stage2Result best;
  std::size_t best_total = 0;
  std::vector<std::size_t> best_members;
  std::vector<Arc> arcs;
  std::vector<AxisConstraint> constraints;

  for (const auto j : samples) {
    const auto sample = AxisConstraint::of(set[j], t_prime, cfg.xi);
    if (sample.unconstrained) continue;
    const auto cands = candidates_for(W, j, I1.indices, cfg.use_verification);
    if (observer) observer->on_candidates(Stage::Axis, j, I1.indices, cands);

    constraints.clear();
    for (const auto i : cands) constraints.push_back(AxisConstraint::of(set[i], t_prime, cfg.xi));

    for (const auto& hc : discretize_girdle(sample, cfg.n)) {
      const auto hemi = hemisphere_arc(hc);
      if (!hemi) continue;
      arcs.clear();
      for (std::size_t k = 0; k < cands.size(); ++k) {
        append_circle_girdle_arcs(hc, hemi, constraints[k], cands[k], arcs);
      }
      auto res = stab_circular(arcs);
      // an empty stab still leaves the sample itself on a valid axis
      const double u = res.count > 0 ? res.region_mid()
                                     : wrap_two_pi(hemi->start + 0.5 * hemi->length());
      const std::size_t total = res.count + 1;
      if (!searched || total > best_total) {
        best_total = total;
        best.r = to_canonical_hemisphere(hc.point(u).normalized());
        best.sample = j;
        best_members = std::move(res.stabbed);
        best_members.push_back(j);
      }
      searched = true;
    }
  }
  if (!searched) {
    throw RegistrationError(Signal::DegenerateAxis, "every axis sample has zero displacement");
  }
  best.consensus = ConsensusSet::from_unsorted(std::move(best_members), Stage::Axis);
  return best;
}

Stage2Result stage2_fallback(const ConsensusSet& I1, const CorrespondenceSet& set,
                             const PriorityTable& table) {
  Stage2Result out;
  out.fallback = true;
  out.consensus = I1;
  out.consensus.stage = Stage::Axis;
  const auto top = sample_top(table, 3, &I1);
  if (top.size() == 3) {
    try {
      const auto T = fit_rigid(set, top);
      out.r = axis_angle_from_matrix(T.R).axis;
    } catch (const RegistrationError&) {
      // keep the default axis
    }
  }
  return out;
}

}  // namespace here
