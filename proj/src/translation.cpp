#include "here/translation.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace here {

SphericalShell SphericalShell::of(const Correspondence& c, double xi) {
  const double r = c.x.norm();
  return {c.y, std::max(r - xi, 0.0), r + xi};
}

double SphericalSurface::circle_radius(double t3) const {
  const double h = t3 - center.z();
  return std::sqrt(std::max(0.0, radius * radius - h * h));
}

Vec3 SphericalSurface::point(double t3, double phi) const {
  const double s = circle_radius(t3);
  return {center.x() + s * std::cos(phi), center.y() + s * std::sin(phi), t3};
}

double surface_radius(double norm_x, double xi, int m, int p) {
  if (m <= 1) return norm_x;
  return norm_x + static_cast<double>(2 * p - m - 1) / static_cast<double>(m - 1) * xi;
}

std::vector<SphericalSurface> discretize_shell(const Correspondence& c, double xi, int m) {
  std::vector<SphericalSurface> out;
  const double r = c.x.norm();
  for (int p = 1; p <= std::max(m, 1); ++p) {
    const double radius = surface_radius(r, xi, m, p);
    if (radius > 0.0) out.push_back({c.y, radius});
  }
  return out;
}

double meridian_chord(const SphericalSurface& s, double h1, double h2) {
  const double ds = s.circle_radius(h1) - s.circle_radius(h2);
  const double dh = h1 - h2;
  return std::sqrt(ds * ds + dh * dh);
}

double branch_radius(const SphericalSurface& s, const Branch& b) {
  const double c = b.center();
  return std::max(meridian_chord(s, c, b.t3_lo), meridian_chord(s, c, b.t3_hi));
}

void append_circle_shell_arcs(const SphericalSurface& s, double t3, const Correspondence& c,
                              double threshold, std::vector<Arc>& out) {
  const double circle_r = s.circle_radius(t3);
  const double px = c.y.x() - s.center.x();
  const double py = c.y.y() - s.center.y();
  const double rho = std::hypot(px, py);
  const double h = t3 - c.y.z();

  const double norm_x = c.x.norm();
  const double upper = norm_x + threshold;
  const double lower = std::max(norm_x - threshold, 0.0);
  const double upper_sq = upper * upper;
  const double lower_sq = lower * lower;

  // ‖y − t‖² = base − 2·s·ρ·cos(φ − θ)
  const double base = h * h + circle_r * circle_r + rho * rho;
  const double amp = 2.0 * circle_r * rho;
  if (amp <= 1e-14 * std::max(1.0, base)) {
    if (lower_sq <= base && base <= upper_sq) out.push_back(Arc::full(c.index));
    return;
  }
  const double bearing = std::atan2(py, px);
  append_cos_band_arcs(bearing, (base - upper_sq) / amp, (base - lower_sq) / amp, c.index, out);
}

std::vector<Arc> circle_shell_intervals(const SphericalSurface& s, double t3,
                                        const Correspondence& c, double threshold) {
  std::vector<Arc> out;
  append_circle_shell_arcs(s, t3, c, threshold, out);
  return out;
}

namespace {

StabResult stab_circle_into(const SphericalSurface& s, double t3,
                            std::span<const std::size_t> candidates, const CorrespondenceSet& set,
                            double threshold, std::vector<Arc>& scratch) {
  scratch.clear();
  for (const auto i : candidates) append_circle_shell_arcs(s, t3, set[i], threshold, scratch);
  return stab_circular(scratch);
}

struct BranchOrder {
  bool operator()(const Branch& a, const Branch& b) const {
    if (a.upper != b.upper) return a.upper < b.upper;
    return a.width() < b.width();
  }
};

}  // namespace

StabResult stab_circle(const SphericalSurface& s, double t3,
                       std::span<const std::size_t> candidates, const CorrespondenceSet& set,
                       double threshold) {
  std::vector<Arc> scratch;
  return stab_circle_into(s, t3, candidates, set, threshold, scratch);
}

Bounds compute_bounds(const Branch& b, const SphericalSurface& s,
                      std::span<const std::size_t> candidates, const CorrespondenceSet& set,
                      double xi) {
  if (b.t3_hi < s.z_lo() || b.t3_lo > s.z_hi()) return {};
  const double c = b.center();
  const auto lo = stab_circle(s, c, candidates, set, xi);
  const auto hi = stab_circle(s, c, candidates, set, xi + branch_radius(s, b));
  return {lo.count, hi.count, lo.region_mid()};
}

SurfaceSearchResult search_surface(const SphericalSurface& s,
                                   std::span<const std::size_t> candidates,
                                   const CorrespondenceSet& set, double xi, double psi) {
  SurfaceSearchResult best;
  best.t3 = s.center.z();
  best.translation = s.point(best.t3, 0.0);
  if (candidates.empty()) return best;

  std::vector<Arc> scratch;
  const auto upper_of = [&](Branch& b) {
    b.upper = stab_circle_into(s, b.center(), candidates, set, xi + branch_radius(s, b), scratch)
                  .count;
    ++best.bound_evaluations;
  };

  std::priority_queue<Branch, std::vector<Branch>, BranchOrder> queue;
  Branch root{s.z_lo(), s.z_hi(), 0};
  upper_of(root);
  queue.push(root);

  while (!queue.empty()) {
    const Branch b = queue.top();
    queue.pop();
    if (b.upper <= best.count) break;

    const double c = b.center();
    auto lower = stab_circle_into(s, c, candidates, set, xi, scratch);
    ++best.bound_evaluations;
    if (lower.count > best.count) {
      best.count = lower.count;
      best.t3 = c;
      best.phi = lower.region_mid();
      best.consensus = std::move(lower.stabbed);
    }
    if (b.width() <= psi) continue;

    for (Branch child : {Branch{b.t3_lo, c, 0}, Branch{c, b.t3_hi, 0}}) {
      upper_of(child);
      if (child.upper > best.count) queue.push(child);
    }
  }
  best.translation = s.point(best.t3, best.phi);
  return best;
}

Stage1Result solve_stage1(const CorrespondenceSet& set, const AffinityMatrix& W,
                          const PriorityTable& table, const PipelineConfig& cfg,
                          CandidateObserver* observer) {
  const std::size_t n = set.size();
  const auto samples = select_samples(table, n, static_cast<std::size_t>(cfg.k_t), nullptr,
                                      cfg.sampling, cfg.seed);
  const auto everyone = ConsensusSet::all(n, Stage::Translation);

  bool searched = false;
  Stage1Result best;
  std::vector<std::size_t> best_members;
  for (const auto j : samples) {
    const auto cands = candidates_for(W, j, everyone.indices, cfg.use_verification);
    if (observer) observer->on_candidates(Stage::Translation, j, everyone.indices, cands);
    for (const auto& surface : discretize_shell(set[j], cfg.xi, cfg.m)) {
      auto res = search_surface(surface, cands, set, cfg.xi, cfg.psi);
      const std::size_t total = res.count + 1;
      if (!searched || total > best.search_count) {
        best.search_count = total;
        best.t = res.translation;
        best.sample = j;
        best_members = std::move(res.consensus);
        best_members.push_back(j);
      }
      searched = true;
    }
  }
  if (!searched) {
    throw RegistrationError(Signal::NoSamples, "no usable translation sample");
  }

  for (const auto& c : set) {
    if (std::abs((c.y - best.t).norm() - c.x.norm()) <= cfg.xi) best_members.push_back(c.index);
  }
  best.consensus = ConsensusSet::from_unsorted(std::move(best_members), Stage::Translation);
  return best;
}

}  // namespace here
