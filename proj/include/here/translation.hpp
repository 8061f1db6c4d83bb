#pragma once

// Translation stage: for each sampled correspondence j, search the shell of
// translations that keep j an inlier once rotation is eliminated,
//   | ‖y_i − t‖ − ‖x_i‖ | ≤ ξ,
// by slicing the shell into spherical surfaces and running a 1-D
// branch-and-bound over height t₃ with interval stabbing over the azimuth φ.

#include "here/compat.hpp"
#include "here/core.hpp"
#include "here/observer.hpp"
#include "here/stabbing.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace here {

struct SphericalShell {
  Vec3 center = Vec3::Zero();  // y_j
  double r_in = 0.0;           // max(‖x_j‖ − ξ, 0)
  double r_out = 0.0;          // ‖x_j‖ + ξ

  static SphericalShell of(const Correspondence& c, double xi);
};

// Sphere of translations t with ‖t − center‖ = radius, parameterized by
// height t₃ and azimuth φ around the vertical axis through center.
struct SphericalSurface {
  Vec3 center = Vec3::Zero();
  double radius = 0.0;

  double z_lo() const { return center.z() - radius; }
  double z_hi() const { return center.z() + radius; }
  // Radius of the horizontal circle cut at height t3 (0 outside the range).
  double circle_radius(double t3) const;
  Vec3 point(double t3, double phi) const;
};

// Radius of the p-th (1-based) of m surfaces spread across the shell; m = 1
// gives the mid-shell radius ‖x‖.
double surface_radius(double norm_x, double xi, int m, int p);

// Surfaces for correspondence c; non-positive radii are dropped.
std::vector<SphericalSurface> discretize_shell(const Correspondence& c, double xi, int m);

struct Branch {
  double t3_lo = 0.0;
  double t3_hi = 0.0;
  std::size_t upper = 0;

  double center() const { return 0.5 * (t3_lo + t3_hi); }
  double width() const { return t3_hi - t3_lo; }
};

struct Bounds {
  std::size_t lower = 0;
  std::size_t upper = 0;
  double best_phi = 0.0;
};

// Straight-line distance between the surface points at heights h1 and h2 on
// a common meridian.
double meridian_chord(const SphericalSurface& s, double h1, double h2);

// Largest distance from the branch-centre point to any point of the branch on
// its meridian.
double branch_radius(const SphericalSurface& s, const Branch& b);

// Azimuth arcs on the circle at height t3 where | ‖y − t‖ − ‖x‖ | ≤ threshold.
std::vector<Arc> circle_shell_intervals(const SphericalSurface& s, double t3,
                                        const Correspondence& c, double threshold);
void append_circle_shell_arcs(const SphericalSurface& s, double t3, const Correspondence& c,
                              double threshold, std::vector<Arc>& out);

// Best azimuth at height t3: circular stabbing over all candidate arcs.
StabResult stab_circle(const SphericalSurface& s, double t3,
                       std::span<const std::size_t> candidates, const CorrespondenceSet& set,
                       double threshold);

// lower: stab count at the branch centre with ξ. upper: the same with ξ + δ,
// where δ is the branch radius, which holds for every t₃ in the branch.
Bounds compute_bounds(const Branch& b, const SphericalSurface& s,
                      std::span<const std::size_t> candidates, const CorrespondenceSet& set,
                      double xi);

struct SurfaceSearchResult {
  double t3 = 0.0;
  double phi = 0.0;
  std::size_t count = 0;                 // candidates satisfied, sample excluded
  std::vector<std::size_t> consensus;    // the candidates themselves
  Vec3 translation = Vec3::Zero();
  std::size_t bound_evaluations = 0;
};

// Best-first branch-and-bound over t₃; branches narrower than psi are not split.
SurfaceSearchResult search_surface(const SphericalSurface& s,
                                   std::span<const std::size_t> candidates,
                                   const CorrespondenceSet& set, double xi, double psi);

struct Stage1Result {
  Vec3 t = Vec3::Zero();
  ConsensusSet consensus;       // re-evaluated on the full set, sample included
  std::size_t sample = 0;       // winning sample
  std::size_t search_count = 0; // surface optimum + 1 for the sample
};

// Samples are drawn according to cfg.sampling; with cfg.use_verification the
// candidates of each sample are restricted to its compatible correspondences.
// Throws RegistrationError(NoSamples) when nothing could be searched.
Stage1Result solve_stage1(const CorrespondenceSet& set, const AffinityMatrix& W,
                          const PriorityTable& table, const PipelineConfig& cfg,
                          CandidateObserver* observer = nullptr);

}  // namespace here
