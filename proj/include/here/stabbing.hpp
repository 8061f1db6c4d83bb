#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace here {

// Closed interval [lo, hi] on the real line.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t owner = 0;
};

// Closed arc on the circle [0, 2π). start > end means the arc wraps through 0;
// the full circle is start = 0, end = 2π.
struct Arc {
  double start = 0.0;
  double end = 0.0;
  std::size_t owner = 0;

  static Arc full(std::size_t owner) { return {0.0, 6.283185307179586476925, owner}; }
  bool is_full() const;
  double length() const;
};

struct StabResult {
  double stabber = 0.0;      // left end of the best region
  double region_hi = 0.0;    // right end of the best region
  std::size_t count = 0;     // distinct owners stabbed
  std::vector<std::size_t> stabbed;  // ascending owner ids

  double region_mid() const { return 0.5 * (stabber + region_hi); }
};

// Point on the line contained in the most intervals. Among equally good
// points, the smallest maximizing left endpoint wins. Owners are counted
// once even if they contribute several intervals.
StabResult stab_linear(std::span<const Interval> intervals);

// Same on the circle. Wrapping arcs are split at 0 with a shared owner.
StabResult stab_circular(std::span<const Arc> arcs);

// Maps an angle into [0, 2π).
double wrap_two_pi(double a);

// Arcs of φ where cos(φ − center) ∈ [c_lo, c_hi]: empty, one arc (possibly the
// full circle) or two arcs symmetric about center. Bounds outside [-1, 1] are
// clamped.
void append_cos_band_arcs(double center, double c_lo, double c_hi, std::size_t owner,
                          std::vector<Arc>& out);

// Arc covering [center − half_width, center + half_width]; full when
// half_width ≥ π.
Arc arc_around(double center, double half_width, std::size_t owner);

// Intersection of two arcs, at most two pieces. Result pieces carry a.owner.
void append_arc_intersection(const Arc& a, const Arc& b, std::vector<Arc>& out);

}  // namespace here
