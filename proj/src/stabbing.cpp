#include "here/stabbing.hpp"

#include "here/core.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace here {
namespace {

struct Endpoint {
  double x;
  bool right;  // false sorts first: touching intervals both count
  std::size_t owner;
};

StabResult sweep(std::vector<Endpoint>& events, std::span<const Interval> pieces) {
  StabResult out;
  if (events.empty()) return out;

  std::sort(events.begin(), events.end(), [](const Endpoint& a, const Endpoint& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.right < b.right;
  });

  std::unordered_map<std::size_t, int> active;
  active.reserve(pieces.size());
  std::size_t distinct = 0;
  bool in_best = false;
  for (const auto& e : events) {
    int& n = active[e.owner];
    if (!e.right) {
      if (n++ == 0) ++distinct;
      if (distinct > out.count) {
        out.count = distinct;
        out.stabber = e.x;
        out.region_hi = e.x;
        in_best = true;
      }
    } else {
      if (--n == 0) {
        if (in_best && distinct == out.count) {
          out.region_hi = e.x;
          in_best = false;
        }
        --distinct;
      }
    }
  }

  for (const auto& p : pieces) {
    if (p.lo <= out.stabber && out.stabber <= p.hi) out.stabbed.push_back(p.owner);
  }
  std::sort(out.stabbed.begin(), out.stabbed.end());
  out.stabbed.erase(std::unique(out.stabbed.begin(), out.stabbed.end()), out.stabbed.end());
  return out;
}

}  // namespace

bool Arc::is_full() const { return start <= 0.0 && end >= kTwoPi; }

double Arc::length() const {
  if (is_full()) return kTwoPi;
  return start <= end ? end - start : end + kTwoPi - start;
}

StabResult stab_linear(std::span<const Interval> intervals) {
  std::vector<Endpoint> events;
  events.reserve(2 * intervals.size());
  for (const auto& iv : intervals) {
    events.push_back({iv.lo, false, iv.owner});
    events.push_back({iv.hi, true, iv.owner});
  }
  return sweep(events, intervals);
}

StabResult stab_circular(std::span<const Arc> arcs) {
  std::vector<Interval> pieces;
  pieces.reserve(2 * arcs.size());
  for (const auto& a : arcs) {
    if (a.is_full()) {
      pieces.push_back({0.0, kTwoPi, a.owner});
    } else if (a.start <= a.end) {
      pieces.push_back({a.start, a.end, a.owner});
      // 2π and 0 are the same point
      if (a.end >= kTwoPi) pieces.push_back({0.0, 0.0, a.owner});
    } else {
      pieces.push_back({a.start, kTwoPi, a.owner});
      pieces.push_back({0.0, a.end, a.owner});
    }
  }
  std::vector<Endpoint> events;
  events.reserve(2 * pieces.size());
  for (const auto& iv : pieces) {
    events.push_back({iv.lo, false, iv.owner});
    events.push_back({iv.hi, true, iv.owner});
  }
  return sweep(events, pieces);
}

double wrap_two_pi(double a) {
  double w = std::fmod(a, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;
  return w;
}

Arc arc_around(double center, double half_width, std::size_t owner) {
  if (half_width >= kPi) return Arc::full(owner);
  return {wrap_two_pi(center - half_width), wrap_two_pi(center + half_width), owner};
}

void append_cos_band_arcs(double center, double c_lo, double c_hi, std::size_t owner,
                          std::vector<Arc>& out) {
  if (c_lo > c_hi || c_lo > 1.0 || c_hi < -1.0) return;
  const double a = c_hi >= 1.0 ? 0.0 : std::acos(std::clamp(c_hi, -1.0, 1.0));
  const double b = c_lo <= -1.0 ? kPi : std::acos(std::clamp(c_lo, -1.0, 1.0));
  if (a <= 0.0) {
    out.push_back(arc_around(center, b, owner));
  } else if (b >= kPi) {
    out.push_back(arc_around(center + kPi, kPi - a, owner));
  } else {
    const double half = 0.5 * (b - a);
    const double offset = 0.5 * (a + b);
    out.push_back(arc_around(center + offset, half, owner));
    out.push_back(arc_around(center - offset, half, owner));
  }
}

void append_arc_intersection(const Arc& a, const Arc& b, std::vector<Arc>& out) {
  const double la = a.length();
  const double lb = b.length();
  if (a.is_full()) {
    out.push_back({b.start, b.end, a.owner});
    return;
  }
  if (b.is_full()) {
    out.push_back(a);
    return;
  }
  // work in a frame where a = [0, la]
  const double bs = wrap_two_pi(b.start - a.start);
  for (const double shift : {bs, bs - kTwoPi}) {
    const double lo = std::max(0.0, shift);
    const double hi = std::min(la, shift + lb);
    if (lo <= hi) {
      out.push_back({wrap_two_pi(a.start + lo), wrap_two_pi(a.start + hi), a.owner});
    }
  }
}

}  // namespace here
