#pragma once

#include <algorithm>
#include <optional>
#include <vector>

namespace topent {

// Closed interval [lo, hi] with lo <= hi; single points are allowed.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  double midpoint() const { return lo + (hi - lo) / 2.0; }
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

inline std::optional<Interval> intersect(const Interval& a, const Interval& b) {
  double lo = std::max(a.lo, b.lo);
  double hi = std::min(a.hi, b.hi);
  if (lo > hi) return std::nullopt;
  return Interval{lo, hi};
}

inline Interval hull(const Interval& a, const Interval& b) {
  return Interval{std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

// Distance between the sets; 0 when they overlap or touch.
inline double gap(const Interval& a, const Interval& b) {
  return std::max({0.0, b.lo - a.hi, a.lo - b.hi});
}

// Coalesces into the maximal disjoint closed intervals of the union; intervals
// that merely touch at an endpoint are merged.
inline std::vector<Interval> merge_union(std::vector<Interval> parts) {
  if (parts.empty()) return parts;
  std::sort(parts.begin(), parts.end(),
            [](const Interval& a, const Interval& b) {
              return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
            });
  std::vector<Interval> out;
  out.push_back(parts.front());
  for (std::size_t k = 1; k < parts.size(); ++k) {
    if (parts[k].lo <= out.back().hi)
      out.back().hi = std::max(out.back().hi, parts[k].hi);
    else
      out.push_back(parts[k]);
  }
  return out;
}

// Pairwise intersection of two unions of disjoint intervals.
inline std::vector<Interval> intersect_unions(const std::vector<Interval>& a,
                                              const std::vector<Interval>& b) {
  std::vector<Interval> out;
  for (const Interval& x : a)
    for (const Interval& y : b)
      if (auto z = intersect(x, y)) out.push_back(*z);
  return merge_union(std::move(out));
}

}  // namespace topent
