#include "topent/system_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace topent {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Value on piece k at x in [breakpoints[k], breakpoints[k+1]]; exact at the
// piece endpoints, clamped between the endpoint values inside.
double piece_value(const PiecewiseLinearMap& map, std::size_t k, double x) {
  const double x0 = map.breakpoints[k], x1 = map.breakpoints[k + 1];
  const double y0 = map.values[k], y1 = map.values[k + 1];
  if (x == x0) return y0;
  if (x == x1) return y1;
  const double t = (x - x0) / (x1 - x0);
  const double y = y0 + t * (y1 - y0);
  return std::clamp(y, std::min(y0, y1), std::max(y0, y1));
}

std::size_t piece_index(const PiecewiseLinearMap& map, double x) {
  const std::vector<double>& bp = map.breakpoints;
  std::size_t k = std::upper_bound(bp.begin(), bp.end(), x) - bp.begin();
  if (k == 0) return 0;
  if (k >= bp.size()) return bp.size() - 2;
  return k - 1;
}

void check_in_domain(const SystemModel& sys, double x) {
  if (!sys.domain().contains(x))
    raise(ErrorCode::OutOfDomain, "x = " + fmt(x) + " outside [" +
                                      fmt(sys.domain().lo) + ", " +
                                      fmt(sys.domain().hi) + "]");
}

void check_subinterval(const SystemModel& sys, const Interval& J,
                       const char* name) {
  if (!sys.domain().contains(J))
    raise(ErrorCode::OutOfDomain, std::string(name) + " [" + fmt(J.lo) + ", " +
                                      fmt(J.hi) + "] outside the domain");
}

}  // namespace

SystemModel::SystemModel(Interval domain, std::vector<PiecewiseLinearMap> steps,
                         Extension extension)
    : domain_(domain), steps_(std::move(steps)), extension_(extension) {
  if (!(domain_.lo < domain_.hi))
    raise(ErrorCode::InvalidSystem, "domain must have positive length");
  if (steps_.empty()) raise(ErrorCode::InvalidSystem, "no steps given");
  for (std::size_t s = 0; s < steps_.size(); ++s) {
    const PiecewiseLinearMap& m = steps_[s];
    const std::string where = "step " + std::to_string(s + 1);
    if (m.breakpoints.size() < 2 || m.breakpoints.size() != m.values.size())
      raise(ErrorCode::InvalidSystem,
            where + ": need matching breakpoints/values, at least two");
    for (std::size_t k = 1; k < m.breakpoints.size(); ++k)
      if (!(m.breakpoints[k - 1] < m.breakpoints[k]))
        raise(ErrorCode::InvalidSystem,
              where + ": breakpoints must be strictly increasing");
    if (m.breakpoints.front() != domain_.lo || m.breakpoints.back() != domain_.hi)
      raise(ErrorCode::InvalidSystem,
            where + ": breakpoints must span the domain exactly");
    for (double y : m.values)
      if (!domain_.contains(y))
        raise(ErrorCode::InvalidSystem,
              where + ": value " + fmt(y) + " leaves the domain");
  }
}

const PiecewiseLinearMap& SystemModel::map(long long n) const {
  if (n < 1) raise(ErrorCode::BadConfig, "time index must be >= 1");
  const long long p = static_cast<long long>(steps_.size());
  if (extension_ == Extension::Periodic) return steps_[(n - 1) % p];
  return steps_[std::min(n - 1, p - 1)];
}

double evaluate(const SystemModel& sys, long long n, double x) {
  check_in_domain(sys, x);
  const PiecewiseLinearMap& m = sys.map(n);
  return piece_value(m, piece_index(m, x), x);
}

double compose_orbit(const SystemModel& sys, long long i, long long n, double x) {
  if (i < 1 || n < 0) raise(ErrorCode::BadConfig, "need i >= 1 and n >= 0");
  check_in_domain(sys, x);
  for (long long k = 0; k < n; ++k) x = evaluate(sys, i + k, x);
  return x;
}

namespace {

// Per-piece images of J under map m, merged.
std::vector<Interval> piece_images(const PiecewiseLinearMap& m, const Interval& J) {
  std::vector<Interval> parts;
  const std::size_t pieces = m.breakpoints.size() - 1;
  for (std::size_t k = 0; k < pieces; ++k) {
    const double u = std::max(m.breakpoints[k], J.lo);
    const double v = std::min(m.breakpoints[k + 1], J.hi);
    if (u > v) continue;
    if (u == v && !(J.lo == J.hi)) continue;  // touching a piece only at a point
    const double fu = piece_value(m, k, u);
    const double fv = piece_value(m, k, v);
    parts.push_back(Interval{std::min(fu, fv), std::max(fu, fv)});
  }
  return merge_union(std::move(parts));
}

}  // namespace

ImageResult image_of_interval(const SystemModel& sys, long long n,
                              const Interval& J) {
  check_subinterval(sys, J, "interval");
  const std::vector<Interval> parts = piece_images(sys.map(n), J);
  Interval h = parts.front();
  for (const Interval& p : parts) h = hull(h, p);
  return ImageResult{h, parts.size() == 1};
}

std::vector<Interval> preimage_in_interval(const SystemModel& sys, long long n,
                                           const Interval& target,
                                           const Interval& within) {
  check_subinterval(sys, target, "target");
  check_subinterval(sys, within, "within");
  const PiecewiseLinearMap& m = sys.map(n);
  const double c = target.lo, d = target.hi;
  std::vector<Interval> parts;
  const std::size_t pieces = m.breakpoints.size() - 1;
  for (std::size_t k = 0; k < pieces; ++k) {
    const double x0 = m.breakpoints[k], x1 = m.breakpoints[k + 1];
    const double y0 = m.values[k], y1 = m.values[k + 1];
    Interval pre;
    if (y0 == y1) {
      if (y0 < c || y0 > d) continue;
      pre = Interval{x0, x1};
    } else {
      const double ylo = std::min(y0, y1), yhi = std::max(y0, y1);
      const double qc = std::max(c, ylo), qd = std::min(d, yhi);
      if (qc > qd) continue;
      // Endpoint-exact inverse of the linear piece.
      auto solve = [&](double y) {
        if (y == y0) return x0;
        if (y == y1) return x1;
        return std::clamp(x0 + (y - y0) * (x1 - x0) / (y1 - y0), x0, x1);
      };
      const double xa = solve(qc), xb = solve(qd);
      pre = Interval{std::min(xa, xb), std::max(xa, xb)};
    }
    if (auto clipped = intersect(pre, within)) parts.push_back(*clipped);
  }
  return merge_union(std::move(parts));
}

SystemModel tent_family(const std::vector<double>& slopes, Extension extension) {
  if (slopes.empty()) raise(ErrorCode::InvalidSystem, "no slopes given");
  std::vector<PiecewiseLinearMap> steps;
  steps.reserve(slopes.size());
  for (double s : slopes) {
    if (!(s > 0.0))
      raise(ErrorCode::InvalidSystem, "tent slope must be positive");
    if (s <= 2.0)
      steps.push_back({{0.0, 0.5, 1.0}, {0.0, s / 2.0, 0.0}});
    else
      steps.push_back({{0.0, 1.0 / s, 1.0 - 1.0 / s, 1.0}, {0.0, 1.0, 1.0, 0.0}});
  }
  return SystemModel(Interval{0.0, 1.0}, std::move(steps), extension);
}

}  // namespace topent
