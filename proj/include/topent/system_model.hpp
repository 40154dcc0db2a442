#pragma once

#include <vector>

#include "topent/errors.hpp"
#include "topent/interval.hpp"

namespace topent {

// Continuous map given by samples (breakpoints[k], values[k]) joined by
// linear interpolation; breakpoints strictly increasing and spanning the
// system domain, values inside the domain.
struct PiecewiseLinearMap {
  std::vector<double> breakpoints;
  std::vector<double> values;
};

enum class Extension { Periodic, ConstantTail };

// The time-varying system x_{n+1} = f_n(x_n) on a compact interval. The
// stored steps define f_1..f_p; later maps come from the extension rule.
class SystemModel {
 public:
  SystemModel(Interval domain, std::vector<PiecewiseLinearMap> steps,
              Extension extension);

  const Interval& domain() const { return domain_; }
  Extension extension() const { return extension_; }
  std::size_t step_count() const { return steps_.size(); }

  // 1-based time index; defined for every n >= 1.
  const PiecewiseLinearMap& map(long long n) const;

  // Checks over n = 1..horizon() cover every n >= 1 under the extension rule.
  long long horizon() const { return static_cast<long long>(steps_.size()); }

 private:
  Interval domain_;
  std::vector<PiecewiseLinearMap> steps_;
  Extension extension_;
};

double evaluate(const SystemModel& sys, long long n, double x);

// f_i^n(x) = f_{i+n-1} o ... o f_i applied to x; n = 0 is the identity.
double compose_orbit(const SystemModel& sys, long long i, long long n, double x);

struct ImageResult {
  Interval hull;
  bool is_interval;
};

// Exact image f_n(J) as the hull of the per-piece images; is_interval reports
// whether the piece images form one connected block (always true for a
// continuous map of an interval).
ImageResult image_of_interval(const SystemModel& sys, long long n,
                              const Interval& J);

// f_n^{-1}(target) intersected with `within`, as maximal disjoint closed
// intervals with endpoints solved exactly on each linear piece.
std::vector<Interval> preimage_in_interval(const SystemModel& sys, long long n,
                                           const Interval& target,
                                           const Interval& within);

// Clipped tent steps x -> min(s * min(x, 1-x), 1) on [0,1], one per slope.
SystemModel tent_family(const std::vector<double>& slopes, Extension extension);

}  // namespace topent
