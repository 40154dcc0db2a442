#pragma once

#include <optional>
#include <vector>

#include "topent/system_model.hpp"

namespace topent {

// max over j = 0..n-1 of |f_1^j(x) - f_1^j(y)|; j = 0 gives |x - y|.
double bowen_distance(const SystemModel& sys, long long n, double x, double y);

struct GrowthRow {
  long long n = 0;
  long long count = 0;            // greedy separated-set size
  double log_count_over_n = 0.0;  // the quantity whose limit is the entropy
};

struct GrowthCurve {
  double epsilon = 0.0;
  std::vector<GrowthRow> rows;
  double estimate = 0.0;  // least-squares slope of log(count) against n
};

struct EstimateConfig {
  long long n_min = 1;
  long long n_max = 1;               // window needs n_max > n_min
  std::vector<double> epsilons;      // strictly decreasing, all positive
  long long grid_size = 0;           // evaluation points when restrict_to is unset
  std::optional<std::vector<double>> restrict_to;
};

struct EstimateResult {
  std::vector<GrowthCurve> curves;  // one per epsilon, input order
  double h_est = 0.0;               // max slope over the sweep
  bool degenerate = false;          // every count was 1; slopes carry no signal
};

// grid_size evenly spaced points spanning the domain, endpoints included.
std::vector<double> uniform_grid(const Interval& domain, long long grid_size);

// Size of the greedy separated set: scanning candidates in ascending order,
// keep a point iff its distance to every kept point is at least
// epsilon * (1 - 1e-12). Deterministic for a given point set.
long long separated_count(const SystemModel& sys, long long n, double epsilon,
                          long long grid_size,
                          const std::vector<double>* restrict_to = nullptr);

EstimateResult estimate_entropy(const SystemModel& sys,
                                const EstimateConfig& config);

}  // namespace topent
