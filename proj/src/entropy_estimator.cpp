#include "topent/entropy_estimator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "topent/errors.hpp"

namespace topent {

namespace {

// Separation threshold; the tiny slack keeps distances that equal epsilon up
// to roundoff on the separated side.
double threshold(double epsilon) { return epsilon * (1.0 - 1e-12); }

// points must be ascending; rows[j][p] = f_1^j(points[p]). Greedy left to
// right: a candidate is kept iff no kept point lies within thr in the
// n-step orbit metric. Only kept points within thr of the candidate in
// position can block, and recent ones block soonest, so the scan walks the
// kept list newest first over that window.
long long greedy_count(const std::vector<double>& points,
                       const std::vector<std::vector<double>>& rows,
                       long long n, double thr) {
  std::vector<std::size_t> sel;
  std::vector<double> selpos;  // ascending, mirrors sel
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double x = points[i];
    const std::size_t lo = static_cast<std::size_t>(
        std::lower_bound(selpos.begin(), selpos.end(), x - thr) -
        selpos.begin());
    bool blocked = false;
    for (std::size_t t = sel.size(); t-- > lo;) {
      const std::size_t s = sel[t];
      double d = 0.0;
      for (long long j = n - 1; j >= 0; --j) {
        const double dj =
            std::fabs(rows[static_cast<std::size_t>(j)][i] -
                      rows[static_cast<std::size_t>(j)][s]);
        if (dj > d) d = dj;
        if (d >= thr) break;
      }
      if (d < thr) {
        blocked = true;
        break;
      }
    }
    if (!blocked) {
      sel.push_back(i);
      selpos.push_back(x);
    }
  }
  return static_cast<long long>(sel.size());
}

// rows[j][p] = f_1^j(points[p]) for j = 0..depth-1.
std::vector<std::vector<double>> orbit_rows(const SystemModel& sys,
                                            const std::vector<double>& points,
                                            long long depth) {
  std::vector<std::vector<double>> rows(
      static_cast<std::size_t>(depth),
      std::vector<double>(points.size()));
  for (std::size_t p = 0; p < points.size(); ++p) {
    double x = points[p];
    for (long long j = 0; j < depth; ++j) {
      rows[static_cast<std::size_t>(j)][p] = x;
      if (j + 1 < depth) x = evaluate(sys, j + 1, x);
    }
  }
  return rows;
}

std::vector<double> gather_points(const SystemModel& sys, long long grid_size,
                                  const std::vector<double>* restrict_to) {
  if (restrict_to != nullptr) {
    if (restrict_to->empty())
      raise(ErrorCode::BadConfig, "restricted point set is empty");
    std::vector<double> points = *restrict_to;
    for (std::size_t p = 0; p < points.size(); ++p)
      if (!sys.domain().contains(points[p]))
        raise(ErrorCode::OutOfDomain,
              "restricted point " + std::to_string(p) +
                  " lies outside the domain");
    std::sort(points.begin(), points.end());
    return points;
  }
  return uniform_grid(sys.domain(), grid_size);
}

double slope_of(const std::vector<GrowthRow>& rows) {
  const double len = static_cast<double>(rows.size());
  double n_bar = 0.0, y_bar = 0.0;
  for (const GrowthRow& r : rows) {
    n_bar += static_cast<double>(r.n);
    y_bar += std::log(static_cast<double>(r.count));
  }
  n_bar /= len;
  y_bar /= len;
  double num = 0.0, den = 0.0;
  for (const GrowthRow& r : rows) {
    const double dn = static_cast<double>(r.n) - n_bar;
    num += dn * (std::log(static_cast<double>(r.count)) - y_bar);
    den += dn * dn;
  }
  return num / den;
}

}  // namespace

double bowen_distance(const SystemModel& sys, long long n, double x, double y) {
  if (n < 1) raise(ErrorCode::BadConfig, "orbit length must be positive");
  for (double p : {x, y})
    if (!sys.domain().contains(p))
      raise(ErrorCode::OutOfDomain, "orbit start lies outside the domain");
  double d = 0.0;
  double px = x, py = y;
  for (long long j = 0; j < n; ++j) {
    d = std::max(d, std::fabs(px - py));
    if (j + 1 < n) {
      px = evaluate(sys, j + 1, px);
      py = evaluate(sys, j + 1, py);
    }
  }
  return d;
}

std::vector<double> uniform_grid(const Interval& domain, long long grid_size) {
  if (grid_size < 2)
    raise(ErrorCode::BadConfig, "grid needs at least two points");
  std::vector<double> points(static_cast<std::size_t>(grid_size));
  const double a = domain.lo;
  const double b = domain.hi;
  for (long long g = 0; g < grid_size; ++g)
    points[static_cast<std::size_t>(g)] =
        a + static_cast<double>(g) * (b - a) / static_cast<double>(grid_size - 1);
  return points;
}

long long separated_count(const SystemModel& sys, long long n, double epsilon,
                          long long grid_size,
                          const std::vector<double>* restrict_to) {
  if (n < 1) raise(ErrorCode::BadConfig, "orbit length must be positive");
  if (!(epsilon > 0.0))
    raise(ErrorCode::BadConfig, "separation scale must be positive");
  const std::vector<double> points = gather_points(sys, grid_size, restrict_to);
  const auto rows = orbit_rows(sys, points, n);
  return greedy_count(points, rows, n, threshold(epsilon));
}

EstimateResult estimate_entropy(const SystemModel& sys,
                                const EstimateConfig& config) {
  if (config.n_min < 1)
    raise(ErrorCode::BadConfig, "window start must be at least 1");
  if (config.n_max <= config.n_min)
    raise(ErrorCode::BadConfig, "window needs at least two orbit lengths");
  if (config.epsilons.empty())
    raise(ErrorCode::BadConfig, "need at least one separation scale");
  for (std::size_t k = 0; k < config.epsilons.size(); ++k) {
    if (!(config.epsilons[k] > 0.0))
      raise(ErrorCode::BadConfig, "separation scales must be positive");
    if (k > 0 && !(config.epsilons[k] < config.epsilons[k - 1]))
      raise(ErrorCode::BadConfig, "separation scales must strictly decrease");
  }

  const std::vector<double>* restrict_to =
      config.restrict_to ? &*config.restrict_to : nullptr;
  const std::vector<double> points =
      gather_points(sys, config.grid_size, restrict_to);
  const auto rows = orbit_rows(sys, points, config.n_max);

  EstimateResult result;
  result.curves.reserve(config.epsilons.size());
  bool all_ones = true;
  for (double epsilon : config.epsilons) {
    GrowthCurve curve;
    curve.epsilon = epsilon;
    const double thr = threshold(epsilon);
    for (long long n = config.n_min; n <= config.n_max; ++n) {
      const long long count = greedy_count(points, rows, n, thr);
      if (count != 1) all_ones = false;
      curve.rows.push_back(
          {n, count,
           std::log(static_cast<double>(count)) / static_cast<double>(n)});
    }
    curve.estimate = slope_of(curve.rows);
    result.curves.push_back(std::move(curve));
  }

  if (all_ones) {
    // No scale resolved more than one orbit: report zero entropy but flag
    // that the window carried no growth signal.
    result.degenerate = true;
    result.h_est = 0.0;
    return result;
  }
  double best = result.curves.front().estimate;
  for (const GrowthCurve& curve : result.curves)
    best = std::max(best, curve.estimate);
  result.h_est = best;
  return result;
}

}  // namespace topent
