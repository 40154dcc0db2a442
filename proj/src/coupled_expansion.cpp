#include "topent/coupled_expansion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace topent {

void validate_cover(const SystemModel& sys, const CoverConfig& cfg) {
  const std::size_t n = cfg.sets.size();
  if (n == 0) raise(ErrorCode::InvalidCover, "cover has no sets");
  for (std::size_t i = 0; i < n; ++i) {
    const Interval& v = cfg.sets[i];
    if (!(v.lo < v.hi))
      raise(ErrorCode::InvalidCover,
            "set " + std::to_string(i + 1) + " must have positive length",
            static_cast<long long>(i + 1));
    if (!sys.domain().contains(v))
      raise(ErrorCode::InvalidCover,
            "set " + std::to_string(i + 1) + " leaves the domain",
            static_cast<long long>(i + 1));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double lo = std::max(cfg.sets[i].lo, cfg.sets[j].lo);
      const double hi = std::min(cfg.sets[i].hi, cfg.sets[j].hi);
      if (lo < hi)
        raise(ErrorCode::InvalidCover,
              "sets " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                  " share interior points");
    }
  if (cfg.horizon < 0)
    raise(ErrorCode::InvalidCover, "horizon must be >= 0");
}

long long effective_horizon(const SystemModel& sys, const CoverConfig& cfg) {
  return cfg.horizon > 0 ? cfg.horizon : sys.horizon();
}

bool covers_domain(const SystemModel& sys, const CoverConfig& cfg) {
  validate_cover(sys, cfg);
  std::vector<Interval> sorted = cfg.sets;
  std::sort(sorted.begin(), sorted.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  if (sorted.front().lo != sys.domain().lo) return false;
  for (std::size_t k = 1; k < sorted.size(); ++k)
    if (sorted[k].lo != sorted[k - 1].hi) return false;
  return sorted.back().hi == sys.domain().hi;
}

namespace {

void check_size(const CoverConfig& cfg, const TransitionMatrix& A) {
  if (static_cast<std::size_t>(A.size()) != cfg.sets.size())
    raise(ErrorCode::SizeMismatch,
          "matrix size " + std::to_string(A.size()) + " vs " +
              std::to_string(cfg.sets.size()) + " cover sets");
}

// Exact slope inventory of map(n) restricted to positive-length overlaps with
// each set: min expansion factor (0 when a set mixes slope signs or hits a
// plateau) and max |slope|.
void slope_bounds(const SystemModel& sys, const CoverConfig& cfg,
                  double& lambda, double& mu) {
  const long long H = effective_horizon(sys, cfg);
  lambda = std::numeric_limits<double>::infinity();
  mu = 0.0;
  for (long long n = 1; n <= H; ++n) {
    const PiecewiseLinearMap& m = sys.map(n);
    for (const Interval& v : cfg.sets) {
      double set_min = std::numeric_limits<double>::infinity();
      bool pos = false, neg = false;
      for (std::size_t k = 0; k + 1 < m.breakpoints.size(); ++k) {
        const double u = std::max(m.breakpoints[k], v.lo);
        const double w = std::min(m.breakpoints[k + 1], v.hi);
        if (!(u < w)) continue;
        const double slope = (m.values[k + 1] - m.values[k]) /
                             (m.breakpoints[k + 1] - m.breakpoints[k]);
        if (slope > 0.0) pos = true;
        if (slope < 0.0) neg = true;
        set_min = std::min(set_min, std::fabs(slope));
        mu = std::max(mu, std::fabs(slope));
      }
      // A fold (both signs) makes nearby points collide, so the true lower
      // expansion factor on this set is 0, not the min piece slope.
      lambda = std::min(lambda, (pos && neg) ? 0.0 : set_min);
    }
  }
}

}  // namespace

ExpansionReport verify_expansion(const SystemModel& sys, const CoverConfig& cfg,
                                 const TransitionMatrix& A) {
  validate_cover(sys, cfg);
  check_size(cfg, A);
  const long long H = effective_horizon(sys, cfg);
  const int N = A.size();

  ExpansionReport report;
  report.matrix = A;
  report.horizon = H;
  for (long long n = 1; n <= H; ++n)
    for (int i = 0; i < N; ++i) {
      const ImageResult image = image_of_interval(sys, n, cfg.sets[i]);
      for (int j : A.successors(i)) {
        const Interval& target = cfg.sets[j];
        if (image.hull.contains(target)) continue;
        const double missed =
            target.lo < image.hull.lo ? target.lo : target.hi;
        report.witnesses.push_back(Witness{n, i + 1, j + 1, missed});
      }
    }
  report.ok = report.witnesses.empty();

  report.min_gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j)
      report.min_gap = std::min(report.min_gap, gap(cfg.sets[i], cfg.sets[j]));
  if (N == 1) report.min_gap = 0.0;
  report.strict = N > 1 && report.min_gap > 0.0;

  report.exact_covering = verify_exact_covering(sys, cfg, A);
  slope_bounds(sys, cfg, report.lambda_est, report.mu_est);
  return report;
}

TransitionMatrix derive_matrix(const SystemModel& sys, const CoverConfig& cfg) {
  validate_cover(sys, cfg);
  const long long H = effective_horizon(sys, cfg);
  const int N = static_cast<int>(cfg.sets.size());
  std::vector<std::vector<int>> rows(N, std::vector<int>(N, 1));
  for (long long n = 1; n <= H; ++n)
    for (int i = 0; i < N; ++i) {
      const ImageResult image = image_of_interval(sys, n, cfg.sets[i]);
      for (int j = 0; j < N; ++j)
        if (!image.hull.contains(cfg.sets[j])) rows[i][j] = 0;
    }
  for (int i = 0; i < N; ++i)
    if (std::all_of(rows[i].begin(), rows[i].end(), [](int b) { return !b; }))
      raise(ErrorCode::NotATransitionMatrix,
            "no set is always covered from set " + std::to_string(i + 1),
            i + 1);
  for (int j = 0; j < N; ++j) {
    bool any = false;
    for (int i = 0; i < N; ++i) any = any || rows[i][j];
    if (!any)
      raise(ErrorCode::NotATransitionMatrix,
            "set " + std::to_string(j + 1) + " is never covered", j + 1);
  }
  return TransitionMatrix::validate(rows);
}

bool verify_exact_covering(const SystemModel& sys, const CoverConfig& cfg,
                           const TransitionMatrix& A) {
  validate_cover(sys, cfg);
  check_size(cfg, A);
  if (!covers_domain(sys, cfg)) return false;
  const long long H = effective_horizon(sys, cfg);
  for (long long n = 1; n <= H; ++n)
    for (int i = 0; i < A.size(); ++i) {
      std::vector<Interval> targets;
      for (int j : A.successors(i)) targets.push_back(cfg.sets[j]);
      const std::vector<Interval> expected = merge_union(std::move(targets));
      const ImageResult image = image_of_interval(sys, n, cfg.sets[i]);
      if (!image.is_interval || expected.size() != 1 ||
          !(expected.front() == image.hull))
        return false;
    }
  return true;
}

std::pair<double, double> estimate_constants(const SystemModel& sys,
                                             const CoverConfig& cfg,
                                             int samples) {
  if (samples < 2) raise(ErrorCode::BadConfig, "samples must be >= 2");
  validate_cover(sys, cfg);
  double lambda = 0.0, mu = 0.0;
  slope_bounds(sys, cfg, lambda, mu);

  // The exact values already bound every pair; the sampled pass only guards
  // the slope inventory against implementation drift.
  const long long H = effective_horizon(sys, cfg);
  std::mt19937_64 rng(0x746f70656e74ULL);
  constexpr double kSlack = 1e-12;
  for (int t = 0; t < samples; ++t) {
    const Interval& v = cfg.sets[rng() % cfg.sets.size()];
    const long long n = 1 + static_cast<long long>(rng() % H);
    auto draw = [&] {
      const double u = static_cast<double>(rng()) / 18446744073709551616.0;
      return v.lo + u * (v.hi - v.lo);
    };
    const double x = draw(), y = draw();
    const double dx = std::fabs(x - y);
    const double df = std::fabs(evaluate(sys, n, x) - evaluate(sys, n, y));
    if (df > mu * dx + kSlack || df + kSlack < lambda * dx)
      raise(ErrorCode::InvalidCover,
            "slope bounds violated by sampled pair; inventory is inconsistent");
  }
  return {lambda, mu};
}

}  // namespace topent
