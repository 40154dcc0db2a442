#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "topent/interval.hpp"
#include "topent/system_model.hpp"
#include "topent/transition_matrix.hpp"

namespace topent {

// Candidate sets V_1..V_N: closed subintervals of the domain with pairwise
// disjoint interiors (touching endpoints are allowed). horizon 0 means "use
// the system's own horizon", which covers every time step under both
// extension rules.
struct CoverConfig {
  std::vector<Interval> sets;
  long long horizon = 0;
};

struct Witness {
  long long n;
  int i, j;                // 1-based set indices
  double uncovered_point;  // a point of V_j missed by the image of V_i
};

struct ExpansionReport {
  bool ok = false;  // witnesses empty: every required covering holds
  std::optional<TransitionMatrix> matrix;
  bool strict = false;  // positive gap between every pair of sets
  double min_gap = 0.0;
  bool exact_covering = false;
  double lambda_est = 0.0;  // exact min expansion factor over the sets
  double mu_est = 0.0;      // exact max slope magnitude over the sets
  long long horizon = 0;
  std::vector<Witness> witnesses;  // sorted by (n, i, j)
};

void validate_cover(const SystemModel& sys, const CoverConfig& cfg);
long long effective_horizon(const SystemModel& sys, const CoverConfig& cfg);

// True when the sets tile the domain exactly: sorted sets touch endpoint to
// endpoint and reach both domain ends.
bool covers_domain(const SystemModel& sys, const CoverConfig& cfg);

// Checks f_n(V_i) >= union of V_j over a_ij = 1 for every n up to the horizon,
// with exact interval images; also fills strictness, exact covering, and the
// expansion constants.
ExpansionReport verify_expansion(const SystemModel& sys, const CoverConfig& cfg,
                                 const TransitionMatrix& A);

// Largest matrix the system realizes: a_ij = 1 iff f_n(V_i) contains V_j for
// every n up to the horizon.
TransitionMatrix derive_matrix(const SystemModel& sys, const CoverConfig& cfg);

// True iff the sets cover the domain and f_n(V_i) EQUALS the union of the
// V_j with a_ij = 1, exactly, for every n up to the horizon.
bool verify_exact_covering(const SystemModel& sys, const CoverConfig& cfg,
                           const TransitionMatrix& A);

// Exact per-piece slopes restricted to the sets: first = min expansion factor
// (0 when some set folds, i.e. mixes slope signs), second = max |slope|.
// `samples` random pairs cross-check the two-sided bound; exact values are
// returned regardless.
std::pair<double, double> estimate_constants(const SystemModel& sys,
                                             const CoverConfig& cfg, int samples);

}  // namespace topent
