#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "support.hpp"
#include "topent/coupled_expansion.hpp"
#include "topent/system_model.hpp"

using namespace topent;
using testing::expect_error;
using testing::full_shift;

namespace {

SystemModel identity_system() {
  return SystemModel(Interval{0.0, 1.0}, {{{0.0, 1.0}, {0.0, 1.0}}},
                     Extension::Periodic);
}

CoverConfig halves() { return {{Interval{0.0, 0.5}, Interval{0.5, 1.0}}, 0}; }

// Outer thirds, with the right set starting at the exact breakpoint double of
// the clipped tent so the sets sit inside single monotone pieces.
CoverConfig outer_thirds() {
  return {{Interval{0.0, 1.0 / 3.0}, Interval{1.0 - 1.0 / 3.0, 1.0}}, 0};
}

}  // namespace

TEST_CASE("cover validation") {
  SystemModel tent2 = tent_family({2.0}, Extension::Periodic);

  validate_cover(tent2, halves());  // touching endpoints are allowed

  CHECK(expect_error([&] { validate_cover(tent2, {{}, 0}); }).code() ==
        ErrorCode::InvalidCover);
  CHECK(expect_error([&] {
          validate_cover(tent2, {{Interval{0.0, 0.6}, Interval{0.5, 1.0}}, 0});
        }).code() == ErrorCode::InvalidCover);
  CHECK(expect_error([&] {
          validate_cover(tent2, {{Interval{0.0, 0.5}, Interval{0.5, 1.2}}, 0});
        }).code() == ErrorCode::InvalidCover);
  CHECK(expect_error([&] {
          validate_cover(tent2, {{Interval{0.4, 0.4}}, 0});
        }).code() == ErrorCode::InvalidCover);
  CHECK(expect_error([&] {
          validate_cover(tent2, {{Interval{0.0, 1.0}}, -3});
        }).code() == ErrorCode::InvalidCover);

  CHECK(effective_horizon(tent2, halves()) == 1);
  CoverConfig fixed = halves();
  fixed.horizon = 5;
  CHECK(effective_horizon(tent2, fixed) == 5);
  SystemModel per = tent_family({2.4, 3.0}, Extension::Periodic);
  CHECK(effective_horizon(per, {{Interval{0.0, 1.0}}, 0}) == 2);

  CHECK(covers_domain(tent2, halves()));
  CHECK_FALSE(covers_domain(tent2, outer_thirds()));
}

TEST_CASE("expanding certificate for the clipped tent over outer thirds") {
  SystemModel tent3 = tent_family({3.0}, Extension::Periodic);
  CoverConfig cfg = outer_thirds();
  ExpansionReport rep = verify_expansion(tent3, cfg, full_shift(2));

  CHECK(rep.ok);
  CHECK(rep.witnesses.empty());
  CHECK(rep.strict);
  CHECK(rep.min_gap == cfg.sets[1].lo - cfg.sets[0].hi);
  CHECK(rep.min_gap == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK_FALSE(rep.exact_covering);
  CHECK(rep.lambda_est == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(rep.mu_est == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(rep.horizon == 1);
  REQUIRE(rep.matrix.has_value());
}

TEST_CASE("touching halves expand but are not strict") {
  SystemModel tent2 = tent_family({2.0}, Extension::Periodic);
  ExpansionReport rep = verify_expansion(tent2, halves(), full_shift(2));

  CHECK(rep.ok);
  CHECK_FALSE(rep.strict);
  CHECK(rep.min_gap == 0.0);
  CHECK(rep.exact_covering);
  CHECK(rep.lambda_est == 2.0);
  CHECK(rep.mu_est == 2.0);
}

TEST_CASE("identity produces witnesses sorted by (n, i, j)") {
  SystemModel ident = identity_system();
  ExpansionReport rep = verify_expansion(ident, halves(), full_shift(2));

  CHECK_FALSE(rep.ok);
  REQUIRE(rep.witnesses.size() == 2);
  CHECK(rep.witnesses[0].n == 1);
  CHECK(rep.witnesses[0].i == 1);
  CHECK(rep.witnesses[0].j == 2);
  CHECK(rep.witnesses[1].n == 1);
  CHECK(rep.witnesses[1].i == 2);
  CHECK(rep.witnesses[1].j == 1);
  // Each uncovered point really does lie in V_j but not in f(V_i) = V_i.
  CHECK(rep.witnesses[0].uncovered_point == 1.0);
  CHECK(rep.witnesses[1].uncovered_point == 0.0);
}

TEST_CASE("time-varying family certifies over its full period") {
  SystemModel per = tent_family({2.4, 3.0}, Extension::Periodic);
  CoverConfig cfg{
      {Interval{0.0, 1.0 / 3.0}, Interval{1.0 - 1.0 / 3.0, 0.796875}}, 0};
  TransitionMatrix A = TransitionMatrix::validate({{1, 1}, {0, 1}});

  ExpansionReport rep = verify_expansion(per, cfg, A);
  CHECK(rep.ok);
  CHECK(rep.strict);
  CHECK(rep.horizon == 2);
  CHECK(std::fabs(rep.lambda_est - 2.4) < 1e-12);
  CHECK(std::fabs(rep.mu_est - 3.0) < 1e-12);
}

TEST_CASE("size mismatches are rejected before any geometry runs") {
  SystemModel tent2 = tent_family({2.0}, Extension::Periodic);
  CHECK(expect_error([&] {
          verify_expansion(tent2, halves(), full_shift(3));
        }).code() == ErrorCode::SizeMismatch);
  CHECK(expect_error([&] {
          verify_exact_covering(tent2, halves(), full_shift(3));
        }).code() == ErrorCode::SizeMismatch);
}

TEST_CASE("derive_matrix finds the largest realized matrix") {
  SystemModel tent3 = tent_family({3.0}, Extension::Periodic);
  TransitionMatrix d3 = derive_matrix(tent3, outer_thirds());
  CHECK(d3 == full_shift(2));

  // f maps [0, 1/2] over everything but [3/4, 1] only over [0, 1/2].
  SystemModel tent2 = tent_family({2.0}, Extension::Periodic);
  CoverConfig split{{Interval{0.0, 0.5}, Interval{0.75, 1.0}}, 0};
  TransitionMatrix d2 = derive_matrix(tent2, split);
  CHECK(d2 == TransitionMatrix::validate({{1, 1}, {1, 0}}));

  // The identity realizes exactly the identity matrix: every set covers
  // itself and nothing else.
  SystemModel ident = identity_system();
  CHECK(derive_matrix(ident, halves()) ==
        TransitionMatrix::validate({{1, 0}, {0, 1}}));

  // A folded set whose image misses every set leaves a zero row.
  Error e = expect_error([&] {
    derive_matrix(tent2, {{Interval{0.4, 0.6}}, 0});
  });
  CHECK(e.code() == ErrorCode::NotATransitionMatrix);
  CHECK(e.index() == 1);
}

TEST_CASE("derived matrices verify with no witnesses") {
  SystemModel tent3 = tent_family({3.0}, Extension::Periodic);
  SystemModel tent2 = tent_family({2.0}, Extension::Periodic);
  SystemModel per = tent_family({2.4, 3.0}, Extension::Periodic);
  CoverConfig c24{
      {Interval{0.0, 1.0 / 3.0}, Interval{1.0 - 1.0 / 3.0, 0.796875}}, 0};

  struct Case {
    const SystemModel* sys;
    CoverConfig cfg;
  } cases[] = {{&tent3, outer_thirds()}, {&tent2, halves()}, {&per, c24}};

  for (const Case& c : cases) {
    TransitionMatrix derived = derive_matrix(*c.sys, c.cfg);
    ExpansionReport rep = verify_expansion(*c.sys, c.cfg, derived);
    CHECK(rep.ok);
    CHECK(rep.witnesses.empty());
  }
}

TEST_CASE("exact covering requires tiling plus image equality") {
  SystemModel tent2 = tent_family({2.0}, Extension::Periodic);
  SystemModel tent3 = tent_family({3.0}, Extension::Periodic);
  SystemModel ident = identity_system();
  TransitionMatrix id2 = TransitionMatrix::validate({{1, 0}, {0, 1}});

  CHECK(verify_exact_covering(tent2, halves(), full_shift(2)));
  CHECK_FALSE(verify_exact_covering(tent3, outer_thirds(), full_shift(2)));
  CHECK(verify_exact_covering(ident, halves(), id2));
  CHECK_FALSE(verify_exact_covering(ident, halves(), full_shift(2)));

  // Exact covering is stronger than the covering relations.
  CHECK(verify_expansion(tent2, halves(), full_shift(2)).ok);
  CHECK(verify_expansion(ident, halves(), id2).ok);
}

TEST_CASE("slope constants are exact on piecewise-linear systems") {
  SystemModel tent3 = tent_family({3.0}, Extension::Periodic);
  auto [l3, m3] = estimate_constants(tent3, outer_thirds(), 2);
  CHECK(l3 == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(m3 == doctest::Approx(3.0).epsilon(1e-12));

  SystemModel per = tent_family({2.5, 3.0}, Extension::Periodic);
  auto [l25, m25] = estimate_constants(per, outer_thirds(), 2);
  CHECK(l25 == 2.5);
  CHECK(m25 == doctest::Approx(3.0).epsilon(1e-12));

  SystemModel ident = identity_system();
  auto [li, mi] = estimate_constants(ident, halves(), 2);
  CHECK(li == 1.0);
  CHECK(mi == 1.0);

  // A set straddling the fold mixes slope signs: no expansion factor.
  SystemModel tent2 = tent_family({2.0}, Extension::Periodic);
  auto [lf, mf] = estimate_constants(tent2, {{Interval{0.4, 0.6}}, 0}, 2);
  CHECK(lf == 0.0);
  CHECK(mf == 2.0);
}

TEST_CASE("sampled pairs respect the exact slope bounds") {
  SystemModel per = tent_family({2.4, 3.0}, Extension::Periodic);
  CoverConfig cfg{
      {Interval{0.0, 1.0 / 3.0}, Interval{1.0 - 1.0 / 3.0, 0.796875}}, 0};

  // The cross-validation pass runs inside; a violation would raise.
  auto heavy = estimate_constants(per, cfg, 10000);
  auto light = estimate_constants(per, cfg, 2);
  CHECK(heavy == light);

  std::mt19937_64 rng(4242);
  auto uniform = [&](const Interval& v) {
    return v.lo + v.length() * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
  };
  for (int trial = 0; trial < 10000; ++trial) {
    const Interval& v = cfg.sets[rng() % 2];
    const long long n = 1 + static_cast<long long>(rng() % 2);
    const double x = uniform(v), y = uniform(v);
    const double dx = std::fabs(x - y);
    const double df = std::fabs(evaluate(per, n, x) - evaluate(per, n, y));
    CHECK(df <= light.second * dx + 1e-12);
    CHECK(df + 1e-12 >= light.first * dx);
  }
}
