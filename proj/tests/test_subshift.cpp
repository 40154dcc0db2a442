#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "support.hpp"
#include "topent/subshift.hpp"

using namespace topent;
using testing::expect_error;
using testing::golden_mean;

TEST_CASE("sequences index prefix first, then the repeating cycle") {
  TransitionMatrix gm = golden_mean();
  SymbolSequence s(gm, {1, 2}, {1, 1, 2});
  CHECK(s.symbol(0) == 1);
  CHECK(s.symbol(1) == 2);
  CHECK(s.symbol(2) == 1);
  CHECK(s.symbol(4) == 2);
  CHECK(s.symbol(5) == 1);  // cycle repeats
  CHECK(s.truncate(7) == std::vector<int>{1, 2, 1, 1, 2, 1, 1});
}

TEST_CASE("constructing an inadmissible sequence is rejected") {
  TransitionMatrix gm = golden_mean();
  Error e = expect_error([&] { SymbolSequence(gm, {2, 2}, {1}); });
  CHECK(e.code() == ErrorCode::InvalidSequence);

  // The cycle must close up admissibly when it repeats: {1,2} wraps 2->1,
  // which is allowed, while the cycle {2} wraps onto the forbidden 2,2.
  SymbolSequence ok(gm, {}, {1, 2});
  CHECK(ok.symbol(2) == 1);
  e = expect_error([&] { SymbolSequence(gm, {1}, {2}); });
  CHECK(e.code() == ErrorCode::InvalidSequence);

  e = expect_error([&] { SymbolSequence(gm, {0}, {1}); });
  CHECK(e.code() == ErrorCode::InvalidSequence);
  e = expect_error([&] { SymbolSequence(gm, {}, {}); });
  CHECK(e.code() == ErrorCode::InvalidSequence);
}

TEST_CASE("shift drops the head and rotates pure cycles") {
  TransitionMatrix gm = golden_mean();

  SymbolSequence per(gm, {}, {1, 2});
  CHECK(format_sequence(shift(per)) == "|2,1");

  SymbolSequence pre(gm, {1, 1, 2}, {1});
  CHECK(format_sequence(shift(pre)) == "1,2|1");

  // Shifting a pure cycle by its length restores every symbol.
  SymbolSequence s = per;
  for (int k = 0; k < 2; ++k) s = shift(s);
  for (std::size_t k = 0; k < 12; ++k) CHECK(s.symbol(k) == per.symbol(k));

  // The shift agrees with re-indexing.
  SymbolSequence t(gm, {2, 1, 1}, {1, 2});
  SymbolSequence st = shift(t);
  for (std::size_t k = 0; k < 12; ++k) CHECK(st.symbol(k) == t.symbol(k + 1));
}

TEST_CASE("metric is the first-disagreement ultrametric") {
  TransitionMatrix gm = golden_mean();
  SymbolSequence s(gm, {1, 1, 1, 1}, {1});
  SymbolSequence t(gm, {1, 1, 1, 2}, {1});
  SymbolSequence u(gm, {2}, {1});

  CHECK(metric(s, s, 64) == 0.0);
  CHECK(metric(s, u, 64) == 1.0);     // differ at index 0
  CHECK(metric(s, t, 64) == 0.125);   // differ first at index 3
  CHECK(metric(t, s, 64) == 0.125);   // symmetric

  // metric < 2^-(m+1) forces agreement through index m+1.
  CHECK(metric(s, t, 64) < std::pow(2.0, -2));
  for (std::size_t k = 0; k <= 2; ++k) CHECK(s.symbol(k) == t.symbol(k));

  // Ultrametric inequality on random admissible triples.
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    SymbolSequence a = random_sequence(gm, rng(), 6);
    SymbolSequence b = random_sequence(gm, rng(), 6);
    SymbolSequence c = random_sequence(gm, rng(), 6);
    CHECK(metric(a, c, 64) <= std::max(metric(a, b, 64), metric(b, c, 64)));
    CHECK(metric(a, b, 64) == metric(b, a, 64));
  }
}

TEST_CASE("random sequences are admissible and seed-deterministic") {
  TransitionMatrix gm = golden_mean();
  CHECK(format_sequence(random_sequence(gm, 42, 8)) == "1,1,1,1,2,1,1,1|1");

  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    SymbolSequence s = random_sequence(gm, seed, 12);
    SymbolSequence again = random_sequence(gm, seed, 12);
    CHECK(format_sequence(s) == format_sequence(again));
    // The golden-mean shift forbids 2,2 everywhere.
    for (std::size_t k = 0; k + 1 < 30; ++k)
      CHECK_FALSE((s.symbol(k) == 2 && s.symbol(k + 1) == 2));
  }
}

TEST_CASE("parse and format round trip") {
  TransitionMatrix gm = golden_mean();

  const std::string lit = "1,2,1,1|1,2";
  CHECK(format_sequence(parse_sequence(gm, lit)) == lit);
  CHECK(format_sequence(parse_sequence(gm, "|1")) == "|1");
  CHECK(format_sequence(parse_sequence(gm, "2|1")) == "2|1");

  SymbolSequence s = parse_sequence(gm, "1,2|1");
  CHECK(s.prefix() == std::vector<int>{1, 2});
  CHECK(s.cycle() == std::vector<int>{1});
  CHECK(s.truncate(5) == std::vector<int>{1, 2, 1, 1, 1});
}

TEST_CASE("parse rejects malformed or inadmissible literals") {
  TransitionMatrix gm = golden_mean();

  CHECK(expect_error([&] { parse_sequence(gm, ""); }).code() ==
        ErrorCode::ParseError);
  CHECK(expect_error([&] { parse_sequence(gm, "1,2"); }).code() ==
        ErrorCode::ParseError);
  CHECK(expect_error([&] { parse_sequence(gm, "1,,2|1"); }).code() ==
        ErrorCode::ParseError);
  CHECK(expect_error([&] { parse_sequence(gm, "a|b"); }).code() ==
        ErrorCode::ParseError);

  // "1|" parses structurally (prefix 1, empty cycle); the empty cycle is then
  // rejected as an invalid sequence, not a parse failure.
  CHECK(expect_error([&] { parse_sequence(gm, "1|"); }).code() ==
        ErrorCode::InvalidSequence);
  CHECK(expect_error([&] { parse_sequence(gm, "2,2|1"); }).code() ==
        ErrorCode::InvalidSequence);
  CHECK(expect_error([&] { parse_sequence(gm, "1|2"); }).code() ==
        ErrorCode::InvalidSequence);
  CHECK(expect_error([&] { parse_sequence(gm, "0|1"); }).code() ==
        ErrorCode::InvalidSequence);
  CHECK(expect_error([&] { parse_sequence(gm, "3|1"); }).code() ==
        ErrorCode::InvalidSequence);
}
