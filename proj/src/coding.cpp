#include "topent/coding.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "topent/errors.hpp"

namespace topent {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void check_sizes(const CoverConfig& cfg, const TransitionMatrix& A) {
  if (static_cast<std::size_t>(A.size()) != cfg.sets.size())
    raise(ErrorCode::SizeMismatch,
          "matrix size " + std::to_string(A.size()) + " does not match " +
              std::to_string(cfg.sets.size()) + " candidate sets");
}

void check_word(const std::vector<int>& word, std::size_t n_sets) {
  if (word.empty())
    raise(ErrorCode::BadConfig, "word needs at least one symbol");
  for (std::size_t k = 0; k < word.size(); ++k)
    if (word[k] < 1 || static_cast<std::size_t>(word[k]) > n_sets)
      raise(ErrorCode::InvalidSequence,
            "word symbol " + std::to_string(word[k]) + " at position " +
                std::to_string(k) + " is outside 1.." + std::to_string(n_sets));
}

// {x in V_{w_0} : iterate k from time n lies in V_{w_k}, k < len}: pulls
// {V_{w_{len-1}}} back through maps n+len-2 .. n, restricting to V_{w_k} at
// each step. Empty result means no point realizes the word.
std::vector<Interval> backward_chain(const SystemModel& sys,
                                     const std::vector<Interval>& sets,
                                     const std::vector<int>& word,
                                     std::size_t len, long long n) {
  std::vector<Interval> S{sets[static_cast<std::size_t>(word[len - 1]) - 1]};
  for (std::size_t k = len - 1; k-- > 0;) {
    const Interval& window = sets[static_cast<std::size_t>(word[k]) - 1];
    std::vector<Interval> next;
    for (const Interval& comp : S) {
      auto parts = preimage_in_interval(sys, n + static_cast<long long>(k),
                                        comp, window);
      next.insert(next.end(), parts.begin(), parts.end());
    }
    S = merge_union(std::move(next));
    if (S.empty()) break;
  }
  return S;
}

// merge_union output is sorted, so the hull is front.lo .. back.hi.
double union_diameter(const std::vector<Interval>& u) {
  if (u.size() == 1) return u.front().length();
  return u.back().hi - u.front().lo;
}

double union_midpoint(const std::vector<Interval>& u) {
  return Interval{u.front().lo, u.back().hi}.midpoint();
}

}  // namespace

NestedRefinement refine_word(const SystemModel& sys, const CoverConfig& cfg,
                             const TransitionMatrix& A,
                             const std::vector<int>& word, long long n) {
  validate_cover(sys, cfg);
  check_sizes(cfg, A);
  check_word(word, cfg.sets.size());
  if (n < 1) raise(ErrorCode::BadConfig, "time indices are 1-based");

  NestedRefinement out;
  out.levels.reserve(word.size());
  out.levels.push_back({cfg.sets[static_cast<std::size_t>(word[0]) - 1]});
  for (std::size_t m = 1; m < word.size(); ++m) {
    // Fresh backward pass, then intersect with the previous level so the
    // stored sets are nested by construction.
    std::vector<Interval> S = backward_chain(sys, cfg.sets, word, m + 1, n);
    S = intersect_unions(S, out.levels.back());
    if (S.empty())
      raise(ErrorCode::EmptyLevel,
            "no point realizes the word through level " + std::to_string(m),
            static_cast<long long>(m));
    out.levels.push_back(std::move(S));
  }
  out.diameters.reserve(out.levels.size());
  for (const auto& level : out.levels)
    out.diameters.push_back(union_diameter(level));
  return out;
}

NestedRefinement refine(const SystemModel& sys, const CoverConfig& cfg,
                        const TransitionMatrix& A, const SymbolSequence& alpha,
                        long long n, int depth) {
  if (depth < 0) raise(ErrorCode::BadConfig, "depth must be non-negative");
  return refine_word(sys, cfg, A,
                     alpha.truncate(static_cast<std::size_t>(depth) + 1), n);
}

CodedPoint code_point(const SystemModel& sys, const CoverConfig& cfg,
                      const TransitionMatrix& A, const SymbolSequence& alpha,
                      long long n, double target_radius) {
  if (!(target_radius > 0.0))
    raise(ErrorCode::BadConfig, "target radius must be positive");
  const double lambda = estimate_constants(sys, cfg, 2).first;
  if (lambda <= 1.0)
    raise(ErrorCode::NoContraction,
          "minimum expansion factor " + fmt(lambda) +
              " is not above 1, so refinements need not shrink");

  const double span = sys.domain().length();
  // Levels contract by at least 1/lambda, so this depth suffices in theory;
  // the cap guards against stalls from set geometry the bound misses.
  const int predicted = std::max(
      1, static_cast<int>(
             std::ceil(std::log(span / target_radius) / std::log(lambda))) +
             1);
  const int cap = predicted * 10;
  int depth = predicted;
  for (;;) {
    NestedRefinement ref = refine(sys, cfg, A, alpha, n, depth);
    for (std::size_t m = 0; m < ref.levels.size(); ++m) {
      if (ref.diameters[m] <= 2.0 * target_radius) {
        return CodedPoint{union_midpoint(ref.levels[m]),
                          ref.diameters[m] / 2.0, static_cast<int>(m)};
      }
    }
    if (depth >= cap)
      raise(ErrorCode::NoContraction,
            "refinement diameter stalled at " + fmt(ref.diameters.back()) +
                " after " + std::to_string(depth) + " levels",
            depth);
    depth = std::min(depth * 2, cap);
  }
}

ItineraryResult itinerary(const SystemModel& sys, const CoverConfig& cfg,
                          double x, long long n, int length) {
  validate_cover(sys, cfg);
  if (length < 0) raise(ErrorCode::BadConfig, "length must be non-negative");
  if (n < 1) raise(ErrorCode::BadConfig, "time indices are 1-based");
  if (!sys.domain().contains(x))
    raise(ErrorCode::OutOfDomain,
          "point " + fmt(x) + " lies outside the domain");

  ItineraryResult out;
  double p = x;
  for (int k = 0; k < length; ++k) {
    // Interiors are disjoint, so at most a shared endpoint is ambiguous;
    // ties go to the lowest set index.
    int symbol = 0;
    for (std::size_t s = 0; s < cfg.sets.size(); ++s) {
      if (cfg.sets[s].contains(p)) {
        symbol = static_cast<int>(s) + 1;
        break;
      }
    }
    if (symbol == 0) {
      out.undefined_at = k;
      return out;
    }
    out.symbols.push_back(symbol);
    if (k + 1 < length) p = evaluate(sys, n + k, p);
  }
  return out;
}

double semiconjugacy_residual(const SystemModel& sys, const CoverConfig& cfg,
                              const TransitionMatrix& A,
                              const SymbolSequence& alpha, long long n,
                              double target_radius) {
  CodedPoint point = code_point(sys, cfg, A, alpha, n, target_radius);
  CodedPoint shifted = code_point(sys, cfg, A, shift(alpha), n + 1, target_radius);
  return std::abs(evaluate(sys, n, point.value) - shifted.value);
}

std::vector<double> coded_corpus(const SystemModel& sys, const CoverConfig& cfg,
                                 const TransitionMatrix& A, int depth,
                                 long long n, std::uint64_t cap) {
  validate_cover(sys, cfg);
  check_sizes(cfg, A);
  if (depth < 1) raise(ErrorCode::BadConfig, "corpus depth must be positive");
  if (n < 1) raise(ErrorCode::BadConfig, "time indices are 1-based");

  WordList words = enumerate_allowable_words(A, depth, cap);
  std::vector<double> out;
  out.reserve(words.count());
  std::vector<int> word(static_cast<std::size_t>(depth));
  for (std::size_t w = 0; w < words.count(); ++w) {
    const std::uint32_t* symbols = words.word(w);
    for (int k = 0; k < depth; ++k) word[static_cast<std::size_t>(k)] =
        static_cast<int>(symbols[k]);
    std::vector<Interval> S =
        backward_chain(sys, cfg.sets, word, word.size(), n);
    if (S.empty())
      raise(ErrorCode::EmptyLevel,
            "admissible word " + std::to_string(w) + " pins no point",
            depth - 1);
    out.push_back(union_midpoint(S));
  }
  return out;
}

}  // namespace topent
