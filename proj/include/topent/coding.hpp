#pragma once

#include <cstdint>
#include <vector>

#include "topent/coupled_expansion.hpp"
#include "topent/subshift.hpp"
#include "topent/system_model.hpp"

namespace topent {

// levels[m] holds the points whose iterates k = 0..m starting at time n stay
// in the sets named by the word; each level is a finite union of disjoint
// closed intervals nested inside the previous level.
struct NestedRefinement {
  std::vector<std::vector<Interval>> levels;
  // Component length once a single component remains; hull length before.
  std::vector<double> diameters;
};

NestedRefinement refine_word(const SystemModel& sys, const CoverConfig& cfg,
                             const TransitionMatrix& A,
                             const std::vector<int>& word, long long n);

NestedRefinement refine(const SystemModel& sys, const CoverConfig& cfg,
                        const TransitionMatrix& A, const SymbolSequence& alpha,
                        long long n, int depth);

// Rigorous enclosure of the point the symbol sequence codes: the true point
// lies in [value - radius, value + radius].
struct CodedPoint {
  double value = 0.0;
  double radius = 0.0;
  int depth = 0;
};

// Deepens the refinement until its diameter is at most 2 * target_radius.
// Requires an expansion factor above 1 (checked from exact slopes); gives up
// at ten times the contraction-predicted depth.
CodedPoint code_point(const SystemModel& sys, const CoverConfig& cfg,
                      const TransitionMatrix& A, const SymbolSequence& alpha,
                      long long n, double target_radius);

struct ItineraryResult {
  std::vector<int> symbols;  // filled up to the first undefined index
  int undefined_at = -1;
  bool defined() const { return undefined_at < 0; }
};

// Records which set each iterate of x visits, starting at time n. Interiors
// are pairwise disjoint, so only shared endpoints are ambiguous; those ties
// resolve to the lowest set index.
ItineraryResult itinerary(const SystemModel& sys, const CoverConfig& cfg,
                          double x, long long n, int length);

// |f_n(point(alpha, n)) - point(shift(alpha), n+1)|, both points coded to
// target_radius.
double semiconjugacy_residual(const SystemModel& sys, const CoverConfig& cfg,
                              const TransitionMatrix& A,
                              const SymbolSequence& alpha, long long n,
                              double target_radius);

// Enclosure midpoints of every admissible word of the given depth, coded from
// time n: the evaluation set for subsystem entropy estimates.
std::vector<double> coded_corpus(const SystemModel& sys, const CoverConfig& cfg,
                                 const TransitionMatrix& A, int depth,
                                 long long n,
                                 std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace topent
