#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "topent/transition_matrix.hpp"

namespace topent {

// One-sided admissible sequence: an explicit prefix followed by an admissible
// cycle repeated forever. Symbols are 1-based. Holds a pointer to the matrix;
// the caller keeps the matrix alive.
class SymbolSequence {
 public:
  SymbolSequence(const TransitionMatrix& A, std::vector<int> prefix,
                 std::vector<int> cycle);

  int symbol(std::size_t k) const {
    if (k < prefix_.size()) return prefix_[k];
    return cycle_[(k - prefix_.size()) % cycle_.size()];
  }
  std::vector<int> truncate(std::size_t count) const;

  const std::vector<int>& prefix() const { return prefix_; }
  const std::vector<int>& cycle() const { return cycle_; }
  const TransitionMatrix& matrix() const { return *matrix_; }

 private:
  const TransitionMatrix* matrix_;
  std::vector<int> prefix_;
  std::vector<int> cycle_;
};

SymbolSequence shift(const SymbolSequence& s);

// First-disagreement ultrametric 2^-k, scanning indices 0..depth_cap; 0 when
// all scanned symbols agree.
double metric(const SymbolSequence& s, const SymbolSequence& t, int depth_cap);

// Deterministic for a seed: uniform choice among allowed successors at each
// step, then the shortest admissible cycle reachable from the last prefix
// symbol (the connecting path, if any, is appended to the prefix).
SymbolSequence random_sequence(const TransitionMatrix& A, std::uint64_t seed,
                               int prefix_len);

// Literal format "1,2,1,1|1,2": prefix before '|', repeating cycle after.
SymbolSequence parse_sequence(const TransitionMatrix& A, const std::string& literal);
std::string format_sequence(const SymbolSequence& s);

}  // namespace topent
