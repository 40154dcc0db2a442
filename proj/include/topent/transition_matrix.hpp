#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "topent/errors.hpp"

namespace topent {

using BigInt = boost::multiprecision::cpp_int;

// Square 0/1 matrix with no zero row and no zero column. Symbols and reported
// indices are 1-based; storage is 0-based row-major.
class TransitionMatrix {
 public:
  static TransitionMatrix validate(const std::vector<std::vector<int>>& rows);

  int size() const { return n_; }
  int at(int i, int j) const {
    return entries_[static_cast<std::size_t>(i) * n_ + j];
  }
  // Ascending list of j with a_ij = 1.
  const std::vector<int>& successors(int i) const { return succ_[i]; }

  friend bool operator==(const TransitionMatrix&, const TransitionMatrix&) = default;

 private:
  TransitionMatrix(int n, std::vector<std::uint8_t> entries);

  int n_ = 0;
  std::vector<std::uint8_t> entries_;
  std::vector<std::vector<int>> succ_;
};

// Exact non-negative integer matrix; entry (i,j) of A^k counts the allowable
// words of k+1 entries leading from symbol i+1 to symbol j+1.
struct CountMatrix {
  int size = 0;
  std::vector<BigInt> entries;  // row-major

  const BigInt& at(int i, int j) const {
    return entries[static_cast<std::size_t>(i) * size + j];
  }
};

CountMatrix multiply(const CountMatrix& lhs, const CountMatrix& rhs);
CountMatrix matrix_power(const TransitionMatrix& A, unsigned long k);
BigInt entrywise_norm(const CountMatrix& M);

// Natural log of a positive big integer, accurate to a few ulp.
double log_of_bigint(const BigInt& v);

// Words stored back to back, `entries` symbols each, lexicographic order.
struct WordList {
  int entries = 0;
  std::vector<std::uint32_t> symbols;

  std::size_t count() const {
    return entries == 0 ? 0 : symbols.size() / static_cast<std::size_t>(entries);
  }
  const std::uint32_t* word(std::size_t w) const {
    return symbols.data() + w * static_cast<std::size_t>(entries);
  }
};

constexpr std::uint64_t kDefaultEnumerationCap = 4'000'000;

WordList enumerate_allowable_words(const TransitionMatrix& A, int entries,
                                   std::uint64_t cap = kDefaultEnumerationCap);

// Perron root via per-component power iteration with a two-sided ratio bracket;
// the returned value is within tol of rho(A). Always >= 1 for a transition matrix.
double spectral_radius(const TransitionMatrix& A, double tol);

// ||A^n||^(1/n) with the entrywise-sum norm, computed exactly before the root.
double gelfand_estimate(const TransitionMatrix& A, unsigned long n);

// max(min row sum, min column sum); never exceeds rho(A).
int nu_bound(const TransitionMatrix& A);

bool is_irreducible(const TransitionMatrix& A);
bool has_branching(const TransitionMatrix& A);

}  // namespace topent
