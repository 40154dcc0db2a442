#include "topent/transition_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace topent {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::EntryNotBit: return "EntryNotBit";
    case ErrorCode::ZeroRow: return "ZeroRow";
    case ErrorCode::ZeroColumn: return "ZeroColumn";
    case ErrorCode::CountTooLarge: return "CountTooLarge";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::InvalidSequence: return "InvalidSequence";
    case ErrorCode::InvalidSystem: return "InvalidSystem";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::InvalidCover: return "InvalidCover";
    case ErrorCode::NotATransitionMatrix: return "NotATransitionMatrix";
    case ErrorCode::EmptyLevel: return "EmptyLevel";
    case ErrorCode::NoContraction: return "NoContraction";
    case ErrorCode::BadConfig: return "BadConfig";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

TransitionMatrix::TransitionMatrix(int n, std::vector<std::uint8_t> entries)
    : n_(n), entries_(std::move(entries)), succ_(n) {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (at(i, j)) succ_[i].push_back(j);
}

TransitionMatrix TransitionMatrix::validate(
    const std::vector<std::vector<int>>& rows) {
  const int n = static_cast<int>(rows.size());
  if (n < 1) raise(ErrorCode::NotSquare, "matrix has no rows");
  for (int i = 0; i < n; ++i)
    if (static_cast<int>(rows[i].size()) != n)
      raise(ErrorCode::NotSquare,
            "row " + std::to_string(i + 1) + " has " +
                std::to_string(rows[i].size()) + " entries, expected " +
                std::to_string(n),
            i + 1);
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int v = rows[i][j];
      if (v != 0 && v != 1)
        raise(ErrorCode::EntryNotBit,
              "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                  ") is " + std::to_string(v));
      bits[static_cast<std::size_t>(i) * n + j] = static_cast<std::uint8_t>(v);
    }
  for (int i = 0; i < n; ++i) {
    int sum = 0;
    for (int j = 0; j < n; ++j) sum += bits[static_cast<std::size_t>(i) * n + j];
    if (sum == 0)
      raise(ErrorCode::ZeroRow, "row " + std::to_string(i + 1) + " is zero",
            i + 1);
  }
  for (int j = 0; j < n; ++j) {
    int sum = 0;
    for (int i = 0; i < n; ++i) sum += bits[static_cast<std::size_t>(i) * n + j];
    if (sum == 0)
      raise(ErrorCode::ZeroColumn,
            "column " + std::to_string(j + 1) + " is zero", j + 1);
  }
  return TransitionMatrix(n, std::move(bits));
}

CountMatrix multiply(const CountMatrix& lhs, const CountMatrix& rhs) {
  const int n = lhs.size;
  CountMatrix out{n, std::vector<BigInt>(static_cast<std::size_t>(n) * n)};
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const BigInt& a = lhs.at(i, k);
      if (a == 0) continue;
      for (int j = 0; j < n; ++j) {
        const BigInt& b = rhs.at(k, j);
        if (b != 0) out.entries[static_cast<std::size_t>(i) * n + j] += a * b;
      }
    }
  return out;
}

static CountMatrix count_identity(int n) {
  CountMatrix out{n, std::vector<BigInt>(static_cast<std::size_t>(n) * n)};
  for (int i = 0; i < n; ++i) out.entries[static_cast<std::size_t>(i) * n + i] = 1;
  return out;
}

static CountMatrix to_count(const TransitionMatrix& A) {
  const int n = A.size();
  CountMatrix out{n, std::vector<BigInt>(static_cast<std::size_t>(n) * n)};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out.entries[static_cast<std::size_t>(i) * n + j] = A.at(i, j);
  return out;
}

CountMatrix matrix_power(const TransitionMatrix& A, unsigned long k) {
  CountMatrix result = count_identity(A.size());
  CountMatrix base = to_count(A);
  while (k > 0) {
    if (k & 1UL) result = multiply(result, base);
    k >>= 1UL;
    if (k > 0) base = multiply(base, base);
  }
  return result;
}

BigInt entrywise_norm(const CountMatrix& M) {
  BigInt sum = 0;
  for (const BigInt& e : M.entries) sum += e;
  return sum;
}

double log_of_bigint(const BigInt& v) {
  if (v <= 0) raise(ErrorCode::BadConfig, "log of non-positive integer");
  const unsigned bits = boost::multiprecision::msb(v) + 1;
  if (bits <= 63) return std::log(v.convert_to<double>());
  const unsigned shift = bits - 63;
  const double top = BigInt(v >> shift).convert_to<double>();
  return std::log(top) + static_cast<double>(shift) * std::log(2.0);
}

WordList enumerate_allowable_words(const TransitionMatrix& A, int entries,
                                   std::uint64_t cap) {
  if (entries < 1) raise(ErrorCode::BadConfig, "word length must be >= 1");
  const BigInt total =
      entrywise_norm(matrix_power(A, static_cast<unsigned long>(entries - 1)));
  if (total > cap)
    raise(ErrorCode::CountTooLarge,
          "enumeration of " + total.str() + " words exceeds cap " +
              std::to_string(cap));
  const std::size_t count = total.convert_to<std::size_t>();

  WordList out;
  out.entries = entries;
  out.symbols.reserve(count * static_cast<std::size_t>(entries));
  std::vector<std::uint32_t> path(static_cast<std::size_t>(entries));
  // Depth-first over successor lists; ascending start symbols and ascending
  // successors yield lexicographic order.
  auto emit = [&](auto&& self, int depth, int symbol) -> void {
    path[depth] = static_cast<std::uint32_t>(symbol + 1);
    if (depth + 1 == entries) {
      out.symbols.insert(out.symbols.end(), path.begin(), path.end());
      return;
    }
    for (int next : A.successors(symbol)) self(self, depth + 1, next);
  };
  for (int s = 0; s < A.size(); ++s) emit(emit, 0, s);
  return out;
}

namespace {

// Iterative Tarjan over the digraph of the matrix.
std::vector<std::vector<int>> strongly_connected_components(
    const TransitionMatrix& A) {
  const int n = A.size();
  std::vector<int> index(n, -1), low(n, 0), stack;
  std::vector<char> on_stack(n, 0);
  std::vector<std::vector<int>> components;
  int next_index = 0;

  struct Frame {
    int v;
    std::size_t succ_pos;
  };
  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      Frame& f = frames.back();
      const std::vector<int>& succ = A.successors(f.v);
      if (f.succ_pos < succ.size()) {
        const int w = succ[f.succ_pos++];
        if (index[w] == -1) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        const int v = f.v;
        frames.pop_back();
        if (!frames.empty())
          low[frames.back().v] = std::min(low[frames.back().v], low[v]);
        if (low[v] == index[v]) {
          std::vector<int> comp;
          while (true) {
            const int w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            comp.push_back(w);
            if (w == v) break;
          }
          components.push_back(std::move(comp));
        }
      }
    }
  }
  return components;
}

// Perron root of the irreducible block on `nodes`. Power iteration on the
// block plus identity (primitive, so geometric convergence); stops when the
// two-sided ratio bracket min_i (Bv)_i/v_i <= rho(B) <= max_i (Bv)_i/v_i is
// narrower than tol. Successive Rayleigh quotients alone can agree long
// before convergence, so the bracket is the binding criterion.
double block_perron_root(const TransitionMatrix& A, const std::vector<int>& nodes,
                         double tol) {
  const std::size_t m = nodes.size();
  std::vector<std::vector<int>> succ(m);
  std::vector<int> pos(A.size(), -1);
  for (std::size_t t = 0; t < m; ++t) pos[nodes[t]] = static_cast<int>(t);
  for (std::size_t t = 0; t < m; ++t)
    for (int w : A.successors(nodes[t]))
      if (pos[w] != -1) succ[t].push_back(pos[w]);

  std::vector<double> v(m, 1.0), w(m);
  constexpr long kMaxIters = 1'000'000;
  double lo = 0.0, hi = 0.0;
  for (long iter = 0; iter < kMaxIters; ++iter) {
    for (std::size_t t = 0; t < m; ++t) {
      double acc = v[t];  // identity shift
      for (int j : succ[t]) acc += v[j];
      w[t] = acc;
    }
    lo = w[0] / v[0];
    hi = lo;
    double norm = 0.0;
    for (std::size_t t = 0; t < m; ++t) {
      const double r = w[t] / v[t];
      lo = std::min(lo, r);
      hi = std::max(hi, r);
      norm = std::max(norm, w[t]);
    }
    if (hi - lo < tol) return (lo + hi) / 2.0 - 1.0;
    for (std::size_t t = 0; t < m; ++t) v[t] = w[t] / norm;
  }
  raise(ErrorCode::NoConvergence,
        "power iteration bracket still " + std::to_string(hi - lo) +
            " wide after " + std::to_string(kMaxIters) +
            " iterations; last estimate " + std::to_string((lo + hi) / 2.0 - 1.0),
        kMaxIters);
}

}  // namespace

double spectral_radius(const TransitionMatrix& A, double tol) {
  if (!(tol > 0.0)) raise(ErrorCode::BadConfig, "tol must be positive");
  double rho = 0.0;
  for (const std::vector<int>& comp : strongly_connected_components(A)) {
    if (comp.size() == 1) {
      rho = std::max(rho, static_cast<double>(A.at(comp[0], comp[0])));
    } else {
      rho = std::max(rho, block_perron_root(A, comp, tol));
    }
  }
  return rho;
}

double gelfand_estimate(const TransitionMatrix& A, unsigned long n) {
  if (n < 1) raise(ErrorCode::BadConfig, "n must be >= 1");
  const BigInt norm = entrywise_norm(matrix_power(A, n));
  return std::exp(log_of_bigint(norm) / static_cast<double>(n));
}

int nu_bound(const TransitionMatrix& A) {
  const int n = A.size();
  int min_row = n + 1, min_col = n + 1;
  for (int i = 0; i < n; ++i) {
    int row = 0, col = 0;
    for (int j = 0; j < n; ++j) {
      row += A.at(i, j);
      col += A.at(j, i);
    }
    min_row = std::min(min_row, row);
    min_col = std::min(min_col, col);
  }
  return std::max(min_row, min_col);
}

bool is_irreducible(const TransitionMatrix& A) {
  return strongly_connected_components(A).size() == 1;
}

bool has_branching(const TransitionMatrix& A) {
  for (int i = 0; i < A.size(); ++i)
    if (static_cast<int>(A.successors(i).size()) >= 2) return true;
  return false;
}

}  // namespace topent
