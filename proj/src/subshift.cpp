#include "topent/subshift.hpp"

#include <cmath>
#include <limits>
#include <queue>
#include <random>

namespace topent {

namespace {

void check_symbol(const TransitionMatrix& A, int s) {
  if (s < 1 || s > A.size())
    raise(ErrorCode::InvalidSequence,
          "symbol " + std::to_string(s) + " outside 1.." +
              std::to_string(A.size()));
}

void check_pair(const TransitionMatrix& A, int a, int b) {
  if (!A.at(a - 1, b - 1))
    raise(ErrorCode::InvalidSequence, "pair (" + std::to_string(a) + "," +
                                          std::to_string(b) + ") is not allowed");
}

}  // namespace

SymbolSequence::SymbolSequence(const TransitionMatrix& A, std::vector<int> prefix,
                               std::vector<int> cycle)
    : matrix_(&A), prefix_(std::move(prefix)), cycle_(std::move(cycle)) {
  if (cycle_.empty())
    raise(ErrorCode::InvalidSequence, "tail cycle must be nonempty");
  for (int s : prefix_) check_symbol(A, s);
  for (int s : cycle_) check_symbol(A, s);
  for (std::size_t k = 1; k < prefix_.size(); ++k)
    check_pair(A, prefix_[k - 1], prefix_[k]);
  if (!prefix_.empty()) check_pair(A, prefix_.back(), cycle_.front());
  for (std::size_t k = 1; k < cycle_.size(); ++k)
    check_pair(A, cycle_[k - 1], cycle_[k]);
  check_pair(A, cycle_.back(), cycle_.front());
}

std::vector<int> SymbolSequence::truncate(std::size_t count) const {
  std::vector<int> out(count);
  for (std::size_t k = 0; k < count; ++k) out[k] = symbol(k);
  return out;
}

SymbolSequence shift(const SymbolSequence& s) {
  if (!s.prefix().empty()) {
    std::vector<int> prefix(s.prefix().begin() + 1, s.prefix().end());
    return SymbolSequence(s.matrix(), std::move(prefix), s.cycle());
  }
  std::vector<int> cycle(s.cycle().begin() + 1, s.cycle().end());
  cycle.push_back(s.cycle().front());
  return SymbolSequence(s.matrix(), {}, std::move(cycle));
}

double metric(const SymbolSequence& s, const SymbolSequence& t, int depth_cap) {
  if (depth_cap < 0) raise(ErrorCode::BadConfig, "depth_cap must be >= 0");
  for (int k = 0; k <= depth_cap; ++k)
    if (s.symbol(k) != t.symbol(k)) return std::ldexp(1.0, -k);
  return 0.0;
}

namespace {

// BFS distances from `from` following the successor graph.
std::vector<int> bfs_distances(const TransitionMatrix& A, int from) {
  std::vector<int> dist(A.size(), -1);
  std::queue<int> queue;
  dist[from] = 0;
  queue.push(from);
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop();
    for (int w : A.successors(v))
      if (dist[w] == -1) {
        dist[w] = dist[v] + 1;
        queue.push(w);
      }
  }
  return dist;
}

// Shortest path from -> to as a node list (empty when from == to); successor
// lists are ascending, so the reconstruction is deterministic.
std::vector<int> shortest_path(const TransitionMatrix& A, int from, int to) {
  if (from == to) return {};
  std::vector<int> dist = bfs_distances(A, from);
  std::vector<int> path;
  int v = from;
  while (v != to) {
    bool advanced = false;
    for (int w : A.successors(v)) {
      if (bfs_distances(A, w)[to] == dist[to] - dist[v] - 1) {
        path.push_back(w);
        v = w;
        advanced = true;
        break;
      }
    }
    if (!advanced)
      raise(ErrorCode::InvalidSequence, "shortest path reconstruction failed");
  }
  return path;
}

}  // namespace

SymbolSequence random_sequence(const TransitionMatrix& A, std::uint64_t seed,
                               int prefix_len) {
  if (prefix_len < 1) raise(ErrorCode::BadConfig, "prefix_len must be >= 1");
  const int n = A.size();
  // mt19937_64 with modulo draws: bias is negligible here and the stream is
  // identical on every platform, which the manifests rely on.
  std::mt19937_64 rng(seed);
  std::vector<int> prefix(static_cast<std::size_t>(prefix_len));
  prefix[0] = 1 + static_cast<int>(rng() % n);
  for (int k = 1; k < prefix_len; ++k) {
    const std::vector<int>& succ = A.successors(prefix[k - 1] - 1);
    prefix[k] = 1 + succ[rng() % succ.size()];
  }

  // Shortest cycle reachable from the last prefix symbol: minimize
  // dist(last, v) + cycle_length(v); ties broken by smaller v.
  const int last = prefix.back() - 1;
  const std::vector<int> reach = bfs_distances(A, last);
  int best_v = -1, best_total = std::numeric_limits<int>::max(), best_cycle = 0;
  for (int v = 0; v < n; ++v) {
    if (reach[v] == -1) continue;
    int cycle_len = std::numeric_limits<int>::max();
    for (int w : A.successors(v)) {
      const int back = (w == v) ? 0 : bfs_distances(A, w)[v];
      if (back != -1) cycle_len = std::min(cycle_len, 1 + back);
    }
    if (cycle_len == std::numeric_limits<int>::max()) continue;
    const int total = reach[v] + cycle_len;
    if (total < best_total) {
      best_total = total;
      best_v = v;
      best_cycle = cycle_len;
    }
  }
  // Out-degrees >= 1 on a finite graph force some reachable cycle.
  if (best_v == -1)
    raise(ErrorCode::InvalidSequence, "no cycle reachable; matrix is corrupt");
  for (int v : shortest_path(A, last, best_v)) prefix.push_back(v + 1);

  // Walk the minimal cycle: after the s-th pushed node the walk must still be
  // able to return to best_v in exactly best_cycle - s hops.
  std::vector<int> cycle{best_v + 1};
  int v = best_v;
  for (int s = 1; s < best_cycle; ++s) {
    for (int w : A.successors(v)) {
      const int back = (w == best_v) ? 0 : bfs_distances(A, w)[best_v];
      if (back == best_cycle - s) {
        cycle.push_back(w + 1);
        v = w;
        break;
      }
    }
  }
  return SymbolSequence(A, std::move(prefix), std::move(cycle));
}

SymbolSequence parse_sequence(const TransitionMatrix& A,
                              const std::string& literal) {
  const std::size_t bar = literal.find('|');
  if (bar == std::string::npos)
    raise(ErrorCode::ParseError,
          "sequence literal needs '|' separating prefix and cycle: " + literal);
  auto parse_list = [&](const std::string& part) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos < part.size()) {
      std::size_t next = part.find(',', pos);
      if (next == std::string::npos) next = part.size();
      const std::string token = part.substr(pos, next - pos);
      try {
        std::size_t used = 0;
        const int v = std::stoi(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        out.push_back(v);
      } catch (const std::exception&) {
        raise(ErrorCode::ParseError, "bad symbol '" + token + "' in " + literal);
      }
      pos = next + 1;
    }
    return out;
  };
  return SymbolSequence(A, parse_list(literal.substr(0, bar)),
                        parse_list(literal.substr(bar + 1)));
}

std::string format_sequence(const SymbolSequence& s) {
  std::string out;
  auto append = [&](const std::vector<int>& list) {
    for (std::size_t k = 0; k < list.size(); ++k) {
      if (k) out += ',';
      out += std::to_string(list[k]);
    }
  };
  append(s.prefix());
  out += '|';
  append(s.cycle());
  return out;
}

}  // namespace topent
