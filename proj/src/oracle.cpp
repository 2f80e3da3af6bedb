#include "oracle.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>
#include <unordered_set>

namespace prank {

namespace {

using Dist = std::unordered_map<std::uint32_t, double>;

void check_size(std::size_t n) {
  if (n > kMaxEnumerableTuples) {
    throw Error(ErrorCode::kSizeLimit, "enumeration limited to " +
                                           std::to_string(kMaxEnumerableTuples) + " tuples, got " +
                                           std::to_string(n));
  }
}

Dist node_dist(const AndXorTree& tree, int v, const std::vector<int>& bit_of) {
  const auto& n = tree.node(v);
  if (n.kind == NodeKind::kLeaf) return {{1u << bit_of[v], 1.0}};
  if (n.kind == NodeKind::kXor) {
    Dist out;
    double rest = 1.0;
    for (int c : n.children) {
      double p = tree.node(c).edge_prob;
      rest -= p;
      for (const auto& [m, q] : node_dist(tree, c, bit_of)) out[m] += p * q;
    }
    // Rounding residue of edges that sum to one is not a world.
    if (rest > 1e-12) out[0] += rest;
    return out;
  }
  Dist acc{{0u, 1.0}};
  for (int c : n.children) {
    Dist child = node_dist(tree, c, bit_of);
    Dist next;
    for (const auto& [a, pa] : acc) {
      for (const auto& [b, pb] : child) next[a | b] += pa * pb;
    }
    acc = std::move(next);
  }
  return acc;
}

std::vector<PossibleWorld> to_worlds(const Dist& d) {
  std::vector<PossibleWorld> out;
  out.reserve(d.size());
  for (const auto& [m, p] : d) {
    if (p > 0.0) out.push_back({m, p});
  }
  std::sort(out.begin(), out.end(),
            [](const PossibleWorld& a, const PossibleWorld& b) { return a.mask < b.mask; });
  return out;
}

}  // namespace

std::size_t WorldSet::position_of(TupleId id) const {
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    if (tuples[i].id == id) return i;
  }
  throw Error(ErrorCode::kUnknownTuple, "unknown tuple id " + std::to_string(id));
}

std::vector<TupleId> WorldSet::members(const PossibleWorld& w) const {
  std::vector<TupleId> out;
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    if (w.mask >> i & 1u) out.push_back(tuples[i].id);
  }
  return out;
}

WorldSet enumerate_worlds(const Relation& rel) {
  check_size(rel.size());
  WorldSet ws;
  ws.tuples = rel.sorted().tuples();
  const std::size_t n = ws.tuples.size();
  const std::uint32_t count = 1u << n;
  ws.worlds.reserve(count);
  for (std::uint32_t m = 0; m < count; ++m) {
    double p = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      double q = ws.tuples[i].prob;
      p *= (m >> i & 1u) ? q : 1.0 - q;
    }
    if (p > 0.0) ws.worlds.push_back({m, p});
  }
  return ws;
}

WorldSet enumerate_worlds(const AndXorTree& tree) {
  check_size(tree.leaf_count());
  WorldSet ws;
  ws.tuples = tree.ranked_tuples();
  std::vector<int> bit_of(tree.node_count(), -1);
  const auto& leaves = tree.ranked_leaves();
  for (std::size_t i = 0; i < leaves.size(); ++i) bit_of[leaves[i]] = static_cast<int>(i);
  ws.worlds = to_worlds(node_dist(tree, tree.root(), bit_of));
  return ws;
}

std::optional<int> world_rank(const WorldSet& ws, const PossibleWorld& w, TupleId id) {
  std::size_t i = ws.position_of(id);
  if (!(w.mask >> i & 1u)) return std::nullopt;
  std::uint32_t below = w.mask & ((1u << i) - 1u);
  return std::popcount(below) + 1;
}

double positional_prob_oracle(const WorldSet& ws, TupleId id, int j) {
  std::size_t i = ws.position_of(id);
  double total = 0.0;
  for (const auto& w : ws.worlds) {
    if (!(w.mask >> i & 1u)) continue;
    if (std::popcount(w.mask & ((1u << i) - 1u)) + 1 == j) total += w.prob;
  }
  return total;
}

std::vector<std::vector<double>> rank_matrix_oracle(const WorldSet& ws) {
  const std::size_t n = ws.size();
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (const auto& w : ws.worlds) {
    int r = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (w.mask >> i & 1u) m[i][r++] += w.prob;
    }
  }
  return m;
}

std::vector<double> expected_rank_oracle(const WorldSet& ws) {
  const std::size_t n = ws.size();
  std::vector<double> er(n, 0.0);
  for (const auto& w : ws.worlds) {
    int size = std::popcount(w.mask);
    int r = 0;
    for (std::size_t i = 0; i < n; ++i) {
      er[i] += w.prob * ((w.mask >> i & 1u) ? ++r : size);
    }
  }
  return er;
}

std::vector<TupleId> world_topk(const WorldSet& ws, const PossibleWorld& w, std::size_t k) {
  std::vector<TupleId> out;
  for (std::size_t i = 0; i < ws.size() && out.size() < k; ++i) {
    if (w.mask >> i & 1u) out.push_back(ws.tuples[i].id);
  }
  return out;
}

double expected_symmetric_difference(const WorldSet& ws, const std::vector<TupleId>& candidate) {
  std::unordered_set<TupleId> cand(candidate.begin(), candidate.end());
  double total = 0.0;
  for (const auto& w : ws.worlds) {
    auto top = world_topk(ws, w, candidate.size());
    std::size_t shared = 0;
    for (TupleId id : top) shared += cand.count(id);
    total += w.prob * static_cast<double>(cand.size() + top.size() - 2 * shared);
  }
  return total;
}

double expected_weighted_difference(const WorldSet& ws, const std::vector<TupleId>& candidate,
                                    const std::vector<double>& weights) {
  std::unordered_set<TupleId> cand(candidate.begin(), candidate.end());
  double total = 0.0;
  for (const auto& w : ws.worlds) {
    auto top = world_topk(ws, w, weights.size());
    double d = 0.0;
    for (std::size_t i = 0; i < top.size(); ++i) {
      if (!cand.count(top[i])) d += weights[i];
    }
    total += w.prob * d;
  }
  return total;
}

}  // namespace prank
