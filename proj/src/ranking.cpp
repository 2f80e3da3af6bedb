#include "ranking.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace prank {

TopK topk(std::vector<PrfScore> scores, std::size_t k) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "k must be at least 1");
  sort_scores(scores);
  TopK out;
  out.k = k;
  for (std::size_t i = 0; i < std::min(k, scores.size()); ++i) out.ids.push_back(scores[i].id);
  return out;
}

TopK topk(const std::vector<TupleValue>& ordered, std::size_t k) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "k must be at least 1");
  TopK out;
  out.k = k;
  for (std::size_t i = 0; i < std::min(k, ordered.size()); ++i) out.ids.push_back(ordered[i].id);
  return out;
}

std::vector<TupleValue> rank_escore(const Model& m) {
  std::vector<TupleValue> out;
  for (const auto& t : ranked_tuples(m)) out.push_back({t.id, t.prob * t.score});
  std::sort(out.begin(), out.end(), [](const TupleValue& a, const TupleValue& b) {
    if (a.value != b.value) return a.value > b.value;
    return a.id < b.id;
  });
  return out;
}

TopK rank_pt(const Model& m, std::size_t h, std::size_t k) {
  return topk(rank_prf(m, WeightFunction::step(h)), k);
}

TopK rank_kselection(const Model& m, std::size_t k) {
  return topk(rank_prf(m, WeightFunction::score_scaled(WeightFunction::delta(1))), k);
}

TopK rank_urank(const Model& m, std::size_t k, bool distinct) {
  const std::size_t n = tuple_count(m);
  if (k < 1 || k > n) throw Error(ErrorCode::kInvalidArgument, "U-Rank needs 1 <= k <= n");
  auto dists = rank_distributions(m, k);
  TopK out;
  out.k = k;
  std::unordered_set<TupleId> chosen;
  for (std::size_t i = 0; i < k; ++i) {
    const RankDistribution* best = nullptr;
    for (const auto& d : dists) {
      if (distinct && chosen.count(d.id)) continue;
      if (!best || d.probs[i] > best->probs[i] ||
          (d.probs[i] == best->probs[i] && d.id < best->id)) {
        best = &d;
      }
    }
    out.ids.push_back(best->id);
    chosen.insert(best->id);
  }
  return out;
}

namespace {

// Value and derivative at x = 1.
struct Dual {
  double v = 0.0;
  double d = 0.0;
};

Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }

std::vector<TupleValue> erank_independent(const Relation& rel) {
  const auto tuples = rel.sorted().tuples();
  double total = 0.0;
  for (const auto& t : tuples) total += t.prob;
  std::vector<TupleValue> out;
  double before = 0.0;
  for (const auto& t : tuples) {
    const double er1 = t.prob * (1.0 + before);
    const double er2 = (1.0 - t.prob) * (total - t.prob);
    out.push_back({t.id, er1 + er2});
    before += t.prob;
  }
  return out;
}

// Per target: a = F without the target, b = target part (coefficient of y),
// g = all other leaves labelled x and the target labelled 0.
std::vector<TupleValue> erank_andxor(const AndXorTree& tree) {
  require_valid(tree);
  const auto& leaves = tree.ranked_leaves();
  const int n_nodes = static_cast<int>(tree.node_count());
  std::vector<int> pos(tree.node_count(), -1);
  for (std::size_t i = 0; i < leaves.size(); ++i) pos[leaves[i]] = static_cast<int>(i);
  std::vector<TupleValue> out(leaves.size());
  parallel_for(leaves.size(), [&](std::size_t ti) {
    const int i = static_cast<int>(ti);
    std::vector<char> on_path(tree.node_count(), 0);
    for (int v = leaves[ti]; v >= 0; v = tree.node(v).parent) on_path[v] = 1;
    std::vector<Dual> a(n_nodes), b(n_nodes), g(n_nodes);
    for (int v = n_nodes - 1; v >= 0; --v) {
      const auto& node = tree.node(v);
      if (node.kind == NodeKind::kLeaf) {
        if (pos[v] == i) {
          b[v] = {1.0, 0.0};
        } else {
          a[v] = pos[v] < i ? Dual{1.0, 1.0} : Dual{1.0, 0.0};
          g[v] = {1.0, 1.0};
        }
      } else if (node.kind == NodeKind::kXor) {
        double rest = 1.0;
        Dual sa, sb, sg;
        for (int c : node.children) {
          const double p = tree.node(c).edge_prob;
          rest -= p;
          sa = {sa.v + p * a[c].v, sa.d + p * a[c].d};
          sb = {sb.v + p * b[c].v, sb.d + p * b[c].d};
          sg = {sg.v + p * g[c].v, sg.d + p * g[c].d};
        }
        a[v] = {sa.v + rest, sa.d};
        b[v] = sb;
        g[v] = {sg.v + rest, sg.d};
      } else {
        Dual pa{1.0, 0.0}, pg{1.0, 0.0};
        int special = -1;
        for (int c : node.children) {
          pg = pg * g[c];
          if (on_path[c]) {
            special = c;
          } else {
            pa = pa * a[c];
          }
        }
        g[v] = pg;
        if (special >= 0) {
          b[v] = b[special] * pa;
          a[v] = pa * a[special];
        } else {
          a[v] = pa;
        }
      }
    }
    // Σ_j j·Pr(r=j) = d/dx [x·B(x)] at 1.
    const double er1 = b[0].v + b[0].d;
    const double er2 = g[0].d;
    out[ti] = {tree.node(leaves[ti]).tuple.id, er1 + er2};
  });
  return out;
}

}  // namespace

std::vector<TupleValue> rank_erank(const Model& m) {
  std::vector<TupleValue> out;
  if (const auto* r = std::get_if<Relation>(&m)) {
    out = erank_independent(*r);
  } else if (const auto* t = std::get_if<AndXorTree>(&m)) {
    out = erank_andxor(*t);
  } else {
    throw Error(ErrorCode::kUnsupportedModel, "expected rank needs an independent or and/xor model");
  }
  std::sort(out.begin(), out.end(), [](const TupleValue& a, const TupleValue& b) {
    if (a.value != b.value) return a.value < b.value;
    return a.id < b.id;
  });
  return out;
}

double kendall(const TopK& a, const TopK& b) {
  if (a.ids.size() != b.ids.size()) {
    throw Error(ErrorCode::kMismatchedK, "top-k lists differ in length");
  }
  const std::size_t k = a.ids.size();
  if (k == 0) return 0.0;
  std::unordered_map<TupleId, std::size_t> pa, pb;
  for (std::size_t i = 0; i < k; ++i) pa[a.ids[i]] = i;
  for (std::size_t i = 0; i < k; ++i) pb[b.ids[i]] = i;
  std::vector<TupleId> all = a.ids;
  for (TupleId id : b.ids) {
    if (!pa.count(id)) all.push_back(id);
  }
  // Position within a list; absent tuples rank below every listed one.
  auto pos = [k](const std::unordered_map<TupleId, std::size_t>& p, TupleId id) {
    auto it = p.find(id);
    return it == p.end() ? k : it->second;
  };
  std::size_t inverted = 0;
  for (std::size_t x = 0; x < all.size(); ++x) {
    for (std::size_t y = x + 1; y < all.size(); ++y) {
      const TupleId i = all[x], j = all[y];
      const std::size_t ai = pos(pa, i), aj = pos(pa, j), bi = pos(pb, i), bj = pos(pb, j);
      // Both absent from one list: their order there is unknown, no penalty.
      if ((ai == k && aj == k) || (bi == k && bj == k)) continue;
      const bool a_says = ai < aj, b_says = bi < bj;
      if (a_says != b_says) ++inverted;
    }
  }
  return static_cast<double>(inverted) / static_cast<double>(k * k);
}

double consensus_expected_distance(const std::vector<TupleId>& candidate, const Model& m,
                                   ConsensusDistance dis, const std::vector<double>& weights) {
  const WorldSet ws = enumerate_worlds(m);
  if (dis == ConsensusDistance::kSymmetricDifference) {
    return expected_symmetric_difference(ws, candidate);
  }
  if (weights.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "weighted distance needs weights");
  }
  return expected_weighted_difference(ws, candidate, weights);
}

}  // namespace prank
