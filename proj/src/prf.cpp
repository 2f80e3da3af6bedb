#include "prf.hpp"

#include <algorithm>
#include <cmath>

namespace prank {

PrfScore make_score(TupleId id, cplx value) {
  PrfScore s;
  s.id = id;
  s.value = value;
  s.magnitude = std::abs(value);
  s.log_magnitude = s.magnitude > 0.0 ? std::log(s.magnitude)
                                      : -std::numeric_limits<double>::infinity();
  return s;
}

PrfScore make_score(TupleId id, const LogProduct& value) {
  PrfScore s;
  s.id = id;
  s.value = value.value();
  s.magnitude = std::abs(s.value);
  s.log_magnitude = value.log_abs();
  return s;
}

bool score_before(const PrfScore& a, const PrfScore& b) {
  if (a.log_magnitude != b.log_magnitude) return a.log_magnitude > b.log_magnitude;
  return a.id < b.id;
}

void sort_scores(std::vector<PrfScore>& scores) {
  std::sort(scores.begin(), scores.end(), score_before);
}

namespace {

// Streams the prefix products G_i(x) = Π_{l<i}(1 - p_l + p_l x), truncated to
// cap coefficients, calling visit(i, G_i, len) before folding tuple i in.
template <typename Visit>
void stream_prefix_products(const std::vector<ProbTuple>& tuples, std::size_t cap, Visit visit) {
  const std::size_t n = tuples.size();
  if (n == 0 || cap == 0) {
    for (std::size_t i = 0; i < n; ++i) visit(i, static_cast<const double*>(nullptr), 0);
    return;
  }
  std::vector<double> cur(cap + 1, 0.0), next(cap + 1, 0.0);
  cur[0] = 1.0;
  std::size_t len = 1;
  for (std::size_t i = 0; i < n; ++i) {
    visit(i, cur.data(), len);
    const double p = tuples[i].prob, q = 1.0 - p;
    const std::size_t new_len = std::min(len + 1, cap);
    const double* in = cur.data();
    double* out = next.data();
    out[0] = q * in[0];
    for (std::size_t j = 1; j < new_len; ++j) out[j] = q * in[j] + p * in[j - 1];
    std::swap(cur, next);
    len = new_len;
  }
}

std::size_t weight_cap(const WeightFunction& w, std::size_t n) {
  auto s = w.support();
  return s ? std::min(*s, n) : n;
}

}  // namespace

std::vector<RankDistribution> rank_distributions_independent(const Relation& rel,
                                                             std::size_t max_positions) {
  const Relation sorted = rel.sorted();
  const auto& tuples = sorted.tuples();
  const std::size_t cap = std::min(max_positions, tuples.size());
  std::vector<RankDistribution> out(tuples.size());
  stream_prefix_products(tuples, cap, [&](std::size_t i, const double* g, std::size_t len) {
    auto& d = out[i];
    d.id = tuples[i].id;
    d.prob = tuples[i].prob;
    d.probs.assign(cap, 0.0);
    for (std::size_t j = 0; j < len; ++j) d.probs[j] = tuples[i].prob * g[j];
  });
  return out;
}

std::vector<PrfScore> rank_prf_independent(const Relation& rel, const WeightFunction& w) {
  const Relation sorted = rel.sorted();
  const auto& tuples = sorted.tuples();
  const std::size_t cap = weight_cap(w, tuples.size());
  std::vector<double> wr(cap), wi(cap);
  for (std::size_t j = 0; j < cap; ++j) {
    cplx v = w.at(j + 1);
    wr[j] = v.real();
    wi[j] = v.imag();
  }
  const bool real = w.is_real();
  std::vector<PrfScore> out(tuples.size());
  stream_prefix_products(tuples, cap, [&](std::size_t i, const double* g, std::size_t len) {
    double re = 0.0, im = 0.0;
    for (std::size_t j = 0; j < len; ++j) re += wr[j] * g[j];
    if (!real) {
      for (std::size_t j = 0; j < len; ++j) im += wi[j] * g[j];
    }
    const double f = tuples[i].prob * w.scale(tuples[i]);
    out[i] = make_score(tuples[i].id, cplx(re * f, im * f));
  });
  sort_scores(out);
  return out;
}

std::vector<PrfScore> rank_prfe_independent(const Relation& rel, cplx alpha) {
  const Relation sorted = rel.sorted();
  const auto& tuples = sorted.tuples();
  std::vector<PrfScore> out(tuples.size());
  LogProduct prefix;
  const LogProduct a(alpha);
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    const double p = tuples[i].prob;
    LogProduct v = prefix;
    v *= cplx(p);
    v *= a;
    out[i] = make_score(tuples[i].id, v);
    prefix *= cplx(1.0 - p) + p * alpha;
  }
  sort_scores(out);
  return out;
}

std::vector<cplx> prfe_values_independent(const Relation& sorted_rel, cplx alpha) {
  const auto& tuples = sorted_rel.tuples();
  std::vector<cplx> out(tuples.size());
  cplx prefix = 1.0;
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    const double p = tuples[i].prob;
    out[i] = prefix * (p * alpha);
    prefix *= cplx(1.0 - p) + p * alpha;
  }
  return out;
}

namespace {

std::vector<int> leaf_positions(const AndXorTree& tree) {
  std::vector<int> pos(tree.node_count(), -1);
  const auto& leaves = tree.ranked_leaves();
  for (std::size_t i = 0; i < leaves.size(); ++i) pos[leaves[i]] = static_cast<int>(i);
  return pos;
}

std::vector<char> path_mask(const AndXorTree& tree, int leaf) {
  std::vector<char> on(tree.node_count(), 0);
  for (int v = leaf; v >= 0; v = tree.node(v).parent) on[v] = 1;
  return on;
}

// Coefficients of x^(j-1) in the y-part of the bivariate generating function
// for target position i, via divide-and-conquer products.
std::vector<double> target_coefficients_product(const AndXorTree& tree,
                                                const std::vector<int>& pos, int i,
                                                std::size_t cap) {
  const int n_nodes = static_cast<int>(tree.node_count());
  const int target = tree.ranked_leaves()[static_cast<std::size_t>(i)];
  const auto on_path = path_mask(tree, target);
  std::vector<Poly> a(n_nodes), b(n_nodes);
  // Children always have larger indices than their parents.
  for (int v = n_nodes - 1; v >= 0; --v) {
    const auto& node = tree.node(v);
    if (node.kind == NodeKind::kLeaf) {
      if (pos[v] < i) {
        a[v] = cap > 1 ? Poly::x() : Poly::constant(0.0);
      } else if (pos[v] == i) {
        b[v] = Poly::one();
      } else {
        a[v] = Poly::one();
      }
      continue;
    }
    if (node.kind == NodeKind::kXor) {
      if (on_path[v]) {
        for (int c : node.children) {
          if (on_path[c]) b[v] = b[c] * tree.node(c).edge_prob;
        }
      } else {
        double rest = 1.0;
        Poly acc;
        for (int c : node.children) {
          const double p = tree.node(c).edge_prob;
          rest -= p;
          acc += a[c] * p;
        }
        acc += Poly::constant(rest);
        a[v] = std::move(acc);
      }
    } else {
      std::vector<Poly> factors;
      int special = -1;
      for (int c : node.children) {
        if (on_path[c]) {
          special = c;
        } else {
          factors.push_back(std::move(a[c]));
        }
      }
      Poly rest = poly_product(factors, cap);
      if (special >= 0) {
        b[v] = poly_mul(b[special], rest).truncate(cap);
      } else {
        a[v] = std::move(rest);
      }
    }
    for (int c : node.children) {
      a[c] = Poly();
      b[c] = Poly();
    }
  }
  std::vector<double> out(cap, 0.0);
  const auto& coeffs = b[0].coeffs();
  for (std::size_t j = 0; j < std::min(cap, coeffs.size()); ++j) out[j] = coeffs[j].real();
  return out;
}

NestedExpr subtree_expr(const AndXorTree& tree, const std::vector<int>& pos, int i, int v,
                        const std::vector<char>& on_path) {
  const auto& node = tree.node(v);
  if (node.kind == NodeKind::kLeaf) {
    if (pos[v] == i) return NestedExpr::constant(1.0);
    return pos[v] < i ? NestedExpr::var() : NestedExpr::constant(1.0);
  }
  if (node.kind == NodeKind::kXor) {
    if (on_path[v]) {
      for (int c : node.children) {
        if (on_path[c]) {
          return NestedExpr::constant(tree.node(c).edge_prob) *
                 subtree_expr(tree, pos, i, c, on_path);
        }
      }
    }
    double rest = 1.0;
    for (int c : node.children) rest -= tree.node(c).edge_prob;
    NestedExpr acc = NestedExpr::constant(rest);
    for (int c : node.children) {
      acc = acc + NestedExpr::constant(tree.node(c).edge_prob) * subtree_expr(tree, pos, i, c, on_path);
    }
    return acc;
  }
  NestedExpr acc = NestedExpr::constant(1.0);
  for (int c : node.children) acc = acc * subtree_expr(tree, pos, i, c, on_path);
  return acc;
}

std::vector<double> target_coefficients_interpolate(const AndXorTree& tree,
                                                    const std::vector<int>& pos, int i,
                                                    std::size_t cap) {
  const int target = tree.ranked_leaves()[static_cast<std::size_t>(i)];
  const auto on_path = path_mask(tree, target);
  NestedExpr e = subtree_expr(tree, pos, i, tree.root(), on_path);
  // At most i leaves are labelled x.
  Poly b = expand_nested(e, i);
  std::vector<double> out(cap, 0.0);
  for (std::size_t j = 0; j < std::min(cap, b.size()); ++j) out[j] = b.coeffs()[j].real();
  return out;
}

}  // namespace

std::vector<RankDistribution> rank_distributions_andxor(const AndXorTree& tree,
                                                        std::size_t max_positions,
                                                        ExpansionStrategy strategy) {
  require_valid(tree);
  const auto pos = leaf_positions(tree);
  const auto tuples = tree.ranked_tuples();
  const std::size_t n = tuples.size();
  const std::size_t cap = std::min(max_positions, n);
  std::vector<RankDistribution> out(n);
  parallel_for(n, [&](std::size_t i) {
    auto& d = out[i];
    d.id = tuples[i].id;
    d.prob = tuples[i].prob;
    d.probs = strategy == ExpansionStrategy::kProduct
                  ? target_coefficients_product(tree, pos, static_cast<int>(i), cap)
                  : target_coefficients_interpolate(tree, pos, static_cast<int>(i), cap);
    for (auto& v : d.probs) v = std::max(v, 0.0);
  });
  return out;
}

std::vector<PrfScore> prf_from_distributions(const std::vector<RankDistribution>& dists,
                                             const std::vector<ProbTuple>& tuples,
                                             const WeightFunction& w) {
  std::vector<PrfScore> out(dists.size());
  std::size_t width = 0;
  for (const auto& d : dists) width = std::max(width, d.probs.size());
  std::vector<cplx> wt(width);
  for (std::size_t j = 0; j < width; ++j) wt[j] = w.at(j + 1);
  for (std::size_t i = 0; i < dists.size(); ++i) {
    cplx acc{};
    for (std::size_t j = 0; j < dists[i].probs.size(); ++j) acc += wt[j] * dists[i].probs[j];
    out[i] = make_score(dists[i].id, acc * w.scale(tuples[i]));
  }
  sort_scores(out);
  return out;
}

std::vector<PrfScore> rank_prf_andxor(const AndXorTree& tree, const WeightFunction& w,
                                      ExpansionStrategy strategy) {
  const std::size_t cap = weight_cap(w, tree.leaf_count());
  auto dists = rank_distributions_andxor(tree, cap, strategy);
  return prf_from_distributions(dists, tree.ranked_tuples(), w);
}

namespace {

// F_v(α,α) and F_v(α,0) at every node under the labelling for the current
// target; updated along leaf-to-root paths as the target advances.
class PathState {
 public:
  PathState(const AndXorTree& tree, cplx alpha) : tree_(tree), alpha_(alpha) {
    const std::size_t n = tree.node_count();
    with_y_.resize(n);
    without_y_.resize(n);
    sum_with_.assign(n, 0.0);
    sum_without_.assign(n, 0.0);
    for (int v = static_cast<int>(n) - 1; v >= 0; --v) {
      const auto& node = tree.node(v);
      if (node.kind == NodeKind::kLeaf) continue;  // value 1 by default
      if (node.kind == NodeKind::kAnd) {
        for (int c : node.children) {
          with_y_[v] *= with_y_[c];
          without_y_[v] *= without_y_[c];
        }
      } else {
        cplx s = 1.0, s0 = 1.0;
        for (int c : node.children) {
          const double p = tree.node(c).edge_prob;
          s += p * (with_y_[c].value() - 1.0);
          s0 += p * (without_y_[c].value() - 1.0);
        }
        sum_with_[v] = s;
        sum_without_[v] = s0;
        with_y_[v] = LogProduct(s);
        without_y_[v] = LogProduct(s0);
      }
    }
  }

  void set_leaf(int leaf, cplx with_y, cplx without_y) {
    LogProduct old_a = with_y_[leaf], old_0 = without_y_[leaf];
    with_y_[leaf] = LogProduct(with_y);
    without_y_[leaf] = LogProduct(without_y);
    for (int u = leaf; u > 0;) {
      const int v = tree_.node(u).parent;
      LogProduct prev_a = with_y_[v], prev_0 = without_y_[v];
      if (tree_.node(v).kind == NodeKind::kAnd) {
        with_y_[v] /= old_a;
        with_y_[v] *= with_y_[u];
        without_y_[v] /= old_0;
        without_y_[v] *= without_y_[u];
      } else {
        const double p = tree_.node(u).edge_prob;
        sum_with_[v] += p * (with_y_[u].value() - old_a.value());
        sum_without_[v] += p * (without_y_[u].value() - old_0.value());
        with_y_[v] = LogProduct(sum_with_[v]);
        without_y_[v] = LogProduct(sum_without_[v]);
      }
      old_a = prev_a;
      old_0 = prev_0;
      u = v;
    }
  }

  // F_root(α,α) - F_root(α,0), carried multiplicatively along the target path.
  LogProduct difference(int leaf) const {
    LogProduct d(alpha_);
    for (int u = leaf; u > 0;) {
      const int v = tree_.node(u).parent;
      if (tree_.node(v).kind == NodeKind::kXor) {
        d *= cplx(tree_.node(u).edge_prob);
      } else {
        d *= with_y_[v];
        d /= with_y_[u];
      }
      u = v;
    }
    return d;
  }

  cplx root_with() const { return with_y_[0].value(); }
  cplx root_without() const { return without_y_[0].value(); }

 private:
  const AndXorTree& tree_;
  cplx alpha_;
  std::vector<LogProduct> with_y_, without_y_;
  std::vector<cplx> sum_with_, sum_without_;
};

template <typename Emit>
void run_prfe_andxor(const AndXorTree& tree, cplx alpha, Emit emit) {
  require_valid(tree);
  PathState state(tree, alpha);
  const auto& leaves = tree.ranked_leaves();
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    if (i > 0) state.set_leaf(leaves[i - 1], alpha, alpha);
    state.set_leaf(leaves[i], alpha, 0.0);
    emit(i, state.difference(leaves[i]));
  }
}

}  // namespace

std::vector<PrfScore> rank_prfe_andxor(const AndXorTree& tree, cplx alpha) {
  const auto& leaves = tree.ranked_leaves();
  std::vector<PrfScore> out(leaves.size());
  run_prfe_andxor(tree, alpha, [&](std::size_t i, const LogProduct& d) {
    out[i] = make_score(tree.node(leaves[i]).tuple.id, d);
  });
  sort_scores(out);
  return out;
}

std::vector<cplx> prfe_values_andxor(const AndXorTree& tree, cplx alpha) {
  std::vector<cplx> out(tree.leaf_count());
  run_prfe_andxor(tree, alpha, [&](std::size_t i, const LogProduct& d) { out[i] = d.value(); });
  return out;
}

UncertainExpansion expand_score_uncertainty(const std::vector<ScoreAlternatives>& tuples) {
  UncertainExpansion out;
  std::vector<std::vector<ProbTuple>> groups;
  TupleId next = 0;
  for (const auto& t : tuples) {
    if (t.alternatives.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "tuple " + std::to_string(t.id) + " has no alternatives");
    }
    std::vector<ProbTuple> group;
    double sum = 0.0;
    for (const auto& [score, prob] : t.alternatives) {
      if (!(prob > 0.0 && prob <= 1.0)) {
        throw Error(ErrorCode::kProbabilityConstraint,
                    "tuple " + std::to_string(t.id) + ": alternative probability outside (0,1]");
      }
      sum += prob;
      out.original_of[next] = t.id;
      group.push_back({next++, score, prob});
    }
    if (sum > 1.0 + kProbTolerance) {
      throw Error(ErrorCode::kProbabilityConstraint,
                  "tuple " + std::to_string(t.id) + ": alternative probabilities exceed 1");
    }
    groups.push_back(std::move(group));
  }
  out.tree = make_xtuple_tree(groups);
  return out;
}

std::vector<PrfScore> regroup_scores(const std::vector<PrfScore>& scores,
                                     const UncertainExpansion& expansion) {
  std::unordered_map<TupleId, cplx> sums;
  std::vector<TupleId> order;
  for (const auto& s : scores) {
    auto it = expansion.original_of.find(s.id);
    if (it == expansion.original_of.end()) {
      throw Error(ErrorCode::kUnknownTuple, "unknown alternative id " + std::to_string(s.id));
    }
    auto [slot, inserted] = sums.emplace(it->second, cplx{});
    if (inserted) order.push_back(it->second);
    slot->second += s.value;
  }
  std::vector<PrfScore> out;
  out.reserve(order.size());
  for (TupleId id : order) out.push_back(make_score(id, sums[id]));
  sort_scores(out);
  return out;
}

}  // namespace prank
