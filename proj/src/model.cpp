#include "model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace prank {

Relation::Relation(std::vector<ProbTuple> tuples) : tuples_(std::move(tuples)) {
  index_.reserve(tuples_.size());
  for (std::size_t i = 0; i < tuples_.size(); ++i) {
    const auto& t = tuples_[i];
    if (!(t.prob > 0.0 && t.prob <= 1.0)) {
      throw Error(ErrorCode::kProbabilityConstraint,
                  "tuple " + std::to_string(t.id) + ": probability must lie in (0,1]");
    }
    if (!std::isfinite(t.score)) {
      throw Error(ErrorCode::kInvalidModel,
                  "tuple " + std::to_string(t.id) + ": score is not finite");
    }
    if (!index_.emplace(t.id, i).second) {
      throw Error(ErrorCode::kInvalidModel, "duplicate tuple id " + std::to_string(t.id));
    }
    if (i > 0 && !ranks_before(tuples_[i - 1], t)) sorted_ = false;
  }
}

Relation Relation::sorted() const {
  if (sorted_) return *this;
  auto copy = tuples_;
  std::sort(copy.begin(), copy.end(), ranks_before);
  return Relation(std::move(copy));
}

std::optional<std::size_t> Relation::index_of(TupleId id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const ProbTuple& Relation::find(TupleId id) const {
  auto i = index_of(id);
  if (!i) throw Error(ErrorCode::kUnknownTuple, "unknown tuple id " + std::to_string(id));
  return tuples_[*i];
}

int AndXorTree::Builder::add_root(NodeKind kind) {
  if (!nodes_.empty()) throw Error(ErrorCode::kInvalidTree, "root already present");
  TreeNode n;
  n.kind = kind;
  nodes_.push_back(std::move(n));
  return 0;
}

int AndXorTree::Builder::add_inner(int parent, NodeKind kind, double edge_prob) {
  if (kind == NodeKind::kLeaf) throw Error(ErrorCode::kInvalidTree, "use add_leaf for leaves");
  if (parent < 0 || parent >= static_cast<int>(nodes_.size()) ||
      nodes_[parent].kind == NodeKind::kLeaf) {
    throw Error(ErrorCode::kInvalidTree, "invalid parent node " + std::to_string(parent));
  }
  TreeNode n;
  n.kind = kind;
  n.parent = parent;
  n.edge_prob = nodes_[parent].kind == NodeKind::kXor ? edge_prob : 1.0;
  int idx = static_cast<int>(nodes_.size());
  nodes_.push_back(std::move(n));
  nodes_[parent].children.push_back(idx);
  return idx;
}

int AndXorTree::Builder::add_leaf(int parent, ProbTuple tuple, double edge_prob,
                                  std::optional<std::string> key) {
  int idx;
  if (nodes_.empty() && parent < 0) {
    TreeNode n;
    n.kind = NodeKind::kLeaf;
    nodes_.push_back(std::move(n));
    idx = 0;
  } else {
    idx = add_inner(parent, NodeKind::kAnd, edge_prob);
    nodes_[idx].kind = NodeKind::kLeaf;
  }
  nodes_[idx].tuple = tuple;
  nodes_[idx].key = std::move(key);
  return idx;
}

AndXorTree AndXorTree::Builder::build() && {
  if (nodes_.empty()) throw Error(ErrorCode::kInvalidTree, "empty tree");
  AndXorTree tree;
  tree.nodes_ = std::move(nodes_);
  for (std::size_t i = 0; i < tree.nodes_.size(); ++i) {
    auto& n = tree.nodes_[i];
    if (n.kind != NodeKind::kLeaf) continue;
    if (!std::isfinite(n.tuple.score)) {
      throw Error(ErrorCode::kInvalidTree,
                  "tuple " + std::to_string(n.tuple.id) + ": score is not finite");
    }
    if (!tree.leaf_index_.emplace(n.tuple.id, static_cast<int>(i)).second) {
      throw Error(ErrorCode::kInvalidTree, "duplicate leaf tuple id " + std::to_string(n.tuple.id));
    }
    double marginal = 1.0;
    for (int v = static_cast<int>(i); v > 0; v = tree.nodes_[v].parent) {
      marginal *= tree.nodes_[v].edge_prob;
    }
    n.tuple.prob = marginal;
    tree.ranked_leaves_.push_back(static_cast<int>(i));
  }
  std::sort(tree.ranked_leaves_.begin(), tree.ranked_leaves_.end(), [&](int a, int b) {
    return ranks_before(tree.nodes_[a].tuple, tree.nodes_[b].tuple);
  });
  return tree;
}

int AndXorTree::leaf_of(TupleId id) const {
  auto it = leaf_index_.find(id);
  if (it == leaf_index_.end()) {
    throw Error(ErrorCode::kUnknownTuple, "unknown tuple id " + std::to_string(id));
  }
  return it->second;
}

std::vector<ProbTuple> AndXorTree::ranked_tuples() const {
  std::vector<ProbTuple> out;
  out.reserve(ranked_leaves_.size());
  for (int leaf : ranked_leaves_) out.push_back(node(leaf).tuple);
  return out;
}

Relation AndXorTree::marginal_relation() const { return Relation(ranked_tuples()); }

int AndXorTree::depth(int v) const {
  int d = 0;
  for (; v > 0; v = node(v).parent) ++d;
  return d;
}

namespace {

int lca(const AndXorTree& tree, int a, int b) {
  int da = tree.depth(a), db = tree.depth(b);
  while (da > db) { a = tree.node(a).parent; --da; }
  while (db > da) { b = tree.node(b).parent; --db; }
  while (a != b) {
    a = tree.node(a).parent;
    b = tree.node(b).parent;
  }
  return a;
}

}  // namespace

std::vector<TreeViolation> validate_tree(const AndXorTree& tree) {
  std::vector<TreeViolation> out;
  for (int v = 0; v < static_cast<int>(tree.node_count()); ++v) {
    const auto& n = tree.node(v);
    if (v > 0 && tree.node(n.parent).kind == NodeKind::kXor) {
      if (!(n.edge_prob > 0.0 && n.edge_prob <= 1.0)) {
        out.push_back({v, "EdgeProbability", "edge probability must lie in (0,1]"});
      } else if (n.edge_prob < kMinEdgeProb) {
        out.push_back({v, "EdgeProbability", "edge probability below 1e-12 is degenerate"});
      }
    }
    if (n.kind == NodeKind::kXor) {
      double sum = 0.0;
      for (int c : n.children) sum += tree.node(c).edge_prob;
      if (sum > 1.0 + kProbTolerance) {
        std::ostringstream os;
        os << "xor edge probabilities sum to " << sum << " > 1";
        out.push_back({v, "ProbabilityConstraint", os.str()});
      }
    }
  }
  // Key constraint, only when keys are present.
  std::unordered_map<std::string, std::vector<int>> by_key;
  for (int leaf : tree.ranked_leaves()) {
    if (const auto& k = tree.node(leaf).key) by_key[*k].push_back(leaf);
  }
  for (const auto& [key, leaves] : by_key) {
    for (std::size_t i = 0; i < leaves.size(); ++i) {
      for (std::size_t j = i + 1; j < leaves.size(); ++j) {
        int a = lca(tree, leaves[i], leaves[j]);
        if (tree.node(a).kind != NodeKind::kXor) {
          out.push_back({a, "KeyConstraint",
                         "leaves sharing key '" + key + "' meet at a non-xor node"});
        }
      }
    }
  }
  return out;
}

void require_valid(const AndXorTree& tree) {
  auto violations = validate_tree(tree);
  if (!violations.empty()) {
    const auto& v = violations.front();
    throw Error(ErrorCode::kInvalidTree,
                "node " + std::to_string(v.node) + ": " + v.rule + ": " + v.detail);
  }
}

AndXorTree make_xtuple_tree(const std::vector<std::vector<ProbTuple>>& groups) {
  AndXorTree::Builder b;
  int root = b.add_root(NodeKind::kAnd);
  for (const auto& group : groups) {
    double sum = 0.0;
    for (const auto& t : group) {
      if (!(t.prob > 0.0 && t.prob <= 1.0)) {
        throw Error(ErrorCode::kProbabilityConstraint,
                    "tuple " + std::to_string(t.id) + ": probability must lie in (0,1]");
      }
      sum += t.prob;
    }
    if (sum > 1.0 + kProbTolerance) {
      throw Error(ErrorCode::kProbabilityConstraint, "x-tuple group probabilities exceed 1");
    }
    int x = b.add_inner(root, NodeKind::kXor);
    for (const auto& t : group) b.add_leaf(x, t, t.prob);
  }
  return std::move(b).build();
}

AndXorTree independent_tree(const Relation& rel) {
  std::vector<std::vector<ProbTuple>> groups;
  groups.reserve(rel.size());
  for (const auto& t : rel.tuples()) groups.push_back({t});
  return make_xtuple_tree(groups);
}

}  // namespace prank
