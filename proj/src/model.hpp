#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "common.hpp"

namespace prank {

struct ProbTuple {
  TupleId id = 0;
  double score = 0.0;
  double prob = 1.0;
};

// The strict ranking order: higher score first, ties by ascending id.
inline bool ranks_before(const ProbTuple& a, const ProbTuple& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.id < b.id;
}

class Relation {
 public:
  Relation() = default;
  // Throws kProbabilityConstraint for prob outside (0,1], kInvalidModel for
  // duplicate ids or non-finite scores.
  explicit Relation(std::vector<ProbTuple> tuples);

  const std::vector<ProbTuple>& tuples() const { return tuples_; }
  std::size_t size() const { return tuples_.size(); }
  bool empty() const { return tuples_.empty(); }
  bool is_sorted() const { return sorted_; }
  const ProbTuple& operator[](std::size_t i) const { return tuples_[i]; }

  // Copy in ranking order (the identity when already sorted).
  Relation sorted() const;

  std::optional<std::size_t> index_of(TupleId id) const;
  const ProbTuple& find(TupleId id) const;  // throws kUnknownTuple

 private:
  std::vector<ProbTuple> tuples_;
  std::unordered_map<TupleId, std::size_t> index_;
  bool sorted_ = true;
};

enum class NodeKind { kLeaf, kAnd, kXor };

struct TreeNode {
  NodeKind kind = NodeKind::kAnd;
  int parent = -1;
  // Probability on the edge from an xor parent; 1 under and parents and at the root.
  double edge_prob = 1.0;
  std::vector<int> children;
  ProbTuple tuple;                 // leaves only; prob holds the marginal Pr(t)
  std::optional<std::string> key;  // optional possible-worlds key
};

// Probabilistic and/xor tree. Node 0 is the root. Leaves carry tuples whose
// prob field is the marginal existence probability implied by the tree.
class AndXorTree {
 public:
  class Builder {
   public:
    int add_root(NodeKind kind);
    int add_inner(int parent, NodeKind kind, double edge_prob = 1.0);
    int add_leaf(int parent, ProbTuple tuple, double edge_prob = 1.0,
                 std::optional<std::string> key = std::nullopt);
    // Structural checks only (ids, parents). Probability rules are checked by
    // validate_tree.
    AndXorTree build() &&;

   private:
    std::vector<TreeNode> nodes_;
  };

  AndXorTree() = default;

  const TreeNode& node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
  std::size_t node_count() const { return nodes_.size(); }
  int root() const { return 0; }
  bool empty() const { return nodes_.empty(); }

  // Leaf node indices in ranking order.
  const std::vector<int>& ranked_leaves() const { return ranked_leaves_; }
  std::size_t leaf_count() const { return ranked_leaves_.size(); }
  int leaf_of(TupleId id) const;  // throws kUnknownTuple

  // Tuples in ranking order with marginal probabilities.
  std::vector<ProbTuple> ranked_tuples() const;
  // Independent view with equal marginals. Valid trees only.
  Relation marginal_relation() const;

  int depth(int node) const;

 private:
  std::vector<TreeNode> nodes_;
  std::vector<int> ranked_leaves_;
  std::unordered_map<TupleId, int> leaf_index_;
};

struct TreeViolation {
  int node;
  std::string rule;
  std::string detail;
};

std::vector<TreeViolation> validate_tree(const AndXorTree& tree);
// Throws kInvalidTree listing the first violation.
void require_valid(const AndXorTree& tree);

// Height-2 tree: and root over one xor node per group, edges = tuple probs.
AndXorTree make_xtuple_tree(const std::vector<std::vector<ProbTuple>>& groups);

// And root over one xor(p) node per tuple.
AndXorTree independent_tree(const Relation& rel);

constexpr double kMinEdgeProb = 1e-12;
constexpr double kProbTolerance = 1e-9;

}  // namespace prank
