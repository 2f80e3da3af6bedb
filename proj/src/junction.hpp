#pragma once

#include <vector>

#include "model.hpp"
#include "oracle.hpp"
#include "prf.hpp"

namespace prank {

// Tables are row-major over {0,1}^|vars| with the last listed variable fastest.
struct Clique {
  int id = 0;
  std::vector<TupleId> vars;
  std::vector<double> table;
};

struct Separator {
  int a = 0;  // clique ids
  int b = 0;
  std::vector<TupleId> vars;
  std::vector<double> table;  // empty means all ones
};

// Clique forest over binary variables with the running intersection property.
// Variable ids are tuple ids. The joint is Π π_v / Π μ_uv (0/0 = 0).
class JunctionTree {
 public:
  JunctionTree() = default;
  // Throws kShape on structural problems (table sizes, cycles, separators,
  // running intersection).
  JunctionTree(std::vector<Clique> cliques, std::vector<Separator> separators);

  const std::vector<Clique>& cliques() const { return cliques_; }
  const std::vector<Separator>& separators() const { return separators_; }
  const std::vector<TupleId>& variables() const { return variables_; }
  std::size_t clique_index(int id) const;
  bool has_variable(TupleId v) const;

  // Connected components as separate trees.
  std::vector<JunctionTree> components() const;

  // Marginal Pr(X = 1) read from a clique containing X (calibrated trees).
  double marginal(TupleId var) const;

 private:
  friend JunctionTree calibrate(const JunctionTree&);
  std::vector<Clique> cliques_;
  std::vector<Separator> separators_;
  std::vector<TupleId> variables_;
};

// Two-pass message passing then normalization per component. Tables become
// the true marginals. Throws kInconsistentPotentials on x/0 or a zero total.
JunctionTree calibrate(const JunctionTree& jt);

struct Conditioned {
  double prob = 0.0;  // Pr(X = 1)
  std::vector<JunctionTree> trees;
};

// Keeps X = 1 rows, drops X from every scope, splits at emptied separators and
// recalibrates. Throws kZeroProbability when Pr(X = 1) = 0.
Conditioned condition_on_presence(const JunctionTree& calibrated, TupleId var);

// delta(v) = 1 for variables counted in the partial sum.
using DeltaSet = std::vector<TupleId>;

// Distribution of Σ δ_v X_v on a connected, calibrated tree.
std::vector<double> junction_tree_partial_sum(const JunctionTree& jt, const DeltaSet& deltas);

// Same for path-shaped trees of 2-variable cliques. Throws kShape otherwise.
std::vector<double> markov_chain_partial_sum(const JunctionTree& jt, const DeltaSet& deltas);
bool is_markov_chain(const JunctionTree& jt);

std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b);

// Rows in ranking order of rel.
std::vector<RankDistribution> rank_distribution_jt(const JunctionTree& calibrated,
                                                   const Relation& rel,
                                                   std::size_t max_positions = kAllPositions);

std::vector<PrfScore> rank_prf_jt(const JunctionTree& calibrated, const Relation& rel,
                                  const WeightFunction& w);

// Joint over variables() in order, bit k of the index = variable k (≤ 24 vars).
std::vector<double> joint_distribution(const JunctionTree& jt);

// Possible worlds of the joint, tuples in ranking order of rel.
WorldSet enumerate_worlds(const JunctionTree& jt, const Relation& rel);

// Relation whose probabilities are the tree's marginals. Throws kInvalidModel
// unless rel and the tree share exactly the same ids.
Relation bind_relation(const JunctionTree& calibrated, const Relation& rel);

}  // namespace prank
