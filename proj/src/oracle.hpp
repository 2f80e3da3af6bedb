#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "model.hpp"

namespace prank {

constexpr std::size_t kMaxEnumerableTuples = 24;

// Bit i of mask is set when the i-th tuple in ranking order is present.
struct PossibleWorld {
  std::uint32_t mask = 0;
  double prob = 0.0;
};

// Exhaustive possible-world table over tuples held in ranking order.
struct WorldSet {
  std::vector<ProbTuple> tuples;
  std::vector<PossibleWorld> worlds;

  std::size_t size() const { return tuples.size(); }
  std::size_t position_of(TupleId id) const;  // throws kUnknownTuple
  std::vector<TupleId> members(const PossibleWorld& w) const;
};

// Independent tuples. Throws kSizeLimit above kMaxEnumerableTuples.
WorldSet enumerate_worlds(const Relation& rel);
// And/xor tree semantics: xor picks one child or none, and unions children.
WorldSet enumerate_worlds(const AndXorTree& tree);

// 1-based rank of the tuple among the world's members, nullopt when absent.
std::optional<int> world_rank(const WorldSet& ws, const PossibleWorld& w, TupleId id);

double positional_prob_oracle(const WorldSet& ws, TupleId id, int j);

// row i = tuple i in ranking order, column j = Pr(r = j+1); n columns.
std::vector<std::vector<double>> rank_matrix_oracle(const WorldSet& ws);

// Absent tuples take rank |pw|.
std::vector<double> expected_rank_oracle(const WorldSet& ws);

// Top-k list of a world in rank order.
std::vector<TupleId> world_topk(const WorldSet& ws, const PossibleWorld& w, std::size_t k);

// E[|candidate Δ τ_pw|] with τ_pw the world's top-k, k = |candidate|.
double expected_symmetric_difference(const WorldSet& ws, const std::vector<TupleId>& candidate);

// E[Σ_i w[i-1]·δ(τ_pw(i) ∉ candidate)] over the top-|w| of each world.
double expected_weighted_difference(const WorldSet& ws, const std::vector<TupleId>& candidate,
                                    const std::vector<double>& w);

}  // namespace prank
