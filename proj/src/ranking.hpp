#pragma once

#include <optional>
#include <vector>

#include "models.hpp"

namespace prank {

struct TopK {
  std::size_t k = 0;
  std::vector<TupleId> ids;
};

struct TupleValue {
  TupleId id = 0;
  double value = 0.0;
};

TopK topk(std::vector<PrfScore> scores, std::size_t k);

// Pr(t)·score(t), descending, ties by id.
std::vector<TupleValue> rank_escore(const Model& m);
TopK topk(const std::vector<TupleValue>& ordered, std::size_t k);

TopK rank_pt(const Model& m, std::size_t h, std::size_t k);

// Greedy position-by-position argmax of Pr(r(t) = i). The distinct variant
// skips tuples already chosen.
TopK rank_urank(const Model& m, std::size_t k, bool distinct = true);

// Expected rank with absent tuples at rank |pw|; ascending, ties by id.
// Throws kUnsupportedModel for junction-tree models.
std::vector<TupleValue> rank_erank(const Model& m);

// Υ(t) = score(t)·Pr(r(t) = 1).
TopK rank_kselection(const Model& m, std::size_t k);

// Inverted pairs inferable from the two top-k lists, divided by k².
// Throws kMismatchedK when the lists differ in length.
double kendall(const TopK& a, const TopK& b);

enum class ConsensusDistance { kSymmetricDifference, kWeighted };

// Expected distance from the candidate to each world's top list. The weighted
// form needs weights (positions 1..|weights|).
double consensus_expected_distance(const std::vector<TupleId>& candidate, const Model& m,
                                   ConsensusDistance dis,
                                   const std::vector<double>& weights = {});

}  // namespace prank
