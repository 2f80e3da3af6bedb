#pragma once

#include <cstddef>
#include <limits>
#include <unordered_map>
#include <utility>
#include <vector>

#include "log_product.hpp"
#include "model.hpp"
#include "poly.hpp"
#include "weights.hpp"

namespace prank {

constexpr std::size_t kAllPositions = std::numeric_limits<std::size_t>::max();

// probs[j] = Pr(r(t) = j+1). prob is the marginal Pr(t).
struct RankDistribution {
  TupleId id = 0;
  double prob = 0.0;
  std::vector<double> probs;
};

struct PrfScore {
  TupleId id = 0;
  cplx value;
  double magnitude = 0.0;
  // log|value|, also valid when value underflows.
  double log_magnitude = -std::numeric_limits<double>::infinity();
};

PrfScore make_score(TupleId id, cplx value);
PrfScore make_score(TupleId id, const LogProduct& value);

// Descending |Υ|, ties by ascending id.
bool score_before(const PrfScore& a, const PrfScore& b);
void sort_scores(std::vector<PrfScore>& scores);

// Rows in ranking order, each truncated to max_positions entries.
std::vector<RankDistribution> rank_distributions_independent(
    const Relation& rel, std::size_t max_positions = kAllPositions);

// Υ(t) = Σ_j ω(t,j)·Pr(r(t)=j). Expansion is truncated at the weight support.
std::vector<PrfScore> rank_prf_independent(const Relation& rel, const WeightFunction& w);

// Υ(t_i) = F^i(α) in one pass with an underflow-safe running product.
std::vector<PrfScore> rank_prfe_independent(const Relation& rel, cplx alpha);

// Plain complex Υ values in ranking order (no log tracking); used by mixtures.
std::vector<cplx> prfe_values_independent(const Relation& sorted_rel, cplx alpha);

enum class ExpansionStrategy {
  kProduct,      // divide-and-conquer products at and nodes
  kInterpolate,  // evaluation at roots of unity plus inverse transform
};

std::vector<RankDistribution> rank_distributions_andxor(
    const AndXorTree& tree, std::size_t max_positions = kAllPositions,
    ExpansionStrategy strategy = ExpansionStrategy::kProduct);

std::vector<PrfScore> rank_prf_andxor(const AndXorTree& tree, const WeightFunction& w,
                                      ExpansionStrategy strategy = ExpansionStrategy::kProduct);

// Incremental path updates; one root-ward walk per changed leaf.
std::vector<PrfScore> rank_prfe_andxor(const AndXorTree& tree, cplx alpha);

// Plain complex Υ values in ranking order.
std::vector<cplx> prfe_values_andxor(const AndXorTree& tree, cplx alpha);

// Υ from a distribution matrix.
std::vector<PrfScore> prf_from_distributions(const std::vector<RankDistribution>& dists,
                                             const std::vector<ProbTuple>& tuples,
                                             const WeightFunction& w);

struct ScoreAlternatives {
  TupleId id = 0;
  std::vector<std::pair<double, double>> alternatives;  // (score, probability)
};

struct UncertainExpansion {
  AndXorTree tree;
  std::unordered_map<TupleId, TupleId> original_of;  // alternative id -> tuple id
};

// One xor group per tuple over its alternatives. Alternative ids are 0..m-1
// in input order.
UncertainExpansion expand_score_uncertainty(const std::vector<ScoreAlternatives>& tuples);

// Sums alternative values per original tuple.
std::vector<PrfScore> regroup_scores(const std::vector<PrfScore>& scores,
                                     const UncertainExpansion& expansion);

}  // namespace prank
