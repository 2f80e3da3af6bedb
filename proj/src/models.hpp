#pragma once

#include <variant>

#include "junction.hpp"
#include "model.hpp"
#include "oracle.hpp"
#include "prf.hpp"

namespace prank {

// Calibrated junction tree plus the scores of its variables.
struct JunctionModel {
  JunctionTree jt;
  Relation rel;  // marginals taken from jt, ranking order
};

// Calibrates and binds. Throws kInvalidModel on id mismatch.
JunctionModel make_junction_model(const JunctionTree& jt, const Relation& rel);

using Model = std::variant<Relation, AndXorTree, JunctionModel>;

const char* model_kind_name(const Model& m);
std::size_t tuple_count(const Model& m);

// Tuples in ranking order with marginal probabilities.
std::vector<ProbTuple> ranked_tuples(const Model& m);

// Structural validation; throws kInvalidTree for broken trees.
void require_valid(const Model& m);

std::vector<RankDistribution> rank_distributions(const Model& m,
                                                 std::size_t max_positions = kAllPositions);
std::vector<PrfScore> rank_prf(const Model& m, const WeightFunction& w);
std::vector<PrfScore> rank_prfe(const Model& m, cplx alpha);
// Plain Υ values in ranking order.
std::vector<cplx> prfe_values(const Model& m, cplx alpha);

WorldSet enumerate_worlds(const Model& m);

// Submodel over the given ids (and/xor trees keep the paths to kept leaves).
Model restrict_model(const Model& m, const std::vector<TupleId>& ids);

}  // namespace prank
