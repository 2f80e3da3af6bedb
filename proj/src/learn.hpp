#pragma once

#include <cstdint>
#include <vector>

#include "models.hpp"
#include "ranking.hpp"

namespace prank {

// A sample of tuples and the user's full ranking of them (best first).
struct PreferenceSample {
  Model sample;
  std::vector<TupleId> target_order;
};

// Throws kInvalidArgument unless target_order is a permutation of the sample ids.
void check_preferences(const PreferenceSample& s);

// Full order of the sample under PRFe(α), as a TopK over all tuples.
TopK prfe_order(const Model& m, double alpha);

// Kendall distance between the target and the PRFe(α) order, over all tuples.
double alpha_distance(const PreferenceSample& s, double alpha);

struct AlphaFit {
  double alpha = 0.0;
  double distance = 0.0;
  std::size_t evaluations = 0;
};

// Recursive ten-point grid refinement of [0, 1] until the interval is
// shorter than tol, continuing down to 1e-12 while no evaluated point
// reproduces the target. Returns the final midpoint, or the best evaluated
// point when the midpoint scores worse.
AlphaFit learn_alpha(const PreferenceSample& s, double tol = 1e-4);

struct WeightFitConfig {
  std::size_t h = 0;  // feature count; 0 means the sample size
  double reg = 1e-3;
  std::size_t epochs = 500;
  double step = 1.0;
  std::size_t max_pairs = 20000;
  std::uint64_t seed = 42;
};

struct WeightFit {
  std::vector<double> weights;  // ω(1..h)
  std::vector<double> loss;     // objective after each epoch
};

// Pairwise hinge loss on positional-probability features, minimised by
// full-batch subgradient descent with backtracking.
WeightFit learn_prfw_weights(const PreferenceSample& s, const WeightFitConfig& cfg = {});

}  // namespace prank
