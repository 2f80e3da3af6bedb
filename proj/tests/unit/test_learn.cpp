#include <gtest/gtest.h>

#include <random>

#include "learn.hpp"
#include "models.hpp"
#include "prf.hpp"
#include "ranking.hpp"
#include "support/test_support.hpp"
#include "synth.hpp"

namespace prank {
namespace {

std::vector<TupleId> full_order(const std::vector<PrfScore>& s) {
  std::vector<TupleId> ids;
  for (const auto& x : s) ids.push_back(x.id);
  return ids;
}

TopK as_list(std::vector<TupleId> ids) { return {ids.size(), std::move(ids)}; }

PreferenceSample prfe_sample(const Relation& rel, double alpha) {
  return {rel, full_order(rank_prfe(rel, alpha))};
}

TEST(Preferences, Validation) {
  Relation rel({{1, 3, .5}, {2, 2, .5}});
  EXPECT_NO_THROW(check_preferences({rel, {2, 1}}));
  EXPECT_THROW(check_preferences({rel, {1}}), Error);
  EXPECT_THROW(check_preferences({rel, {1, 1}}), Error);
  EXPECT_THROW(check_preferences({rel, {1, 3}}), Error);
}

TEST(LearnAlpha, RecoversHighAlpha) {
  auto rel = synth_independent(500, 42);
  auto s = prfe_sample(rel, .95);
  auto fit = learn_alpha(s);
  EXPECT_EQ(fit.distance, 0.0);
  EXPECT_EQ(alpha_distance(s, fit.alpha), 0.0);
  EXPECT_GT(fit.evaluations, 9u);
}

TEST(LearnAlpha, EqualProbabilitiesAnyAlpha) {
  std::vector<ProbTuple> t;
  for (int i = 1; i <= 30; ++i) t.push_back({i, double(100 - i), .4});
  Relation rel(t);
  std::vector<TupleId> order;
  for (int i = 1; i <= 30; ++i) order.push_back(i);
  auto fit = learn_alpha({rel, order});
  EXPECT_EQ(fit.distance, 0.0);
}

TEST(LearnAlpha, PtTargetNearGridOptimum) {
  auto rel = synth_independent(500, 42);
  PreferenceSample s{rel, full_order(rank_prf(rel, WeightFunction::step(100)))};
  auto fit = learn_alpha(s);
  double best = 1.0;
  for (int i = 1; i <= 10000; ++i) best = std::min(best, alpha_distance(s, i / 10000.0));
  EXPECT_LE(fit.distance, best + 0.05);
}

TEST(LearnAlpha, NeverWorseThanOuterGridPoints) {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 10; ++rep) {
    auto rel = testing::random_relation(rng, 40);
    std::vector<TupleId> order;
    for (const auto& t : rel.tuples()) order.push_back(t.id);
    std::shuffle(order.begin(), order.end(), rng);
    PreferenceSample s{rel, order};
    auto fit = learn_alpha(s, 1e-3);
    EXPECT_LE(fit.distance, alpha_distance(s, .1));
    EXPECT_LE(fit.distance, alpha_distance(s, .9));
    EXPECT_EQ(fit.distance, alpha_distance(s, fit.alpha));
  }
}

TEST(LearnAlpha, Deterministic) {
  auto rel = synth_independent(200, 3);
  PreferenceSample s{rel, full_order(rank_prf(rel, WeightFunction::step(20)))};
  auto a = learn_alpha(s);
  auto b = learn_alpha(s);
  EXPECT_EQ(a.alpha, b.alpha);
  EXPECT_EQ(a.distance, b.distance);
}

TEST(LearnAlpha, SingleCrossingTargets) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(.1, .99);
  for (int rep = 0; rep < 10; ++rep) {
    auto rel = synth_independent(100, 100 + rep);
    const double star = u(rng);
    auto fit = learn_alpha(prfe_sample(rel, star));
    EXPECT_EQ(fit.distance, 0.0) << "alpha* = " << star;
  }
}

TEST(LearnWeights, TabulatedTargetReproduced) {
  std::mt19937_64 rng(7);
  auto rel = testing::random_relation(rng, 8);
  auto target = full_order(rank_prf(rel, WeightFunction::tabulated({3, 2, 1})));
  auto fit = learn_prfw_weights({rel, target});
  ASSERT_EQ(fit.weights.size(), 8u);
  auto learned = full_order(rank_prf(rel, WeightFunction::tabulated(fit.weights)));
  EXPECT_EQ(kendall(as_list(learned), as_list(target)), 0.0);
}

TEST(LearnWeights, HeldOutPrfe) {
  // Train on a 100-tuple sample, rank a 1000-tuple set from the same generator.
  auto sample = synth_independent(100, 11);
  auto fit = learn_prfw_weights(prfe_sample(sample, .95));
  auto full = synth_independent(1000, 12);
  auto learned = topk(rank_prf(full, WeightFunction::tabulated(fit.weights)), 100);
  auto truth = topk(rank_prfe(full, .95), 100);
  EXPECT_LT(kendall(learned, truth), 0.2);
}

TEST(LearnWeights, TwoTuplesSeparated) {
  Relation rel({{1, 5, .9}, {2, 3, .4}});
  for (std::vector<TupleId> order : {std::vector<TupleId>{1, 2}, std::vector<TupleId>{2, 1}}) {
    auto fit = learn_prfw_weights({rel, order});
    auto d = rank_distributions(rel);
    auto dot = [&](TupleId id) {
      const auto& p = d[id == 1 ? 0 : 1].probs;
      double s = 0;
      for (std::size_t j = 0; j < fit.weights.size() && j < p.size(); ++j) s += fit.weights[j] * p[j];
      return s;
    };
    EXPECT_GT(dot(order[0]), dot(order[1]));
  }
}

TEST(LearnWeights, LossNonIncreasing) {
  auto rel = synth_independent(60, 13);
  auto fit = learn_prfw_weights({rel, full_order(rank_prf(rel, WeightFunction::step(10)))});
  ASSERT_FALSE(fit.loss.empty());
  for (std::size_t e = 1; e < fit.loss.size(); ++e) EXPECT_LE(fit.loss[e], fit.loss[e - 1]);
}

TEST(LearnWeights, Errors) {
  // Both tuples have Pr(r = 1) = .5.
  Relation same({{1, 10, .5}, {2, 9, 1.0}});
  WeightFitConfig cfg;
  cfg.h = 1;
  try {
    learn_prfw_weights({same, {1, 2}}, cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateSample);
  }
  EXPECT_THROW(learn_prfw_weights({Relation({{1, 1, .5}}), {1}}), Error);
  cfg.h = 5;
  EXPECT_THROW(learn_prfw_weights({same, {1, 2}}, cfg), Error);
}

TEST(LearnWeights, Deterministic) {
  auto rel = synth_independent(50, 14);
  PreferenceSample s{rel, full_order(rank_prfe(rel, .8))};
  WeightFitConfig cfg;
  cfg.max_pairs = 300;
  EXPECT_EQ(learn_prfw_weights(s, cfg).weights, learn_prfw_weights(s, cfg).weights);
}

TEST(LearnWeights, AndXorSample) {
  std::mt19937_64 rng(15);
  auto tree = testing::random_tree(rng, 10);
  while (tree.leaf_count() < 4) tree = testing::random_tree(rng, 10);
  Model m = tree;
  auto target = full_order(rank_prf(m, WeightFunction::step(2)));
  EXPECT_NO_THROW(learn_prfw_weights({m, target}));
  EXPECT_NO_THROW(learn_alpha({m, target}));
}

}  // namespace
}  // namespace prank
