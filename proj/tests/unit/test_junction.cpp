#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "junction.hpp"
#include "models.hpp"
#include "prf.hpp"
#include "support/test_support.hpp"

namespace prank {
namespace {

using testing::joint_rank_matrix;
using testing::potential_joint;

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

// Cliques {4,5}, {4,3}, {3,1}, {3,2} with random potentials.
testing::RandomJt five_variable_tree(std::mt19937_64& rng) {
  testing::RandomJt out;
  out.cliques = {{1, {4, 5}, testing::random_table(rng, 2)},
                 {2, {4, 3}, testing::random_table(rng, 2)},
                 {3, {3, 1}, testing::random_table(rng, 2)},
                 {4, {3, 2}, testing::random_table(rng, 2)}};
  out.seps = {{1, 2, {4}, {}}, {2, 3, {3}, {}}, {2, 4, {3}, {}}};
  out.rel = testing::random_scores(rng, {1, 2, 3, 4, 5});
  return out;
}

// Marginal of a table over vars onto the subset sub.
std::vector<double> marginalize(const Clique& c, const std::vector<TupleId>& sub) {
  std::vector<double> out(std::size_t{1} << sub.size(), 0.0);
  for (std::size_t x = 0; x < c.table.size(); ++x) {
    std::map<TupleId, int> a;
    for (std::size_t k = 0; k < c.vars.size(); ++k) {
      a[c.vars[k]] = static_cast<int>(x >> (c.vars.size() - 1 - k) & 1u);
    }
    out[testing::table_index(sub, a)] += c.table[x];
  }
  return out;
}

void expect_calibrated(const JunctionTree& jt, double tol) {
  for (const auto& c : jt.cliques()) EXPECT_NEAR(sum(c.table), 1.0, tol);
  for (const auto& s : jt.separators()) {
    const auto& a = jt.cliques()[jt.clique_index(s.a)];
    const auto& b = jt.cliques()[jt.clique_index(s.b)];
    auto ma = marginalize(a, s.vars), mb = marginalize(b, s.vars);
    for (std::size_t i = 0; i < ma.size(); ++i) EXPECT_NEAR(ma[i], mb[i], tol);
  }
}

void expect_matches_joint(const testing::RandomJt& r, double tol) {
  auto want = joint_rank_matrix(potential_joint(r.cliques, r.seps), r.rel);
  auto cal = calibrate(JunctionTree(r.cliques, r.seps));
  auto got = rank_distribution_jt(cal, r.rel);
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    for (std::size_t j = 0; j < want.size(); ++j) {
      const double g = j < got[i].probs.size() ? got[i].probs[j] : 0.0;
      EXPECT_NEAR(g, want[i][j], tol) << "row " << i << " position " << j + 1;
    }
  }
}

TEST(Calibrate, MarginalConsistency) {
  std::mt19937_64 rng(1);
  auto r = five_variable_tree(rng);
  auto cal = calibrate(JunctionTree(r.cliques, r.seps));
  expect_calibrated(cal, 1e-9);
  // Clique tables equal the joint's marginals.
  auto joint = potential_joint(r.cliques, r.seps);
  const auto& vars = cal.variables();
  for (const auto& c : cal.cliques()) {
    std::vector<double> m(c.table.size(), 0.0);
    for (std::size_t x = 0; x < joint.size(); ++x) {
      std::map<TupleId, int> a;
      for (std::size_t k = 0; k < vars.size(); ++k) a[vars[k]] = static_cast<int>(x >> k & 1u);
      m[testing::table_index(c.vars, a)] += joint[x];
    }
    for (std::size_t i = 0; i < m.size(); ++i) EXPECT_NEAR(c.table[i], m[i], 1e-9);
  }
}

TEST(Calibrate, SingleCliqueNormalizes) {
  auto cal = calibrate(JunctionTree({{0, {1, 2}, {1, 2, 3, 4}}}, {}));
  EXPECT_NEAR(cal.cliques()[0].table[3], .4, 1e-15);
  EXPECT_NEAR(cal.marginal(1), .7, 1e-15);
}

TEST(Calibrate, IndependenceEncoding) {
  auto cal = calibrate(JunctionTree({{0, {1}, {.5, .5}}, {1, {2}, {.4, .6}}, {2, {3}, {.6, .4}}}, {}));
  EXPECT_EQ(cal.components().size(), 3u);
  EXPECT_NEAR(cal.cliques()[1].table[1], .6, 1e-15);
  EXPECT_NEAR(cal.marginal(3), .4, 1e-15);
}

TEST(Calibrate, Errors) {
  try {
    calibrate(JunctionTree({{0, {1, 2}, {0, 0, 0, 0}}}, {}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInconsistentPotentials);
  }
  auto shape = [](auto f) {
    try {
      f();
      return false;
    } catch (const Error& e) {
      return e.code() == ErrorCode::kShape;
    }
  };
  EXPECT_TRUE(shape([] { JunctionTree({{0, {1, 2}, {1, 1, 1}}}, {}); }));
  // Running intersection broken: 1 appears at both ends but not in the middle.
  EXPECT_TRUE(shape([] {
    JunctionTree({{0, {1, 2}, {1, 1, 1, 1}}, {1, {2, 3}, {1, 1, 1, 1}}, {2, {3, 1}, {1, 1, 1, 1}}},
                 {{0, 1, {2}, {}}, {1, 2, {3}, {}}});
  }));
  // Cycle.
  EXPECT_TRUE(shape([] {
    JunctionTree({{0, {1, 2}, {1, 1, 1, 1}}, {1, {2, 3}, {1, 1, 1, 1}}, {2, {2, 4}, {1, 1, 1, 1}}},
                 {{0, 1, {2}, {}}, {1, 2, {2}, {}}, {2, 0, {2}, {}}});
  }));
}

TEST(Condition, LeafVariableGivesOneTree) {
  std::mt19937_64 rng(2);
  auto r = five_variable_tree(rng);
  auto cal = calibrate(JunctionTree(r.cliques, r.seps));
  auto c = condition_on_presence(cal, 5);
  EXPECT_NEAR(c.prob, cal.marginal(5), 1e-12);
  ASSERT_EQ(c.trees.size(), 1u);
  EXPECT_EQ(c.trees[0].variables(), (std::vector<TupleId>{1, 2, 3, 4}));
  expect_calibrated(c.trees[0], 1e-9);
}

TEST(Condition, SeparatorVariableSplits) {
  std::mt19937_64 rng(3);
  auto r = five_variable_tree(rng);
  auto cal = calibrate(JunctionTree(r.cliques, r.seps));
  auto c = condition_on_presence(cal, 4);
  ASSERT_EQ(c.trees.size(), 2u);
  std::vector<std::vector<TupleId>> scopes;
  for (const auto& t : c.trees) {
    scopes.push_back(t.variables());
    expect_calibrated(t, 1e-9);
  }
  std::sort(scopes.begin(), scopes.end());
  EXPECT_EQ(scopes[0], (std::vector<TupleId>{1, 2, 3}));
  EXPECT_EQ(scopes[1], (std::vector<TupleId>{5}));
  // Conditional marginals agree with the joint.
  auto joint = potential_joint(r.cliques, r.seps);
  double p4 = 0, p45 = 0;
  for (std::size_t x = 0; x < joint.size(); ++x) {
    if (x >> 3 & 1u) {
      p4 += joint[x];
      if (x >> 4 & 1u) p45 += joint[x];
    }
  }
  EXPECT_NEAR(c.prob, p4, 1e-12);
  const auto& five = c.trees[0].variables() == std::vector<TupleId>{5} ? c.trees[0] : c.trees[1];
  EXPECT_NEAR(five.marginal(5), p45 / p4, 1e-12);
}

TEST(Condition, CertainVariableLeavesOthers) {
  auto cal = calibrate(JunctionTree({{0, {1}, {0, 1}}, {1, {2}, {.3, .7}}, {2, {3}, {.9, .1}}}, {}));
  auto c = condition_on_presence(cal, 1);
  EXPECT_NEAR(c.prob, 1.0, 1e-15);
  for (const auto& t : c.trees) {
    for (TupleId v : t.variables()) EXPECT_NEAR(t.marginal(v), cal.marginal(v), 1e-12);
  }
}

TEST(Condition, ZeroProbability) {
  auto cal = calibrate(JunctionTree({{0, {1, 2}, {.5, .5, 0, 0}}}, {}));
  try {
    condition_on_presence(cal, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kZeroProbability);
  }
}

TEST(PartialSum, TwoVariableChain) {
  auto cal = calibrate(JunctionTree({{0, {1, 2}, {.1, .2, .3, .4}}}, {}));
  auto p = markov_chain_partial_sum(cal, {1, 2});
  ASSERT_EQ(p.size(), 3u);
  EXPECT_NEAR(p[0], .1, 1e-12);
  EXPECT_NEAR(p[1], .5, 1e-12);
  EXPECT_NEAR(p[2], .4, 1e-12);
  auto g = junction_tree_partial_sum(cal, {1, 2});
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(g[i], p[i], 1e-12);
}

TEST(PartialSum, NoDeltas) {
  std::mt19937_64 rng(4);
  auto r = testing::random_chain(rng, 5);
  auto cal = calibrate(JunctionTree(r.cliques, r.seps));
  auto p = markov_chain_partial_sum(cal, {});
  ASSERT_GE(p.size(), 1u);
  EXPECT_NEAR(p[0], 1.0, 1e-12);
  for (std::size_t i = 1; i < p.size(); ++i) EXPECT_NEAR(p[i], 0.0, 1e-12);
}

TEST(PartialSum, IndependentChainIsPoissonBinomial) {
  // Product potentials on a chain make the variables independent.
  const std::vector<double> q = {.2, .5, .7, .9, .35};
  std::vector<Clique> cliques;
  std::vector<Separator> seps;
  for (std::size_t i = 0; i + 1 < q.size(); ++i) {
    const double a = q[i], b = q[i + 1];
    std::vector<double> t = {(1 - a) * (1 - b), (1 - a) * b, a * (1 - b), a * b};
    cliques.push_back({int(i), {TupleId(i + 1), TupleId(i + 2)}, t});
    if (i > 0) seps.push_back({int(i - 1), int(i), {TupleId(i + 1)}, {1 - a, a}});
  }
  auto cal = calibrate(JunctionTree(cliques, seps));
  ASSERT_TRUE(is_markov_chain(cal));
  auto p = markov_chain_partial_sum(cal, {1, 2, 3, 4, 5});
  std::vector<cplx> gf = {1.0};
  for (double x : q) {
    std::vector<cplx> next(gf.size() + 1, 0.0);
    for (std::size_t i = 0; i < gf.size(); ++i) {
      next[i] += gf[i] * (1 - x);
      next[i + 1] += gf[i] * x;
    }
    gf = next;
  }
  for (std::size_t i = 0; i < gf.size(); ++i) EXPECT_NEAR(p[i], gf[i].real(), 1e-12);
}

TEST(PartialSum, ShapeErrors) {
  std::mt19937_64 rng(5);
  auto r = testing::random_star(rng, 3);
  auto cal = calibrate(JunctionTree(r.cliques, r.seps));
  EXPECT_FALSE(is_markov_chain(cal));
  try {
    markov_chain_partial_sum(cal, {1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kShape);
  }
}

TEST(PartialSum, ChainAgreesWithGeneralTree) {
  std::mt19937_64 rng(6);
  for (int rep = 0; rep < 10; ++rep) {
    auto r = testing::random_chain(rng, 3 + rep);
    auto cal = calibrate(JunctionTree(r.cliques, r.seps));
    DeltaSet d;
    for (TupleId v : cal.variables()) {
      if (rng() % 2) d.push_back(v);
    }
    auto a = markov_chain_partial_sum(cal, d);
    auto b = junction_tree_partial_sum(cal, d);
    const std::size_t n = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_NEAR(i < a.size() ? a[i] : 0.0, i < b.size() ? b[i] : 0.0, 1e-12);
    }
  }
}

TEST(PartialSum, StarAgainstJoint) {
  std::mt19937_64 rng(7);
  auto r = testing::random_star(rng, 3);
  auto joint = potential_joint(r.cliques, r.seps);
  auto cal = calibrate(JunctionTree(r.cliques, r.seps));
  const auto& vars = cal.variables();
  std::vector<double> want(vars.size() + 1, 0.0);
  for (std::size_t x = 0; x < joint.size(); ++x) want[std::popcount(x)] += joint[x];
  auto got = junction_tree_partial_sum(cal, DeltaSet(vars.begin(), vars.end()));
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-9);
  EXPECT_NEAR(sum(got), 1.0, 1e-9);
}

TEST(PartialSum, SingleDeltaRecoversMarginal) {
  std::mt19937_64 rng(8);
  auto r = testing::random_jt(rng, 10);
  auto cal = calibrate(JunctionTree(r.cliques, r.seps));
  for (TupleId v : cal.variables()) {
    auto p = junction_tree_partial_sum(cal, {v});
    EXPECT_NEAR(p.size() > 1 ? p[1] : 0.0, cal.marginal(v), 1e-12);
  }
}

TEST(Convolve, Associative) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0, 1);
  auto dist = [&](std::size_t n) {
    std::vector<double> d(n);
    for (auto& x : d) x = u(rng);
    const double s = sum(d);
    for (auto& x : d) x /= s;
    return d;
  };
  for (int rep = 0; rep < 20; ++rep) {
    auto a = dist(1 + rng() % 8), b = dist(1 + rng() % 8), c = dist(1 + rng() % 8);
    auto l = convolve(convolve(a, b), c), r = convolve(a, convolve(b, c));
    ASSERT_EQ(l.size(), r.size());
    for (std::size_t i = 0; i < l.size(); ++i) EXPECT_NEAR(l[i], r[i], 1e-10);
    EXPECT_NEAR(sum(l), 1.0, 1e-12);
  }
}

TEST(RankJt, IndependenceEncodingMatchesIndependent) {
  auto rel = testing::three_tuples();
  auto cal = calibrate(JunctionTree({{0, {1}, {.5, .5}}, {1, {2}, {.4, .6}}, {2, {3}, {.6, .4}}}, {}));
  auto jt = rank_distribution_jt(cal, rel);
  auto ind = rank_distributions_independent(rel);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(jt[i].probs[j], ind[i].probs[j], 1e-9);
  }
  EXPECT_NEAR(jt[2].probs[1], .2, 1e-12);
  std::map<TupleId, cplx> a, b;
  for (const auto& s : rank_prf_jt(cal, rel, WeightFunction::exponential(.6))) a[s.id] = s.value;
  for (const auto& s : rank_prfe_independent(rel, .6)) b[s.id] = s.value;
  for (const auto& [id, v] : b) EXPECT_LE(std::abs(a[id] - v), 1e-8);
}

TEST(RankJt, ChainMatchesEnumeration) {
  std::mt19937_64 rng(10);
  auto r = testing::random_chain(rng, 5);
  expect_matches_joint(r, 1e-9);
  auto cal = calibrate(JunctionTree(r.cliques, r.seps));
  auto ws = enumerate_worlds(cal, r.rel);
  EXPECT_EQ(ws.worlds.size(), 32u);
}

TEST(RankJt, DeterministicChain) {
  // Point mass on all variables present.
  std::vector<Clique> cliques = {{0, {1, 2}, {0, 0, 0, 1}}, {1, {2, 3}, {0, 0, 0, 1}}};
  std::vector<Separator> seps = {{0, 1, {2}, {}}};
  Relation rel({{1, 5, 1}, {2, 9, 1}, {3, 7, 1}});
  auto d = rank_distribution_jt(calibrate(JunctionTree(cliques, seps)), rel);
  // Ranking order is 2, 3, 1.
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < d[i].probs.size(); ++j) EXPECT_NEAR(d[i].probs[j], i == j ? 1.0 : 0.0, 1e-12);
  }
}

TEST(RankJt, PrfIdentities) {
  std::mt19937_64 rng(11);
  auto r = testing::random_chain(rng, 6);
  auto cal = calibrate(JunctionTree(r.cliques, r.seps));
  for (const auto& s : rank_prf_jt(cal, r.rel, WeightFunction::constant(1))) {
    EXPECT_NEAR(s.value.real(), cal.marginal(s.id), 1e-9);
  }
  auto want = joint_rank_matrix(potential_joint(r.cliques, r.seps), r.rel);
  auto sorted = r.rel.sorted();
  std::map<TupleId, double> pt;
  for (const auto& s : rank_prf_jt(cal, r.rel, WeightFunction::step(2))) pt[s.id] = s.value.real();
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    EXPECT_NEAR(pt[sorted[i].id], want[i][0] + want[i][1], 1e-9);
  }
}

TEST(RankJt, RandomTreesMatchJoint) {
  std::mt19937_64 rng(12);
  for (int rep = 0; rep < 50; ++rep) {
    testing::RandomJt r;
    switch (rep % 3) {
      case 0: r = testing::random_chain(rng, 2 + rng() % 15); break;
      case 1: r = testing::random_star(rng, 1 + rng() % 10); break;
      default: r = testing::random_jt(rng, 16, rep % 2 == 0); break;
    }
    expect_matches_joint(r, 1e-9);
  }
}

TEST(RankJt, ConditionedSumsToOne) {
  std::mt19937_64 rng(13);
  auto r = testing::random_jt(rng, 12);
  auto cal = calibrate(JunctionTree(r.cliques, r.seps));
  for (TupleId v : cal.variables()) {
    auto c = condition_on_presence(cal, v);
    std::vector<double> total = {1.0};
    for (const auto& t : c.trees) {
      for (const auto& cl : t.cliques()) EXPECT_NEAR(sum(cl.table), 1.0, 1e-9);
      for (const auto& comp : t.components()) {
        DeltaSet d(comp.variables().begin(), comp.variables().end());
        total = convolve(total, junction_tree_partial_sum(comp, d));
      }
    }
    EXPECT_NEAR(sum(total), 1.0, 1e-7);
  }
}

TEST(JunctionModel, BindsMarginals) {
  std::mt19937_64 rng(14);
  auto r = testing::random_chain(rng, 4);
  auto m = make_junction_model(JunctionTree(r.cliques, r.seps), r.rel);
  for (const auto& t : m.rel.tuples()) EXPECT_NEAR(t.prob, m.jt.marginal(t.id), 1e-15);
  try {
    make_junction_model(JunctionTree(r.cliques, r.seps), Relation({{1, 1, 1}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidModel);
  }
  Model model = m;
  EXPECT_THROW(restrict_model(model, {1, 2}), Error);
}

}  // namespace
}  // namespace prank
