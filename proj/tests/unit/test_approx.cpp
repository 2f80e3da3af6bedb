#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>

#include "approx.hpp"
#include "prf.hpp"
#include "ranking.hpp"
#include "support/test_support.hpp"
#include "synth.hpp"

namespace prank {
namespace {

// Step of height 1 on positions 0..h, zero afterwards, sampled over [0, M).
std::vector<cplx> step_samples(std::size_t h, std::size_t M) {
  std::vector<cplx> s(M, 0.0);
  for (std::size_t i = 0; i <= h && i < M; ++i) s[i] = 1.0;
  return s;
}

double mean_abs_step_error(const ExpMixture& m, std::size_t h, std::size_t from, std::size_t to) {
  double e = 0;
  for (std::size_t i = from; i <= to; ++i) {
    e += std::abs(eval_mixture(m, double(i)) - (i <= h ? 1.0 : 0.0));
  }
  return e / double(to - from + 1);
}

double l2_residual(const ExpMixture& m, const std::vector<cplx>& s) {
  double e = 0;
  for (std::size_t i = 0; i < s.size(); ++i) e += std::norm(eval_mixture(m, double(i)) - s[i]);
  return std::sqrt(e);
}

TEST(DftBase, Constant) {
  auto m = dft_approx_base(std::vector<cplx>(16, 2.5), 1);
  ASSERT_EQ(m.size(), 1u);
  EXPECT_NEAR(std::abs(m.terms[0].u - 2.5), 0, 1e-12);
  EXPECT_NEAR(std::abs(m.terms[0].alpha - 1.0), 0, 1e-12);
}

TEST(DftBase, FullLengthIsExact) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<cplx> s(64);
  for (auto& x : s) x = u(rng);
  auto m = dft_approx_base(s, 64);
  for (std::size_t i = 0; i < 64; ++i) EXPECT_LE(std::abs(eval_mixture(m, double(i)) - s[i]), 1e-9);
  std::vector<cplx> eight(s.begin(), s.begin() + 8);
  auto m8 = dft_approx_base(eight, 8);
  for (std::size_t i = 0; i < 8; ++i) EXPECT_LE(std::abs(eval_mixture(m8, double(i)) - eight[i]), 1e-9);
}

TEST(DftBase, StepIsPeriodic) {
  auto m = dft_approx_base(step_samples(1000, 2000), 20);
  EXPECT_EQ(m.size(), 20u);
  for (std::size_t i : {5u, 500u, 1500u}) {
    EXPECT_LE(std::abs(eval_mixture(m, double(i)) - eval_mixture(m, double(i + 2000))), 1e-8);
  }
  EXPECT_LT(mean_abs_step_error(m, 1000, 0, 1999), 0.1);
}

TEST(DftBase, BudgetChecks) {
  for (std::size_t L : {0u, 9u}) {
    try {
      dft_approx_base(std::vector<cplx>(8, 1.0), L);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kConfig);
    }
  }
}

TEST(DftBase, ResidualNonIncreasingInL) {
  auto s = step_samples(300, 1000);
  double prev = 1e300;
  for (std::size_t L = 1; L <= 60; ++L) {
    const double r = l2_residual(dft_approx_base(s, L), s);
    EXPECT_LE(r, prev + 1e-9);
    prev = r;
  }
}

TEST(DftFull, ScaledSequenceResidualNonIncreasingInL) {
  // The top-L selection is made on the scaled sequence; its residual is monotone.
  const std::size_t N = 301, S = 30, a = 2, M = a * (N + S);
  const double eta = damping_factor(N, a, 1e-5, 1.0);
  std::vector<cplx> e(M, 0.0);
  for (std::size_t j = 0; j < M; ++j) {
    const bool on = j < S || j - S <= 300;
    e[j] = on ? std::pow(eta, -double(j)) : 0.0;
  }
  double prev = 1e300;
  for (std::size_t L = 1; L <= 60; ++L) {
    const double r = l2_residual(dft_approx_base(e, L), e);
    EXPECT_LE(r, prev * (1 + 1e-12) + 1e-9);
    prev = r;
  }
}

TEST(DftFull, CollapsesToBase) {
  std::vector<double> w = {1, .8, .5, .3, .2, 0, 0};
  ApproxConfig cfg;
  cfg.L = 5;
  cfg.a = 2;
  cfg.b = 0.0;
  cfg.eps = 1.0;  // equals the bound, so no damping
  auto full = dft_approx_full(w, cfg);
  // Base samples: s(0) = ω(1), s(i) = ω(i), zero to M = a·(len + 1).
  std::vector<cplx> s(2 * (w.size() + 1), 0.0);
  s[0] = w[0];
  for (std::size_t i = 1; i <= w.size(); ++i) s[i] = w[i - 1];
  auto base = dft_approx_base(s, 5);
  ASSERT_EQ(full.size(), base.size());
  for (std::size_t l = 0; l < base.size(); ++l) {
    EXPECT_EQ(full.terms[l].u, base.terms[l].u);
    EXPECT_EQ(full.terms[l].alpha, base.terms[l].alpha);
  }
}

TEST(DftFull, ConfigErrors) {
  ApproxConfig cfg;
  cfg.L = 0;
  EXPECT_THROW(dft_approx_full(WeightFunction::step(10), cfg), Error);
  cfg.L = 1000;
  EXPECT_THROW(dft_approx_full(WeightFunction::step(10), cfg), Error);
  cfg.L = 5;
  EXPECT_THROW(dft_approx_full(WeightFunction::exponential(.5), cfg), Error);
  cfg.N = 50;
  EXPECT_NO_THROW(dft_approx_full(WeightFunction::exponential(.5), cfg));
}

TEST(DftFull, FullBudgetReproducesWeights) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<double> w(50);
  for (auto& x : w) x = u(rng);
  ApproxConfig cfg;
  cfg.N = 0;
  const std::size_t N = w.size() + 1, S = std::size_t(std::llround(cfg.b * double(N)));
  cfg.L = cfg.a * (N + S);
  auto m = dft_approx_full(w, cfg);
  for (std::size_t i = 1; i <= w.size(); ++i) EXPECT_LE(std::abs(eval_mixture(m, double(i)) - w[i - 1]), 1e-9);
}

TEST(DftFull, ExponentialRecovered) {
  const double c = 2.0, beta = .97;
  std::vector<double> w(200);
  for (std::size_t i = 1; i <= w.size(); ++i) w[i - 1] = c * std::pow(beta, double(i));
  ApproxConfig cfg;
  cfg.L = 2 * (201 + 20);
  auto m = dft_approx_full(w, cfg);
  for (std::size_t i = 1; i <= w.size(); ++i) EXPECT_LT(std::abs(eval_mixture(m, double(i)) - w[i - 1]), 1e-6);
}

TEST(DftFull, TailBound) {
  struct Case {
    double eps;
    std::size_t L;
  };
  for (Case c : {Case{1e-2, 20}, Case{1e-3, 20}, Case{1e-3, 40}, Case{1e-5, 100}}) {
    ApproxConfig cfg;
    cfg.eps = c.eps;
    cfg.L = c.L;
    auto m = dft_approx_full(WeightFunction::step(1000), cfg);
    const std::size_t aN = cfg.a * 1001;
    double worst = 0;
    for (std::size_t i = aN + 1; i <= 4 * aN; ++i) worst = std::max(worst, std::abs(eval_mixture(m, double(i))));
    EXPECT_LE(worst, 1.5 * cfg.eps) << "eps " << c.eps << " L " << c.L;
    for (const auto& t : m.terms) EXPECT_LE(std::abs(t.alpha), 1 + 1e-12);
  }
}

TEST(DftFull, EmptyTailAtDefaults) {
  auto m = dft_approx_full(WeightFunction::step(1000), ApproxConfig{});
  EXPECT_LE(std::abs(eval_mixture(m, 3.0 * 1000)), 10 * 1e-5);
}

TEST(DftFull, ImprovesNearRankOne) {
  // Checked at eps = 1e-2, where damping is mild enough for the scaled
  // sequence to keep its energy in the top coefficients.
  ApproxConfig cfg;
  cfg.eps = 1e-2;
  auto full = dft_approx_full(WeightFunction::step(1000), cfg);
  auto base = dft_approx_base(step_samples(1000, 2000), 20);
  EXPECT_LT(mean_abs_step_error(full, 1000, 1, 20), mean_abs_step_error(base, 1000, 1, 20));
}

TEST(Mixture, EvalAndCombine) {
  ExpMixture one{{{1.0, .5}}};
  EXPECT_NEAR(std::abs(eval_mixture(one, 3) - .125), 0, 1e-15);
  ExpMixture two{{{cplx(0, 1), cplx(.2, .3)}, {-.5, .9}}};
  auto both = combine(one, two);
  for (double i = 1; i < 10; ++i) {
    EXPECT_LE(std::abs(eval_mixture(both, i) - (eval_mixture(one, i) + eval_mixture(two, i))), 1e-15);
  }
}

TEST(Mixture, SingleExponentialRanking) {
  ExpMixture m{{{1.0, .6}}};
  std::map<TupleId, cplx> v;
  for (const auto& s : rank_mixture(testing::three_tuples(), m)) v[s.id] = s.value;
  EXPECT_NEAR(std::abs(v[3] - .14592), 0, 1e-12);
  for (const auto& s : rank_mixture(testing::grouped_tree(), m)) v[s.id] = s.value;
  EXPECT_EQ(v.size(), 6u);
}

TEST(Mixture, ZeroMixture) {
  ExpMixture zero{{{0.0, .5}}};
  for (const auto& s : rank_mixture(testing::three_tuples(), zero)) EXPECT_EQ(s.magnitude, 0.0);
}

TEST(Mixture, ExactDftMatchesTruncatedPrf) {
  auto rel = synth_independent(1000, 7);
  const std::size_t h = 50;
  ApproxConfig cfg;
  const std::size_t N = h + 1, S = std::size_t(std::llround(cfg.b * double(N)));
  cfg.L = cfg.a * (N + S);
  auto mix = dft_approx_full(WeightFunction::step(h), cfg);
  auto approx = topk(rank_mixture(rel, mix), 100);
  auto exact = rank_pt(rel, h, 100);
  EXPECT_LE(kendall(approx, exact), 0.01);
}

}  // namespace
}  // namespace prank
