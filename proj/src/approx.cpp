#include "approx.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace prank {

namespace {

std::vector<std::size_t> top_indices(const std::vector<cplx>& psi, std::size_t L) {
  std::vector<std::size_t> idx(psi.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t x, std::size_t y) { return std::abs(psi[x]) > std::abs(psi[y]); });
  idx.resize(L);
  return idx;
}

void check_budget(std::size_t L, std::size_t M) {
  if (L < 1 || L > M) {
    throw Error(ErrorCode::kConfig, "exponential budget L=" + std::to_string(L) +
                                        " must lie in [1, " + std::to_string(M) + "]");
  }
}

cplx unit_root(std::size_t k, std::size_t M) {
  const double ang = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(M);
  return {std::cos(ang), std::sin(ang)};
}

}  // namespace

ExpMixture dft_approx_base(const std::vector<cplx>& samples, std::size_t L) {
  const std::size_t M = samples.size();
  check_budget(L, M);
  auto psi = dft(samples, false);
  ExpMixture out;
  for (std::size_t k : top_indices(psi, L)) {
    out.terms.push_back({psi[k] / static_cast<double>(M), unit_root(k, M)});
  }
  return out;
}

double damping_factor(std::size_t N, std::size_t a, double eps, double bound) {
  if (!(bound > 0.0) || eps >= bound) return 1.0;
  return std::pow(eps / bound, 1.0 / static_cast<double>(a * N));
}

ExpMixture dft_approx_full(const std::vector<double>& weights, const ApproxConfig& cfg) {
  if (cfg.a < 1) throw Error(ErrorCode::kConfig, "domain multiplier a must be at least 1");
  if (cfg.b < 0.0) throw Error(ErrorCode::kConfig, "left extension b must be non-negative");
  if (!(cfg.eps > 0.0)) throw Error(ErrorCode::kConfig, "damping target must be positive");
  if (weights.empty()) throw Error(ErrorCode::kConfig, "weight samples are empty");
  const std::size_t N = std::max(cfg.N, weights.size() + 1);
  const std::size_t S = static_cast<std::size_t>(std::llround(cfg.b * static_cast<double>(N)));
  const std::size_t M = cfg.a * (N + S);
  check_budget(cfg.L, M);
  // s(i) = ω(i) on [0, N) with s(0) = ω(1).
  auto s = [&](std::size_t i) {
    if (i == 0) return weights[0];
    return i <= weights.size() ? weights[i - 1] : 0.0;
  };
  double bound = 0.0;
  for (std::size_t i = 0; i < N; ++i) bound = std::max(bound, std::abs(s(i)));
  const double eta = damping_factor(N, cfg.a, cfg.eps, bound);
  // Extended, shifted and scaled sequence: e(j) = s(j - S) for j ≥ S, s(0) before.
  std::vector<cplx> e(M);
  const double log_eta = std::log(eta);
  for (std::size_t j = 0; j < M; ++j) {
    double v = j < S ? s(0) : (j - S < N ? s(j - S) : 0.0);
    e[j] = v * std::exp(-log_eta * static_cast<double>(j));
  }
  auto psi = dft(e, false);
  ExpMixture out;
  for (std::size_t k : top_indices(psi, cfg.L)) {
    const cplx alpha = eta * unit_root(k, M);
    // Fold the shift back: ω(i) = e(i + S).
    const cplx u = psi[k] / static_cast<double>(M) * std::pow(alpha, static_cast<double>(S));
    out.terms.push_back({u, alpha});
  }
  return out;
}

ExpMixture dft_approx_full(const WeightFunction& w, const ApproxConfig& cfg) {
  if (w.kind() == WeightFunction::Kind::kScoreScaled) {
    throw Error(ErrorCode::kConfig, "score-scaled weights cannot be approximated positionally");
  }
  auto support = w.support();
  std::size_t len = support ? *support : 0;
  if (cfg.N > 0) len = std::max<std::size_t>(1, cfg.N - 1);
  if (len == 0) throw Error(ErrorCode::kConfig, "weight function needs a finite domain N");
  if (!w.is_real()) throw Error(ErrorCode::kConfig, "only real weight functions are sampled");
  std::vector<double> samples(len);
  for (std::size_t i = 1; i <= len; ++i) samples[i - 1] = w.at(i).real();
  return dft_approx_full(samples, cfg);
}

cplx eval_mixture(const ExpMixture& m, double i) {
  cplx acc{};
  for (const auto& t : m.terms) {
    if (t.alpha == cplx{}) continue;
    acc += t.u * std::pow(t.alpha, i);
  }
  return acc;
}

ExpMixture combine(const ExpMixture& a, const ExpMixture& b) {
  ExpMixture out = a;
  out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
  return out;
}

std::vector<PrfScore> rank_mixture(const Model& m, const ExpMixture& mix) {
  const auto tuples = ranked_tuples(m);
  const Relation* rel = std::get_if<Relation>(&m);
  const Relation sorted = rel ? rel->sorted() : Relation();
  auto values = [&](cplx alpha) {
    return rel ? prfe_values_independent(sorted, alpha) : prfe_values(m, alpha);
  };
  std::vector<cplx> total(tuples.size());
  // Batches of concurrent passes, summed in term order.
  const std::size_t batch = std::max<std::size_t>(1, worker_count());
  for (std::size_t first = 0; first < mix.size(); first += batch) {
    const std::size_t count = std::min(batch, mix.size() - first);
    std::vector<std::vector<cplx>> parts(count);
    parallel_for(count, [&](std::size_t l) { parts[l] = values(mix.terms[first + l].alpha); });
    for (std::size_t l = 0; l < count; ++l) {
      const cplx u = mix.terms[first + l].u;
      const auto& p = parts[l];
      for (std::size_t i = 0; i < total.size(); ++i) total[i] += u * p[i];
    }
  }
  std::vector<PrfScore> out(tuples.size());
  for (std::size_t i = 0; i < tuples.size(); ++i) out[i] = make_score(tuples[i].id, total[i]);
  sort_scores(out);
  return out;
}

}  // namespace prank
