#pragma once

#include <vector>

#include "models.hpp"
#include "poly.hpp"
#include "weights.hpp"

namespace prank {

struct MixtureTerm {
  cplx u;      // coefficient
  cplx alpha;  // base
};

// ω(i) ≈ Σ_l u_l·α_l^i.
struct ExpMixture {
  std::vector<MixtureTerm> terms;
  std::size_t size() const { return terms.size(); }
};

struct ApproxConfig {
  std::size_t L = 20;   // number of exponentials kept
  std::size_t a = 2;    // domain multiplier
  double b = 0.1;       // left extension as a fraction of N
  double eps = 1e-5;    // damping target
  std::size_t N = 0;    // active domain; 0 derives it from the weight support
};

// Samples s(0..M-1); keeps the L largest DFT coefficients (ties by smaller k).
// Throws kConfig unless 1 <= L <= M.
ExpMixture dft_approx_base(const std::vector<cplx>& samples, std::size_t L);

// Damped, scaled, left-extended approximation of weights w[i-1] = ω(i),
// i = 1..len. Position 0 repeats ω(1); the active domain is N = len + 1
// unless cfg.N is larger.
ExpMixture dft_approx_full(const std::vector<double>& weights, const ApproxConfig& cfg);
// Weight functions need finite support or an explicit cfg.N.
ExpMixture dft_approx_full(const WeightFunction& w, const ApproxConfig& cfg);

// The damping factor for a configuration and bound B.
double damping_factor(std::size_t N, std::size_t a, double eps, double bound);

cplx eval_mixture(const ExpMixture& m, double i);

// Concatenation: eval(m1 ⊕ m2) = eval(m1) + eval(m2).
ExpMixture combine(const ExpMixture& a, const ExpMixture& b);

// Σ_l u_l·Υ_prfe(t; α_l), ordered by descending |Υ|.
std::vector<PrfScore> rank_mixture(const Model& m, const ExpMixture& mix);

}  // namespace prank
