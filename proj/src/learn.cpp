#include "learn.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_map>
#include <unordered_set>

namespace prank {

void check_preferences(const PreferenceSample& s) {
  const auto tuples = ranked_tuples(s.sample);
  if (s.target_order.size() != tuples.size()) {
    throw Error(ErrorCode::kInvalidArgument, "target order has " +
                                                 std::to_string(s.target_order.size()) +
                                                 " entries for " + std::to_string(tuples.size()) +
                                                 " sample tuples");
  }
  std::unordered_set<TupleId> ids;
  for (const auto& t : tuples) ids.insert(t.id);
  std::unordered_set<TupleId> seen;
  for (TupleId id : s.target_order) {
    if (!ids.count(id)) {
      throw Error(ErrorCode::kInvalidArgument, "target order names unknown tuple " + std::to_string(id));
    }
    if (!seen.insert(id).second) {
      throw Error(ErrorCode::kInvalidArgument, "target order repeats tuple " + std::to_string(id));
    }
  }
}

TopK prfe_order(const Model& m, double alpha) {
  auto scores = rank_prfe(m, alpha);
  return topk(std::move(scores), std::max<std::size_t>(1, tuple_count(m)));
}

double alpha_distance(const PreferenceSample& s, double alpha) {
  TopK target{s.target_order.size(), s.target_order};
  return kendall(target, prfe_order(s.sample, alpha));
}

namespace {
constexpr double kAlphaFloor = 1e-12;
}  // namespace

AlphaFit learn_alpha(const PreferenceSample& s, double tol) {
  check_preferences(s);
  if (!(tol > 0.0)) throw Error(ErrorCode::kConfig, "tolerance must be positive");
  AlphaFit fit;
  double best_x = 0.0, best_d = 2.0;
  double lo = 0.0, hi = 1.0;
  while (hi - lo >= tol || (best_d > 0.0 && hi - lo >= kAlphaFloor)) {
    std::vector<double> xs(11), ds(9);
    for (int i = 0; i <= 10; ++i) xs[i] = lo + i * (hi - lo) / 10.0;
    parallel_for(9, [&](std::size_t i) { ds[i] = alpha_distance(s, xs[i + 1]); });
    fit.evaluations += 9;
    std::size_t arg = 0;
    for (std::size_t i = 1; i < 9; ++i) {
      if (ds[i] < ds[arg]) arg = i;
    }
    if (ds[arg] < best_d) {
      best_d = ds[arg];
      best_x = xs[arg + 1];
    }
    const double next_lo = std::max(lo, xs[arg]);
    const double next_hi = std::min(hi, xs[arg + 2]);
    lo = next_lo;
    hi = next_hi;
  }
  const double mid = 0.5 * (lo + hi);
  const double mid_d = alpha_distance(s, mid);
  ++fit.evaluations;
  if (mid_d <= best_d) {
    fit.alpha = mid;
    fit.distance = mid_d;
  } else {
    fit.alpha = best_x;
    fit.distance = best_d;
  }
  return fit;
}

namespace {

struct PairSet {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (preferred, other)
};

PairSet make_pairs(std::size_t m, std::size_t max_pairs, std::uint64_t seed) {
  PairSet out;
  const std::size_t all = m * (m - 1) / 2;
  if (all <= max_pairs) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) out.pairs.emplace_back(i, j);
    }
    return out;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, m - 1);
  while (out.pairs.size() < max_pairs) {
    std::size_t i = pick(rng), j = pick(rng);
    if (i == j) continue;
    if (i > j) std::swap(i, j);
    out.pairs.emplace_back(i, j);
  }
  return out;
}

class HingeObjective {
 public:
  HingeObjective(std::vector<std::vector<double>> x, PairSet pairs, double reg)
      : x_(std::move(x)), pairs_(std::move(pairs)), reg_(reg) {}

  double loss(const std::vector<double>& w) const {
    const auto s = scores(w);
    double total = 0.0;
    for (const auto& [i, j] : pairs_.pairs) total += std::max(0.0, 1.0 - (s[i] - s[j]));
    return total / static_cast<double>(pairs_.pairs.size()) + reg_ * dot(w, w);
  }

  std::vector<double> gradient(const std::vector<double>& w) const {
    const auto s = scores(w);
    std::vector<double> coef(x_.size(), 0.0);
    for (const auto& [i, j] : pairs_.pairs) {
      if (1.0 - (s[i] - s[j]) > 0.0) {
        coef[i] -= 1.0;
        coef[j] += 1.0;
      }
    }
    std::vector<double> g(w.size());
    const double inv = 1.0 / static_cast<double>(pairs_.pairs.size());
    for (std::size_t t = 0; t < x_.size(); ++t) {
      if (coef[t] == 0.0) continue;
      for (std::size_t f = 0; f < w.size(); ++f) g[f] += coef[t] * inv * x_[t][f];
    }
    for (std::size_t f = 0; f < w.size(); ++f) g[f] += 2.0 * reg_ * w[f];
    return g;
  }

 private:
  static double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  }

  std::vector<double> scores(const std::vector<double>& w) const {
    std::vector<double> s(x_.size());
    for (std::size_t t = 0; t < x_.size(); ++t) s[t] = dot(w, x_[t]);
    return s;
  }

  std::vector<std::vector<double>> x_;
  PairSet pairs_;
  double reg_;
};

}  // namespace

WeightFit learn_prfw_weights(const PreferenceSample& s, const WeightFitConfig& cfg) {
  check_preferences(s);
  const std::size_t m = s.target_order.size();
  if (m < 2) throw Error(ErrorCode::kInvalidArgument, "weight learning needs at least two tuples");
  const std::size_t h = cfg.h == 0 ? m : cfg.h;
  if (h > m) throw Error(ErrorCode::kInvalidArgument, "feature cutoff h exceeds the sample size");
  if (cfg.epochs == 0 || !(cfg.step > 0.0) || cfg.reg < 0.0 || cfg.max_pairs == 0) {
    throw Error(ErrorCode::kConfig, "invalid weight learning schedule");
  }

  const auto dists = rank_distributions(s.sample, h);
  std::unordered_map<TupleId, const RankDistribution*> by_id;
  for (const auto& d : dists) by_id[d.id] = &d;
  std::vector<std::vector<double>> x(m, std::vector<double>(h, 0.0));
  for (std::size_t t = 0; t < m; ++t) {
    const auto& probs = by_id.at(s.target_order[t])->probs;
    std::copy_n(probs.begin(), std::min(h, probs.size()), x[t].begin());
  }

  // One shared scale (1 / largest feature deviation); weights are mapped back at the end.
  double top = 0.0;
  for (std::size_t f = 0; f < h; ++f) {
    double mean = 0.0;
    for (std::size_t t = 0; t < m; ++t) mean += x[t][f];
    mean /= static_cast<double>(m);
    double var = 0.0;
    for (std::size_t t = 0; t < m; ++t) var += (x[t][f] - mean) * (x[t][f] - mean);
    top = std::max(top, std::sqrt(var / static_cast<double>(m)));
  }
  if (top <= 1e-12) {
    throw Error(ErrorCode::kDegenerateSample, "all sample tuples have identical features");
  }
  const double scale = 1.0 / top;
  for (auto& row : x) {
    for (auto& v : row) v *= scale;
  }

  HingeObjective obj(std::move(x), make_pairs(m, cfg.max_pairs, cfg.seed), cfg.reg);
  std::vector<double> w(h, 0.0);
  double current = obj.loss(w);
  WeightFit fit;
  fit.loss.reserve(cfg.epochs);
  for (std::size_t e = 1; e <= cfg.epochs; ++e) {
    const auto g = obj.gradient(w);
    double eta = cfg.step / std::sqrt(static_cast<double>(e));
    for (int attempt = 0; attempt < 40; ++attempt, eta *= 0.5) {
      std::vector<double> next(h);
      for (std::size_t f = 0; f < h; ++f) next[f] = w[f] - eta * g[f];
      const double l = obj.loss(next);
      if (l <= current) {
        w = std::move(next);
        current = l;
        break;
      }
    }
    fit.loss.push_back(current);
  }
  fit.weights.resize(h);
  for (std::size_t f = 0; f < h; ++f) fit.weights[f] = w[f] * scale;
  return fit;
}

}  // namespace prank
