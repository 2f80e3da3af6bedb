#include "check.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "ranking.hpp"

namespace prank {

double CheckReport::max_dev() const {
  double d = 0.0;
  for (const auto& r : rows) d = std::max(d, r.max_dev);
  return d;
}

namespace {

using Matrix = std::vector<std::vector<double>>;

double matrix_dev(const std::vector<RankDistribution>& fast, const WorldSet& ws, const Matrix& ref) {
  double d = 0.0;
  for (const auto& row : fast) {
    const auto& r = ref[ws.position_of(row.id)];
    for (std::size_t j = 0; j < r.size(); ++j) {
      const double f = j < row.probs.size() ? row.probs[j] : 0.0;
      d = std::max(d, std::abs(f - r[j]));
    }
  }
  return d;
}

double score_dev(const std::vector<PrfScore>& fast, const WorldSet& ws, const Matrix& ref,
                 const WeightFunction& w) {
  double d = 0.0;
  for (const auto& s : fast) {
    const std::size_t i = ws.position_of(s.id);
    cplx expect{};
    for (std::size_t j = 0; j < ref[i].size(); ++j) expect += w(ws.tuples[i], j + 1) * ref[i][j];
    d = std::max(d, std::abs(s.value - expect));
  }
  return d;
}

}  // namespace

CheckReport oracle_check(const Model& m) {
  const std::size_t n = tuple_count(m);
  if (n > kOracleCheckLimit) {
    throw Error(ErrorCode::kSizeLimit, "oracle check limited to " +
                                           std::to_string(kOracleCheckLimit) + " tuples, got " +
                                           std::to_string(n));
  }
  require_valid(m);
  const WorldSet ws = enumerate_worlds(m);
  const Matrix ref = rank_matrix_oracle(ws);
  CheckReport rep;

  rep.rows.push_back({"rank distributions vs enumeration", matrix_dev(rank_distributions(m), ws, ref)});
  if (const auto* t = std::get_if<AndXorTree>(&m)) {
    rep.rows.push_back({"interpolated tree expansion vs enumeration",
                        matrix_dev(rank_distributions_andxor(*t, kAllPositions,
                                                             ExpansionStrategy::kInterpolate),
                                   ws, ref)});
  }

  const std::vector<cplx> alphas = {0.3, 0.6, 0.95, {0.5, 0.5}};
  double prfe = 0.0;
  for (cplx a : alphas) {
    prfe = std::max(prfe, score_dev(rank_prfe(m, a), ws, ref, WeightFunction::exponential(a)));
  }
  rep.rows.push_back({"prfe fast path vs enumeration", prfe});

  double pt = 0.0;
  for (std::size_t h : {std::size_t{1}, std::max<std::size_t>(1, n / 2), n}) {
    const auto w = WeightFunction::step(h);
    pt = std::max(pt, score_dev(rank_prf(m, w), ws, ref, w));
  }
  rep.rows.push_back({"pt vs enumeration", pt});

  const auto ksel = WeightFunction::score_scaled(WeightFunction::delta(1));
  rep.rows.push_back({"kselection vs enumeration", score_dev(rank_prf(m, ksel), ws, ref, ksel)});

  if (!std::holds_alternative<JunctionModel>(m)) {
    const auto er_ref = expected_rank_oracle(ws);
    double er = 0.0;
    for (const auto& v : rank_erank(m)) er = std::max(er, std::abs(v.value - er_ref[ws.position_of(v.id)]));
    rep.rows.push_back({"erank vs enumeration", er});
  }
  return rep;
}

}  // namespace prank
