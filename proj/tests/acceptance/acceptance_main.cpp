// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "approx.hpp"
#include "junction.hpp"
#include "learn.hpp"
#include "models.hpp"
#include "oracle.hpp"
#include "poly.hpp"
#include "prf.hpp"
#include "ranking.hpp"
#include "support/test_support.hpp"
#include "synth.hpp"

namespace prank {
namespace {

using Clock = std::chrono::steady_clock;
using Matrix = std::vector<std::vector<double>>;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Collects failures for one criterion; the first few are reported.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (notes_.size() < 5) notes_.push_back(what);
  }
  void near(double got, double want, double tol, const std::string& what) {
    const double d = std::abs(got - want);
    worst_ = std::max(worst_, d);
    std::ostringstream s;
    s << what << ": got " << got << ", want " << want << " (tol " << tol << ")";
    expect(d <= tol, s.str());
  }
  void note(const std::string& s) { info_.push_back(s); }
  bool ok() const { return failures_ == 0; }
  double worst() const { return worst_; }
  std::string summary() const {
    std::string out;
    for (const auto& s : info_) out += (out.empty() ? "" : "; ") + s;
    if (failures_ > 0) {
      out += (out.empty() ? "" : "; ") + std::to_string(failures_) + " failure(s)";
      for (const auto& n : notes_) out += " | " + n;
    }
    return out;
  }

 private:
  std::size_t failures_ = 0;
  double worst_ = 0.0;
  std::vector<std::string> notes_, info_;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::map<TupleId, cplx> by_id(const std::vector<PrfScore>& s) {
  std::map<TupleId, cplx> m;
  for (const auto& x : s) m[x.id] = x.value;
  return m;
}

// 1. Worked examples.
void worked_examples(Check& c) {
  const auto rel = testing::three_tuples();
  const auto d = rank_distributions_independent(rel);
  const double t3[] = {.08, .2, .12};
  for (int j = 0; j < 3; ++j) c.near(d[2].probs[j], t3[j], 1e-12, "t3 position " + std::to_string(j + 1));
  c.near(std::abs(by_id(rank_prfe(rel, .6))[3] - .14592), 0.0, 1e-12, "PRFe(.6) of t3");

  const auto tree = testing::grouped_tree();
  const auto ws = enumerate_worlds(tree);
  const std::map<std::set<TupleId>, double> table = {
      {{1, 2, 4, 6}, .112}, {{1, 2, 5, 6}, .168}, {{1, 3, 4, 6}, .048}, {{1, 3, 5, 6}, .072},
      {{2, 4, 6}, .168},    {{2, 5, 6}, .252},    {{3, 4, 6}, .072},    {{3, 5, 6}, .108}};
  c.expect(ws.worlds.size() == table.size(), "grouped tree has " + std::to_string(ws.worlds.size()) + " worlds");
  for (const auto& w : ws.worlds) {
    const auto members = ws.members(w);
    const std::set<TupleId> key(members.begin(), members.end());
    auto it = table.find(key);
    c.expect(it != table.end(), "unexpected world");
    if (it != table.end()) c.near(w.prob, it->second, 1e-12, "world probability");
  }
  for (auto strategy : {ExpansionStrategy::kProduct, ExpansionStrategy::kInterpolate}) {
    for (const auto& row : rank_distributions_andxor(tree, kAllPositions, strategy)) {
      if (row.id == 4) c.near(row.probs[2], .216, 1e-12, "Pr(r(t4) = 3)");
    }
  }
  c.near(consensus_expected_distance({2, 5}, tree, ConsensusDistance::kSymmetricDifference), 1.736,
         1e-12, "expected symmetric difference of {t2, t5}");
  c.note("t3 row, PRFe(.6), 8 worlds, Pr(r(t4)=3), consensus 1.736; max deviation " + fmt(c.worst()));
}

// 2. Fast paths against world enumeration.
void compare_with_oracle(Check& c, const Model& m, std::mt19937_64& rng) {
  const auto ws = enumerate_worlds(m);
  const Matrix ref = rank_matrix_oracle(ws);
  const std::size_t n = ws.size();
  auto row_of = [&](TupleId id) -> const std::vector<double>& { return ref[ws.position_of(id)]; };
  const double tol = 1e-9;

  auto check_matrix = [&](const std::vector<RankDistribution>& rows, const std::string& what) {
    c.expect(rows.size() == n, what + ": row count");
    for (const auto& r : rows) {
      const auto& want = row_of(r.id);
      for (std::size_t j = 0; j < n; ++j) {
        c.near(j < r.probs.size() ? r.probs[j] : 0.0, want[j], tol, what);
      }
    }
  };
  auto check_values = [&](const std::vector<PrfScore>& got, const WeightFunction& w, const std::string& what) {
    for (const auto& s : got) {
      const auto& want = row_of(s.id);
      const auto& t = ws.tuples[ws.position_of(s.id)];
      cplx expect{};
      for (std::size_t j = 0; j < n; ++j) expect += w(t, j + 1) * want[j];
      c.near(std::abs(s.value - expect), 0.0, tol, what);
    }
  };
  // Selected ids must carry the oracle's top values, in order.
  auto check_selection = [&](const TopK& got, std::vector<double> oracle_values,
                             const std::function<double(TupleId)>& value_of, const std::string& what) {
    std::sort(oracle_values.rbegin(), oracle_values.rend());
    c.expect(got.ids.size() == std::min(got.k, n), what + ": answer size");
    for (std::size_t i = 0; i < got.ids.size(); ++i) c.near(value_of(got.ids[i]), oracle_values[i], tol, what);
  };

  std::vector<double> tab(n);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (auto& x : tab) x = u(rng);
  const auto w_tab = WeightFunction::tabulated(tab);

  if (const auto* rel = std::get_if<Relation>(&m)) {
    check_matrix(rank_distributions_independent(*rel), "independent rank distribution");
    check_values(rank_prf_independent(*rel, w_tab), w_tab, "independent PRF");
    for (cplx a : {cplx(.3), cplx(.9), cplx(.5, .4), cplx(-.7, .2)}) {
      check_values(rank_prfe_independent(*rel, a), WeightFunction::exponential(a), "independent PRFe");
    }
  } else {
    const auto& tree = std::get<AndXorTree>(m);
    check_matrix(rank_distributions_andxor(tree, kAllPositions, ExpansionStrategy::kProduct), "tree product expansion");
    check_matrix(rank_distributions_andxor(tree, kAllPositions, ExpansionStrategy::kInterpolate),
                 "tree interpolated expansion");
    check_values(rank_prf_andxor(tree, w_tab), w_tab, "tree PRF");
    for (cplx a : {cplx(.3), cplx(.9), cplx(.5, .4), cplx(-.7, .2)}) {
      check_values(rank_prfe_andxor(tree, a), WeightFunction::exponential(a), "tree PRFe");
    }
  }

  const auto er_ref = expected_rank_oracle(ws);
  for (const auto& v : rank_erank(m)) c.near(v.value, er_ref[ws.position_of(v.id)], tol, "expected rank");

  const std::size_t k = std::min<std::size_t>(n, 3);
  for (std::size_t h : {std::size_t{1}, std::max<std::size_t>(1, n / 2), n}) {
    check_values(rank_prf(m, WeightFunction::step(h)), WeightFunction::step(h), "PT values");
    auto pt_of = [&](TupleId id) {
      double s = 0.0;
      for (std::size_t j = 0; j < h; ++j) s += row_of(id)[j];
      return s;
    };
    std::vector<double> all;
    for (const auto& t : ws.tuples) all.push_back(pt_of(t.id));
    check_selection(rank_pt(m, h, k), all, pt_of, "PT answer");
  }

  const auto ksel = WeightFunction::score_scaled(WeightFunction::delta(1));
  check_values(rank_prf(m, ksel), ksel, "k-selection values");
  auto ks_of = [&](TupleId id) { return ws.tuples[ws.position_of(id)].score * row_of(id)[0]; };
  std::vector<double> ks_all;
  for (const auto& t : ws.tuples) ks_all.push_back(ks_of(t.id));
  check_selection(rank_kselection(m, k), ks_all, ks_of, "k-selection answer");

  for (bool distinct : {true, false}) {
    const auto got = rank_urank(m, k, distinct);
    std::set<TupleId> used;
    c.expect(got.ids.size() == k, "U-Rank answer size");
    for (std::size_t i = 0; i < got.ids.size(); ++i) {
      double best = -1.0;
      for (const auto& t : ws.tuples) {
        if (distinct && used.count(t.id)) continue;
        best = std::max(best, row_of(t.id)[i]);
      }
      c.near(row_of(got.ids[i])[i], best, tol, "U-Rank position " + std::to_string(i + 1));
      used.insert(got.ids[i]);
    }
  }
}

void oracle_suite(Check& c) {
  std::mt19937_64 rng(2024);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 1 + rng() % 12;
    compare_with_oracle(c, Model(testing::random_relation(rng, n, rep % 4 == 0)), rng);
  }
  for (int rep = 0; rep < 100; ++rep) {
    compare_with_oracle(c, Model(testing::random_tree(rng, 12, rep % 4 == 0)), rng);
  }
  c.note("200 models, max deviation " + fmt(c.worst()));
}

// 3. Junction trees against the joint rebuilt from potentials.
void junction_case(Check& c, const testing::RandomJt& r, const std::string& what) {
  const auto want = testing::joint_rank_matrix(testing::potential_joint(r.cliques, r.seps), r.rel);
  const auto cal = calibrate(JunctionTree(r.cliques, r.seps));
  const auto got = rank_distribution_jt(cal, r.rel);
  c.expect(got.size() == want.size(), what + ": row count");
  for (std::size_t i = 0; i < got.size() && i < want.size(); ++i) {
    for (std::size_t j = 0; j < want[i].size(); ++j) {
      c.near(j < got[i].probs.size() ? got[i].probs[j] : 0.0, want[i][j], 1e-9, what);
    }
  }
}

// Cliques {4,5}, {4,3}, {3,1}, {3,2} joined through {4}, {3}, {3}.
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

void junction_suite(Check& c) {
  std::mt19937_64 rng(77);
  std::size_t max_vars = 0;
  for (int rep = 0; rep < 50; ++rep) {
    testing::RandomJt r;
    switch (rep % 3) {
      case 0: r = testing::random_chain(rng, 2 + rng() % 15); break;
      case 1: r = testing::random_star(rng, rng() % 15); break;
      default: r = testing::random_jt(rng, 4 + rng() % 13, rep % 2 == 0); break;
    }
    max_vars = std::max(max_vars, r.rel.size());
    junction_case(c, r, "random tree " + std::to_string(rep));
  }

  // Conditioning on a leaf-only variable keeps one tree; on a separator variable it splits.
  auto r = five_variable_tree(rng);
  junction_case(c, r, "five-variable tree");
  const auto cal = calibrate(JunctionTree(r.cliques, r.seps));
  const auto joint = testing::potential_joint(r.cliques, r.seps);
  const std::vector<TupleId> vars = {1, 2, 3, 4, 5};
  auto conditional = [&](TupleId given, TupleId v) {
    double num = 0.0, den = 0.0;
    for (std::size_t x = 0; x < joint.size(); ++x) {
      if (!(x >> (given - 1) & 1u)) continue;
      den += joint[x];
      if (x >> (v - 1) & 1u) num += joint[x];
    }
    return num / den;
  };
  const auto leaf = condition_on_presence(cal, 5);
  c.expect(leaf.trees.size() == 1, "conditioning on X5 gives one tree");
  const auto split = condition_on_presence(cal, 4);
  c.expect(split.trees.size() == 2, "conditioning on X4 gives two trees");
  std::set<std::vector<TupleId>> parts;
  for (const auto& t : split.trees) {
    parts.insert(t.variables());
    for (TupleId v : t.variables()) c.near(t.marginal(v), conditional(4, v), 1e-9, "conditional marginal");
  }
  c.expect(parts == std::set<std::vector<TupleId>>{{1, 2, 3}, {5}}, "split components {1,2,3} and {5}");
  c.note("50 trees (up to " + std::to_string(max_vars) + " variables) plus split cases, max deviation " +
         fmt(c.worst()));
}

// 4. Consensus answers against exhaustive k-subset search.
void subsets(const std::vector<TupleId>& ids, std::size_t k,
             const std::function<void(const std::vector<TupleId>&)>& f) {
  std::vector<bool> pick(ids.size(), false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(k), true);
  do {
    std::vector<TupleId> s;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (pick[i]) s.push_back(ids[i]);
    }
    f(s);
  } while (std::prev_permutation(pick.begin(), pick.end()));
}

void consensus_suite(Check& c) {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::size_t checks = 0;
  for (int rep = 0; rep < 50; ++rep) {
    Model m = rep % 2 ? Model(testing::random_relation(rng, 3 + rng() % 6))
                      : Model(testing::random_tree(rng, 9));
    const auto ws = enumerate_worlds(m);
    std::vector<TupleId> ids;
    for (const auto& t : ws.tuples) ids.push_back(t.id);
    for (std::size_t k = 1; k <= std::min<std::size_t>(3, ids.size()); ++k) {
      double best = 1e300;
      subsets(ids, k, [&](const auto& s) { best = std::min(best, expected_symmetric_difference(ws, s)); });
      const auto step = topk(rank_prf(m, WeightFunction::step(k)), k);
      c.near(expected_symmetric_difference(ws, step.ids), best, 1e-9, "Step(k) top-k");
      ++checks;
      for (int trial = 0; trial < 5; ++trial) {
        std::vector<double> w(k);
        for (auto& x : w) x = u(rng);
        std::sort(w.rbegin(), w.rend());
        double wbest = 1e300;
        subsets(ids, k, [&](const auto& s) { wbest = std::min(wbest, expected_weighted_difference(ws, s, w)); });
        const auto ans = topk(rank_prf(m, WeightFunction::tabulated(w)), k);
        c.near(expected_weighted_difference(ws, ans.ids, w), wbest, 1e-9, "weighted top-k");
        ++checks;
      }
    }
  }
  c.note(std::to_string(checks) + " argmin checks, max gap " + fmt(c.worst()));
}

// 5. Order changes along the α sweep.
void crossing_suite(Check& c) {
  std::mt19937_64 rng(71);
  std::size_t pairs = 0;
  for (int rep = 0; rep < 100; ++rep) {
    const auto rel = testing::random_relation(rng, 2 + rng() % 9);
    const std::size_t n = rel.size();
    auto pos_of = [](const std::vector<PrfScore>& s) {
      std::map<TupleId, std::size_t> p;
      for (std::size_t i = 0; i < s.size(); ++i) p[s[i].id] = i;
      return p;
    };
    auto tau0 = pos_of(rank_prf(rel, WeightFunction::step(1)));
    auto tau1 = pos_of(rank_prf(rel, WeightFunction::constant(1)));
    std::vector<std::map<TupleId, std::size_t>> sweep;
    for (int g = 1; g <= 200; ++g) sweep.push_back(pos_of(rank_prfe(rel, g / 200.0)));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const TupleId a = rel[i].id, b = rel[j].id;
        int swaps = 0;
        for (std::size_t g = 1; g < sweep.size(); ++g) {
          if ((sweep[g][a] < sweep[g][b]) != (sweep[g - 1][a] < sweep[g - 1][b])) ++swaps;
        }
        c.expect(swaps <= 1, "pair swaps " + std::to_string(swaps) + " times");
        if ((tau0[a] < tau0[b]) == (tau1[a] < tau1[b])) {
          c.expect(swaps == 0, "concordant pair swapped");
        }
        ++pairs;
      }
    }
  }
  c.note(std::to_string(pairs) + " pairs over 200 grid points");
}

// 6. Mixture ranking against exact PT.
void approx_suite(Check& c) {
  const auto rel = synth_independent(10000, 42);
  const auto exact = rank_pt(rel, 100, 100);
  for (auto [L, limit] : {std::pair<std::size_t, double>{40, .1}, {20, .2}}) {
    ApproxConfig cfg;
    cfg.L = L;
    const auto mix = dft_approx_full(WeightFunction::step(100), cfg);
    const double d = kendall(topk(rank_mixture(rel, mix), 100), exact);
    c.expect(d < limit, "L=" + std::to_string(L) + " distance " + fmt(d));
    c.note("L=" + std::to_string(L) + ": " + fmt(d) + " < " + fmt(limit));
  }
}

// 7. Learning α.
void learn_suite(Check& c) {
  const auto rel = synth_independent(500, 42);
  auto order_of = [](const std::vector<PrfScore>& s) {
    std::vector<TupleId> ids;
    for (const auto& x : s) ids.push_back(x.id);
    return ids;
  };
  const auto fit = learn_alpha({rel, order_of(rank_prfe(rel, .95))});
  c.expect(fit.distance == 0.0, "PRFe(.95) target: distance " + fmt(fit.distance));
  c.note("PRFe(.95): alpha " + fmt(fit.alpha) + ", distance " + fmt(fit.distance));

  const PreferenceSample pt{rel, order_of(rank_prf(rel, WeightFunction::step(100)))};
  const auto pfit = learn_alpha(pt);
  double best = 2.0;
  for (int i = 1; i <= 10000; ++i) best = std::min(best, alpha_distance(pt, i / 10000.0));
  c.expect(pfit.distance <= best + 0.05, "PT(100) target: " + fmt(pfit.distance) + " vs grid " + fmt(best));
  c.note("PT(100): " + fmt(pfit.distance) + " vs grid optimum " + fmt(best));
}

// 8. Timing envelope.
template <class F>
double median_time(F&& f, int runs) {
  f();
  std::vector<double> t;
  for (int r = 0; r < runs; ++r) {
    const auto t0 = Clock::now();
    f();
    t.push_back(seconds_since(t0));
  }
  std::sort(t.begin(), t.end());
  return t[t.size() / 2];
}

void performance_suite(Check& c) {
  {
    const auto rel = synth_independent(1000000, 42).sorted();
    const auto t0 = Clock::now();
    const auto s = rank_prfe(rel, .95);
    const double t = seconds_since(t0);
    c.expect(s.size() == rel.size() && t < 10.0, "PRFe on 1e6 tuples took " + fmt(t) + " s");
    c.note("PRFe 1e6: " + fmt(t) + " s");
  }
  {
    const auto rel = synth_independent(100000, 43).sorted();
    double prev = 0.0;
    for (std::size_t h : {500u, 1000u, 2000u}) {
      const double t = median_time([&] { rank_pt(rel, h, 100); }, 3);
      if (prev > 0.0) {
        const double ratio = t / prev;
        c.expect(ratio >= 1.5 && ratio <= 3.0, "PT time ratio at h=" + std::to_string(h) + ": " + fmt(ratio));
        c.note("PT h=" + std::to_string(h / 2) + "->" + std::to_string(h) + ": x" + fmt(ratio));
      }
      prev = t;
    }
  }
  {
    const auto rel = synth_independent(500000, 44).sorted();
    const auto t0 = Clock::now();
    rank_pt(rel, 10000, 100);
    const double exact = seconds_since(t0);
    ApproxConfig cfg;
    cfg.L = 50;
    const double mixture = median_time(
        [&] { topk(rank_mixture(rel, dft_approx_full(WeightFunction::step(10000), cfg)), 100); }, 3);
    const double speedup = exact / mixture;
    c.expect(speedup >= 10.0, "mixture speedup " + fmt(speedup));
    c.note("PT(1e4) " + fmt(exact) + " s vs mixture(L=50) " + fmt(mixture) + " s, x" + fmt(speedup));
  }
}

// 9. Polynomial toolkit.
void poly_suite(Check& c) {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto random_poly = [&] {
      std::vector<cplx> a(1 + rng() % 257);
      for (auto& x : a) x = {u(rng), u(rng)};
      return Poly(a);
    };
    const Poly p = random_poly(), q = random_poly();
    const Poly f = poly_mul_fft(p, q), g = poly_mul_naive(p, q);
    c.expect(f.size() == g.size(), "product length");
    for (std::size_t i = 0; i < std::min(f.size(), g.size()); ++i) worst = std::max(worst, std::abs(f[i] - g[i]));
  }
  c.expect(worst <= 1e-8, "FFT vs naive deviation " + fmt(worst));
  c.note("FFT vs naive " + fmt(worst));

  auto x = NestedExpr::var();
  auto k = [](double v) { return NestedExpr::constant(v); };
  const auto e = ((k(1) + x + x * x) * (x * x + k(2) * x * x * x) + x * x * x * (k(2) + k(3) * x * x * x * x)) *
                 (k(1) + k(2) * x);
  const Poly naive = e.expand_naive(), fast = expand_nested(e, e.degree_bound());
  double d = 0.0;
  for (std::size_t i = 0; i < std::max(naive.size(), fast.size()); ++i) {
    const cplx a = i < naive.size() ? naive[i] : 0.0, b = i < fast.size() ? fast[i] : 0.0;
    d = std::max(d, std::abs(a - b));
  }
  c.expect(d <= 1e-7, "nested expansion deviation " + fmt(d));
  c.note("nested expansion " + fmt(d));
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  void (*run)(Check&);
};

}  // namespace
}  // namespace prank

int main() {
  using namespace prank;
  const Criterion criteria[] = {
      {1, "worked examples", 1.0, worked_examples},
      {2, "oracle equivalence", 60.0, oracle_suite},
      {3, "junction trees", 120.0, junction_suite},
      {4, "consensus answers", 60.0, consensus_suite},
      {5, "PRFe single crossing", 30.0, crossing_suite},
      {6, "approximation quality", 60.0, approx_suite},
      {7, "learning alpha", 60.0, learn_suite},
      {8, "performance envelope", 900.0, performance_suite},
      {9, "polynomial toolkit", 10.0, poly_suite},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Check c;
    const auto t0 = Clock::now();
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double t = seconds_since(t0);
    c.expect(t < cr.budget_s, "runtime " + fmt(t) + " s over budget " + fmt(cr.budget_s) + " s");
    const bool ok = c.ok();
    failed += ok ? 0 : 1;
    std::printf("%s criterion %d (%s): %s [%.2f s]\n", ok ? "PASS" : "FAIL", cr.id, cr.name,
                c.summary().c_str(), t);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
