#include "junction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <unordered_map>
#include <unordered_set>

namespace prank {

namespace {

constexpr double kZero = 1e-300;
constexpr std::size_t kMaxCliqueVars = 20;
constexpr std::size_t kMaxJointVars = 24;

int position_in(const std::vector<TupleId>& vars, TupleId v) {
  auto it = std::find(vars.begin(), vars.end(), v);
  return it == vars.end() ? -1 : static_cast<int>(it - vars.begin());
}

// map[i] = index into the sub-table for full-table row i.
std::vector<std::size_t> projection(const std::vector<TupleId>& full,
                                    const std::vector<TupleId>& sub) {
  const std::size_t nf = full.size();
  std::vector<std::size_t> shift(sub.size());
  for (std::size_t k = 0; k < sub.size(); ++k) {
    int p = position_in(full, sub[k]);
    if (p < 0) throw Error(ErrorCode::kShape, "variable " + std::to_string(sub[k]) + " not in scope");
    shift[k] = nf - 1 - static_cast<std::size_t>(p);
  }
  std::vector<std::size_t> map(std::size_t{1} << nf);
  for (std::size_t i = 0; i < map.size(); ++i) {
    std::size_t s = 0;
    for (std::size_t k = 0; k < sub.size(); ++k) s = (s << 1) | ((i >> shift[k]) & 1u);
    map[i] = s;
  }
  return map;
}

std::vector<double> marginalize(const std::vector<double>& table, const std::vector<TupleId>& full,
                                const std::vector<TupleId>& sub) {
  auto map = projection(full, sub);
  std::vector<double> out(std::size_t{1} << sub.size(), 0.0);
  for (std::size_t i = 0; i < table.size(); ++i) out[map[i]] += table[i];
  return out;
}

double safe_ratio(double num, double den) {
  if (std::abs(den) < kZero) {
    if (std::abs(num) < kZero) return 0.0;
    throw Error(ErrorCode::kInconsistentPotentials, "division of a nonzero potential by zero");
  }
  return num / den;
}

struct Adjacent {
  std::size_t clique;
  std::size_t sep;
};

std::vector<std::vector<Adjacent>> adjacency(const JunctionTree& jt) {
  std::vector<std::vector<Adjacent>> adj(jt.cliques().size());
  for (std::size_t e = 0; e < jt.separators().size(); ++e) {
    const auto& s = jt.separators()[e];
    std::size_t a = jt.clique_index(s.a), b = jt.clique_index(s.b);
    adj[a].push_back({b, e});
    adj[b].push_back({a, e});
  }
  return adj;
}

// BFS order of one component rooted at its max-id clique; parent[i] holds
// (parent clique, separator) for non-roots.
struct Rooted {
  std::vector<std::size_t> order;
  std::vector<Adjacent> parent;
};

Rooted root_component(const JunctionTree& jt, const std::vector<std::vector<Adjacent>>& adj,
                      std::size_t start) {
  std::vector<std::size_t> members;
  std::vector<char> seen(adj.size(), 0);
  std::queue<std::size_t> q;
  q.push(start);
  seen[start] = 1;
  while (!q.empty()) {
    std::size_t u = q.front();
    q.pop();
    members.push_back(u);
    for (const auto& nb : adj[u]) {
      if (!seen[nb.clique]) {
        seen[nb.clique] = 1;
        q.push(nb.clique);
      }
    }
  }
  std::size_t root = *std::max_element(members.begin(), members.end(), [&](auto x, auto y) {
    return jt.cliques()[x].id < jt.cliques()[y].id;
  });
  Rooted r;
  r.parent.assign(adj.size(), {static_cast<std::size_t>(-1), static_cast<std::size_t>(-1)});
  std::fill(seen.begin(), seen.end(), 0);
  q.push(root);
  seen[root] = 1;
  while (!q.empty()) {
    std::size_t u = q.front();
    q.pop();
    r.order.push_back(u);
    for (const auto& nb : adj[u]) {
      if (!seen[nb.clique]) {
        seen[nb.clique] = 1;
        r.parent[nb.clique] = {u, nb.sep};
        q.push(nb.clique);
      }
    }
  }
  return r;
}

std::vector<Rooted> rooted_components(const JunctionTree& jt,
                                      const std::vector<std::vector<Adjacent>>& adj) {
  std::vector<Rooted> out;
  std::vector<char> done(adj.size(), 0);
  for (std::size_t i = 0; i < adj.size(); ++i) {
    if (done[i]) continue;
    out.push_back(root_component(jt, adj, i));
    for (std::size_t u : out.back().order) done[u] = 1;
  }
  return out;
}

}  // namespace

JunctionTree::JunctionTree(std::vector<Clique> cliques, std::vector<Separator> separators)
    : cliques_(std::move(cliques)), separators_(std::move(separators)) {
  std::unordered_map<int, std::size_t> ids;
  std::unordered_set<TupleId> vars;
  for (std::size_t i = 0; i < cliques_.size(); ++i) {
    auto& c = cliques_[i];
    if (!ids.emplace(c.id, i).second) {
      throw Error(ErrorCode::kShape, "duplicate clique id " + std::to_string(c.id));
    }
    if (c.vars.size() > kMaxCliqueVars) {
      throw Error(ErrorCode::kShape, "clique " + std::to_string(c.id) + " is too large");
    }
    std::unordered_set<TupleId> local(c.vars.begin(), c.vars.end());
    if (local.size() != c.vars.size()) {
      throw Error(ErrorCode::kShape, "clique " + std::to_string(c.id) + " repeats a variable");
    }
    if (c.table.size() != (std::size_t{1} << c.vars.size())) {
      throw Error(ErrorCode::kShape, "clique " + std::to_string(c.id) + " table has wrong size");
    }
    for (double v : c.table) {
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw Error(ErrorCode::kInconsistentPotentials,
                    "clique " + std::to_string(c.id) + " has a negative or non-finite potential");
      }
    }
    vars.insert(c.vars.begin(), c.vars.end());
  }
  for (auto& s : separators_) {
    if (!ids.count(s.a) || !ids.count(s.b) || s.a == s.b) {
      throw Error(ErrorCode::kShape, "separator references unknown cliques");
    }
    const auto& ca = cliques_[ids[s.a]];
    const auto& cb = cliques_[ids[s.b]];
    for (TupleId v : s.vars) {
      if (position_in(ca.vars, v) < 0 || position_in(cb.vars, v) < 0) {
        throw Error(ErrorCode::kShape, "separator variable " + std::to_string(v) +
                                           " missing from an endpoint clique");
      }
    }
    if (s.table.empty()) s.table.assign(std::size_t{1} << s.vars.size(), 1.0);
    if (s.table.size() != (std::size_t{1} << s.vars.size())) {
      throw Error(ErrorCode::kShape, "separator table has wrong size");
    }
  }
  // Forest check by union-find.
  std::vector<std::size_t> uf(cliques_.size());
  std::iota(uf.begin(), uf.end(), 0);
  auto find = [&](std::size_t x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };
  for (const auto& s : separators_) {
    std::size_t a = find(ids[s.a]), b = find(ids[s.b]);
    if (a == b) throw Error(ErrorCode::kShape, "clique graph has a cycle");
    uf[a] = b;
  }
  // Running intersection: cliques holding v are joined by edges carrying v.
  for (TupleId v : vars) {
    std::size_t holders = 0, carriers = 0;
    for (const auto& c : cliques_) holders += position_in(c.vars, v) >= 0;
    for (const auto& s : separators_) carriers += position_in(s.vars, v) >= 0;
    if (carriers + 1 != holders) {
      throw Error(ErrorCode::kShape,
                  "running intersection fails for variable " + std::to_string(v));
    }
  }
  variables_.assign(vars.begin(), vars.end());
  std::sort(variables_.begin(), variables_.end());
}

std::size_t JunctionTree::clique_index(int id) const {
  for (std::size_t i = 0; i < cliques_.size(); ++i) {
    if (cliques_[i].id == id) return i;
  }
  throw Error(ErrorCode::kShape, "unknown clique id " + std::to_string(id));
}

bool JunctionTree::has_variable(TupleId v) const {
  return std::binary_search(variables_.begin(), variables_.end(), v);
}

std::vector<JunctionTree> JunctionTree::components() const {
  auto adj = adjacency(*this);
  std::vector<JunctionTree> out;
  for (const auto& comp : rooted_components(*this, adj)) {
    std::vector<Clique> cs;
    std::unordered_set<int> ids;
    for (std::size_t u : comp.order) {
      cs.push_back(cliques_[u]);
      ids.insert(cliques_[u].id);
    }
    std::vector<Separator> ss;
    for (const auto& s : separators_) {
      if (ids.count(s.a)) ss.push_back(s);
    }
    out.emplace_back(std::move(cs), std::move(ss));
  }
  return out;
}

double JunctionTree::marginal(TupleId var) const {
  for (const auto& c : cliques_) {
    int p = position_in(c.vars, var);
    if (p < 0) continue;
    const std::size_t shift = c.vars.size() - 1 - static_cast<std::size_t>(p);
    double total = 0.0;
    for (std::size_t i = 0; i < c.table.size(); ++i) {
      if ((i >> shift) & 1u) total += c.table[i];
    }
    return total;
  }
  throw Error(ErrorCode::kUnknownTuple, "variable " + std::to_string(var) + " not in junction tree");
}

JunctionTree calibrate(const JunctionTree& jt) {
  JunctionTree out = jt;
  auto adj = adjacency(out);
  auto& cliques = out.cliques_;
  auto& seps = out.separators_;
  // Absorb: target *= new_mu / old_mu over the separator.
  auto pass = [&](std::size_t from, std::size_t to, std::size_t e) {
    auto& s = seps[e];
    auto fresh = marginalize(cliques[from].table, cliques[from].vars, s.vars);
    auto map = projection(cliques[to].vars, s.vars);
    std::vector<double> ratio(fresh.size());
    for (std::size_t k = 0; k < fresh.size(); ++k) ratio[k] = safe_ratio(fresh[k], s.table[k]);
    for (std::size_t i = 0; i < cliques[to].table.size(); ++i) {
      cliques[to].table[i] *= ratio[map[i]];
    }
    s.table = std::move(fresh);
  };
  for (const auto& comp : rooted_components(out, adj)) {
    for (auto it = comp.order.rbegin(); it != comp.order.rend(); ++it) {
      const auto& par = comp.parent[*it];
      if (par.sep != static_cast<std::size_t>(-1)) pass(*it, par.clique, par.sep);
    }
    for (std::size_t u : comp.order) {
      const auto& par = comp.parent[u];
      if (par.sep != static_cast<std::size_t>(-1)) pass(par.clique, u, par.sep);
    }
    const auto& root_table = cliques[comp.order.front()].table;
    const double z = std::accumulate(root_table.begin(), root_table.end(), 0.0);
    if (!(z > kZero) || !std::isfinite(z)) {
      throw Error(ErrorCode::kInconsistentPotentials, "potentials have zero total mass");
    }
    std::unordered_set<int> ids;
    for (std::size_t u : comp.order) {
      ids.insert(cliques[u].id);
      for (auto& v : cliques[u].table) v = v / z < kZero ? 0.0 : v / z;
    }
    for (auto& s : seps) {
      if (!ids.count(s.a)) continue;
      for (auto& v : s.table) v = v / z < kZero ? 0.0 : v / z;
    }
  }
  return out;
}

namespace {

// Rows with var = 1, var dropped from scope.
void restrict_present(std::vector<TupleId>& vars, std::vector<double>& table, TupleId var) {
  int p = position_in(vars, var);
  if (p < 0) return;
  const std::size_t shift = vars.size() - 1 - static_cast<std::size_t>(p);
  std::vector<double> out(table.size() / 2);
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (!((i >> shift) & 1u)) continue;
    std::size_t low = i & ((std::size_t{1} << shift) - 1);
    std::size_t high = i >> (shift + 1);
    out[(high << shift) | low] = table[i];
  }
  vars.erase(vars.begin() + p);
  table = std::move(out);
}

}  // namespace

Conditioned condition_on_presence(const JunctionTree& jt, TupleId var) {
  Conditioned out;
  out.prob = jt.marginal(var);
  if (out.prob < kZero) {
    throw Error(ErrorCode::kZeroProbability,
                "variable " + std::to_string(var) + " has zero probability of being present");
  }
  std::vector<Clique> cliques;
  std::unordered_set<int> kept;
  for (Clique c : jt.cliques()) {
    restrict_present(c.vars, c.table, var);
    if (c.vars.empty()) continue;
    kept.insert(c.id);
    cliques.push_back(std::move(c));
  }
  std::vector<Separator> seps;
  for (Separator s : jt.separators()) {
    if (!kept.count(s.a) || !kept.count(s.b)) continue;
    restrict_present(s.vars, s.table, var);
    if (s.vars.empty()) continue;
    seps.push_back(std::move(s));
  }
  if (cliques.empty()) return out;
  out.trees = calibrate(JunctionTree(std::move(cliques), std::move(seps))).components();
  return out;
}

std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

std::vector<double> junction_tree_partial_sum(const JunctionTree& jt, const DeltaSet& deltas) {
  if (jt.cliques().empty()) return {1.0};
  auto adj = adjacency(jt);
  auto comps = rooted_components(jt, adj);
  if (comps.size() != 1) throw Error(ErrorCode::kShape, "partial sum needs a connected tree");
  const auto& comp = comps.front();
  std::unordered_set<TupleId> counted(deltas.begin(), deltas.end());
  const auto& cliques = jt.cliques();
  const auto& seps = jt.separators();
  // tables[c][x] = distribution of the subtree's partial sum jointly with C = x.
  std::vector<std::vector<std::vector<double>>> tables(cliques.size());
  for (auto it = comp.order.rbegin(); it != comp.order.rend(); ++it) {
    const std::size_t c = *it;
    const auto& clique = cliques[c];
    const std::size_t nv = clique.vars.size();
    const auto& par = comp.parent[c];
    // Variables not shared with the parent are counted here.
    std::vector<std::size_t> own_shifts;
    for (std::size_t k = 0; k < nv; ++k) {
      TupleId v = clique.vars[k];
      bool shared = par.sep != static_cast<std::size_t>(-1) &&
                    position_in(seps[par.sep].vars, v) >= 0;
      if (!shared && counted.count(v)) own_shifts.push_back(nv - 1 - k);
    }
    auto& t = tables[c];
    t.resize(clique.table.size());
    for (std::size_t x = 0; x < t.size(); ++x) {
      std::size_t a = 0;
      for (std::size_t s : own_shifts) a += (x >> s) & 1u;
      t[x].assign(a + 1, 0.0);
      t[x][a] = clique.table[x];
    }
    for (const auto& nb : adj[c]) {
      if (comp.parent[nb.clique].clique != c || comp.parent[nb.clique].sep != nb.sep) continue;
      const auto& child = cliques[nb.clique];
      const auto& sep = seps[nb.sep];
      auto child_map = projection(child.vars, sep.vars);
      std::vector<std::vector<double>> msg(sep.table.size());
      for (std::size_t x = 0; x < tables[nb.clique].size(); ++x) {
        auto& m = msg[child_map[x]];
        const auto& d = tables[nb.clique][x];
        if (m.size() < d.size()) m.resize(d.size(), 0.0);
        for (std::size_t a = 0; a < d.size(); ++a) m[a] += d[a];
      }
      tables[nb.clique].clear();
      auto map = projection(clique.vars, sep.vars);
      for (std::size_t x = 0; x < t.size(); ++x) {
        const std::size_t s = map[x];
        auto conv = convolve(t[x], msg[s]);
        const double mu = sep.table[s];
        for (auto& v : conv) v = safe_ratio(v, mu);
        t[x] = std::move(conv);
      }
    }
  }
  std::vector<double> out;
  for (const auto& d : tables[comp.order.front()]) {
    if (out.size() < d.size()) out.resize(d.size(), 0.0);
    for (std::size_t a = 0; a < d.size(); ++a) out[a] += d[a];
  }
  return out;
}

bool is_markov_chain(const JunctionTree& jt) {
  const auto& cs = jt.cliques();
  if (cs.empty() || jt.separators().size() + 1 != cs.size()) return false;
  for (const auto& c : cs) {
    if (c.vars.size() != 2) return false;
  }
  auto adj = adjacency(jt);
  for (const auto& nbs : adj) {
    if (nbs.size() > 2) return false;
  }
  for (const auto& s : jt.separators()) {
    if (s.vars.size() != 1) return false;
  }
  return rooted_components(jt, adj).size() == 1;
}

std::vector<double> markov_chain_partial_sum(const JunctionTree& jt, const DeltaSet& deltas) {
  if (!is_markov_chain(jt)) throw Error(ErrorCode::kShape, "junction tree is not a chain");
  std::unordered_set<TupleId> counted(deltas.begin(), deltas.end());
  const auto& cs = jt.cliques();
  auto adj = adjacency(jt);
  // Start at the lowest-id end of the path.
  std::size_t start = cs.size();
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (adj[i].size() <= 1 && (start == cs.size() || cs[i].id < cs[start].id)) start = i;
  }
  // Chain order of cliques and the variable each step enters through.
  std::vector<std::size_t> chain{start};
  std::vector<char> seen(cs.size(), 0);
  seen[start] = 1;
  while (true) {
    std::size_t next = cs.size();
    for (const auto& nb : adj[chain.back()]) {
      if (!seen[nb.clique]) next = nb.clique;
    }
    if (next == cs.size()) break;
    seen[next] = 1;
    chain.push_back(next);
  }
  // First variable: the one in the first clique not shared with the second.
  TupleId first = cs[start].vars[0];
  if (chain.size() > 1 && position_in(cs[chain[1]].vars, first) >= 0) first = cs[start].vars[1];
  // d[y][a] = Pr(Y_j = y, P_j = a).
  std::vector<std::vector<double>> d(2);
  {
    const auto& c = cs[start];
    auto m = marginalize(c.table, c.vars, {first});
    const std::size_t step = counted.count(first) ? 1 : 0;
    d[0] = {m[0]};
    d[1].assign(step + 1, 0.0);
    d[1][step] = m[1];
  }
  TupleId prev = first;
  for (std::size_t ci : chain) {
    const auto& c = cs[ci];
    const TupleId next = c.vars[0] == prev ? c.vars[1] : c.vars[0];
    auto pair = marginalize(c.table, c.vars, {prev, next});  // index = 2*y + y'
    const double marg[2] = {pair[0] + pair[1], pair[2] + pair[3]};
    const std::size_t step = counted.count(next) ? 1 : 0;
    std::vector<std::vector<double>> nd(2);
    for (int y2 = 0; y2 < 2; ++y2) {
      const std::size_t shift = step * static_cast<std::size_t>(y2);
      nd[y2].assign(std::max(d[0].size(), d[1].size()) + shift, 0.0);
      for (int y = 0; y < 2; ++y) {
        const double f = safe_ratio(pair[2 * y + y2], marg[y]);
        if (f == 0.0) continue;
        for (std::size_t a = 0; a < d[y].size(); ++a) nd[y2][a + shift] += f * d[y][a];
      }
    }
    d = std::move(nd);
    prev = next;
  }
  std::vector<double> out(std::max(d[0].size(), d[1].size()), 0.0);
  for (const auto& row : d) {
    for (std::size_t a = 0; a < row.size(); ++a) out[a] += row[a];
  }
  return out;
}

std::vector<RankDistribution> rank_distribution_jt(const JunctionTree& jt, const Relation& rel,
                                                   std::size_t max_positions) {
  const Relation bound = bind_relation(jt, rel);
  const auto& tuples = bound.tuples();
  const std::size_t n = tuples.size();
  const std::size_t cap = std::min(max_positions, n);
  std::vector<RankDistribution> out(n);
  parallel_for(n, [&](std::size_t i) {
    auto cond = condition_on_presence(jt, tuples[i].id);
    DeltaSet before;
    for (std::size_t l = 0; l < i; ++l) before.push_back(tuples[l].id);
    std::vector<double> dist{1.0};
    for (const auto& tree : cond.trees) {
      auto d = is_markov_chain(tree) ? markov_chain_partial_sum(tree, before)
                                     : junction_tree_partial_sum(tree, before);
      dist = convolve(dist, d);
    }
    auto& rd = out[i];
    rd.id = tuples[i].id;
    rd.prob = cond.prob;
    rd.probs.assign(cap, 0.0);
    for (std::size_t j = 0; j < std::min(cap, dist.size()); ++j) {
      rd.probs[j] = std::max(0.0, cond.prob * dist[j]);
    }
  });
  return out;
}

std::vector<PrfScore> rank_prf_jt(const JunctionTree& jt, const Relation& rel,
                                  const WeightFunction& w) {
  const Relation bound = bind_relation(jt, rel);
  auto s = w.support();
  auto dists = rank_distribution_jt(jt, bound, s ? *s : kAllPositions);
  return prf_from_distributions(dists, bound.tuples(), w);
}

std::vector<double> joint_distribution(const JunctionTree& jt) {
  const auto& vars = jt.variables();
  if (vars.size() > kMaxJointVars) {
    throw Error(ErrorCode::kSizeLimit, "joint enumeration limited to 24 variables");
  }
  auto shifts_of = [&](const std::vector<TupleId>& scope) {
    std::vector<std::size_t> s;
    for (TupleId v : scope) {
      s.push_back(static_cast<std::size_t>(std::lower_bound(vars.begin(), vars.end(), v) -
                                           vars.begin()));
    }
    return s;
  };
  auto index_in = [](std::size_t x, const std::vector<std::size_t>& bits) {
    std::size_t s = 0;
    for (std::size_t b : bits) s = (s << 1) | ((x >> b) & 1u);
    return s;
  };
  std::vector<std::vector<std::size_t>> cbits, sbits;
  for (const auto& c : jt.cliques()) cbits.push_back(shifts_of(c.vars));
  for (const auto& s : jt.separators()) sbits.push_back(shifts_of(s.vars));
  std::vector<double> joint(std::size_t{1} << vars.size(), 0.0);
  double total = 0.0;
  for (std::size_t x = 0; x < joint.size(); ++x) {
    double num = 1.0;
    for (std::size_t c = 0; c < cbits.size() && num != 0.0; ++c) {
      num *= jt.cliques()[c].table[index_in(x, cbits[c])];
    }
    double den = 1.0;
    for (std::size_t s = 0; s < sbits.size(); ++s) {
      den *= jt.separators()[s].table[index_in(x, sbits[s])];
    }
    joint[x] = safe_ratio(num, den);
    total += joint[x];
  }
  if (!(total > kZero)) throw Error(ErrorCode::kInconsistentPotentials, "joint has zero mass");
  for (auto& v : joint) v /= total;
  return joint;
}

Relation bind_relation(const JunctionTree& jt, const Relation& rel) {
  if (rel.size() != jt.variables().size()) {
    throw Error(ErrorCode::kInvalidModel, "relation and junction tree disagree on tuple ids");
  }
  std::vector<ProbTuple> tuples;
  tuples.reserve(rel.size());
  for (const auto& t : rel.tuples()) {
    if (!jt.has_variable(t.id)) {
      throw Error(ErrorCode::kInvalidModel,
                  "tuple " + std::to_string(t.id) + " has no junction-tree variable");
    }
    tuples.push_back({t.id, t.score, std::min(1.0, jt.marginal(t.id))});
  }
  return Relation(std::move(tuples)).sorted();
}

WorldSet enumerate_worlds(const JunctionTree& jt, const Relation& rel) {
  const Relation bound = bind_relation(jt, rel);
  if (bound.size() > kMaxEnumerableTuples) {
    throw Error(ErrorCode::kSizeLimit, "enumeration limited to 24 tuples");
  }
  auto joint = joint_distribution(jt);
  WorldSet ws;
  ws.tuples = bound.tuples();
  const auto& vars = jt.variables();
  std::vector<std::size_t> pos(vars.size());
  for (std::size_t k = 0; k < vars.size(); ++k) pos[k] = ws.position_of(vars[k]);
  for (std::size_t x = 0; x < joint.size(); ++x) {
    if (joint[x] <= 0.0) continue;
    std::uint32_t mask = 0;
    for (std::size_t k = 0; k < vars.size(); ++k) {
      if ((x >> k) & 1u) mask |= 1u << pos[k];
    }
    ws.worlds.push_back({mask, joint[x]});
  }
  return ws;
}

}  // namespace prank
