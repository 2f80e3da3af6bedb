#include "models.hpp"

#include <unordered_set>

namespace prank {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

JunctionModel make_junction_model(const JunctionTree& jt, const Relation& rel) {
  JunctionModel m;
  m.jt = calibrate(jt);
  m.rel = bind_relation(m.jt, rel);
  return m;
}

const char* model_kind_name(const Model& m) {
  return std::visit(overloaded{[](const Relation&) { return "ind"; },
                               [](const AndXorTree&) { return "andxor"; },
                               [](const JunctionModel&) { return "junction"; }},
                    m);
}

std::size_t tuple_count(const Model& m) {
  return std::visit(overloaded{[](const Relation& r) { return r.size(); },
                               [](const AndXorTree& t) { return t.leaf_count(); },
                               [](const JunctionModel& j) { return j.rel.size(); }},
                    m);
}

std::vector<ProbTuple> ranked_tuples(const Model& m) {
  return std::visit(overloaded{[](const Relation& r) { return r.sorted().tuples(); },
                               [](const AndXorTree& t) { return t.ranked_tuples(); },
                               [](const JunctionModel& j) { return j.rel.tuples(); }},
                    m);
}

void require_valid(const Model& m) {
  if (const auto* t = std::get_if<AndXorTree>(&m)) require_valid(*t);
}

std::vector<RankDistribution> rank_distributions(const Model& m, std::size_t max_positions) {
  return std::visit(
      overloaded{
          [&](const Relation& r) { return rank_distributions_independent(r, max_positions); },
          [&](const AndXorTree& t) { return rank_distributions_andxor(t, max_positions); },
          [&](const JunctionModel& j) { return rank_distribution_jt(j.jt, j.rel, max_positions); }},
      m);
}

std::vector<PrfScore> rank_prf(const Model& m, const WeightFunction& w) {
  return std::visit(overloaded{[&](const Relation& r) { return rank_prf_independent(r, w); },
                               [&](const AndXorTree& t) { return rank_prf_andxor(t, w); },
                               [&](const JunctionModel& j) { return rank_prf_jt(j.jt, j.rel, w); }},
                    m);
}

std::vector<PrfScore> rank_prfe(const Model& m, cplx alpha) {
  return std::visit(
      overloaded{[&](const Relation& r) { return rank_prfe_independent(r, alpha); },
                 [&](const AndXorTree& t) { return rank_prfe_andxor(t, alpha); },
                 [&](const JunctionModel& j) {
                   return rank_prf_jt(j.jt, j.rel, WeightFunction::exponential(alpha));
                 }},
      m);
}

std::vector<cplx> prfe_values(const Model& m, cplx alpha) {
  return std::visit(
      overloaded{[&](const Relation& r) { return prfe_values_independent(r.sorted(), alpha); },
                 [&](const AndXorTree& t) { return prfe_values_andxor(t, alpha); },
                 [&](const JunctionModel& j) {
                   auto dists = rank_distribution_jt(j.jt, j.rel);
                   std::vector<cplx> out(dists.size());
                   for (std::size_t i = 0; i < dists.size(); ++i) {
                     cplx pw = alpha, acc{};
                     for (double p : dists[i].probs) {
                       acc += p * pw;
                       pw *= alpha;
                     }
                     out[i] = acc;
                   }
                   return out;
                 }},
      m);
}

WorldSet enumerate_worlds(const Model& m) {
  return std::visit(overloaded{[](const Relation& r) { return enumerate_worlds(r); },
                               [](const AndXorTree& t) { return enumerate_worlds(t); },
                               [](const JunctionModel& j) { return enumerate_worlds(j.jt, j.rel); }},
                    m);
}

namespace {

void mark_alive(const AndXorTree& tree, const std::unordered_set<TupleId>& keep,
                std::vector<char>& alive) {
  for (int v = static_cast<int>(tree.node_count()) - 1; v >= 0; --v) {
    const auto& n = tree.node(v);
    if (n.kind == NodeKind::kLeaf) {
      alive[v] = keep.count(n.tuple.id) > 0;
      continue;
    }
    for (int c : n.children) alive[v] = alive[v] || alive[c];
  }
}

void rebuild(const AndXorTree& tree, int v, int parent, AndXorTree::Builder& b,
             const std::vector<char>& alive) {
  const auto& n = tree.node(v);
  if (n.kind == NodeKind::kLeaf) {
    ProbTuple t = n.tuple;
    t.prob = 1.0;
    b.add_leaf(parent, t, n.edge_prob, n.key);
    return;
  }
  int self = parent < 0 ? b.add_root(n.kind) : b.add_inner(parent, n.kind, n.edge_prob);
  for (int c : n.children) {
    if (alive[c]) rebuild(tree, c, self, b, alive);
  }
}

}  // namespace

Model restrict_model(const Model& m, const std::vector<TupleId>& ids) {
  std::unordered_set<TupleId> keep(ids.begin(), ids.end());
  return std::visit(
      overloaded{
          [&](const Relation& r) -> Model {
            std::vector<ProbTuple> out;
            for (TupleId id : ids) out.push_back(r.find(id));
            return Relation(std::move(out));
          },
          [&](const AndXorTree& t) -> Model {
            for (TupleId id : ids) t.leaf_of(id);
            std::vector<char> alive(t.node_count(), 0);
            mark_alive(t, keep, alive);
            AndXorTree::Builder b;
            if (!alive[0]) throw Error(ErrorCode::kInvalidArgument, "empty restriction");
            rebuild(t, 0, -1, b, alive);
            return std::move(b).build();
          },
          [&](const JunctionModel&) -> Model {
            throw Error(ErrorCode::kUnsupportedModel,
                        "junction-tree models cannot be restricted to a tuple subset");
          }},
      m);
}

}  // namespace prank
