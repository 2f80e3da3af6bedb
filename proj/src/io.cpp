#include "io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "json.hpp"

namespace prank {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::kParse, what); }

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

// Non-empty, non-comment lines with their 1-based line numbers.
std::vector<std::pair<int, std::string>> csv_lines(const std::string& text) {
  std::vector<std::pair<int, std::string>> out;
  std::istringstream in(text);
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (trim(line).empty() || trim(line)[0] == '#') continue;
    out.emplace_back(no, line);
  }
  return out;
}

template <class T>
T parse_number(const std::string& s, int line, const char* field) {
  T v{};
  const char* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end || s.empty()) {
    parse_fail("line " + std::to_string(line) + ": bad " + field + " '" + s + "'");
  }
  return v;
}

void expect_header(const std::vector<std::pair<int, std::string>>& lines,
                   const std::vector<std::string>& names) {
  if (lines.empty()) parse_fail("empty CSV input");
  auto cells = split_csv(lines[0].second);
  for (auto& c : cells) std::transform(c.begin(), c.end(), c.begin(), ::tolower);
  if (cells != names) {
    std::string want;
    for (const auto& n : names) want += (want.empty() ? "" : ",") + n;
    parse_fail("line " + std::to_string(lines[0].first) + ": expected header " + want);
  }
}

std::string fmt(double v) {
  std::ostringstream o;
  o << std::setprecision(17) << v;
  return o.str();
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    parse_fail(std::string("invalid JSON: ") + e.what());
  }
}

template <class T>
T get(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) parse_fail(where + ": missing '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    parse_fail(where + ": field '" + key + "' has the wrong type");
  }
}

NodeKind parse_kind(const std::string& s, const std::string& where) {
  if (s == "and") return NodeKind::kAnd;
  if (s == "xor") return NodeKind::kXor;
  if (s == "leaf") return NodeKind::kLeaf;
  parse_fail(where + ": unknown node kind '" + s + "'");
}

void read_node(const json& j, int parent, double edge,
               AndXorTree::Builder& b, const std::string& where) {
  const NodeKind kind = parse_kind(get<std::string>(j, "kind", where), where);
  if (kind == NodeKind::kLeaf) {
    const json& t = j.contains("tuple") ? j.at("tuple") : json();
    ProbTuple tuple;
    tuple.id = get<TupleId>(t, "id", where + ".tuple");
    tuple.score = get<double>(t, "score", where + ".tuple");
    tuple.prob = t.contains("prob") ? get<double>(t, "prob", where + ".tuple") : 1.0;
    std::optional<std::string> key;
    if (t.contains("key")) key = get<std::string>(t, "key", where + ".tuple");
    b.add_leaf(parent, tuple, edge, key);
    return;
  }
  const int self = parent < 0 ? b.add_root(kind) : b.add_inner(parent, kind, edge);
  if (!j.contains("children")) return;
  const json& kids = j.at("children");
  if (!kids.is_array()) parse_fail(where + ": children must be an array");
  for (std::size_t i = 0; i < kids.size(); ++i) {
    const std::string w = where + ".children[" + std::to_string(i) + "]";
    const json& c = kids[i];
    double p = 1.0;
    if (kind == NodeKind::kXor) p = get<double>(c, "p", w);
    read_node(c.contains("node") ? c.at("node") : c, self, p, b, w);
  }
}

json write_node(const AndXorTree& tree, int v) {
  const auto& n = tree.node(v);
  json j;
  if (n.kind == NodeKind::kLeaf) {
    j["kind"] = "leaf";
    j["tuple"] = {{"id", n.tuple.id}, {"score", n.tuple.score}};
    if (n.key) j["tuple"]["key"] = *n.key;
    return j;
  }
  j["kind"] = n.kind == NodeKind::kAnd ? "and" : "xor";
  json kids = json::array();
  for (int c : n.children) {
    json e;
    if (n.kind == NodeKind::kXor) e["p"] = tree.node(c).edge_prob;
    e["node"] = write_node(tree, c);
    kids.push_back(std::move(e));
  }
  j["children"] = std::move(kids);
  return j;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_fail("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write '" + path + "'");
  out << text;
}

Relation parse_relation_csv(const std::string& text) {
  const auto lines = csv_lines(text);
  expect_header(lines, {"id", "score", "prob"});
  std::vector<ProbTuple> tuples;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& [no, line] = lines[i];
    const auto cells = split_csv(line);
    if (cells.size() != 3) parse_fail("line " + std::to_string(no) + ": expected 3 fields");
    tuples.push_back({parse_number<TupleId>(cells[0], no, "id"),
                      parse_number<double>(cells[1], no, "score"),
                      parse_number<double>(cells[2], no, "prob")});
  }
  return Relation(std::move(tuples));
}

std::string format_relation_csv(const Relation& rel) {
  std::string out = "id,score,prob\n";
  for (const auto& t : rel.tuples()) {
    out += std::to_string(t.id) + "," + fmt(t.score) + "," + fmt(t.prob) + "\n";
  }
  return out;
}

AndXorTree parse_tree_json(const std::string& text) {
  const json j = parse_json(text);
  AndXorTree::Builder b;
  read_node(j, -1, 1.0, b, "root");
  return std::move(b).build();
}

std::string format_tree_json(const AndXorTree& tree) {
  if (tree.empty()) return "{}\n";
  return write_node(tree, tree.root()).dump(1) + "\n";
}

JunctionFile parse_junction_json(const std::string& text) {
  const json j = parse_json(text);
  JunctionFile out;
  std::vector<ProbTuple> scored;
  std::size_t plain = 0;
  if (j.contains("variables")) {
    const json& vars = j.at("variables");
    if (!vars.is_array()) parse_fail("variables must be an array");
    for (std::size_t i = 0; i < vars.size(); ++i) {
      const std::string w = "variables[" + std::to_string(i) + "]";
      if (vars[i].is_object()) {
        scored.push_back({get<TupleId>(vars[i], "id", w), get<double>(vars[i], "score", w), 1.0});
      } else if (vars[i].is_number_integer()) {
        ++plain;
      } else {
        parse_fail(w + ": expected an id or {id, score}");
      }
    }
  }
  std::vector<Clique> cliques;
  const json& cs = j.contains("cliques") ? j.at("cliques") : json::array();
  if (!cs.is_array()) parse_fail("cliques must be an array");
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const std::string w = "cliques[" + std::to_string(i) + "]";
    cliques.push_back({get<int>(cs[i], "id", w), get<std::vector<TupleId>>(cs[i], "vars", w),
                       get<std::vector<double>>(cs[i], "table", w)});
  }
  std::vector<Separator> seps;
  if (j.contains("edges")) {
    const json& es = j.at("edges");
    if (!es.is_array()) parse_fail("edges must be an array");
    for (std::size_t i = 0; i < es.size(); ++i) {
      const std::string w = "edges[" + std::to_string(i) + "]";
      Separator s{get<int>(es[i], "a", w), get<int>(es[i], "b", w),
                  get<std::vector<TupleId>>(es[i], "separator_vars", w), {}};
      if (es[i].contains("table")) s.table = get<std::vector<double>>(es[i], "table", w);
      seps.push_back(std::move(s));
    }
  }
  out.jt = JunctionTree(std::move(cliques), std::move(seps));
  if (!scored.empty()) {
    if (plain > 0) parse_fail("variables mix plain ids and scored entries");
    out.scores = Relation(std::move(scored));
  }
  return out;
}

std::string format_junction_json(const JunctionTree& jt, const Relation* scores) {
  json j;
  json vars = json::array();
  for (TupleId v : jt.variables()) {
    if (scores) {
      vars.push_back({{"id", v}, {"score", scores->find(v).score}});
    } else {
      vars.push_back(v);
    }
  }
  j["variables"] = std::move(vars);
  json cs = json::array();
  for (const auto& c : jt.cliques()) cs.push_back({{"id", c.id}, {"vars", c.vars}, {"table", c.table}});
  j["cliques"] = std::move(cs);
  json es = json::array();
  for (const auto& s : jt.separators()) {
    json e = {{"a", s.a}, {"b", s.b}, {"separator_vars", s.vars}};
    if (!s.table.empty()) e["table"] = s.table;
    es.push_back(std::move(e));
  }
  j["edges"] = std::move(es);
  return j.dump(1) + "\n";
}

ExpMixture parse_mixture_json(const std::string& text) {
  const json j = parse_json(text);
  const json& terms = j.is_object() && j.contains("terms") ? j.at("terms") : j;
  if (!terms.is_array()) parse_fail("mixture must be an array of terms");
  ExpMixture m;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string w = "terms[" + std::to_string(i) + "]";
    m.terms.push_back({{get<double>(terms[i], "re_u", w), get<double>(terms[i], "im_u", w)},
                       {get<double>(terms[i], "re_alpha", w), get<double>(terms[i], "im_alpha", w)}});
  }
  return m;
}

std::string format_mixture_json(const ExpMixture& m) {
  json arr = json::array();
  for (const auto& t : m.terms) {
    arr.push_back({{"re_u", t.u.real()},
                   {"im_u", t.u.imag()},
                   {"re_alpha", t.alpha.real()},
                   {"im_alpha", t.alpha.imag()}});
  }
  return arr.dump(1) + "\n";
}

std::vector<TupleId> parse_preferences_csv(const std::string& text) {
  const auto lines = csv_lines(text);
  expect_header(lines, {"tuple_id", "rank_position"});
  std::map<long long, TupleId> by_pos;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& [no, line] = lines[i];
    const auto cells = split_csv(line);
    if (cells.size() != 2) parse_fail("line " + std::to_string(no) + ": expected 2 fields");
    const TupleId id = parse_number<TupleId>(cells[0], no, "tuple_id");
    const long long pos = parse_number<long long>(cells[1], no, "rank_position");
    if (!by_pos.emplace(pos, id).second) {
      parse_fail("line " + std::to_string(no) + ": rank position " + std::to_string(pos) + " repeated");
    }
  }
  std::vector<TupleId> out;
  for (const auto& [pos, id] : by_pos) out.push_back(id);
  return out;
}

std::string format_preferences_csv(const std::vector<TupleId>& order) {
  std::string out = "tuple_id,rank_position\n";
  for (std::size_t i = 0; i < order.size(); ++i) {
    out += std::to_string(order[i]) + "," + std::to_string(i + 1) + "\n";
  }
  return out;
}

}  // namespace prank
