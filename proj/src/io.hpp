#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "approx.hpp"
#include "junction.hpp"
#include "model.hpp"

namespace prank {

// All readers throw kParse with a line or path hint on malformed input.

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

// CSV with header id,score,prob.
Relation parse_relation_csv(const std::string& text);
std::string format_relation_csv(const Relation& rel);

// {"kind":"and"|"xor"|"leaf","children":[{"p":..,"node":{..}}],"tuple":{"id","score","prob"}}
// Edge p is read only under xor nodes.
AndXorTree parse_tree_json(const std::string& text);
std::string format_tree_json(const AndXorTree& tree);

// {"variables":[..],"cliques":[{"id","vars","table"}],"edges":[{"a","b","separator_vars","table"?}]}
// Variables are tuple ids, or objects {"id","score"} that also carry scores.
struct JunctionFile {
  JunctionTree jt;
  std::optional<Relation> scores;  // present when every variable carries a score
};
JunctionFile parse_junction_json(const std::string& text);
std::string format_junction_json(const JunctionTree& jt, const Relation* scores = nullptr);

// [{"re_u","im_u","re_alpha","im_alpha"}, ..]
ExpMixture parse_mixture_json(const std::string& text);
std::string format_mixture_json(const ExpMixture& m);

// CSV with header tuple_id,rank_position; returns ids ordered by position.
std::vector<TupleId> parse_preferences_csv(const std::string& text);
std::string format_preferences_csv(const std::vector<TupleId>& order);

}  // namespace prank
