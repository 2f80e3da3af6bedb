#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include "model.hpp"

namespace prank {

enum class SynthKind { kInd, kXor, kLow, kMed, kHigh, kCustom };

struct SynthSpec {
  std::size_t n = 1000;
  SynthKind kind = SynthKind::kInd;
  int height = 2;                                           // L
  std::size_t max_degree = 5;                               // d
  double xor_ratio = std::numeric_limits<double>::infinity();  // xor/and ratio
};

// Preset parameters for a kind; kCustom keeps the given fields.
SynthSpec synth_preset(SynthKind kind, std::size_t n);
SynthKind parse_synth_kind(const std::string& name);  // throws kParse
const char* synth_kind_name(SynthKind kind);

// Scores uniform in [0, 10000], probabilities uniform in (0, 1], ids 1..n.
Relation synth_independent(std::size_t n, std::uint64_t seed);

// Random and/xor tree with n leaves. The root is an and node with unbounded
// fan-out; inner nodes below it are xor with probability xa/(xa+1) and have
// at most d children; leaves sit at depth at most L.
AndXorTree synth_tree(const SynthSpec& spec, std::uint64_t seed);

}  // namespace prank
