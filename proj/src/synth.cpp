#include "synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace prank {

SynthSpec synth_preset(SynthKind kind, std::size_t n) {
  SynthSpec s;
  s.n = n;
  s.kind = kind;
  switch (kind) {
    case SynthKind::kInd:
    case SynthKind::kCustom:
      break;
    case SynthKind::kXor:
      s.height = 2, s.xor_ratio = std::numeric_limits<double>::infinity(), s.max_degree = 5;
      break;
    case SynthKind::kLow:
      s.height = 3, s.xor_ratio = 10.0, s.max_degree = 2;
      break;
    case SynthKind::kMed:
      s.height = 5, s.xor_ratio = 3.0, s.max_degree = 5;
      break;
    case SynthKind::kHigh:
      s.height = 5, s.xor_ratio = 1.0, s.max_degree = 10;
      break;
  }
  return s;
}

SynthKind parse_synth_kind(const std::string& name) {
  std::string u = name;
  std::transform(u.begin(), u.end(), u.begin(), [](unsigned char c) { return std::toupper(c); });
  if (u == "IND") return SynthKind::kInd;
  if (u == "XOR") return SynthKind::kXor;
  if (u == "LOW") return SynthKind::kLow;
  if (u == "MED") return SynthKind::kMed;
  if (u == "HIGH") return SynthKind::kHigh;
  if (u == "CUSTOM") return SynthKind::kCustom;
  throw Error(ErrorCode::kParse, "unknown synthetic kind '" + name + "'");
}

const char* synth_kind_name(SynthKind kind) {
  switch (kind) {
    case SynthKind::kInd: return "IND";
    case SynthKind::kXor: return "XOR";
    case SynthKind::kLow: return "LOW";
    case SynthKind::kMed: return "MED";
    case SynthKind::kHigh: return "HIGH";
    case SynthKind::kCustom: return "CUSTOM";
  }
  return "?";
}

namespace {

// Uniform in (0, 1].
double open_unit(std::mt19937_64& rng) {
  return 1.0 - std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

double score(std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(0.0, 10000.0)(rng);
}

class TreeGen {
 public:
  TreeGen(const SynthSpec& spec, std::uint64_t seed) : spec_(spec), rng_(seed) {}

  AndXorTree run() {
    if (spec_.n == 0) throw Error(ErrorCode::kConfig, "synthetic tree needs n >= 1");
    if (spec_.height < 1) throw Error(ErrorCode::kConfig, "tree height must be at least 1");
    if (spec_.max_degree < 1) throw Error(ErrorCode::kConfig, "max degree must be at least 1");
    const int root = b_.add_root(NodeKind::kAnd);
    std::size_t left = spec_.n;
    while (left > 0) left -= grow(root, 1, left);
    return std::move(b_).build();
  }

 private:
  NodeKind pick_kind() {
    const double xa = spec_.xor_ratio;
    const double p_xor = std::isinf(xa) ? 1.0 : xa / (xa + 1.0);
    return std::bernoulli_distribution(p_xor)(rng_) ? NodeKind::kXor : NodeKind::kAnd;
  }

  void leaf(int parent, double edge) {
    ProbTuple t{static_cast<TupleId>(next_id_++), score(rng_), 1.0};
    b_.add_leaf(parent, t, edge);
  }

  // Adds one child subtree under parent using at most budget leaves; returns
  // the number of leaves used.
  std::size_t grow(int parent, int depth, std::size_t budget,
                   double edge = 1.0) {
    const bool must_leaf = depth >= spec_.height || budget == 1;
    const bool may_leaf = depth >= 2 && std::bernoulli_distribution(0.3)(rng_);
    if (must_leaf || may_leaf) {
      leaf(parent, edge);
      return 1;
    }
    const NodeKind kind = pick_kind();
    const int self = b_.add_inner(parent, kind, edge);
    const std::size_t degree = std::min<std::size_t>(
        budget, std::uniform_int_distribution<std::size_t>(1, spec_.max_degree)(rng_));
    std::vector<double> edges(degree, 1.0);
    if (kind == NodeKind::kXor) {
      double total = 0.0;
      for (auto& e : edges) total += (e = open_unit(rng_));
      const double mass = open_unit(rng_);
      for (auto& e : edges) e = std::max(kMinEdgeProb, e / total * mass);
    }
    std::size_t used = 0;
    for (std::size_t c = 0; c < degree; ++c) {
      const std::size_t reserve = degree - c - 1;  // one leaf per remaining child
      used += grow(self, depth + 1, budget - used - reserve, edges[c]);
    }
    return used;
  }

  SynthSpec spec_;
  std::mt19937_64 rng_;
  AndXorTree::Builder b_;
  std::size_t next_id_ = 1;
};

}  // namespace

Relation synth_independent(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<ProbTuple> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = score(rng);
    out.push_back({static_cast<TupleId>(i + 1), s, open_unit(rng)});
  }
  return Relation(std::move(out));
}

AndXorTree synth_tree(const SynthSpec& spec, std::uint64_t seed) {
  return TreeGen(spec, seed).run();
}

}  // namespace prank
