#pragma once

#include <string>
#include <vector>

#include "approx.hpp"
#include "models.hpp"
#include "ranking.hpp"

namespace prank {

// A named ranking function with its parameters.
struct RankSpec {
  enum class Fn { kPrfe, kPrfw, kPt, kUrank, kErank, kEscore, kKselection, kMixture };
  Fn fn = Fn::kPrfe;
  cplx alpha{0.9, 0.0};
  std::size_t h = 1;
  std::vector<double> weights;  // prfw
  ExpMixture mixture;           // mixture

  std::string label() const;
};

// "prfe:0.9", "prfe:0.9:0.1" (complex), "pt:100", "prfw:3;2;1", "urank",
// "erank", "escore", "kselection". Mixtures are built in code. Throws kParse.
RankSpec parse_rank_spec(const std::string& text);

struct RankedEntry {
  TupleId id = 0;
  cplx value;
};

// Top-k answer with the value that ordered each entry. For erank smaller
// values rank first; for urank the value is Pr(r(t) = position).
struct RankedList {
  std::vector<RankedEntry> entries;
  TopK top() const;
};

RankedList run_ranking(const Model& m, const RankSpec& spec, std::size_t k);

}  // namespace prank

namespace prank {

struct WeightSpec {
  WeightFunction w;
  std::size_t domain = 0;  // explicit active domain, 0 when implied by the support
};

// "step:<h>", "delta:<j>", "linear:<N>", "discount:<N>", "constant:<c>:<N>",
// "prfe:<alpha>:<N>", "tabulated:<w1>;<w2>;...". Throws kParse.
WeightSpec parse_weight_spec(const std::string& text);

}  // namespace prank
