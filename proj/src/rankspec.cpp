#include "rankspec.hpp"

#include <charconv>
#include <sstream>

namespace prank {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(s);
  while (std::getline(in, cell, sep)) out.push_back(cell);
  return out;
}

double number(const std::string& s, const std::string& spec) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) {
    throw Error(ErrorCode::kParse, "bad number '" + s + "' in ranking spec '" + spec + "'");
  }
  return v;
}

std::size_t count(const std::string& s, const std::string& spec) {
  const double v = number(s, spec);
  if (v < 1 || v != static_cast<double>(static_cast<std::size_t>(v))) {
    throw Error(ErrorCode::kParse, "expected a positive integer in '" + spec + "'");
  }
  return static_cast<std::size_t>(v);
}

RankedList from_scores(const std::vector<PrfScore>& scores, std::size_t k) {
  RankedList out;
  for (std::size_t i = 0; i < std::min(k, scores.size()); ++i) {
    out.entries.push_back({scores[i].id, scores[i].value});
  }
  return out;
}

RankedList from_values(const std::vector<TupleValue>& values, std::size_t k) {
  RankedList out;
  for (std::size_t i = 0; i < std::min(k, values.size()); ++i) {
    out.entries.push_back({values[i].id, values[i].value});
  }
  return out;
}

}  // namespace

std::string RankSpec::label() const {
  std::ostringstream o;
  switch (fn) {
    case Fn::kPrfe:
      o << "prfe:" << alpha.real();
      if (alpha.imag() != 0.0) o << ":" << alpha.imag();
      break;
    case Fn::kPrfw:
      o << "prfw:" << weights.size();
      break;
    case Fn::kPt: o << "pt:" << h; break;
    case Fn::kUrank: o << "urank"; break;
    case Fn::kErank: o << "erank"; break;
    case Fn::kEscore: o << "escore"; break;
    case Fn::kKselection: o << "kselection"; break;
    case Fn::kMixture: o << "mixture:" << mixture.size(); break;
  }
  return o.str();
}

RankSpec parse_rank_spec(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.empty()) throw Error(ErrorCode::kParse, "empty ranking spec");
  const std::string& name = parts[0];
  RankSpec s;
  auto arity = [&](std::size_t lo, std::size_t hi) {
    if (parts.size() - 1 < lo || parts.size() - 1 > hi) {
      throw Error(ErrorCode::kParse, "wrong parameter count in ranking spec '" + text + "'");
    }
  };
  if (name == "prfe") {
    arity(1, 2);
    s.fn = RankSpec::Fn::kPrfe;
    s.alpha = {number(parts[1], text), parts.size() > 2 ? number(parts[2], text) : 0.0};
  } else if (name == "pt") {
    arity(1, 1);
    s.fn = RankSpec::Fn::kPt;
    s.h = count(parts[1], text);
  } else if (name == "prfw") {
    arity(1, 1);
    s.fn = RankSpec::Fn::kPrfw;
    for (const auto& w : split(parts[1], ';')) s.weights.push_back(number(w, text));
    if (s.weights.empty()) throw Error(ErrorCode::kParse, "prfw needs weights");
  } else if (name == "urank" || name == "erank" || name == "escore" || name == "kselection") {
    arity(0, 0);
    s.fn = name == "urank"    ? RankSpec::Fn::kUrank
           : name == "erank"  ? RankSpec::Fn::kErank
           : name == "escore" ? RankSpec::Fn::kEscore
                              : RankSpec::Fn::kKselection;
  } else {
    throw Error(ErrorCode::kParse, "unknown ranking function '" + name + "'");
  }
  return s;
}

TopK RankedList::top() const {
  TopK t;
  t.k = entries.size();
  for (const auto& e : entries) t.ids.push_back(e.id);
  return t;
}

RankedList run_ranking(const Model& m, const RankSpec& spec, std::size_t k) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "k must be at least 1");
  switch (spec.fn) {
    case RankSpec::Fn::kPrfe:
      return from_scores(rank_prfe(m, spec.alpha), k);
    case RankSpec::Fn::kPrfw:
      return from_scores(rank_prf(m, WeightFunction::tabulated(spec.weights)), k);
    case RankSpec::Fn::kPt:
      return from_scores(rank_prf(m, WeightFunction::step(spec.h)), k);
    case RankSpec::Fn::kKselection:
      return from_scores(rank_prf(m, WeightFunction::score_scaled(WeightFunction::delta(1))), k);
    case RankSpec::Fn::kMixture:
      return from_scores(rank_mixture(m, spec.mixture), k);
    case RankSpec::Fn::kEscore:
      return from_values(rank_escore(m), k);
    case RankSpec::Fn::kErank:
      return from_values(rank_erank(m), k);
    case RankSpec::Fn::kUrank: {
      const std::size_t kk = std::min(k, tuple_count(m));
      const TopK t = rank_urank(m, kk);
      auto dists = rank_distributions(m, kk);
      RankedList out;
      for (std::size_t i = 0; i < t.ids.size(); ++i) {
        double v = 0.0;
        for (const auto& d : dists) {
          if (d.id == t.ids[i]) v = d.probs[i];
        }
        out.entries.push_back({t.ids[i], v});
      }
      return out;
    }
  }
  return {};
}

}  // namespace prank

namespace prank {

WeightSpec parse_weight_spec(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.empty()) throw Error(ErrorCode::kParse, "empty weight spec");
  const std::string& name = parts[0];
  auto want = [&](std::size_t n) {
    if (parts.size() != n + 1) {
      throw Error(ErrorCode::kParse, "wrong parameter count in weight spec '" + text + "'");
    }
  };
  if (name == "step") {
    want(1);
    return {WeightFunction::step(count(parts[1], text)), 0};
  }
  if (name == "delta") {
    want(1);
    return {WeightFunction::delta(count(parts[1], text)), 0};
  }
  if (name == "linear") {
    want(1);
    return {WeightFunction::linear(), count(parts[1], text)};
  }
  if (name == "discount") {
    want(1);
    return {WeightFunction::discount(), count(parts[1], text)};
  }
  if (name == "constant") {
    want(2);
    return {WeightFunction::constant(number(parts[1], text)), count(parts[2], text)};
  }
  if (name == "prfe") {
    want(2);
    return {WeightFunction::exponential(number(parts[1], text)), count(parts[2], text)};
  }
  if (name == "tabulated") {
    want(1);
    std::vector<double> w;
    for (const auto& x : split(parts[1], ';')) w.push_back(number(x, text));
    if (w.empty()) throw Error(ErrorCode::kParse, "tabulated weights are empty");
    return {WeightFunction::tabulated(std::move(w)), 0};
  }
  throw Error(ErrorCode::kParse, "unknown weight function '" + name + "'");
}

}  // namespace prank
