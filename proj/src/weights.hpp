#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "model.hpp"

namespace prank {

// Positional weight ω(t, i), i ≥ 1.
class WeightFunction {
 public:
  enum class Kind {
    kConstant,
    kStep,
    kDelta,
    kExponential,
    kLinear,
    kDiscount,
    kTabulated,
    kScoreScaled,
  };

  static WeightFunction constant(double c);
  static WeightFunction step(std::size_t h);
  static WeightFunction delta(std::size_t j);
  static WeightFunction exponential(std::complex<double> alpha);
  static WeightFunction linear();
  static WeightFunction discount();
  static WeightFunction tabulated(std::vector<double> w);
  static WeightFunction score_scaled(WeightFunction inner);

  Kind kind() const { return kind_; }
  std::complex<double> alpha() const { return alpha_; }
  std::size_t parameter() const { return n_; }
  const std::vector<double>& table() const { return table_; }
  const WeightFunction* inner() const { return inner_.get(); }

  // Positional part, excluding any score factor.
  std::complex<double> at(std::size_t i) const;
  // Score factor applied on top of the positional part (1 unless score-scaled).
  double scale(const ProbTuple& t) const;
  std::complex<double> operator()(const ProbTuple& t, std::size_t i) const {
    return scale(t) * at(i);
  }

  // Largest position with a possibly nonzero weight; nullopt when unbounded.
  std::optional<std::size_t> support() const;
  bool is_real() const;

  std::string describe() const;

 private:
  Kind kind_ = Kind::kConstant;
  std::complex<double> alpha_{1.0, 0.0};
  std::size_t n_ = 0;
  std::vector<double> table_;
  std::shared_ptr<const WeightFunction> inner_;
};

}  // namespace prank
