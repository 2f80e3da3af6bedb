#include "weights.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace prank {

WeightFunction WeightFunction::constant(double c) {
  WeightFunction w;
  w.kind_ = Kind::kConstant;
  w.alpha_ = c;
  return w;
}

WeightFunction WeightFunction::step(std::size_t h) {
  if (h < 1) throw Error(ErrorCode::kInvalidArgument, "step cutoff must be at least 1");
  WeightFunction w;
  w.kind_ = Kind::kStep;
  w.n_ = h;
  return w;
}

WeightFunction WeightFunction::delta(std::size_t j) {
  if (j < 1) throw Error(ErrorCode::kInvalidArgument, "delta position must be at least 1");
  WeightFunction w;
  w.kind_ = Kind::kDelta;
  w.n_ = j;
  return w;
}

WeightFunction WeightFunction::exponential(std::complex<double> alpha) {
  WeightFunction w;
  w.kind_ = Kind::kExponential;
  w.alpha_ = alpha;
  return w;
}

WeightFunction WeightFunction::linear() {
  WeightFunction w;
  w.kind_ = Kind::kLinear;
  return w;
}

WeightFunction WeightFunction::discount() {
  WeightFunction w;
  w.kind_ = Kind::kDiscount;
  return w;
}

WeightFunction WeightFunction::tabulated(std::vector<double> table) {
  WeightFunction w;
  w.kind_ = Kind::kTabulated;
  w.table_ = std::move(table);
  return w;
}

WeightFunction WeightFunction::score_scaled(WeightFunction inner) {
  if (inner.kind_ == Kind::kScoreScaled) {
    throw Error(ErrorCode::kInvalidArgument, "score scaling cannot be nested");
  }
  WeightFunction w;
  w.kind_ = Kind::kScoreScaled;
  w.inner_ = std::make_shared<const WeightFunction>(std::move(inner));
  return w;
}

std::complex<double> WeightFunction::at(std::size_t i) const {
  switch (kind_) {
    case Kind::kConstant: return alpha_;
    case Kind::kStep: return i <= n_ ? 1.0 : 0.0;
    case Kind::kDelta: return i == n_ ? 1.0 : 0.0;
    case Kind::kExponential: return std::pow(alpha_, static_cast<double>(i));
    case Kind::kLinear: return -static_cast<double>(i);
    case Kind::kDiscount:
      return std::numbers::ln2 / std::log(static_cast<double>(i) + 1.0);
    case Kind::kTabulated: return i >= 1 && i <= table_.size() ? table_[i - 1] : 0.0;
    case Kind::kScoreScaled: return inner_->at(i);
  }
  return 0.0;
}

double WeightFunction::scale(const ProbTuple& t) const {
  return kind_ == Kind::kScoreScaled ? t.score : 1.0;
}

std::optional<std::size_t> WeightFunction::support() const {
  switch (kind_) {
    case Kind::kStep:
    case Kind::kDelta: return n_;
    case Kind::kTabulated: return table_.size();
    case Kind::kScoreScaled: return inner_->support();
    case Kind::kExponential:
      if (alpha_ == std::complex<double>{}) return 0;
      return std::nullopt;
    default: return std::nullopt;
  }
}

bool WeightFunction::is_real() const {
  if (kind_ == Kind::kExponential || kind_ == Kind::kConstant) return alpha_.imag() == 0.0;
  if (kind_ == Kind::kScoreScaled) return inner_->is_real();
  return true;
}

std::string WeightFunction::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::kConstant: os << "constant(" << alpha_.real() << ")"; break;
    case Kind::kStep: os << "step(" << n_ << ")"; break;
    case Kind::kDelta: os << "delta(" << n_ << ")"; break;
    case Kind::kExponential:
      os << "exponential(" << alpha_.real();
      if (alpha_.imag() != 0.0) os << (alpha_.imag() > 0 ? "+" : "") << alpha_.imag() << "i";
      os << ")";
      break;
    case Kind::kLinear: os << "linear"; break;
    case Kind::kDiscount: os << "discount"; break;
    case Kind::kTabulated: os << "tabulated[" << table_.size() << "]"; break;
    case Kind::kScoreScaled: os << "score*" << inner_->describe(); break;
  }
  return os.str();
}

}  // namespace prank
