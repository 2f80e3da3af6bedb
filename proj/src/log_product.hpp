#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace prank {

// Running complex product kept as (log|·|, arg, number of zero factors).
class LogProduct {
 public:
  static constexpr double kZeroThreshold = 1e-300;

  LogProduct() = default;
  explicit LogProduct(std::complex<double> v) { *this *= v; }

  double log_magnitude() const { return log_mag_; }
  double phase() const { return phase_; }
  long zero_count() const { return zeros_; }
  bool is_zero() const { return zeros_ > 0; }

  // log|value|, -inf when a zero factor is present.
  double log_abs() const {
    return zeros_ > 0 ? -std::numeric_limits<double>::infinity() : log_mag_;
  }

  std::complex<double> value() const {
    if (zeros_ > 0) return {};
    return std::polar(std::exp(log_mag_), phase_);
  }

  LogProduct& operator*=(std::complex<double> v) {
    double m = std::abs(v);
    if (m < kZeroThreshold) {
      ++zeros_;
    } else {
      log_mag_ += std::log(m);
      add_phase(std::arg(v));
    }
    return *this;
  }

  LogProduct& operator/=(std::complex<double> v) {
    double m = std::abs(v);
    if (m < kZeroThreshold) {
      --zeros_;
    } else {
      log_mag_ -= std::log(m);
      add_phase(-std::arg(v));
    }
    return *this;
  }

  LogProduct& operator*=(const LogProduct& o) {
    log_mag_ += o.log_mag_;
    zeros_ += o.zeros_;
    add_phase(o.phase_);
    return *this;
  }

  LogProduct& operator/=(const LogProduct& o) {
    log_mag_ -= o.log_mag_;
    zeros_ -= o.zeros_;
    add_phase(-o.phase_);
    return *this;
  }

  friend LogProduct operator*(LogProduct a, const LogProduct& b) { return a *= b; }
  friend LogProduct operator/(LogProduct a, const LogProduct& b) { return a /= b; }

 private:
  void add_phase(double d) {
    phase_ += d;
    if (phase_ > std::numbers::pi || phase_ <= -std::numbers::pi) {
      phase_ = std::remainder(phase_, 2.0 * std::numbers::pi);
      if (phase_ <= -std::numbers::pi) phase_ += 2.0 * std::numbers::pi;
    }
  }

  double log_mag_ = 0.0;
  double phase_ = 0.0;
  long zeros_ = 0;
};

}  // namespace prank
