#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "common.hpp"

namespace prank {

using cplx = std::complex<double>;

// Dense polynomial in x, index = power.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<cplx> coeffs) : c_(std::move(coeffs)) {}
  Poly(std::initializer_list<cplx> coeffs) : c_(coeffs) {}

  static Poly constant(cplx c) { return Poly({c}); }
  static Poly one() { return constant(1.0); }
  static Poly x() { return Poly({0.0, 1.0}); }

  const std::vector<cplx>& coeffs() const { return c_; }
  std::vector<cplx>& coeffs() { return c_; }
  std::size_t size() const { return c_.size(); }
  bool is_zero() const { return c_.empty(); }
  // Degree of the stored representation; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  cplx operator[](std::size_t i) const { return i < c_.size() ? c_[i] : cplx{}; }

  // Trims exact trailing zeros.
  Poly& normalize();
  Poly& truncate(std::size_t max_len);

  cplx eval(cplx x) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(cplx s);

 private:
  std::vector<cplx> c_;
};

Poly operator+(Poly a, const Poly& b);
Poly operator-(Poly a, const Poly& b);
Poly operator*(Poly a, cplx s);

Poly poly_mul_naive(const Poly& p, const Poly& q);
Poly poly_mul_fft(const Poly& p, const Poly& q);
// Naive below kNaiveCutoff on the smaller operand, FFT otherwise.
Poly poly_mul(const Poly& p, const Poly& q);
constexpr int kNaiveCutoff = 32;

// Divide-and-conquer product with balanced degree splits. Intermediate
// results are truncated to max_len coefficients.
Poly poly_product(const std::vector<Poly>& factors,
                  std::size_t max_len = static_cast<std::size_t>(-1));

// In-place radix-2 transform; size must be a power of two.
// Forward uses e^(-2πi jk/n); inverse is unscaled.
void fft_pow2(std::vector<cplx>& a, bool inverse);
// Arbitrary-length DFT (radix-2 or Bluestein), same sign convention, unscaled.
std::vector<cplx> dft(const std::vector<cplx>& a, bool inverse = false);

std::size_t next_pow2(std::size_t n);

class NestedExpr {
 public:
  enum class Kind { kConst, kVar, kSum, kProd };

  static NestedExpr constant(cplx c);
  static NestedExpr var();
  static NestedExpr sum(NestedExpr l, NestedExpr r);
  static NestedExpr prod(NestedExpr l, NestedExpr r);
  static NestedExpr from_poly(const Poly& p);

  Kind kind() const { return node_->kind; }
  cplx eval(cplx x) const;
  // Upper bound on the degree implied by the structure.
  int degree_bound() const;
  // Recursive expansion by naive multiplication.
  Poly expand_naive() const;

 private:
  struct Node {
    Kind kind;
    cplx value;
    std::shared_ptr<const Node> left, right;
  };
  explicit NestedExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static cplx eval_node(const Node& n, cplx x);
  static int degree_node(const Node& n);
  static Poly expand_node(const Node& n);

  std::shared_ptr<const Node> node_;
};

NestedExpr operator+(NestedExpr l, NestedExpr r);
NestedExpr operator*(NestedExpr l, NestedExpr r);

// Interpolates the expression at roots of unity and inverts the transform.
// Returns n+1 coefficients. Throws kDegreeBoundExceeded when the coefficients
// above degree n carry more than 1e-6 absolute mass.
Poly expand_nested(const NestedExpr& e, int n);

}  // namespace prank
