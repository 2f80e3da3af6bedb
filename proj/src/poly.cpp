#include "poly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace prank {

Poly& Poly::normalize() {
  while (!c_.empty() && c_.back() == cplx{}) c_.pop_back();
  return *this;
}

Poly& Poly::truncate(std::size_t max_len) {
  if (c_.size() > max_len) c_.resize(max_len);
  return *this;
}

cplx Poly::eval(cplx x) const {
  cplx acc{};
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Poly& Poly::operator*=(cplx s) {
  for (auto& v : c_) v *= s;
  return *this;
}

Poly operator+(Poly a, const Poly& b) { return a += b; }
Poly operator-(Poly a, const Poly& b) { return a -= b; }
Poly operator*(Poly a, cplx s) { return a *= s; }

Poly poly_mul_naive(const Poly& p, const Poly& q) {
  if (p.is_zero() || q.is_zero()) return Poly();
  std::vector<cplx> out(p.size() + q.size() - 1);
  const auto& a = p.coeffs();
  const auto& b = q.coeffs();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == cplx{}) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return Poly(std::move(out));
}

std::size_t next_pow2(std::size_t n) {
  std::size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

void fft_pow2(std::vector<cplx>& a, bool inverse) {
  const std::size_t n = a.size();
  if (n <= 1) return;
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  // Twiddles computed directly per index.
  std::vector<cplx> tw(n / 2);
  const double sign = inverse ? 1.0 : -1.0;
  for (std::size_t k = 0; k < n / 2; ++k) {
    double ang = sign * 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    tw[k] = {std::cos(ang), std::sin(ang)};
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2, step = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        cplx u = a[i + k];
        cplx v = a[i + k + half] * tw[k * step];
        a[i + k] = u + v;
        a[i + k + half] = u - v;
      }
    }
  }
}

Poly poly_mul_fft(const Poly& p, const Poly& q) {
  if (p.is_zero() || q.is_zero()) return Poly();
  const std::size_t out_len = p.size() + q.size() - 1;
  const std::size_t n = next_pow2(out_len);
  std::vector<cplx> a(p.coeffs()), b(q.coeffs());
  a.resize(n);
  b.resize(n);
  fft_pow2(a, false);
  fft_pow2(b, false);
  for (std::size_t i = 0; i < n; ++i) a[i] *= b[i];
  fft_pow2(a, true);
  a.resize(out_len);
  const double scale = 1.0 / static_cast<double>(n);
  for (auto& v : a) v *= scale;
  return Poly(std::move(a));
}

Poly poly_mul(const Poly& p, const Poly& q) {
  if (std::min(p.degree(), q.degree()) < kNaiveCutoff) return poly_mul_naive(p, q);
  return poly_mul_fft(p, q);
}

namespace {

Poly product_range(const std::vector<Poly>& f, std::size_t lo, std::size_t hi, std::size_t cap) {
  if (hi - lo == 0) return Poly::one();
  if (hi - lo == 1) return Poly(f[lo]).truncate(cap);
  long total = 0;
  for (std::size_t i = lo; i < hi; ++i) total += std::max(0, f[i].degree());
  if (total == 0) {
    Poly acc = f[lo];
    for (std::size_t i = lo + 1; i < hi; ++i) acc = poly_mul_naive(acc, f[i]);
    return acc.truncate(cap);
  }
  // First prefix reaching a third of the total degree.
  long prefix = 0;
  std::size_t cut = lo;
  while (cut < hi && 3 * prefix < total) prefix += std::max(0, f[cut++].degree());
  if (3 * prefix <= 2 * total && cut > lo && cut < hi) {
    return poly_mul(product_range(f, lo, cut, cap), product_range(f, cut, hi, cap)).truncate(cap);
  }
  // The factor that crossed the boundary alone exceeds a third: carve it out.
  std::size_t big = cut - 1;
  Poly left = product_range(f, lo, big, cap);
  Poly right = product_range(f, big + 1, hi, cap);
  Poly rest = poly_mul(left, right).truncate(cap);
  return poly_mul(rest, Poly(f[big]).truncate(cap)).truncate(cap);
}

}  // namespace

Poly poly_product(const std::vector<Poly>& factors, std::size_t max_len) {
  for (const auto& f : factors) {
    if (f.is_zero()) return Poly();
  }
  return product_range(factors, 0, factors.size(), max_len);
}

std::vector<cplx> dft(const std::vector<cplx>& a, bool inverse) {
  const std::size_t n = a.size();
  if (n <= 1) return a;
  if ((n & (n - 1)) == 0) {
    std::vector<cplx> out(a);
    fft_pow2(out, inverse);
    return out;
  }
  // Bluestein: jk = (j² + k² - (k-j)²)/2. Chirp angles use k² mod 2n for accuracy.
  const double sign = inverse ? 1.0 : -1.0;
  std::vector<cplx> chirp(n);
  for (std::size_t k = 0; k < n; ++k) {
    unsigned long long k2 = (static_cast<unsigned long long>(k) * k) % (2ULL * n);
    double ang = sign * std::numbers::pi * static_cast<double>(k2) / static_cast<double>(n);
    chirp[k] = {std::cos(ang), std::sin(ang)};
  }
  const std::size_t m = next_pow2(2 * n - 1);
  std::vector<cplx> x(m), y(m);
  for (std::size_t k = 0; k < n; ++k) x[k] = a[k] * chirp[k];
  y[0] = std::conj(chirp[0]);
  for (std::size_t k = 1; k < n; ++k) y[k] = y[m - k] = std::conj(chirp[k]);
  fft_pow2(x, false);
  fft_pow2(y, false);
  for (std::size_t i = 0; i < m; ++i) x[i] *= y[i];
  fft_pow2(x, true);
  const double scale = 1.0 / static_cast<double>(m);
  std::vector<cplx> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = x[k] * scale * chirp[k];
  return out;
}

NestedExpr NestedExpr::constant(cplx c) {
  return NestedExpr(std::make_shared<const Node>(Node{Kind::kConst, c, nullptr, nullptr}));
}

NestedExpr NestedExpr::var() {
  return NestedExpr(std::make_shared<const Node>(Node{Kind::kVar, {}, nullptr, nullptr}));
}

NestedExpr NestedExpr::sum(NestedExpr l, NestedExpr r) {
  return NestedExpr(std::make_shared<const Node>(
      Node{Kind::kSum, {}, std::move(l.node_), std::move(r.node_)}));
}

NestedExpr NestedExpr::prod(NestedExpr l, NestedExpr r) {
  return NestedExpr(std::make_shared<const Node>(
      Node{Kind::kProd, {}, std::move(l.node_), std::move(r.node_)}));
}

NestedExpr NestedExpr::from_poly(const Poly& p) {
  // Horner form: c0 + x(c1 + x(c2 + ...)).
  if (p.is_zero()) return constant(0.0);
  NestedExpr acc = constant(p.coeffs().back());
  for (int i = p.degree() - 1; i >= 0; --i) {
    acc = sum(constant(p.coeffs()[static_cast<std::size_t>(i)]), prod(var(), acc));
  }
  return acc;
}

cplx NestedExpr::eval_node(const Node& n, cplx x) {
  switch (n.kind) {
    case Kind::kConst: return n.value;
    case Kind::kVar: return x;
    case Kind::kSum: return eval_node(*n.left, x) + eval_node(*n.right, x);
    case Kind::kProd: return eval_node(*n.left, x) * eval_node(*n.right, x);
  }
  return {};
}

int NestedExpr::degree_node(const Node& n) {
  switch (n.kind) {
    case Kind::kConst: return 0;
    case Kind::kVar: return 1;
    case Kind::kSum: return std::max(degree_node(*n.left), degree_node(*n.right));
    case Kind::kProd: return degree_node(*n.left) + degree_node(*n.right);
  }
  return 0;
}

Poly NestedExpr::expand_node(const Node& n) {
  switch (n.kind) {
    case Kind::kConst: return Poly::constant(n.value);
    case Kind::kVar: return Poly::x();
    case Kind::kSum: return expand_node(*n.left) + expand_node(*n.right);
    case Kind::kProd: return poly_mul_naive(expand_node(*n.left), expand_node(*n.right));
  }
  return {};
}

cplx NestedExpr::eval(cplx x) const { return eval_node(*node_, x); }
int NestedExpr::degree_bound() const { return degree_node(*node_); }
Poly NestedExpr::expand_naive() const { return expand_node(*node_); }

NestedExpr operator+(NestedExpr l, NestedExpr r) { return NestedExpr::sum(std::move(l), std::move(r)); }
NestedExpr operator*(NestedExpr l, NestedExpr r) { return NestedExpr::prod(std::move(l), std::move(r)); }

Poly expand_nested(const NestedExpr& e, int n) {
  if (n < 0) throw Error(ErrorCode::kInvalidArgument, "degree bound must be non-negative");
  const int sample_degree = std::max(n, e.degree_bound());
  const std::size_t m = static_cast<std::size_t>(sample_degree) + 1;
  // f_k = e(u^k) with u = e^(-2πi/m); coefficients are the scaled inverse transform.
  std::vector<cplx> f(m);
  for (std::size_t k = 0; k < m; ++k) {
    double ang = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m);
    f[k] = e.eval({std::cos(ang), std::sin(ang)});
  }
  std::vector<cplx> c = dft(f, true);
  const double scale = 1.0 / static_cast<double>(m);
  for (auto& v : c) v *= scale;
  double residual = 0.0;
  for (std::size_t j = static_cast<std::size_t>(n) + 1; j < m; ++j) residual += std::abs(c[j]);
  if (residual > 1e-6) {
    throw Error(ErrorCode::kDegreeBoundExceeded,
                "expression has coefficient mass above degree " + std::to_string(n));
  }
  c.resize(static_cast<std::size_t>(n) + 1);
  return Poly(std::move(c));
}

}  // namespace prank
