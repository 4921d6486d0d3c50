#pragma once

#include <complex>
#include <vector>

namespace gznt {

using cplx = std::complex<double>;

/// Truncated Taylor expansion f(z0 + h) = sum_k c[k] h^k of a holomorphic function.
/// c[k] = f^(k)(z0) / k!.
class Jet {
 public:
  Jet() = default;
  explicit Jet(int order) : c_(static_cast<std::size_t>(order) + 1, cplx{}) {}
  explicit Jet(std::vector<cplx> coeffs) : c_(std::move(coeffs)) {}

  static Jet constant(cplx value, int order);
  /// The identity map z expanded at z0.
  static Jet variable(cplx z0, int order);

  int order() const { return static_cast<int>(c_.size()) - 1; }
  cplx& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }
  cplx operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
  const std::vector<cplx>& coeffs() const { return c_; }

  cplx value() const { return c_.front(); }
  /// k-th derivative f^(k)(z0).
  cplx derivative(int k) const;

  Jet truncated(int order) const;

  Jet& operator+=(const Jet& rhs);
  Jet& operator-=(const Jet& rhs);
  Jet& operator*=(cplx s);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, cplx s) { return a *= s; }
  friend Jet operator*(cplx s, Jet a) { return a *= s; }
  friend Jet operator*(const Jet& a, const Jet& b);

  /// Series quotient a / b. Leading coefficients that vanish in both (relative to
  /// `zero_tol`) are cancelled first, so removable singularities are handled; the
  /// result then has order min(a.order(), b.order()) - cancelled.
  static Jet divide(const Jet& a, const Jet& b, double zero_tol = 1e-13);

 private:
  std::vector<cplx> c_;
};

}  // namespace gznt
