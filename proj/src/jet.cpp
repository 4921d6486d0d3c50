#include "gznt/jet.hpp"

#include <algorithm>
#include <cmath>

#include "gznt/errors.hpp"

namespace gznt {

Jet Jet::constant(cplx value, int order) {
  Jet j(order);
  j[0] = value;
  return j;
}

Jet Jet::variable(cplx z0, int order) {
  Jet j(order);
  j[0] = z0;
  if (order >= 1) j[1] = 1.0;
  return j;
}

cplx Jet::derivative(int k) const {
  double fact = 1.0;
  for (int i = 2; i <= k; ++i) fact *= i;
  return c_[static_cast<std::size_t>(k)] * fact;
}

Jet Jet::truncated(int order) const {
  std::vector<cplx> c(c_.begin(), c_.begin() + std::min<std::ptrdiff_t>(order + 1, c_.size()));
  return Jet(std::move(c));
}

Jet& Jet::operator+=(const Jet& rhs) {
  if (rhs.c_.size() < c_.size()) c_.resize(rhs.c_.size());
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += rhs.c_[k];
  return *this;
}

Jet& Jet::operator-=(const Jet& rhs) {
  if (rhs.c_.size() < c_.size()) c_.resize(rhs.c_.size());
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= rhs.c_[k];
  return *this;
}

Jet& Jet::operator*=(cplx s) {
  for (auto& v : c_) v *= s;
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  const int n = std::min(a.order(), b.order());
  Jet out(n);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; i + j <= n; ++j) out[i + j] += a[i] * b[j];
  return out;
}

Jet Jet::divide(const Jet& a, const Jet& b, double zero_tol) {
  int n = std::min(a.order(), b.order());
  double scale_a = 0.0, scale_b = 0.0;
  for (int k = 0; k <= n; ++k) {
    scale_a = std::max(scale_a, std::abs(a[k]));
    scale_b = std::max(scale_b, std::abs(b[k]));
  }
  int shift = 0;
  while (shift < n && std::abs(b[shift]) <= zero_tol * scale_b) {
    if (std::abs(a[shift]) > zero_tol * std::max(scale_a, 1e-300))
      throw PoleHit("series quotient has a pole at the expansion point");
    ++shift;
  }
  if (std::abs(b[shift]) == 0.0) throw PoleHit("series quotient has a pole at the expansion point");
  n -= shift;
  Jet out(n);
  for (int k = 0; k <= n; ++k) {
    cplx acc = a[k + shift];
    for (int j = 1; j <= k; ++j) acc -= b[j + shift] * out[k - j];
    out[k] = acc / b[shift];
  }
  return out;
}

}  // namespace gznt
