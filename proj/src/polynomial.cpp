#include "gznt/polynomial.hpp"

#include <algorithm>
#include <cmath>

namespace gznt {

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
}

bool Polynomial::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](double c) { return c == 0.0; });
}

double Polynomial::operator()(double t) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

cplx Polynomial::operator()(cplx z) const {
  cplx acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Polynomial Polynomial::derivative(int order) const {
  std::vector<double> c = coeffs_;
  for (int r = 0; r < order; ++r) {
    if (c.size() <= 1) return Polynomial({0.0});
    std::vector<double> d(c.size() - 1);
    for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = c[k] * static_cast<double>(k);
    c = std::move(d);
  }
  return Polynomial(std::move(c));
}

Polynomial Polynomial::shifted(double center, double scale) const {
  // Horner-style Taylor shift: repeated synthetic division by (t - center).
  std::vector<double> c = coeffs_;
  const std::size_t n = c.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = n - 1; k > i; --k) c[k - 1] += center * c[k];
  double s = 1.0;
  for (std::size_t k = 0; k < n; ++k, s *= scale) c[k] *= s;
  return Polynomial(std::move(c));
}

double Polynomial::integral(double lo, double hi) const {
  double acc = 0.0;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const double p = static_cast<double>(k + 1);
    acc += coeffs_[k] * (std::pow(hi, p) - std::pow(lo, p)) / p;
  }
  return acc;
}

double Polynomial::magnitude_at(double t) const {
  const double base = std::max(1.0, std::abs(t));
  double acc = 0.0, w = 1.0;
  for (double c : coeffs_) {
    acc += std::abs(c) * w;
    w *= base;
  }
  return acc;
}

}  // namespace gznt
