#pragma once

#include <complex>
#include <vector>

namespace gznt {

using cplx = std::complex<double>;

/// Real polynomial sum_k c_k t^k stored by ascending coefficient.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs);

  const std::vector<double>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const;

  double operator()(double t) const;
  cplx operator()(cplx z) const;

  Polynomial derivative(int order = 1) const;

  // Coefficients q_j of p(center + scale * s) = sum_j q_j s^j.
  Polynomial shifted(double center, double scale = 1.0) const;

  double integral(double lo, double hi) const;

  // sum |c_k| max(1,|t|)^k, a magnitude scale for relative zero tests at t.
  double magnitude_at(double t) const;

 private:
  std::vector<double> coeffs_;
};

}  // namespace gznt
