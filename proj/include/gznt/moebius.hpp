#pragma once

#include <complex>
#include <string>

namespace gznt {

using cplx = std::complex<double>;

class N1Function;

/// A point of R u {infinity}.
class TauParam {
 public:
  TauParam() = default;
  TauParam(double value);  // NOLINT: implicit from a real is intended
  static TauParam infinity();

  bool is_infinite() const { return infinite_; }
  /// Finite value; throws DomainError for infinity.
  double value() const;
  /// Angle psi = atan(tau) in (-pi/2, pi/2]; infinity maps to pi/2.
  double angle() const;
  static TauParam from_angle(double psi);

  std::string to_string() const;
  friend bool operator==(const TauParam&, const TauParam&) = default;

 private:
  bool infinite_ = false;
  double value_ = 0.0;
};

/// (q - tau)/(1 + tau q); -1/q at infinity.
/// PoleHit when 1 + tau q = 0, ZeroDenominator at infinity when q = 0.
cplx mobius_apply(const TauParam& tau, cplx q);

/// Q_tau(z) on the symmetric path, or on the continuation when `extended`.
cplx q_tau(const N1Function& q, const TauParam& tau, cplx z, bool extended = false);

/// (tau + sigma)/(1 - tau sigma), the parameter with (Q_tau)_sigma = Q_{tau o sigma}.
/// Values with 1 - tau sigma ~ 0 become infinity.
TauParam compose_tau(const TauParam& tau, const TauParam& sigma);

/// 2|z - w| / sqrt((1 + |z|^2)(1 + |w|^2)); an infinite argument is the north pole.
double chordal_distance(cplx z, cplx w);

}  // namespace gznt
