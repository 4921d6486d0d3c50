#include "gznt/moebius.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "gznt/errors.hpp"
#include "gznt/n1.hpp"

namespace gznt {

TauParam::TauParam(double value) : value_(value) {
  if (!std::isfinite(value)) throw DomainError("tau must be finite; use TauParam::infinity()");
}

TauParam TauParam::infinity() {
  TauParam t;
  t.infinite_ = true;
  return t;
}

double TauParam::value() const {
  if (infinite_) throw DomainError("tau is infinite");
  return value_;
}

double TauParam::angle() const { return infinite_ ? std::numbers::pi / 2 : std::atan(value_); }

TauParam TauParam::from_angle(double psi) {
  const double c = std::cos(psi);
  if (std::abs(c) < 1e-15) return infinity();
  return TauParam(std::sin(psi) / c);
}

std::string TauParam::to_string() const {
  if (infinite_) return "inf";
  std::ostringstream os;
  os.precision(17);
  os << value_;
  return os.str();
}

cplx mobius_apply(const TauParam& tau, cplx q) {
  if (tau.is_infinite()) {
    if (q == 0.0) throw ZeroDenominator("Q_inf = -1/Q at a zero of Q");
    return -1.0 / q;
  }
  const double t = tau.value();
  const cplx den = 1.0 + t * q;
  if (den == 0.0) throw PoleHit("1 + tau Q(z) = 0: z is the pole beta(tau)");
  return (q - t) / den;
}

cplx q_tau(const N1Function& q, const TauParam& tau, cplx z, bool extended) {
  return mobius_apply(tau, extended ? q.extended(z) : q(z));
}

TauParam compose_tau(const TauParam& tau, const TauParam& sigma) {
  // tan(a + b) with infinity = tan(pi/2)
  if (tau.is_infinite() && sigma.is_infinite()) return TauParam(0.0);
  if (tau.is_infinite() || sigma.is_infinite()) {
    const double other = tau.is_infinite() ? sigma.value() : tau.value();
    if (other == 0.0) return TauParam::infinity();
    return TauParam(-1.0 / other);
  }
  const double t = tau.value(), s = sigma.value();
  const double den = 1.0 - t * s;
  if (std::abs(den) <= 1e-14 * std::max(1.0, std::abs(t * s))) return TauParam::infinity();
  return TauParam((t + s) / den);
}

double chordal_distance(cplx z, cplx w) {
  const bool zi = std::isinf(z.real()) || std::isinf(z.imag());
  const bool wi = std::isinf(w.real()) || std::isinf(w.imag());
  if (zi && wi) return 0.0;
  if (zi) return 2.0 / std::sqrt(1.0 + std::norm(w));
  if (wi) return 2.0 / std::sqrt(1.0 + std::norm(z));
  return 2.0 * std::abs(z - w) / std::sqrt((1.0 + std::norm(z)) * (1.0 + std::norm(w)));
}

}  // namespace gznt
