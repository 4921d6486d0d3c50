#include "gznt/n1.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gznt/errors.hpp"

namespace gznt {

namespace {

constexpr double kPi = std::numbers::pi;

void require_closed_upper(cplx p, const char* what) {
  if (!(p.imag() >= 0.0) || !std::isfinite(p.real()) || !std::isfinite(p.imag())) {
    std::ostringstream os;
    os << what << " = " << p << " must be finite with Im >= 0";
    throw DomainError(os.str());
  }
}

Jet quadratic_jet(cplx z, cplx root, int order) {
  // (z - r)(z - conj r)
  Jet out(order);
  const cplx a = z - root, b = z - std::conj(root);
  out[0] = a * b;
  if (order >= 1) out[1] = a + b;
  if (order >= 2) out[2] = 1.0;
  return out;
}

}  // namespace

FactorR FactorR::zero_pole(cplx alpha, cplx beta) { return {FactorKind::ZeroPole, alpha, beta}; }
FactorR FactorR::zero_only(cplx alpha) { return {FactorKind::ZeroOnly, alpha, std::nullopt}; }
FactorR FactorR::pole_only(cplx beta) { return {FactorKind::PoleOnly, std::nullopt, beta}; }

void FactorR::check() const {
  const bool want_alpha = kind != FactorKind::PoleOnly, want_beta = kind != FactorKind::ZeroOnly;
  if (want_alpha != alpha.has_value()) throw DomainError("factor: alpha presence does not match the kind");
  if (want_beta != beta.has_value()) throw DomainError("factor: beta presence does not match the kind");
  if (alpha) require_closed_upper(*alpha, "alpha");
  if (beta) require_closed_upper(*beta, "beta");
}

cplx FactorR::operator()(cplx z) const {
  cplx r = 1.0;
  if (alpha) r *= (z - *alpha) * (z - std::conj(*alpha));
  if (beta) {
    const cplx d = (z - *beta) * (z - std::conj(*beta));
    if (d == 0.0) throw PoleHit("R evaluated at beta");
    r /= d;
  }
  return r;
}

N1Function::N1Function(FactorR factor, NevanlinnaFunction base, std::optional<ExtensionWindow> window)
    : factor_(std::move(factor)), base_(std::move(base)), window_(std::move(window)) {
  factor_.check();
  if (factor_.alpha && factor_.alpha->imag() == 0.0) {
    const double a = factor_.alpha->real();
    const double m = mass_at(base_.measure(), a);
    if (m > 0.0) {
      split_atom_ = a;
      m0_ = m;
    }
  }
}

cplx N1Function::operator()(cplx z) const {
  if (z.imag() < 0.0) return std::conj((*this)(std::conj(z)));
  if (factor_.beta && z == *factor_.beta) throw PoleHit("Q evaluated at its pole beta");
  return factor_(z) * base_(z);
}

void N1Function::check_window(cplx z) const {
  if (window_ && !window_->contains(z)) {
    std::ostringstream os;
    os << "Q~: z = " << z << " outside the window (" << window_->lo << ", " << window_->hi << ") and C+";
    throw DomainError(os.str());
  }
}

Jet N1Function::numerator_jet(cplx z, int order) const {
  check_window(z);
  if (!factor_.alpha) return base_.continued_jet(z, order);
  Jet n = quadratic_jet(z, *factor_.alpha, order) * base_.continued_jet(z, order, split_atom_);
  if (split_atom_) {
    Jet lin = Jet::variable(z, order);
    lin[0] -= *split_atom_;
    n -= m0_ * lin;
  }
  return n;
}

Jet N1Function::denominator_jet(cplx z, int order) const {
  if (!factor_.beta) return Jet::constant(1.0, order);
  return quadratic_jet(z, *factor_.beta, order);
}

cplx N1Function::extended(cplx z) const {
  check_window(z);
  cplx n;
  if (!factor_.alpha) {
    n = base_.continued(z);
  } else {
    n = (z - *factor_.alpha) * (z - std::conj(*factor_.alpha)) * base_.continued(z, split_atom_);
    if (split_atom_) n -= m0_ * (z - *split_atom_);
  }
  if (!factor_.beta) return n;
  const cplx d = (z - *factor_.beta) * (z - std::conj(*factor_.beta));
  if (d != 0.0) return n / d;
  return Jet::divide(numerator_jet(z, 3), denominator_jet(z, 3)).value();
}

Jet N1Function::extended_jet(cplx z, int order) const {
  const int extra = factor_.beta ? 2 : 0;  // room for cancelling a removable point
  Jet j = Jet::divide(numerator_jet(z, order + extra), denominator_jet(z, order + extra));
  if (j.order() < order) throw PoleHit("Q~ jet: pole at the expansion point");
  return j.truncated(order);
}

cplx eval_Q(const N1Function& q, cplx z) { return q(z); }
cplx eval_Q_extended(const N1Function& q, cplx z) { return q.extended(z); }

PointMassSplit split_point_mass(const N1Function& q, double alpha) {
  const auto& m = q.base();
  return {mass_at(m.measure(), alpha), m.without_atom_at(alpha)};
}

double default_derivative_radius(const N1Function& q, double z0) {
  double r = 0.1;
  ExtensionWindow w;
  if (q.window()) {
    w = *q.window();
  } else {
    std::optional<double> designated;
    if (q.split_atom() && *q.split_atom() == z0) designated = z0;
    w = q.base().window_around(z0, designated);
  }
  if (!w.contains(cplx(z0, -1.0))) throw DomainError("derivatives: z0 is not inside the extension window");
  r = std::min(r, 0.5 * w.margin(z0));
  if (q.gpnt()) r = std::min(r, 0.5 * std::abs(z0 - *q.gpnt()));
  if (!(r > 0.0)) throw DomainError("derivatives: no room for a Cauchy circle at z0");
  return r;
}

DerivativeEstimate derivatives_at(const N1Function& q, double z0, int k_max, std::optional<double> radius,
                                  const TauParam& tau) {
  if (k_max < 0 || k_max > 4) throw DomainError("derivatives_at: k_max must be in 0..4");
  const double safe = default_derivative_radius(q, z0);
  const double r = radius.value_or(safe);
  if (r > safe * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "derivatives_at: radius " << r << " leaves the domain (largest safe radius " << safe << ")";
    throw DomainError(os.str());
  }

  constexpr int n = 256;
  std::vector<cplx> f(n);
  double fmax = 0.0;
  for (int j = 0; j < n; ++j) {
    const cplx w = std::polar(r, 2.0 * kPi * j / n);
    f[j] = mobius_apply(tau, q.extended(cplx(z0) + w));
    fmax = std::max(fmax, std::abs(f[j]));
  }

  DerivativeEstimate out;
  out.radius = r;
  double fact = 1.0;
  for (int k = 0; k <= k_max; ++k) {
    if (k > 0) fact *= k;
    cplx fine = 0.0, coarse = 0.0;
    for (int j = 0; j < n; ++j) {
      const cplx term = f[j] * std::polar(1.0, -2.0 * kPi * k * j / n);
      fine += term;
      if (j % 2 == 0) coarse += term;
    }
    const double scale = fact / std::pow(r, k);
    fine *= scale / n;
    coarse *= scale / (n / 2);
    out.values.push_back(fine);
    out.errors.push_back(std::abs(fine - coarse) + 1e-14 * fmax * scale);
  }
  return out;
}

const char* case_name(LocalCase c) {
  switch (c) {
    case LocalCase::Case1:
      return "1";
    case LocalCase::Case2:
      return "2";
    case LocalCase::Case3:
      return "3";
  }
  return "?";
}

CaseReport local_case(const N1Function& q, double z0, const TauParam& tau) {
  const auto d = derivatives_at(q, z0, 3, std::nullopt, tau);
  CaseReport rep;
  rep.z0 = z0;
  rep.tau = tau;
  for (int k = 0; k < 3; ++k) {
    rep.derivatives[k] = d.values[k + 1];
    rep.errors[k] = d.errors[k + 1];
  }
  const double err = *std::max_element(d.errors.begin(), d.errors.end());
  const double tol = std::max(1e-8, 1e3 * err);
  rep.tol = tol;

  const cplx value = mobius_apply(tau, q.extended(z0));
  if (std::abs(value) > tol) {
    std::ostringstream os;
    os << "local_case: |Q~(" << z0 << ")| = " << std::abs(value) << " exceeds " << tol;
    throw NotAZero(os.str());
  }

  auto dead_band = [&](double mag, const char* what) {
    if (mag >= 0.1 * tol && mag <= tol) {
      std::ostringstream os;
      os << "local_case: |" << what << "| = " << mag << " inside the tolerance band [" << 0.1 * tol << ", " << tol
         << "]";
      throw Unclassifiable(os.str());
    }
  };

  const cplx q1 = rep.derivatives[0], q2 = rep.derivatives[1], q3 = rep.derivatives[2];
  dead_band(std::abs(q1), "Q'");
  if (std::abs(q1) > tol) {
    if (q1.real() < 0.0 && std::abs(q1.imag()) <= tol) {
      rep.kind = LocalCase::Case1;
      return rep;
    }
    std::ostringstream os;
    os << "local_case: Q'(" << z0 << ") = " << q1 << " is not negative";
    throw Unclassifiable(os.str());
  }
  dead_band(std::abs(q2), "Q''");
  if (std::abs(q2) > tol) {
    if (q2.imag() < -tol) {
      std::ostringstream os;
      os << "local_case: Im Q''(" << z0 << ") = " << q2.imag() << " is negative";
      throw Unclassifiable(os.str());
    }
    double theta = std::arg(q2);
    if (theta < 0.0) theta = theta > -kPi / 2 ? 0.0 : kPi;
    rep.kind = LocalCase::Case2;
    rep.theta0 = theta;
    rep.theta0_on_boundary = std::abs(q2.imag()) <= tol;
    return rep;
  }
  dead_band(std::abs(q3), "Q'''");
  if (std::abs(q3) > tol && q3.real() > 0.0 && std::abs(q3.imag()) <= tol) {
    rep.kind = LocalCase::Case3;
    return rep;
  }
  std::ostringstream os;
  os << "local_case: Q'''(" << z0 << ") = " << q3 << " does not fit any case";
  throw Unclassifiable(os.str());
}

std::vector<cplx> kernel_sample_points(std::size_t n) { return halton_points(n, -2.3, 2.1, 0.2, 2.3); }

int count_negative_squares(std::span<const cplx> points, std::span<const cplx> values, double rel) {
  const auto k = pick_matrix(points, values);
  const auto ev = hermitian_eigenvalues(k);
  const double norm = ev.cwiseAbs().maxCoeff();
  int neg = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev[i] < -rel * norm) ++neg;
  return neg;
}

int count_negative_squares(const N1Function& q, std::span<const cplx> points, double rel) {
  std::vector<cplx> values;
  values.reserve(points.size());
  for (cplx z : points) values.push_back(q(z));
  return count_negative_squares(points, values, rel);
}

}  // namespace gznt
