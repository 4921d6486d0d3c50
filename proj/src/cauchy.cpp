#include "gznt/cauchy.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gznt/errors.hpp"

namespace gznt {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

// Beyond this |zeta| the Laurent expansion at infinity replaces the upward
// recurrence, which loses digits like |zeta|^degree.
constexpr double kLaurentRadius = 2.0;

struct Scaled {
  double center;
  double half;
  Polynomial q;  // q(s) = p(center + half * s) on [-1, 1]
};

Scaled scale_to_unit(double lo, double hi, const Polynomial& p) {
  const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
  return {c, h, p.shifted(c, h)};
}

void check_interval(double lo, double hi) {
  if (!(lo < hi)) throw DomainError("cauchy transform: interval must satisfy lo < hi");
}

[[noreturn]] void on_support(cplx z, double lo, double hi) {
  std::ostringstream os;
  os << "cauchy transform: z = " << z << " lies on [" << lo << ", " << hi << "]";
  throw DomainError(os.str());
}

// int_{-1}^{1} s^m q(s) ds
double unit_moment(const Polynomial& q, int m) {
  double acc = 0.0;
  const auto& c = q.coeffs();
  for (std::size_t j = 0; j < c.size(); ++j)
    if ((j + static_cast<std::size_t>(m)) % 2 == 0) acc += c[j] * 2.0 / static_cast<double>(j + m + 1);
  return acc;
}

// Upward recurrence J_n = zeta J_{n-1} + (1 - (-1)^n)/n, started from `j0`.
cplx unit_recurrence(const Polynomial& q, cplx zeta, cplx j0) {
  cplx jn = j0, acc = q.coeffs()[0] * j0;
  const auto& c = q.coeffs();
  for (std::size_t n = 1; n < c.size(); ++n) {
    jn = zeta * jn + ((n % 2 == 1) ? 2.0 / static_cast<double>(n) : 0.0);
    acc += c[n] * jn;
  }
  return acc;
}

// Taylor coefficients (in zeta) of -sum_m mu_m zeta^{-m-1} at zeta.
std::vector<cplx> unit_laurent_jet(const Polynomial& q, cplx zeta, int order) {
  std::vector<cplx> out(static_cast<std::size_t>(order) + 1, cplx{});
  const cplx inv = 1.0 / zeta;
  for (int k = 0; k <= order; ++k) {
    // d^k/dzeta^k zeta^{-(m+1)} / k! = (-1)^k C(m+k, k) zeta^{-(m+k+1)}
    cplx acc = 0.0;
    cplx pw = std::pow(inv, k + 1);
    double tiny_run = 0;
    for (int m = 0; m < 600; ++m) {
      double binom = 1.0;
      for (int i = 1; i <= k; ++i) binom = binom * (m + i) / i;
      const cplx term = unit_moment(q, m) * binom * pw;
      acc += term;
      pw *= inv;
      if (std::abs(term) <= 1e-18 * std::abs(acc)) {
        if (++tiny_run >= 3 && m > 8) break;
      } else {
        tiny_run = 0;
      }
    }
    out[static_cast<std::size_t>(k)] = (k % 2 == 0 ? -1.0 : 1.0) * acc;
  }
  return out;
}

// Principal transform on [-1, 1], zeta off the interval.
cplx unit_principal(const Polynomial& q, cplx zeta) {
  if (std::abs(zeta) > kLaurentRadius) return unit_laurent_jet(q, zeta, 0)[0];
  return unit_recurrence(q, zeta, std::log((1.0 - zeta) / (-1.0 - zeta)));
}

// Boundary value PV + i*pi*q(x) at real x in (-1, 1).
cplx unit_boundary(const Polynomial& q, double x) {
  const cplx pv = unit_recurrence(q, x, std::log((1.0 - x) / (1.0 + x)));
  return pv + kI * kPi * q(x);
}

enum class Where { Upper, Axis, LowerStrip, Outside };

Where locate(double lo, double hi, cplx z, Sheet sheet) {
  const double x = z.real(), y = z.imag();
  if (x == lo || x == hi) {
    if (y == 0.0 || (sheet == Sheet::Continued && y < 0.0)) return Where::Outside;
  }
  if (y > 0.0) return Where::Upper;
  const bool inside = lo < x && x < hi;
  if (!inside) return Where::Upper;  // principal branch is holomorphic here
  if (y == 0.0) return sheet == Sheet::Continued ? Where::Axis : Where::Outside;
  return sheet == Sheet::Continued ? Where::LowerStrip : Where::Upper;
}

cplx unit_value(const Polynomial& q, cplx zeta, Where where) {
  switch (where) {
    case Where::Upper:
      return unit_principal(q, zeta);
    case Where::Axis:
      return unit_boundary(q, zeta.real());
    case Where::LowerStrip:
      return unit_principal(q, zeta) + 2.0 * kPi * kI * q(zeta);
    case Where::Outside:
      break;
  }
  throw DomainError("cauchy transform: point outside the domain");
}

}  // namespace

cplx cauchy_poly(double lo, double hi, const Polynomial& p, cplx z) {
  check_interval(lo, hi);
  if (z.imag() == 0.0 && lo <= z.real() && z.real() <= hi) on_support(z, lo, hi);
  const Scaled s = scale_to_unit(lo, hi, p);
  return unit_principal(s.q, (z - s.center) / s.half);
}

cplx cauchy_extended(double lo, double hi, const Polynomial& p, cplx z) {
  check_interval(lo, hi);
  if (z.real() == lo || z.real() == hi) {
    if (z.imag() <= 0.0) on_support(z, lo, hi);
  }
  if (z.imag() > 0.0) return cauchy_poly(lo, hi, p, z);
  if (!(lo < z.real() && z.real() < hi)) {
    std::ostringstream os;
    os << "cauchy_extended: z = " << z << " outside the continuation window over (" << lo << ", " << hi << ")";
    throw DomainError(os.str());
  }
  const Scaled s = scale_to_unit(lo, hi, p);
  if (z.imag() == 0.0) return unit_boundary(s.q, (z.real() - s.center) / s.half);
  // Reflection of the upper-half-plane value plus the jump 2*pi*i*phi(z).
  return std::conj(cauchy_poly(lo, hi, p, std::conj(z))) + 2.0 * kPi * kI * p(z);
}

Jet cauchy_jet(double lo, double hi, const Polynomial& p, cplx z, int order, Sheet sheet) {
  check_interval(lo, hi);
  const Where where = locate(lo, hi, z, sheet);
  if (where == Where::Outside) on_support(z, lo, hi);

  const Scaled s = scale_to_unit(lo, hi, p);
  const cplx zeta = (z - s.center) / s.half;
  std::vector<cplx> t(static_cast<std::size_t>(order) + 1, cplx{});

  if (where != Where::Axis && std::abs(zeta) > kLaurentRadius) {
    t = unit_laurent_jet(s.q, zeta, order);
    if (where == Where::LowerStrip) {
      double fact = 1.0;
      for (int k = 0; k <= order; ++k) {
        if (k > 0) fact *= k;
        t[static_cast<std::size_t>(k)] += 2.0 * kPi * kI * s.q.derivative(k)(zeta) / fact;
      }
    }
  } else {
    // J^(k) = sum_{j<k} (k-1-j)! [q^(j)(-1)/(-1-zeta)^{k-j} - q^(j)(1)/(1-zeta)^{k-j}] + J[q^(k)]
    std::vector<Polynomial> dq{s.q};
    for (int k = 1; k <= order; ++k) dq.push_back(dq.back().derivative());
    const cplx inv_left = 1.0 / (-1.0 - zeta), inv_right = 1.0 / (1.0 - zeta);
    double kfact = 1.0;
    for (int k = 0; k <= order; ++k) {
      if (k > 0) kfact *= k;
      cplx acc = unit_value(dq[static_cast<std::size_t>(k)], zeta, where);
      double w = 1.0;  // (k-1-j)!
      for (int j = k - 1; j >= 0; --j) {
        const int pw = k - j;
        acc += w * (dq[static_cast<std::size_t>(j)](-1.0) * std::pow(inv_left, pw) -
                    dq[static_cast<std::size_t>(j)](1.0) * std::pow(inv_right, pw));
        w *= (k - j);
      }
      t[static_cast<std::size_t>(k)] = acc / kfact;
    }
  }

  double scale = 1.0;
  for (auto& v : t) {
    v *= scale;
    scale /= s.half;
  }
  return Jet(std::move(t));
}

QuadResult cauchy_quad(const std::function<double(double)>& density, double lo, double hi, cplx z,
                       double rel_tol) {
  check_interval(lo, hi);
  if (z.imag() == 0.0 && lo <= z.real() && z.real() <= hi) on_support(z, lo, hi);

  boost::math::quadrature::tanh_sinh<double> rule(15);
  const double x0 = z.real(), y0 = z.imag();
  std::vector<std::pair<double, double>> parts;
  if (lo < x0 && x0 < hi)
    parts = {{lo, x0}, {x0, hi}};
  else
    parts = {{lo, hi}};

  QuadResult out{0.0, 0.0};
  for (auto [a, b] : parts) {
    // tanh-sinh passes the signed distance to the nearer endpoint (a - t or b - t);
    // rebuilding t - x0 from it keeps full precision next to the split point.
    auto offset = [&](double tc) {
      if (tc < 0) return a == x0 ? -tc : (a - tc) - x0;
      return b == x0 ? -tc : (b - tc) - x0;
    };
    auto re = [&](double, double tc) {
      const double d = offset(tc);
      return density(x0 + d) * d / (d * d + y0 * y0);
    };
    auto im = [&](double, double tc) {
      const double d = offset(tc);
      return density(x0 + d) * y0 / (d * d + y0 * y0);
    };
    double err_re = 0.0, err_im = 0.0;
    const double vr = rule.integrate(re, a, b, 1e-13, &err_re);
    const double vi = rule.integrate(im, a, b, 1e-13, &err_im);
    out.value += cplx(vr, vi);
    out.error_estimate += 0.5 * (b - a) * (err_re + err_im);
  }
  if (!(out.error_estimate <= rel_tol * (1.0 + std::abs(out.value)))) {
    std::ostringstream os;
    os << "cauchy_quad: error estimate " << out.error_estimate << " above target at z = " << z;
    throw NoConvergence(os.str());
  }
  return out;
}

cplx fullline_constant(cplx z, double c) {
  if (z.imag() == 0.0) throw DomainError("fullline_constant: z on the real axis");
  return kI * kPi * c * (z.imag() > 0.0 ? 1.0 : -1.0);
}

}  // namespace gznt
