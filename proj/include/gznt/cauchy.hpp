#pragma once

#include <complex>
#include <functional>

#include "gznt/jet.hpp"
#include "gznt/polynomial.hpp"

namespace gznt {

using cplx = std::complex<double>;

// Cauchy (Stieltjes) transforms  I(z) = int_lo^hi p(t) / (t - z) dt  of a
// polynomial density.
//
// Branch convention: the closed form uses the principal logarithm
// Log((hi - z)/(lo - z)), which is continuous on C \ [lo, hi]. The continuation
// of I from the upper half-plane through (lo, hi) is obtained by adding the
// jump 2*pi*i*p(z) on the lower sheet, and the boundary value on (lo, hi) is
// PV + i*pi*p(x).

enum class Sheet {
  Principal,  // the transform itself, defined off [lo, hi]
  Continued,  // continuation from C+ through (lo, hi) into the strip below it
};

/// Closed-form transform. Throws DomainError when z lies on [lo, hi].
cplx cauchy_poly(double lo, double hi, const Polynomial& p, cplx z);

/// Continuation of the transform from C+ into {lo < Re z < hi}.
/// Throws DomainError outside C+ union that strip, or at an endpoint.
cplx cauchy_extended(double lo, double hi, const Polynomial& p, cplx z);

/// Taylor jet of order `order` of the transform at z on the requested sheet.
/// On the Continued sheet, points with Im z <= 0 outside the strip fall back to
/// the principal branch (holomorphic there whenever z is off [lo, hi]).
Jet cauchy_jet(double lo, double hi, const Polynomial& p, cplx z, int order, Sheet sheet);

struct QuadResult {
  cplx value;
  double error_estimate = 0.0;
};

/// Adaptive tanh-sinh quadrature of int density(t)/(t - z) dt, split at Re z when it
/// falls inside the interval. Throws NoConvergence when the estimated absolute
/// error exceeds rel_tol * (1 + |value|).
QuadResult cauchy_quad(const std::function<double(double)>& density, double lo, double hi, cplx z,
                       double rel_tol = 1e-10);

/// c * int_R (1/(t - z) - t/(t^2 + 1)) dt = i*pi*c*sign(Im z). DomainError on the axis.
cplx fullline_constant(cplx z, double c);

}  // namespace gznt
