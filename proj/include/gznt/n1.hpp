#pragma once

#include <array>
#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "gznt/jet.hpp"
#include "gznt/moebius.hpp"
#include "gznt/nevanlinna.hpp"

namespace gznt {

using cplx = std::complex<double>;

enum class FactorKind { ZeroPole, ZeroOnly, PoleOnly };

/// R(z) = (z-a)(z-conj a)/((z-b)(z-conj b)), (z-a)(z-conj a) or 1/((z-b)(z-conj b)).
struct FactorR {
  FactorKind kind = FactorKind::ZeroOnly;
  std::optional<cplx> alpha;  // absent means infinity
  std::optional<cplx> beta;

  static FactorR zero_pole(cplx alpha, cplx beta);
  static FactorR zero_only(cplx alpha);
  static FactorR pole_only(cplx beta);

  /// Throws DomainError when the fields do not match the kind or a point lies in C-.
  void check() const;
  cplx operator()(cplx z) const;
};

/// Q = R M. The continuation Q~ is written N/D with
///   N = (z-a)(z-conj a) M1~(z) - m0 (z - conj a),   D = (z-b)(z-conj b) or 1,
/// where m0 is the mass of an atom at a real alpha and M1~ is the continuation
/// of M without that atom, so Q~ is holomorphic at alpha.
class N1Function {
 public:
  N1Function(FactorR factor, NevanlinnaFunction base, std::optional<ExtensionWindow> window = std::nullopt);

  const FactorR& factor() const { return factor_; }
  const NevanlinnaFunction& base() const { return base_; }
  const std::optional<ExtensionWindow>& window() const { return window_; }
  std::optional<cplx> gznt() const { return factor_.alpha; }
  std::optional<cplx> gpnt() const { return factor_.beta; }

  /// Symmetric evaluation off the real axis. PoleHit at beta and conj(beta).
  cplx operator()(cplx z) const;

  /// Continuation from C+ (vertical rule; inside the designated window when one is set).
  cplx extended(cplx z) const;
  Jet extended_jet(cplx z, int order) const;
  Jet numerator_jet(cplx z, int order) const;
  Jet denominator_jet(cplx z, int order) const;

  /// Real alpha carrying an atom, if any; that atom is split off in N.
  std::optional<double> split_atom() const { return split_atom_; }

 private:
  void check_window(cplx z) const;

  FactorR factor_;
  NevanlinnaFunction base_;
  std::optional<ExtensionWindow> window_;
  std::optional<double> split_atom_;
  double m0_ = 0.0;
};

cplx eval_Q(const N1Function& q, cplx z);
cplx eval_Q_extended(const N1Function& q, cplx z);

struct PointMassSplit {
  double m0 = 0.0;
  NevanlinnaFunction m1;
};

/// M = M1 + m0/(alpha - z).
PointMassSplit split_point_mass(const N1Function& q, double alpha);

struct DerivativeEstimate {
  std::vector<cplx> values;  // f^(k)(z0), k = 0..k_max
  std::vector<double> errors;
  double radius = 0.0;
};

/// Largest safe Cauchy-circle radius about real z0: min(0.1, half the distance to
/// the window edges and to beta, conj(beta)).
double default_derivative_radius(const N1Function& q, double z0);

/// Derivatives of Q~_tau at real z0 by the trapezoid rule on a circle (256 nodes),
/// error taken from the 128-node value. DomainError when the circle leaves the
/// domain of holomorphy.
DerivativeEstimate derivatives_at(const N1Function& q, double z0, int k_max, std::optional<double> radius = std::nullopt,
                                  const TauParam& tau = TauParam(0.0));

enum class LocalCase { Case1, Case2, Case3 };

struct CaseReport {
  double z0 = 0.0;
  TauParam tau;
  LocalCase kind = LocalCase::Case1;
  std::optional<double> theta0;  // Case 2 only, in [0, pi]
  bool theta0_on_boundary = false;
  std::array<cplx, 3> derivatives{};  // Q', Q'', Q'''
  std::array<double, 3> errors{};
  double tol = 0.0;
};

const char* case_name(LocalCase c);

/// Case 1: Q'(z0) < 0. Case 2: Q' = 0, Q'' != 0 with Im Q'' >= 0. Case 3: Q' = Q'' = 0, Q''' > 0.
/// NotAZero when |Q~_tau(z0)| > tol; Unclassifiable in the dead band [tol/10, tol]
/// or when the sign conditions fail.
CaseReport local_case(const N1Function& q, double z0, const TauParam& tau = TauParam(0.0));

/// Generic sample points in C+ (Halton) for kernel signature checks.
std::vector<cplx> kernel_sample_points(std::size_t n = 8);

/// Number of eigenvalues of the kernel matrix of `values` below -rel * ||K||.
int count_negative_squares(std::span<const cplx> points, std::span<const cplx> values, double rel = 1e-9);
int count_negative_squares(const N1Function& q, std::span<const cplx> points, double rel = 1e-9);

}  // namespace gznt
