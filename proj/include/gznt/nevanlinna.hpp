#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "gznt/jet.hpp"
#include "gznt/measures.hpp"

namespace gznt {

using cplx = std::complex<double>;

/// Region {lo < Re z < hi} below the axis into which M continues from C+.
/// Bounded by the nearest piece endpoints and atoms around a chosen real point;
/// `designated_atom` is an atom allowed inside the window (it becomes a pole).
struct ExtensionWindow {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  std::optional<std::size_t> host_piece;
  std::optional<double> designated_atom;

  bool contains(cplx z) const;
  /// Distance from a real point inside the window to its vertical boundaries.
  double margin(double x) const;
};

/// M(z) = a_eff + b z + i*pi*c*sign(Im z) + int dsigma(t)/(t - z).
///
/// `a_eff` absorbs the regularizer: a_eff = a - int t/(t^2+1) dsigma. The constant
/// full-line density c (the function i*pi*c on C+) is kept analytically since it
/// has no compact support.
class NevanlinnaFunction {
 public:
  NevanlinnaFunction() = default;
  NevanlinnaFunction(double a_eff, double b, SpectralMeasure sigma, double fullline_density = 0.0);

  double a_eff() const { return a_eff_; }
  double b() const { return b_; }
  double fullline_density() const { return fullline_; }
  const SpectralMeasure& measure() const { return sigma_; }

  /// The constant a of the regularized integral representation.
  double a_regularized() const { return a_eff_ + sigma_.regularizer_integral(); }

  /// Symmetric evaluation off the axis; Im z < 0 uses conj(M(conj z)).
  cplx operator()(cplx z) const;

  /// Continuation from C+ straight down through the real point Re z: every
  /// density piece whose interior contains Re z contributes its jump. Holomorphic
  /// in each vertical strip between breakpoints. Atoms are poles (AtomCollision).
  /// `skip_atom` drops one atom from the sum.
  cplx continued(cplx z, std::optional<double> skip_atom = std::nullopt) const;
  Jet continued_jet(cplx z, int order, std::optional<double> skip_atom = std::nullopt) const;

  /// Largest window around real x with no breakpoint except `designated_atom`.
  /// Throws AmbiguousBoundary when x is itself a piece endpoint.
  ExtensionWindow window_around(double x, std::optional<double> designated_atom = std::nullopt) const;

  /// The same function with the atom at x removed.
  NevanlinnaFunction without_atom_at(double x) const;

  /// sigma([t1, t2]) including the full-line density part.
  double mass_on(double t1, double t2) const;

 private:
  double a_eff_ = 0.0;
  double b_ = 0.0;
  double fullline_ = 0.0;
  SpectralMeasure sigma_;
};

cplx eval_M(const NevanlinnaFunction& m, cplx z);

/// Continuation inside `window` union C+. DomainError outside, AtomCollision at
/// the designated atom.
cplx eval_M_extended(const NevanlinnaFunction& m, const ExtensionWindow& window, cplx z);

struct InversionResult {
  double value = 0.0;
  double residual = 0.0;
};

/// Default epsilon ladder 0.1 * 2^-k, k = 0..8.
std::vector<double> default_epsilon_sequence();

/// lim_{eps -> 0} (1/pi) int_{t1}^{t2} Im M(t + i eps) dt by quadrature and
/// Richardson extrapolation over the ladder. Throws NoConvergence when the last
/// two extrapolants differ by more than `tolerance`.
InversionResult stieltjes_invert(const NevanlinnaFunction& m, double t1, double t2,
                                 std::span<const double> eps = {}, double tolerance = 1e-4);

/// Pick matrix [(f(z_i) - conj f(z_j)) / (z_i - conj z_j)] from function values.
Eigen::MatrixXcd pick_matrix(std::span<const cplx> points, std::span<const cplx> values);

/// Ascending eigenvalues of a Hermitian matrix.
Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& h);

/// Halton points in the box [x0, x1] x [y0, y1] (bases 2 and 3, skipping index 0).
std::vector<cplx> halton_points(std::size_t n, double x0, double x1, double y0, double y1);

}  // namespace gznt
