#include "gznt/nevanlinna.hpp"

#include <algorithm>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "gznt/cauchy.hpp"
#include "gznt/errors.hpp"

namespace gznt {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

[[noreturn]] void atom_hit(double at) {
  std::ostringstream os;
  os << "evaluation at the atom located at " << at;
  throw AtomCollision(os.str());
}

bool skipped(const Atom& a, std::optional<double> skip) { return skip && a.at == *skip; }

}  // namespace

bool ExtensionWindow::contains(cplx z) const {
  if (z.imag() > 0.0) return true;
  return lo < z.real() && z.real() < hi;
}

double ExtensionWindow::margin(double x) const { return std::min(x - lo, hi - x); }

NevanlinnaFunction::NevanlinnaFunction(double a_eff, double b, SpectralMeasure sigma, double fullline_density)
    : a_eff_(a_eff), b_(b), fullline_(fullline_density), sigma_(std::move(sigma)) {
  if (!std::isfinite(a_eff) || !std::isfinite(b) || !std::isfinite(fullline_density))
    throw DomainError("nevanlinna function: non-finite constant");
  if (b < 0.0) throw DomainError("nevanlinna function: b must be nonnegative");
  if (fullline_density < 0.0) throw DomainError("nevanlinna function: full-line density must be nonnegative");
}

cplx NevanlinnaFunction::operator()(cplx z) const {
  if (z.imag() == 0.0) {
    std::ostringstream os;
    os << "M evaluated on the real axis at " << z.real();
    throw DomainError(os.str());
  }
  if (z.imag() < 0.0) return std::conj((*this)(std::conj(z)));
  cplx acc = a_eff_ + b_ * z + fullline_constant(z, fullline_);
  for (const auto& piece : sigma_.pieces) acc += cauchy_poly(piece.lo, piece.hi, piece.density, z);
  for (const auto& atom : sigma_.atoms) acc += atom.mass / (atom.at - z);
  return acc;
}

cplx NevanlinnaFunction::continued(cplx z, std::optional<double> skip_atom) const {
  cplx acc = a_eff_ + b_ * z + kI * kPi * fullline_;
  const double x = z.real();
  for (const auto& piece : sigma_.pieces) {
    if (z.imag() > 0.0) {
      acc += cauchy_poly(piece.lo, piece.hi, piece.density, z);
    } else if (piece.contains_interior(x)) {
      acc += cauchy_extended(piece.lo, piece.hi, piece.density, z);
    } else {
      if (x == piece.lo || x == piece.hi) {
        std::ostringstream os;
        os << "continuation: Re z = " << x << " is an endpoint of [" << piece.lo << ", " << piece.hi << "]";
        throw DomainError(os.str());
      }
      acc += cauchy_poly(piece.lo, piece.hi, piece.density, z);
    }
  }
  for (const auto& atom : sigma_.atoms) {
    if (skipped(atom, skip_atom)) continue;
    if (z == cplx(atom.at, 0.0)) atom_hit(atom.at);
    acc += atom.mass / (atom.at - z);
  }
  return acc;
}

Jet NevanlinnaFunction::continued_jet(cplx z, int order, std::optional<double> skip_atom) const {
  Jet acc = Jet::constant(a_eff_ + kI * kPi * fullline_, order);
  acc += b_ * Jet::variable(z, order);
  for (const auto& piece : sigma_.pieces) {
    if (z.imag() <= 0.0 && (z.real() == piece.lo || z.real() == piece.hi)) {
      std::ostringstream os;
      os << "continuation: Re z = " << z.real() << " is an endpoint of [" << piece.lo << ", " << piece.hi << "]";
      throw DomainError(os.str());
    }
    acc += cauchy_jet(piece.lo, piece.hi, piece.density, z, order, Sheet::Continued);
  }
  for (const auto& atom : sigma_.atoms) {
    if (skipped(atom, skip_atom)) continue;
    if (z == cplx(atom.at, 0.0)) atom_hit(atom.at);
    // m / (a - z) = m / (a - z0) * sum_k (h / (a - z0))^k
    const cplx inv = 1.0 / (atom.at - z);
    Jet j(order);
    cplx pw = atom.mass * inv;
    for (int k = 0; k <= order; ++k, pw *= inv) j[k] = pw;
    acc += j;
  }
  return acc;
}

ExtensionWindow NevanlinnaFunction::window_around(double x, std::optional<double> designated_atom) const {
  ExtensionWindow w;
  w.designated_atom = designated_atom;
  auto consider = [&](double t) {
    if (t < x) w.lo = std::max(w.lo, t);
    if (t > x) w.hi = std::min(w.hi, t);
  };
  for (std::size_t i = 0; i < sigma_.pieces.size(); ++i) {
    const auto& piece = sigma_.pieces[i];
    if (x == piece.lo || x == piece.hi) {
      std::ostringstream os;
      os << "window: " << x << " is an endpoint of the density piece [" << piece.lo << ", " << piece.hi << "]";
      throw AmbiguousBoundary(os.str());
    }
    if (piece.contains_interior(x)) w.host_piece = i;
    consider(piece.lo);
    consider(piece.hi);
  }
  for (const auto& atom : sigma_.atoms) {
    if (designated_atom && atom.at == *designated_atom) continue;
    if (atom.at == x) {
      std::ostringstream os;
      os << "window: " << x << " carries an atom that was not designated";
      throw AtomCollision(os.str());
    }
    consider(atom.at);
  }
  return w;
}

NevanlinnaFunction NevanlinnaFunction::without_atom_at(double x) const {
  return NevanlinnaFunction(a_eff_, b_, sigma_.without_atom_at(x), fullline_);
}

double NevanlinnaFunction::mass_on(double t1, double t2) const {
  return sigma_.mass_on(t1, t2) + fullline_ * (t2 - t1);
}

cplx eval_M(const NevanlinnaFunction& m, cplx z) { return m(z); }

cplx eval_M_extended(const NevanlinnaFunction& m, const ExtensionWindow& window, cplx z) {
  if (!window.contains(z)) {
    std::ostringstream os;
    os << "eval_M_extended: z = " << z << " outside the window (" << window.lo << ", " << window.hi << ") and C+";
    throw DomainError(os.str());
  }
  if (window.designated_atom && z == cplx(*window.designated_atom, 0.0)) atom_hit(*window.designated_atom);
  return m.continued(z);
}

std::vector<double> default_epsilon_sequence() {
  std::vector<double> eps;
  for (int k = 0; k <= 8; ++k) eps.push_back(0.1 * std::ldexp(1.0, -k));
  return eps;
}

InversionResult stieltjes_invert(const NevanlinnaFunction& m, double t1, double t2, std::span<const double> eps,
                                 double tolerance) {
  if (!(t1 < t2)) throw DomainError("stieltjes_invert: need t1 < t2");
  for (const auto& atom : m.measure().atoms)
    if (atom.at == t1 || atom.at == t2) throw DomainError("stieltjes_invert: interval endpoint sits on an atom");

  std::vector<double> ladder = eps.empty() ? default_epsilon_sequence() : std::vector<double>(eps.begin(), eps.end());
  if (ladder.size() < 3) throw DomainError("stieltjes_invert: need at least three epsilon values");

  // Split at every breakpoint inside [t1, t2]: the smoothed integrand has its
  // sharp features there and tanh-sinh clusters nodes at subinterval ends.
  std::vector<double> cuts{t1, t2};
  for (const auto& piece : m.measure().pieces)
    for (double t : {piece.lo, piece.hi})
      if (t1 < t && t < t2) cuts.push_back(t);
  for (const auto& atom : m.measure().atoms)
    if (t1 < atom.at && atom.at < t2) cuts.push_back(atom.at);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  boost::math::quadrature::tanh_sinh<double> rule(15);
  std::vector<double> smoothed;
  for (double e : ladder) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      auto f = [&](double t) { return m(cplx(t, e)).imag(); };
      total += rule.integrate(f, cuts[i], cuts[i + 1], 1e-12);
    }
    smoothed.push_back(total / kPi);
  }

  // Two-point Richardson for an O(eps) error with ratio-2 ladder.
  std::vector<double> extrap;
  for (std::size_t k = 0; k + 1 < smoothed.size(); ++k)
    extrap.push_back(2.0 * smoothed[k + 1] - smoothed[k]);
  const double residual = std::abs(extrap.back() - extrap[extrap.size() - 2]);
  if (!(residual <= tolerance)) {
    std::ostringstream os;
    os << "stieltjes_invert: extrapolation residual " << residual << " exceeds " << tolerance;
    throw NoConvergence(os.str());
  }
  return {extrap.back(), residual};
}

Eigen::MatrixXcd pick_matrix(std::span<const cplx> points, std::span<const cplx> values) {
  if (points.size() != values.size()) throw DomainError("pick_matrix: size mismatch");
  const auto n = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXcd k(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      k(i, j) = (values[i] - std::conj(values[j])) / (points[i] - std::conj(points[j]));
  return k;
}

Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& h) {
  const Eigen::MatrixXcd sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

std::vector<cplx> halton_points(std::size_t n, double x0, double x1, double y0, double y1) {
  auto radical_inverse = [](std::size_t i, std::size_t base) {
    double f = 1.0, r = 0.0;
    while (i > 0) {
      f /= static_cast<double>(base);
      r += f * static_cast<double>(i % base);
      i /= base;
    }
    return r;
  };
  std::vector<cplx> out;
  out.reserve(n);
  for (std::size_t i = 1; i <= n; ++i)
    out.emplace_back(x0 + (x1 - x0) * radical_inverse(i, 2), y0 + (y1 - y0) * radical_inverse(i, 3));
  return out;
}

}  // namespace gznt
