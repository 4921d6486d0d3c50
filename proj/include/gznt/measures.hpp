#pragma once

#include <string>
#include <vector>

#include "gznt/polynomial.hpp"

namespace gznt {

/// Absolutely continuous piece of a spectral measure: density phi on [lo, hi].
struct PolynomialDensityPiece {
  double lo = 0.0;
  double hi = 0.0;
  Polynomial density;

  bool contains_interior(double x) const { return lo < x && x < hi; }
  bool contains_closed(double x) const { return lo <= x && x <= hi; }
};

/// Point mass `mass` at `at`.
struct Atom {
  double at = 0.0;
  double mass = 0.0;
};

/// Compactly supported measure: polynomial density pieces plus finitely many atoms.
struct SpectralMeasure {
  std::vector<PolynomialDensityPiece> pieces;
  std::vector<Atom> atoms;

  bool empty() const { return pieces.empty() && atoms.empty(); }

  /// sigma([t1, t2]) with closed endpoints.
  double mass_on(double t1, double t2) const;

  /// int dsigma(t) / (t^2 + 1).
  double poisson_weight() const;

  /// int t / (t^2 + 1) dsigma(t); converts between the stored and regularized constants.
  double regularizer_integral() const;

  /// The same measure without the atom located at `x` (if any).
  SpectralMeasure without_atom_at(double x) const;
};

enum class ViolationKind {
  BadInterval,
  NonFiniteCoefficient,
  NegativeDensity,
  OverlappingPieces,
  DuplicateAtom,
  NonpositiveMass,
  NonFiniteWeight,
};

struct Violation {
  ViolationKind kind;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool valid() const { return violations.empty(); }
  bool has(ViolationKind kind) const;
};

ValidationReport validate_measure(const SpectralMeasure& sigma);

/// Atom mass at x, zero when no atom sits there.
double mass_at(const SpectralMeasure& sigma, double x);

/// Local behaviour of sigma at a real point.
struct LocalOrder {
  enum class Kind { Atom, Order, NoDensity };
  Kind kind = Kind::NoDensity;
  int order = 0;  // vanishing order of the density, meaningful for Kind::Order

  static LocalOrder atom() { return {Kind::Atom, 0}; }
  static LocalOrder of_order(int p) { return {Kind::Order, p}; }
  static LocalOrder no_density() { return {Kind::NoDensity, 0}; }
};

/// Throws AmbiguousBoundary when x is an endpoint of a density piece.
LocalOrder local_order(const SpectralMeasure& sigma, double x);

}  // namespace gznt
