#include "gznt/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gznt/errors.hpp"

namespace gznt {

namespace {

// int_lo^hi p(t) / (t^2 + 1) dt, exactly, by dividing p by t^2 + 1.
double integrate_over_one_plus_square(const Polynomial& p, double lo, double hi) {
  std::vector<double> rem = p.coeffs();
  std::vector<double> quot(rem.size() > 2 ? rem.size() - 2 : 1, 0.0);
  for (std::size_t k = rem.size(); k-- > 2;) {
    const double lead = rem[k];
    quot[k - 2] = lead;
    rem[k] = 0.0;
    rem[k - 2] -= lead;
  }
  const double r0 = rem.empty() ? 0.0 : rem[0];
  const double r1 = rem.size() > 1 ? rem[1] : 0.0;
  return Polynomial(quot).integral(lo, hi) +
         0.5 * r1 * (std::log1p(hi * hi) - std::log1p(lo * lo)) +
         r0 * (std::atan(hi) - std::atan(lo));
}

std::string interval_text(double lo, double hi) {
  std::ostringstream os;
  os << '[' << lo << ", " << hi << ']';
  return os.str();
}

}  // namespace

double SpectralMeasure::mass_on(double t1, double t2) const {
  double total = 0.0;
  for (const auto& piece : pieces) {
    const double a = std::max(t1, piece.lo), b = std::min(t2, piece.hi);
    if (a < b) total += piece.density.integral(a, b);
  }
  for (const auto& atom : atoms)
    if (t1 <= atom.at && atom.at <= t2) total += atom.mass;
  return total;
}

double SpectralMeasure::poisson_weight() const {
  double total = 0.0;
  for (const auto& piece : pieces)
    total += integrate_over_one_plus_square(piece.density, piece.lo, piece.hi);
  for (const auto& atom : atoms) total += atom.mass / (atom.at * atom.at + 1.0);
  return total;
}

double SpectralMeasure::regularizer_integral() const {
  double total = 0.0;
  for (const auto& piece : pieces) {
    std::vector<double> shifted(piece.density.coeffs().size() + 1, 0.0);
    for (std::size_t k = 0; k < piece.density.coeffs().size(); ++k)
      shifted[k + 1] = piece.density.coeffs()[k];
    total += integrate_over_one_plus_square(Polynomial(shifted), piece.lo, piece.hi);
  }
  for (const auto& atom : atoms) total += atom.mass * atom.at / (atom.at * atom.at + 1.0);
  return total;
}

SpectralMeasure SpectralMeasure::without_atom_at(double x) const {
  SpectralMeasure out;
  out.pieces = pieces;
  for (const auto& atom : atoms)
    if (atom.at != x) out.atoms.push_back(atom);
  return out;
}

bool ValidationReport::has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [kind](const Violation& v) { return v.kind == kind; });
}

ValidationReport validate_measure(const SpectralMeasure& sigma) {
  ValidationReport report;
  auto add = [&](ViolationKind kind, std::string msg) {
    report.violations.push_back({kind, std::move(msg)});
  };

  for (const auto& piece : sigma.pieces) {
    const std::string where = interval_text(piece.lo, piece.hi);
    if (!std::isfinite(piece.lo) || !std::isfinite(piece.hi) || !(piece.lo < piece.hi)) {
      add(ViolationKind::BadInterval, "piece " + where + ": endpoints must satisfy lo < hi");
      continue;
    }
    const auto& c = piece.density.coeffs();
    if (!std::all_of(c.begin(), c.end(), [](double v) { return std::isfinite(v); })) {
      add(ViolationKind::NonFiniteCoefficient, "piece " + where + ": non-finite coefficient");
      continue;
    }

    // Chebyshev nodes plus both endpoints.
    const int n = 8 * std::max(0, piece.density.degree()) + 16;
    std::vector<double> nodes{piece.lo, piece.hi};
    const double mid = 0.5 * (piece.lo + piece.hi), half = 0.5 * (piece.hi - piece.lo);
    for (int k = 0; k < n; ++k)
      nodes.push_back(mid + half * std::cos(std::numbers::pi * (k + 0.5) / n));
    std::sort(nodes.begin(), nodes.end());

    const double scale = piece.density.magnitude_at(std::max(std::abs(piece.lo), std::abs(piece.hi)));
    double neg_lo = 0.0, neg_hi = 0.0;
    bool negative = false;
    for (double t : nodes) {
      if (piece.density(t) < -1e-12 * scale) {
        if (!negative) neg_lo = t;
        neg_hi = t;
        negative = true;
      }
    }
    if (negative) {
      std::ostringstream os;
      os << "density negative on " << where << " near [" << neg_lo << ", " << neg_hi << "]";
      add(ViolationKind::NegativeDensity, os.str());
    }
  }

  std::vector<const PolynomialDensityPiece*> order;
  for (const auto& piece : sigma.pieces) order.push_back(&piece);
  std::sort(order.begin(), order.end(), [](auto* a, auto* b) { return a->lo < b->lo; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (order[i - 1]->hi > order[i]->lo)
      add(ViolationKind::OverlappingPieces, "pieces " + interval_text(order[i - 1]->lo, order[i - 1]->hi) +
                                                " and " + interval_text(order[i]->lo, order[i]->hi) +
                                                " overlap");
  }

  for (std::size_t i = 0; i < sigma.atoms.size(); ++i) {
    const auto& atom = sigma.atoms[i];
    std::ostringstream os;
    os << "atom at " << atom.at;
    if (!std::isfinite(atom.at) || !std::isfinite(atom.mass))
      add(ViolationKind::NonFiniteCoefficient, os.str() + ": non-finite value");
    else if (!(atom.mass > 0.0))
      add(ViolationKind::NonpositiveMass, os.str() + ": nonpositive mass");
    for (std::size_t j = 0; j < i; ++j)
      if (sigma.atoms[j].at == atom.at) add(ViolationKind::DuplicateAtom, os.str() + ": duplicate location");
  }

  if (report.valid() && !std::isfinite(sigma.poisson_weight()))
    add(ViolationKind::NonFiniteWeight, "int dsigma/(t^2+1) is not finite");
  return report;
}

double mass_at(const SpectralMeasure& sigma, double x) {
  for (const auto& atom : sigma.atoms)
    if (atom.at == x) return atom.mass;
  return 0.0;
}

LocalOrder local_order(const SpectralMeasure& sigma, double x) {
  if (mass_at(sigma, x) > 0.0) return LocalOrder::atom();
  for (const auto& piece : sigma.pieces) {
    if (x == piece.lo || x == piece.hi) {
      std::ostringstream os;
      os << "point " << x << " is an endpoint of density piece " << interval_text(piece.lo, piece.hi);
      throw AmbiguousBoundary(os.str());
    }
    if (!piece.contains_interior(x)) continue;
    const Polynomial local = piece.density.shifted(x);
    const double scale = piece.density.magnitude_at(x);
    const auto& q = local.coeffs();
    for (std::size_t p = 0; p < q.size(); ++p)
      if (std::abs(q[p]) > 1e-12 * scale) return LocalOrder::of_order(static_cast<int>(p));
    return LocalOrder::no_density();
  }
  return LocalOrder::no_density();
}

}  // namespace gznt
