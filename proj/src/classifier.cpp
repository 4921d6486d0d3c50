#include "gznt/classifier.hpp"

#include <cmath>
#include <sstream>

#include "gznt/cauchy.hpp"
#include "gznt/errors.hpp"

namespace gznt {

namespace {

const FactorR& real_zero_factor(const N1Function& q, const char* who) {
  const FactorR& f = q.factor();
  if (f.kind != FactorKind::ZeroOnly)
    throw DomainError(std::string(who) + ": needs a factor with a zero only (pole at infinity)");
  if (!f.alpha || f.alpha->imag() != 0.0) throw DomainError(std::string(who) + ": the zero must be real");
  return f;
}

// int_lo^hi p(t)/(t - a)^k dt when p vanishes to order >= k at a.
double local_piece_moment(const PolynomialDensityPiece& piece, double a, int k) {
  const auto& c = piece.density.shifted(a).coeffs();
  double total = 0.0;
  const double u = piece.hi - a, l = piece.lo - a;
  for (std::size_t j = static_cast<std::size_t>(k); j < c.size(); ++j) {
    const int e = static_cast<int>(j) - k + 1;
    total += c[j] * (std::pow(u, e) - std::pow(l, e)) / e;
  }
  return total;
}

}  // namespace

std::optional<double> moment_integral(const SpectralMeasure& sigma, double alpha, int k, double fullline) {
  if (k < 1) throw DomainError("moment_integral: k must be positive");
  const LocalOrder lo = local_order(sigma, alpha);
  if (fullline > 0.0) return std::nullopt;
  if (lo.kind == LocalOrder::Kind::Atom) return std::nullopt;
  if (lo.kind == LocalOrder::Kind::Order && lo.order < k) return std::nullopt;

  double total = 0.0;
  for (const auto& piece : sigma.pieces) {
    if (piece.contains_interior(alpha)) {
      total += local_piece_moment(piece, alpha, k);
    } else {
      // c_{k-1} of the transform's jet is int p(t)/(t - alpha)^k dt
      total += cauchy_jet(piece.lo, piece.hi, piece.density, alpha, k - 1, Sheet::Principal)[k - 1].real();
    }
  }
  for (const auto& atom : sigma.atoms) total += atom.mass / std::pow(atom.at - alpha, k);
  return total;
}

cplx gamma_alpha(const N1Function& q) {
  const double a = real_zero_factor(q, "gamma_alpha").alpha->real();
  if (mass_at(q.base().measure(), a) > 0.0) throw DomainError("gamma_alpha: sigma has an atom at alpha");
  constexpr int levels = 11;
  std::vector<std::vector<cplx>> t(levels);
  for (int k = 0; k < levels; ++k) {
    const double h = 0.1 * std::ldexp(1.0, -k);
    const cplx dz(0.0, h);
    t[k].push_back(q(a + dz) / (dz * dz));
    for (int j = 1; j <= k; ++j) {
      const double f = std::ldexp(1.0, j) - 1.0;
      t[k].push_back(t[k][j - 1] + (t[k][j - 1] - t[k - 1][j - 1]) / f);
    }
  }
  const cplx best = t[levels - 1][levels - 1];
  const double residual = std::abs(best - t[levels - 2][levels - 2]);
  if (residual > 1e-6 * (1.0 + std::abs(best))) {
    std::ostringstream os;
    os << "gamma_alpha: extrapolation residual " << residual << " at alpha = " << a;
    throw NoConvergence(os.str());
  }
  return best;
}

const char* class_name(RealZeroClass c) {
  static const char* names[] = {"A", "B", "C", "D", "E"};
  return names[static_cast<int>(c)];
}

ClassificationEvidence classify(const N1Function& q) {
  const double a = real_zero_factor(q, "classify").alpha->real();
  const auto& m = q.base();
  const auto& sigma = m.measure();
  ClassificationEvidence ev;
  ev.alpha = a;
  ev.tol = 1e-8 * (1.0 + std::abs(m.a_eff()) + m.b() + sigma.poisson_weight() + m.fullline_density());
  const double tol = ev.tol;

  auto unclassifiable = [&](const std::string& what, double v) {
    std::ostringstream os;
    os << "classify: " << what << " = " << v << " lies in the dead band (" << tol << ", " << 10 * tol << "]";
    throw Unclassifiable(os.str());
  };

  ev.delta = mass_at(sigma, a);
  ev.moment2 = moment_integral(sigma, a, 2, m.fullline_density());
  ev.moment4 = moment_integral(sigma, a, 4, m.fullline_density());
  if (ev.delta > 10 * tol) {
    ev.decided = RealZeroClass::A;
    return ev;
  }
  if (ev.delta > tol) unclassifiable("delta", ev.delta);
  // an atom at or below tol: discard it for the limit below
  const N1Function q0 = ev.delta > 0.0 ? N1Function(q.factor(), m.without_atom_at(a)) : q;
  if (!ev.moment2) {
    // gamma is only evidence here; the limit may well fail to exist
    try {
      ev.gamma = gamma_alpha(q0);
    } catch (const NoConvergence&) {
    }
    ev.decided = RealZeroClass::B;
    return ev;
  }
  ev.gamma = gamma_alpha(q0);
  const cplx g = *ev.gamma;
  if (std::abs(g.imag()) > tol) {
    std::ostringstream os;
    os << "classify: gamma = " << g << " is not real although int dsigma/(t-alpha)^2 is finite";
    throw Unclassifiable(os.str());
  }
  const double gr = std::abs(g.real());
  if (gr > 10 * tol) {
    ev.decided = RealZeroClass::C;
  } else if (gr > tol) {
    unclassifiable("|gamma|", gr);
  } else {
    ev.decided = ev.moment4 ? RealZeroClass::E : RealZeroClass::D;
  }
  return ev;
}

nlohmann::json evidence_json(const ClassificationEvidence& e) {
  using nlohmann::json;
  auto moment = [](const std::optional<double>& v) { return v ? json(*v) : json("Divergent"); };
  json j;
  j["alpha"] = e.alpha;
  j["delta"] = e.delta;
  j["gamma"] = e.gamma ? json::array({e.gamma->real(), e.gamma->imag()}) : json(nullptr);
  j["moment2"] = moment(e.moment2);
  j["moment4"] = moment(e.moment4);
  j["tol"] = e.tol;
  j["class"] = class_name(e.decided);
  return j;
}

}  // namespace gznt
