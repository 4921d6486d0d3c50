#pragma once

#include <complex>
#include <optional>

#include "gznt/measures.hpp"
#include "gznt/n1.hpp"
#include "json.hpp"

namespace gznt {

/// int dsigma(t)/(t - alpha)^k for real alpha, with an optional full-line density c dt
/// (which always diverges). nullopt means the integral diverges; that is decided from
/// the vanishing order of sigma at alpha, the value from exact polynomial and Cauchy
/// transform formulas. AmbiguousBoundary when alpha is an endpoint of a piece.
std::optional<double> moment_integral(const SpectralMeasure& sigma, double alpha, int k, double fullline = 0.0);

/// lim Q(z)/(z - alpha)^2 as z -> alpha along alpha + i h, Richardson-extrapolated over
/// h = 0.1 * 2^-k, k = 0..10. Needs a ZeroOnly factor with real alpha and no atom there.
/// NoConvergence when the last two extrapolants differ by more than 1e-6 (1 + |limit|).
cplx gamma_alpha(const N1Function& q);

enum class RealZeroClass { A, B, C, D, E };

const char* class_name(RealZeroClass c);

struct ClassificationEvidence {
  double alpha = 0.0;
  double delta = 0.0;          // mass of sigma at alpha
  std::optional<cplx> gamma;   // absent for class A
  std::optional<double> moment2;  // nullopt: divergent
  std::optional<double> moment4;
  double tol = 0.0;
  RealZeroClass decided = RealZeroClass::A;
};

/// Decision table A: delta > 0; B: moment2 divergent; C: gamma real and nonzero;
/// D: gamma = 0, moment4 divergent; E: gamma = 0, moment4 finite.
/// Zero tests use tol = 1e-8 * scale; values within (tol, 10 tol] are Unclassifiable,
/// as is a nonreal gamma next to a finite moment2.
ClassificationEvidence classify(const N1Function& q);

nlohmann::json evidence_json(const ClassificationEvidence& e);

}  // namespace gznt
