#include <numbers>

#include "doctest.h"
#include "gznt/classifier.hpp"
#include "gznt/config.hpp"
#include "gznt/errors.hpp"
#include "oracles.hpp"

using namespace gznt;

namespace {

constexpr double kPi = std::numbers::pi;

N1Function builtin(const std::string& name) { return build(builtin_spec(name)); }

SpectralMeasure unit_piece(std::vector<double> c) {
  SpectralMeasure s;
  s.pieces.push_back({-1.0, 1.0, Polynomial(std::move(c))});
  return s;
}

// quadrature over [lo, a - eps] and [a + eps, hi]
double punctured(const std::function<double(double)>& f, double lo, double hi, double a, double eps = 1e-6) {
  auto g = [&](double t) { return cplx(f(t)); };
  double total = 0.0;
  if (lo < a - eps) total += oracle::integrate(g, lo, a - eps).real();
  if (a + eps < hi) total += oracle::integrate(g, a + eps, hi).real();
  return total;
}

}  // namespace

TEST_CASE("moment_integral examples") {
  CHECK(*moment_integral(unit_piece({0, 0, 1}), 0.0, 2) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK_FALSE(moment_integral(unit_piece({1}), 0.0, 2));
  CHECK(*moment_integral(unit_piece({0, 0, 0, 0, 1}), 0.0, 4) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK_FALSE(moment_integral(unit_piece({0, 0, 1}), 0.0, 4));
  CHECK_FALSE(moment_integral(SpectralMeasure{{}, {{0.0, 1.0}}}, 0.0, 2));
  CHECK(*moment_integral(SpectralMeasure{}, 0.0, 2) == 0.0);
  CHECK_FALSE(moment_integral(SpectralMeasure{}, 0.0, 2, 0.1));
  CHECK_THROWS_AS(moment_integral(unit_piece({1}), 1.0, 2), AmbiguousBoundary);
}

TEST_CASE("moment_integral against punctured quadrature") {
  const double a = 0.3;
  // (t - 0.3)^4 (1 + t^2) on [-2, 1], t on [1.5, 3], atom at -3
  const Polynomial p1({0.0081, -0.108, 0.5481, -1.308, 1.54, -1.2, 1.0});
  auto phi1 = [a](double t) { return std::pow(t - a, 4) * (1 + t * t); };
  for (double t : {-1.7, 0.2, 0.9}) REQUIRE(p1(t) == doctest::Approx(phi1(t)).epsilon(1e-12));
  SpectralMeasure s;
  s.pieces.push_back({-2.0, 1.0, p1});
  s.pieces.push_back({1.5, 3.0, Polynomial({0.0, 1.0})});
  s.atoms.push_back({-3.0, 0.7});
  for (int k : {2, 4}) {
    CAPTURE(k);
    const double expect = punctured([&](double t) { return phi1(t) / std::pow(t - a, k); }, -2.0, 1.0, a) +
                          oracle::integrate([&](double t) { return cplx(t / std::pow(t - a, k)); }, 1.5, 3.0).real() +
                          0.7 / std::pow(-3.0 - a, k);
    const auto got = moment_integral(s, a, k);
    REQUIRE(got);
    CHECK(std::abs(*got - expect) <= 1e-4 * std::abs(expect));
  }
  s.pieces[0].density = Polynomial({0.09, -0.6, 1.0});  // (t - 0.3)^2
  CHECK(moment_integral(s, a, 2));
  CHECK_FALSE(moment_integral(s, a, 4));
}

TEST_CASE("gamma_alpha") {
  CHECK(std::abs(gamma_alpha(builtin("C")) - 1.0) < 1e-9);
  CHECK(std::abs(gamma_alpha(builtin("D"))) < 1e-9);
  char buf[64];
  std::snprintf(buf, sizeof buf, "Btheta:%.17g", kPi / 4);
  CHECK(std::abs(gamma_alpha(build(builtin_spec(buf))) - std::polar(1.0, kPi / 4)) < 1e-9);
  // agrees with the continued M at alpha
  for (const char* name : {"B-log", "C", "D", "E"}) {
    const auto q = builtin(name);
    CHECK(std::abs(gamma_alpha(q) - q.extended_jet(0.0, 2)[2]) < 1e-8);
  }
  CHECK_THROWS_AS(gamma_alpha(builtin("A-simple")), DomainError);
  CHECK_THROWS_AS(gamma_alpha(builtin("A-poly")), DomainError);
}

TEST_CASE("classify builtins") {
  const std::pair<const char*, RealZeroClass> table[] = {
      {"A-poly", RealZeroClass::A}, {"B-log", RealZeroClass::B}, {"C", RealZeroClass::C},
      {"D", RealZeroClass::D},      {"E", RealZeroClass::E},     {"Btheta", RealZeroClass::B},
      {"Btheta:0", RealZeroClass::C}, {"Btheta:3.141592653589793", RealZeroClass::C},
  };
  for (const auto& [name, want] : table) {
    CAPTURE(name);
    const auto q = builtin(name);
    const auto ev = classify(q);
    CHECK(ev.decided == want);
    // the defining conjunction holds with a wide margin
    const double t = ev.tol;
    switch (ev.decided) {
      case RealZeroClass::A:
        CHECK(ev.delta >= 10 * t);
        break;
      case RealZeroClass::B:
        CHECK(ev.delta == 0.0);
        CHECK_FALSE(ev.moment2);
        break;
      case RealZeroClass::C:
        CHECK(ev.moment2);
        CHECK(std::abs(ev.gamma->real()) >= 10 * t);
        CHECK(std::abs(ev.gamma->imag()) <= t / 10);
        break;
      case RealZeroClass::D:
      case RealZeroClass::E:
        CHECK(ev.moment2);
        CHECK(std::abs(*ev.gamma) <= t / 10);
        CHECK(bool(ev.moment4) == (ev.decided == RealZeroClass::E));
        break;
    }
    // pairing with the local contact cases
    const auto lc = local_case(q, 0.0).kind;
    switch (ev.decided) {
      case RealZeroClass::A:
        CHECK(lc == LocalCase::Case1);
        break;
      case RealZeroClass::B:
      case RealZeroClass::C:
        CHECK(lc == LocalCase::Case2);
        break;
      default:
        CHECK(lc == LocalCase::Case3);
    }
  }
}

TEST_CASE("classify errors and evidence") {
  CHECK_THROWS_AS(classify(builtin("A-simple")), DomainError);
  // an atom of mass 3e-8 sits inside the dead band
  const N1Function faint(FactorR::zero_only(0.0), NevanlinnaFunction(0.0, 0.0, {{}, {{0.0, 3e-8}}}));
  CHECK_THROWS_AS(classify(faint), Unclassifiable);
  // gamma = 3e-8 as well
  const N1Function small_gamma(FactorR::zero_only(0.0), NevanlinnaFunction(3e-8, 0.0, {}));
  CHECK_THROWS_AS(classify(small_gamma), Unclassifiable);

  const auto j = evidence_json(classify(builtin("D")));
  CHECK(j["class"] == "D");
  CHECK(j["moment4"] == "Divergent");
  CHECK(j["moment2"].get<double>() == doctest::Approx(2.0));
  CHECK(evidence_json(classify(builtin("A-poly")))["gamma"].is_null());
}
