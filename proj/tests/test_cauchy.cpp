#include <random>

#include "doctest.h"
#include "gznt/cauchy.hpp"
#include "gznt/errors.hpp"
#include "oracles.hpp"

using namespace gznt;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

double close(cplx a, cplx b) { return std::abs(a - b); }

}  // namespace

TEST_CASE("cauchy_poly closed forms") {
  const Polynomial one({1.0}), t({0.0, 1.0});
  CHECK(close(cauchy_poly(-1, 1, one, kI), kI * kPi / 2.0) < 1e-14);
  CHECK(close(cauchy_poly(-1, 1, one, 2.0), std::log(1.0 / 3.0)) < 1e-14);
  CHECK(close(cauchy_poly(-1, 1, t, kI), 2.0 - kPi / 2.0) < 1e-14);
  CHECK_THROWS_AS(cauchy_poly(-1, 1, one, 0.5), DomainError);
  CHECK_THROWS_AS(cauchy_poly(-1, 1, one, 1.0), DomainError);
}

TEST_CASE("cauchy_poly agrees with brute-force quadrature on a grid") {
  const Polynomial p({0.3, -0.2, 1.1, 0.0, 0.4});
  auto phi = [&](double x) { return p(x); };
  double worst = 0.0;
  int count = 0;
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      const double x = -3.0 + 6.0 * i / 9.0;
      const double y = (j < 5 ? -1.0 : 1.0) * (0.01 + 0.5 * (j % 5));
      const cplx z(x, y);
      const cplx ref = oracle::cauchy(phi, -1.0, 1.0, z);
      worst = std::max(worst, close(cauchy_poly(-1, 1, p, z), ref) / (1.0 + std::abs(ref)));
      ++count;
    }
  }
  CHECK(count == 100);
  CHECK(worst < 1e-9);
}

TEST_CASE("Laurent branch matches the recurrence at the switch radius") {
  const Polynomial p({1.0, 2.0, -1.0, 0.5, 0.25, 3.0});
  for (double arg : {0.1, 1.0, 2.0, 3.0}) {
    const cplx zin = std::polar(1.999999, arg), zout = std::polar(2.000001, arg);
    CHECK(close(cauchy_poly(-1, 1, p, zin), cauchy_poly(-1, 1, p, zout)) < 1e-5);
  }
  // far away: -mass/z
  CHECK(close(cauchy_poly(-1, 1, Polynomial({1.0}), 1e8 * kI), -2.0 / (1e8 * kI)) < 1e-20);
}

TEST_CASE("cauchy_quad") {
  const Polynomial one({1.0}), sq({0.0, 0.0, 1.0});
  auto r = cauchy_quad([](double) { return 1.0; }, -1, 1, kI);
  CHECK(close(r.value, kI * kPi / 2.0) < 1e-9);
  r = cauchy_quad([](double t) { return t * t; }, -1, 1, 2.0 * kI);
  CHECK(close(r.value, cauchy_poly(-1, 1, sq, 2.0 * kI)) < 1e-9);
  const cplx near(0.001, 1e-6);
  r = cauchy_quad([](double) { return 1.0; }, -1, 1, near);
  CHECK(close(r.value, cauchy_poly(-1, 1, one, near)) < 1e-6);
  CHECK(r.error_estimate <= 1e-10 * (1.0 + std::abs(r.value)));
}

TEST_CASE("cauchy_extended") {
  const Polynomial one({1.0});
  CHECK(close(cauchy_extended(-1, 1, one, 0.0), kI * kPi) < 1e-14);
  const cplx up = cauchy_extended(-1, 1, one, 0.5 * kI);
  CHECK(close(up, 2.0 * std::atan(2.0) * kI) < 1e-13);  // Log((1-z)/(-1-z)) at z = i/2
  CHECK(up.imag() == Approx(2.2143).epsilon(1e-4));
  const cplx down = cauchy_extended(-1, 1, one, -0.5 * kI);
  CHECK(down.imag() == Approx(4.0689).epsilon(1e-4));
  CHECK(close(down, oracle::cauchy_continued_unit([](cplx) { return cplx(1.0); }, -0.5 * kI, 2.0)) < 1e-10);
  CHECK_THROWS_AS(cauchy_extended(-1, 1, one, cplx(2.0, -0.1)), DomainError);
  CHECK_THROWS_AS(cauchy_extended(-1, 1, one, cplx(1.0, -0.1)), DomainError);
}

TEST_CASE("continued sheet matches a deformed contour") {
  const Polynomial p({0.5, 0.0, 1.0, 0.3});
  auto phi = [&](cplx z) { return p(z); };
  for (cplx z : {cplx(0.3, -0.4), cplx(-0.8, -0.2), cplx(0.1, -1.2), cplx(0.95, -0.05)}) {
    const cplx ref = oracle::cauchy_continued_unit(phi, z, 3.0);
    CHECK(close(cauchy_extended(-1, 1, p, z), ref) < 1e-9 * (1.0 + std::abs(ref)));
    CHECK(close(cauchy_jet(-1, 1, p, z, 0, Sheet::Continued).value(), ref) < 1e-9 * (1.0 + std::abs(ref)));
  }
}

TEST_CASE("jump identity and continuity across the axis") {
  std::mt19937 gen(7);
  std::uniform_real_distribution<double> ux(-2.9, 0.9), uy(-2.0, -0.01), uc(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const Polynomial p({1.0 + std::abs(uc(gen)), uc(gen), 1.0, uc(gen)});
    const cplx z(ux(gen), uy(gen));
    const cplx jump = cauchy_extended(-3, 1, p, z) - std::conj(cauchy_extended(-3, 1, p, std::conj(z)));
    const cplx expect = 2.0 * kPi * kI * p(z);
    CHECK(close(jump, expect) <= 1e-10 * std::max(1.0, std::abs(expect)));
  }
  const Polynomial p({1.0, 0.0, 2.0});
  for (double x : {-0.9, -0.3, 0.0, 0.4, 0.85}) {
    const cplx mid = cauchy_extended(-1, 1, p, x);
    const cplx a = cauchy_extended(-1, 1, p, cplx(x, 1e-6)), b = cauchy_extended(-1, 1, p, cplx(x, -1e-6));
    CHECK(close(a, b) <= 1e-4 * (1.0 + std::abs(mid)));
    CHECK(close(a, mid) <= 1e-4 * (1.0 + std::abs(mid)));
  }
}

TEST_CASE("Herglotz sign of the transform") {
  std::mt19937 gen(11);
  std::uniform_real_distribution<double> ux(-4, 4), uy(1e-3, 5);
  const Polynomial p({0.0, 0.0, 1.0, 0.0, 2.0});
  for (int k = 0; k < 200; ++k) CHECK(cauchy_poly(-1, 2, p, cplx(ux(gen), uy(gen))).imag() > 0.0);
}

TEST_CASE("cauchy_jet derivatives") {
  const Polynomial p({0.2, 1.0, 0.0, -0.5, 1.0});
  auto phi = [&](double t) { return p(t); };
  for (cplx z : {cplx(0.2, 0.3), cplx(3.5, 0.1), cplx(-0.4, -0.6)}) {
    const Sheet sheet = Sheet::Continued;
    const Jet j = cauchy_jet(-1, 1, p, z, 4, sheet);
    if (z.imag() > 0) {
      // c_k = int phi/(t-z)^{k+1}
      for (int k = 0; k <= 4; ++k) {
        auto f = [&](double t) { return cplx(phi(t)) / std::pow(cplx(t) - z, k + 1); };
        const cplx ref = oracle::integrate(f, -1, 1, 400);
        CHECK(close(j[k], ref) < 1e-9 * (1.0 + std::abs(ref)));
      }
    } else {
      // trapezoid Cauchy integral of the continued value on a small circle
      for (int k = 0; k <= 4; ++k) {
        const int n = 64;
        const double r = 0.05;
        cplx acc = 0.0;
        for (int m = 0; m < n; ++m) {
          const cplx w = std::polar(r, 2 * kPi * m / n);
          acc += cauchy_extended(-1, 1, p, z + w) / std::pow(w, k);
        }
        const cplx ref = acc / static_cast<double>(n);
        CHECK(close(j[k], ref) < 1e-9 * (1.0 + std::abs(ref)));
      }
    }
  }
  // Laurent branch of the jet
  const Jet far = cauchy_jet(-1, 1, p, cplx(5.0, 1.0), 3, Sheet::Principal);
  const Jet near = cauchy_jet(-1, 1, p, cplx(5.0, 1.0) * 0.39, 3, Sheet::Principal);
  CHECK(std::isfinite(std::abs(near[3])));
  for (int k = 0; k <= 3; ++k) {
    auto f = [&](double t) { return cplx(phi(t)) / std::pow(cplx(t) - cplx(5.0, 1.0), k + 1); };
    CHECK(close(far[k], oracle::integrate(f, -1, 1, 50)) < 1e-12);
  }
}

TEST_CASE("fullline_constant") {
  CHECK(close(fullline_constant(kI, 1 / kPi), kI) < 1e-15);
  CHECK(close(fullline_constant(-kI, 1 / kPi), -kI) < 1e-15);
  CHECK_THROWS_AS(fullline_constant(1.0, 1 / kPi), DomainError);
  // truncated regularized integral on [-L, L] plus the analytic tail
  const cplx z(5.0, 2.0);
  const double L = 200.0;
  auto f = [&](double t) { return (1.0 / (cplx(t) - z) - t / (t * t + 1.0)) / kPi; };
  // the integrand behaves like z/t^2 at both ends, so each tail adds z/L
  const cplx tail = 2.0 * z / L / kPi;
  const cplx trunc = oracle::integrate(f, -L, L, 4000);
  CHECK(close(trunc + tail, fullline_constant(z, 1 / kPi)) < 1e-4);
}
