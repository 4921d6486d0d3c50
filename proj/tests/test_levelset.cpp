#include <cstdlib>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "gznt/config.hpp"
#include "gznt/errors.hpp"
#include "gznt/levelset.hpp"
#include "gznt/tracker.hpp"

using namespace gznt;

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

N1Function builtin(const std::string& name) { return build(builtin_spec(name)); }

double diagonal(const LevelCurveSet& c) { return std::hypot(c.dx(), c.dy()); }

double nearest_vertex(const LevelCurveSet& c, cplx z) {
  double best = INFINITY;
  for (const auto& line : c.polylines)
    for (cplx v : line) best = std::min(best, std::abs(v - z));
  return best;
}

// root of Q'(x) on (1, 3) for x^2 ln((x-1)/(x+1))
double blog_departure() {
  auto dq = [](double x) { return 2 * x * std::log((x - 1) / (x + 1)) + 2 * x * x / (x * x - 1); };
  double lo = 1.01, hi = 3.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (dq(lo) * dq(mid) <= 0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("i z^2 gives the two diagonal rays") {
  const auto c = trace_im_zero(builtin("Btheta"), {-2, 2, 0, 2}, 400, 200);
  REQUIRE_FALSE(c.polylines.empty());
  double worst = 0.0;
  int counted = 0;
  for (const auto& line : c.polylines)
    for (cplx v : line) {
      if (std::abs(v) <= 2 * diagonal(c)) continue;  // the angle is meaningless at the vertex
      const double a = std::arg(v);
      worst = std::max(worst, std::min(std::abs(a - kPi / 4), std::abs(a - 3 * kPi / 4)));
      ++counted;
    }
  CHECK(counted > 300);
  CHECK(worst <= 0.01);
  const auto d = departure_points(c);
  REQUIRE(d.size() == 1);
  CHECK(std::abs(d[0]) <= c.dx());
}

TEST_CASE("A-simple level set is the circle through 0 and i") {
  const auto q = builtin("A-simple");
  const auto c = trace_im_zero(q, {-1, 1, 0, 1}, 200, 100);
  const double tol = 2 * diagonal(c);
  for (const auto& line : c.polylines)
    for (cplx v : line) CHECK(std::abs(std::abs(v - 0.5 * kI) - 0.5) <= tol);
  for (int k = -400; k <= 400; ++k) {
    const double tau = std::tan(k * kPi / 802);
    const cplx alpha = (-tau + tau * tau * kI) / (tau * tau + 1);
    CHECK(nearest_vertex(c, alpha) <= tol);
  }
  // interior vertices: interpolation error is second order in the cell size
  for (const auto& line : c.polylines)
    for (cplx v : line) {
      if (v.imag() <= 0.05 || v.imag() >= 0.95) continue;
      const double slope = std::abs(q.extended_jet(v, 1)[1]);
      CHECK(std::abs(q(v).imag()) <= c.dx() * slope);
    }
  REQUIRE(c.contacts.size() == 1);
  CHECK(std::abs(c.contacts[0]) <= c.dx());
}

TEST_CASE("B-log departure abscissas") {
  const double xc = blog_departure();
  const auto c = trace_im_zero(builtin("B-log"), {-3, 3, 0, 2}, 1200, 400);
  const auto d = departure_points(c);
  REQUIRE(d.size() == 3);
  CHECK(std::abs(d[0] + d[2]) <= 1e-2);
  CHECK(std::abs(d[2] - xc) <= c.dx());
  CHECK(std::abs(d[0] + xc) <= c.dx());
  CHECK(std::abs(d[1]) <= c.dx());
}

TEST_CASE("refinement moves contacts by less than a coarse cell") {
  const auto q = builtin("B-log");
  const auto coarse = trace_im_zero(q, {-3, 3, 0, 2}, 300, 100);
  const auto fine = trace_im_zero(q, {-3, 3, 0, 2}, 600, 200);
  REQUIRE(coarse.contacts.size() == fine.contacts.size());
  for (std::size_t k = 0; k < coarse.contacts.size(); ++k)
    CHECK(std::abs(coarse.contacts[k] - fine.contacts[k]) <= coarse.dx());
}

TEST_CASE("tracker contacts lie on the traced set") {
  for (const char* name : {"B-log", "C", "D"}) {
    CAPTURE(name);
    const auto q = builtin(name);
    const auto c = trace_im_zero(q, {-3, 3, 0, 2}, 600, 200);
    const auto path = track_path(q, Schedule::linear(-5, 5, 200));
    REQUIRE_FALSE(path.events.empty());
    for (const auto& e : path.events) CHECK(nearest_vertex(c, e.z0) <= 2 * diagonal(c));
  }
}

TEST_CASE("degenerate and invalid boxes") {
  // i (z^2 + 25): Im = x^2 - y^2 + 25 > 0 on the box
  const N1Function positive(FactorR::zero_only(cplx(0, 5)), NevanlinnaFunction(0.0, 0.0, {}, 1.0 / kPi));
  const auto c = trace_im_zero(positive, {-1, 1, 0, 1}, 20, 10);
  CHECK(c.polylines.empty());
  CHECK(departure_points(c).empty());
  CHECK_THROWS_AS(trace_im_zero(builtin("D"), {-1, 1, -0.5, 1}, 10, 10), DomainError);
  CHECK_THROWS_AS(trace_im_zero(builtin("A-simple"), {-1, 1, 0, 2}, 10, 10), DomainError);
  CHECK_THROWS_AS(trace_im_zero(builtin("D"), {1, -1, 0, 1}, 10, 10), DomainError);
}

TEST_CASE("output is independent of the thread count") {
  const auto q = builtin("B-log");
  auto render = [&](const char* threads) {
    setenv("GZNT_LAB_THREADS", threads, 1);
    std::ostringstream os;
    write_curves_csv(trace_im_zero(q, {-3, 3, 0, 2}, 120, 40), os);
    return os.str();
  };
  const std::string one = render("1"), four = render("4");
  unsetenv("GZNT_LAB_THREADS");
  CHECK(one == four);
  CHECK(one.rfind("polyline_id,re,im\n", 0) == 0);

  std::ostringstream svg;
  write_curves_svg(trace_im_zero(q, {-3, 3, 0, 2}, 60, 20), svg);
  CHECK(svg.str().rfind("<svg", 0) == 0);
  CHECK(svg.str().find("<polyline") != std::string::npos);
}
