#pragma once

#include <complex>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gznt/moebius.hpp"
#include "gznt/n1.hpp"
#include "json.hpp"

namespace gznt {

using cplx = std::complex<double>;

/// Coordinates on the tau circle: p = tau for |tau| <= 1, p = s = -1/tau otherwise.
/// p increases with tau in both charts.
enum class Chart { Finite, Inverted };

Chart chart_for(const TauParam& tau);
double chart_coordinate(const TauParam& tau, Chart chart);
TauParam tau_from_chart(double p, Chart chart);
const char* chart_name(Chart c);

enum class SampleFlag { Upper, Real };

struct PathSample {
  TauParam tau;
  cplx alpha;
  SampleFlag flag = SampleFlag::Upper;
  Chart chart = Chart::Finite;
};

struct ContactEvent {
  TauParam tau_star;
  cplx z0;
  std::optional<CaseReport> report;
  std::string note;  // why the report is missing, if it is
};

struct ZeroPath {
  std::vector<PathSample> samples;
  std::vector<ContactEvent> events;
  bool full_circle = false;
};

/// Scheduled tau values; samples are produced at exactly these points.
struct Schedule {
  std::vector<TauParam> taus;
  bool full_circle = false;

  /// tau_min + k (tau_max - tau_min)/steps, k = 0..steps.
  static Schedule linear(double tau_min, double tau_max, int steps);
  /// psi = -pi/2 + k pi/steps, tau = tan psi; both ends are tau = infinity.
  static Schedule circle(int steps);
};

struct TrackOptions {
  double max_step = 0.1;       // cap on |delta p| per substep
  int max_halvings = 40;       // consecutive step halvings before PathLost
  int slow_newton = 8;         // more iterations than this: halve and retry
  int fast_newton = 3;         // at most this many: double the next step
};

/// Root of Q~(z) = tau near `guess` by damped Newton, in the chart matching tau.
/// Real roots must satisfy Re Q~' <= 0 (NotNonpositiveType otherwise); degenerate
/// real roots are checked with local_case. NoConvergence after 100 iterations or
/// when the root lands in the open lower half-plane.
cplx solve_alpha(const N1Function& q, const TauParam& tau, cplx guess);

/// Continuation of alpha(tau) from alpha(0) = factor alpha (or alpha(inf) = beta when
/// alpha is infinite, and always for full circles, which need a finite beta).
ZeroPath track_path(const N1Function& q, const Schedule& schedule, const TrackOptions& options = {});

struct ContactAngles {
  double left = 0.0;   // tau -> tau* from below
  double right = 0.0;  // tau -> tau* from above
  int samples_left = 0;
  int samples_right = 0;
};

/// arg(alpha - z0) fitted linearly in |alpha - z0| over samples with
/// |tau - tau*| <= window and extrapolated to the contact. InsufficientSamples when
/// no contact event sits at z0 or fewer than two samples lie on a side.
ContactAngles contact_angles(const ZeroPath& path, double z0, double window);

struct CurveReport {
  double max_chordal_step = 0.0;
  double min_pairwise_separation = 0.0;  // infinity when no pair qualifies
  double closure_gap = 0.0;
};

/// Pairs closer than 6 indices (cyclically on a full circle, whose last sample repeats
/// the first) are excluded from the separation minimum.
CurveReport curve_diagnostics(const ZeroPath& path);

void write_path_csv(const ZeroPath& path, std::ostream& out);
nlohmann::json events_json(const ZeroPath& path);

}  // namespace gznt
