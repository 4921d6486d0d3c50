#include "gznt/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "gznt/errors.hpp"

namespace gznt {

namespace {

constexpr double kPi = std::numbers::pi;

// G = Q~ in the finite chart, G = -1/Q~ = -D/N in the inverted one.
class ChartFunction {
 public:
  ChartFunction(const N1Function& q, Chart chart) : q_(q), chart_(chart) {}

  Jet jet(cplx z, int order) const {
    constexpr int extra = 2;
    const Jet n = q_.numerator_jet(z, order + extra), d = q_.denominator_jet(z, order + extra);
    Jet g = chart_ == Chart::Finite ? Jet::divide(n, d) : Jet::divide(d, n) * cplx(-1.0);
    if (g.order() < order) throw PoleHit("chart function has a pole at the expansion point");
    return g.truncated(order);
  }

 private:
  const N1Function& q_;
  Chart chart_;
};

struct NewtonResult {
  cplx z;
  int iterations = 0;
  bool ok = false;
  cplx g1;  // G' at the result
};

NewtonResult newton(const ChartFunction& g, cplx z, double target, int max_iter = 30) {
  NewtonResult out{z, 0, false, 0.0};
  try {
    for (int it = 1; it <= max_iter; ++it) {
      const Jet j = g.jet(z, 1);
      const cplx r = j[0] - target;
      if (j[1] == 0.0) return out;
      const cplx dz = r / j[1];
      z -= dz;
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return out;
      out.iterations = it;
      if (std::abs(dz) <= 1e-13 * (1.0 + std::abs(z)) || std::abs(r) <= 2e-16 * (1.0 + std::abs(target))) {
        const Jet f = g.jet(z, 1);
        out.z = z;
        out.g1 = f[1];
        out.ok = std::abs(f[0] - target) <= 1e-11 * (1.0 + std::abs(target));
        return out;
      }
    }
  } catch (const Error&) {
    out.ok = false;
  }
  return out;
}

// Zero of G' by Schroeder's iteration, robust to a multiple zero.
std::optional<cplx> locate_critical(const ChartFunction& g, cplx z) {
  try {
    for (int it = 0; it < 60; ++it) {
      const Jet j = g.jet(z, 3);
      const cplx d1 = j[1], d2 = 2.0 * j[2], d3 = 6.0 * j[3];
      const cplx den = d2 * d2 - d1 * d3;
      if (den == 0.0) return d1 == 0.0 ? std::optional<cplx>(z) : std::nullopt;
      const cplx dz = d1 * d2 / den;
      z -= dz;
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return std::nullopt;
      if (std::abs(dz) <= 1e-15 * (1.0 + std::abs(z))) return z;
    }
  } catch (const Error&) {
  }
  return std::nullopt;
}

double angular_gap(double a, double b) {
  double d = std::fmod(std::abs(a - b), 2 * kPi);
  return d > kPi ? 2 * kPi - d : d;
}

bool is_real(cplx z) { return std::abs(z.imag()) <= 1e-10 * (1.0 + std::abs(z)); }

// A real root is admissible when G' <= 0 there (G' has the sign of Q~' in both charts).
bool admissible(cplx z, cplx g1) {
  if (!is_real(z)) return z.imag() > 0.0;
  return g1.real() <= 1e-9 * (1.0 + std::abs(g1));
}

class Tracker {
 public:
  Tracker(const N1Function& q, const TrackOptions& opt, std::vector<ContactEvent>& events)
      : q_(q), opt_(opt), events_(events) {}

  struct State {
    cplx z;
    Chart chart = Chart::Finite;
    double p = 0.0;
    bool critical = false;
  };

  State anchor(const TauParam& tau, cplx z) {
    State s;
    s.z = z;
    s.chart = chart_for(tau);
    s.p = chart_coordinate(tau, s.chart);
    const ChartFunction g(q_, s.chart);
    const Jet j = g.jet(z, 3);
    const double scale = 1.0 + std::abs(j[2]) + std::abs(j[3]);
    s.critical = std::abs(j[1]) <= 1e-10 * scale;
    if (is_real(z)) record_event(tau, z.real());
    return s;
  }

  void advance(State& s, const TauParam& target, int direction) {
    hstep_ = opt_.max_step;
    const Chart ct = chart_for(target);
    const double pt = chart_coordinate(target, ct);
    for (int guard = 0; guard < 4; ++guard) {
      if (s.chart == ct && (pt - s.p) * direction >= 0.0) {
        advance_in_chart(s, pt, direction);
        return;
      }
      // run to the chart boundary and switch
      const double boundary = static_cast<double>(direction);
      advance_in_chart(s, boundary, direction);
      switch_chart(s, -boundary);
    }
    throw PathLost("tracker: could not reach tau = " + target.to_string());
  }

 private:
  void switch_chart(State& s, double new_p) {
    const Chart next = s.chart == Chart::Finite ? Chart::Inverted : Chart::Finite;
    const ChartFunction g(q_, next);
    const NewtonResult r = newton(g, s.z, new_p);
    if (!r.ok || std::abs(r.z - s.z) > 1e-9 * (1.0 + std::abs(s.z))) {
      std::ostringstream os;
      os << "tracker: charts disagree at |tau| = 1 near z = " << s.z;
      throw PathLost(os.str());
    }
    s.z = r.z;
    s.chart = next;
    s.p = new_p;
  }

  TauParam tau_of(const State& s, double p) const { return tau_from_chart(p, s.chart); }

  static bool same_tau(const TauParam& a, const TauParam& b) {
    if (a.is_infinite() || b.is_infinite()) return angular_gap(a.angle(), b.angle()) <= 1e-12;
    return std::abs(a.value() - b.value()) <= 1e-9 * (1.0 + std::abs(a.value()));
  }

  void record_event(const TauParam& tau, double x) {
    if (auto atom = q_.split_atom(); atom && std::abs(x - *atom) <= 1e-12 * (1.0 + std::abs(x))) x = *atom;
    ContactEvent* twin = nullptr;
    for (auto& e : events_)
      if (same_tau(e.tau_star, tau) && std::abs(e.z0.real() - x) <= 1e-9 * (1.0 + std::abs(x))) twin = &e;
    if (twin && twin->report) return;
    ContactEvent ev;
    ev.tau_star = tau;
    ev.z0 = x;
    try {
      ev.report = local_case(q_, x, tau);
    } catch (const Error& e) {
      ev.note = e.what();
    }
    if (twin) {
      if (ev.report) *twin = std::move(ev);
      return;
    }
    events_.push_back(std::move(ev));
  }

  void lose(const State& s, const char* why) const {
    std::ostringstream os;
    os << "tracker: " << why << " at tau = " << tau_of(s, s.p).to_string() << ", alpha = " << s.z;
    throw PathLost(os.str());
  }

  void advance_in_chart(State& s, double pt, int direction) {
    const ChartFunction g(q_, s.chart);
    int halvings = 0;
    while ((pt - s.p) * direction > 0.0) {
      const double remaining = std::abs(pt - s.p);
      const bool last = hstep_ * (1.0 + 1e-6) >= remaining;
      const double h = direction * (last ? remaining : hstep_);
      bool ok = s.critical ? puiseux_step(g, s, last ? pt : s.p + h) : regular_step(g, s, h, pt, last);
      if (ok) {
        halvings = 0;
        continue;
      }
      hstep_ = std::min(hstep_, remaining) * 0.5;
      if (++halvings > opt_.max_halvings || hstep_ < 1e-14 * (1.0 + std::abs(s.p)))
        lose(s, std::abs(s.z) > 1e6 ? "the zero runs off to infinity" : "corrector failed after repeated step halving");
    }
    s.p = pt;
  }

  bool regular_step(const ChartFunction& g, State& s, double h, double pt, bool last) {
    Jet j;
    try {
      j = g.jet(s.z, 3);
    } catch (const Error&) {
      lose(s, "chart function not evaluable");
    }
    const cplx g1 = j[1], g2 = j[2];
    if (g1 == 0.0) {
      s.critical = true;
      return true;
    }
    if (try_critical(g, s, j, h, pt)) return true;

    const double target = last ? pt : s.p + h;
    const double dh = target - s.p;
    const cplx delta = dh / g1 - g2 * dh * dh / (g1 * g1 * g1);
    const cplx pred = s.z + delta;
    const NewtonResult r = newton(g, pred, target);
    if (!r.ok || r.iterations > opt_.slow_newton) return false;
    if (std::abs(r.z - pred) > 0.5 * std::abs(delta) + 1e-12 * (1.0 + std::abs(s.z))) return false;
    if (!admissible(r.z, r.g1)) return false;

    detect_touch(g, s, g1, r, target);
    if (is_real(r.z) != is_real(s.z)) record_event(tau_of(s, is_real(r.z) ? target : s.p), (is_real(r.z) ? r.z : s.z).real());
    s.z = r.z;
    s.p = target;
    if (r.iterations <= opt_.fast_newton) hstep_ = std::min(opt_.max_step, 2.0 * hstep_);
    return true;
  }

  // A critical value of G ahead within this step: jump onto the critical point.
  bool try_critical(const ChartFunction& g, State& s, const Jet& j, double h, double pt) {
    const cplx g1 = j[1], g2 = j[2];
    if (g2 == 0.0) return false;
    const cplx dc = -g1 * g1 / (4.0 * g2);
    const int d = h > 0 ? 1 : -1;
    if (!(std::abs(dc.imag()) <= 0.1 * std::abs(dc) && dc.real() * d > 0.0 && std::abs(dc) <= 2.0 * std::abs(h)))
      return false;
    auto zc = locate_critical(g, s.z - g1 / (2.0 * g2));
    if (!zc || !(std::abs(zc->imag()) <= 1e-8 * (1.0 + std::abs(*zc)))) return false;
    const cplx x = zc->real();
    Jet jc;
    try {
      jc = g.jet(x, 3);
    } catch (const Error&) {
      return false;
    }
    const double pc = jc[0].real();
    if (std::abs(jc[0].imag()) > 1e-8 * (1.0 + std::abs(pc))) return false;
    if ((pc - s.p) * d < 0.0 || (pc - pt) * d > 0.0) return false;
    if (std::abs(x - s.z) > 10.0 * std::abs(g1 / g2) + 1e-8) return false;
    s.z = x;
    s.p = pc;
    s.critical = true;
    record_event(tau_of(s, pc), x.real());
    return true;
  }

  bool puiseux_step(const ChartFunction& g, State& s, double target) {
    Jet jc;
    try {
      jc = g.jet(s.z, 3);
    } catch (const Error&) {
      lose(s, "chart function not evaluable at a critical point");
    }
    const double dh = target - s.p;
    const cplx g2 = jc[2], g3 = jc[3];
    std::vector<cplx> roots;
    double aim;
    if (std::abs(g2) > 1e-6 * std::max(1.0, std::abs(g3))) {
      double theta0 = std::arg(g2);
      if (theta0 < 0.0) theta0 = theta0 > -kPi / 2 ? 0.0 : kPi;
      aim = dh > 0 ? kPi - theta0 / 2 : (kPi - theta0) / 2;
      const cplx w = std::sqrt(cplx(dh) / g2);
      roots = {w, -w};
    } else {
      aim = dh > 0 ? 2 * kPi / 3 : kPi / 3;
      const cplx w = std::pow(cplx(dh) / g3, 1.0 / 3.0);
      for (int k = 0; k < 3; ++k) roots.push_back(w * std::polar(1.0, 2 * kPi * k / 3));
    }
    std::sort(roots.begin(), roots.end(),
              [&](cplx a, cplx b) { return angular_gap(std::arg(a), aim) < angular_gap(std::arg(b), aim); });
    for (cplx w : roots) {
      const cplx pred = s.z + w;
      const NewtonResult r = newton(g, pred, target);
      if (!r.ok || r.iterations > opt_.slow_newton + 4) continue;
      if (std::abs(r.z - pred) > 0.5 * std::abs(w)) continue;
      if (!admissible(r.z, r.g1)) continue;
      if (angular_gap(std::arg(r.z - s.z), aim) > kPi / 4) continue;
      s.z = r.z;
      s.p = target;
      s.critical = false;
      return true;
    }
    return false;
  }

  // Case-1 tangency between two off-axis samples: Im(1/G') changes sign where Im alpha
  // has a local minimum; a minimum at height zero is a contact.
  void detect_touch(const ChartFunction& g, const State& s, cplx g1_old, const NewtonResult& r, double target) {
    if (is_real(s.z) || is_real(r.z)) return;
    double va = (1.0 / g1_old).imag(), vb = (1.0 / r.g1).imag();
    if (!(va * vb < 0.0)) return;
    double a = s.p, b = target;
    cplx za = s.z, zb = r.z, zm = r.z;
    double pm = target;
    for (int it = 0; it < 80 && std::abs(b - a) > 1e-15 * (1.0 + std::abs(a)); ++it) {
      pm = 0.5 * (a + b);
      const NewtonResult m = newton(g, za + (zb - za) * ((pm - a) / (b - a)), pm);
      if (!m.ok) return;
      zm = m.z;
      const double vm = (1.0 / m.g1).imag();
      if (vm * va > 0.0) {
        a = pm;
        za = m.z;
        va = vm;
      } else {
        b = pm;
        zb = m.z;
      }
    }
    if (std::abs(zm.imag()) > 1e-8 * (1.0 + std::abs(zm))) return;
    record_event(tau_of(s, pm), zm.real());
  }

  const N1Function& q_;
  TrackOptions opt_;
  std::vector<ContactEvent>& events_;
  double hstep_ = 0.1;
};

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Chart chart_for(const TauParam& tau) {
  return (!tau.is_infinite() && std::abs(tau.value()) <= 1.0) ? Chart::Finite : Chart::Inverted;
}

double chart_coordinate(const TauParam& tau, Chart chart) {
  if (chart == Chart::Finite) return tau.value();
  return tau.is_infinite() ? 0.0 : -1.0 / tau.value();
}

TauParam tau_from_chart(double p, Chart chart) {
  if (chart == Chart::Finite) return TauParam(p);
  return p == 0.0 ? TauParam::infinity() : TauParam(-1.0 / p);
}

const char* chart_name(Chart c) { return c == Chart::Finite ? "tau" : "s"; }

Schedule Schedule::linear(double tau_min, double tau_max, int steps) {
  if (steps < 1) throw DomainError("schedule: need at least one step");
  if (!(tau_min <= tau_max)) throw DomainError("schedule: tau_min must not exceed tau_max");
  Schedule s;
  for (int k = 0; k <= steps; ++k) {
    const double t = k == steps ? tau_max : tau_min + (tau_max - tau_min) * k / steps;
    s.taus.emplace_back(t);
  }
  return s;
}

Schedule Schedule::circle(int steps) {
  if (steps < 2) throw DomainError("schedule: a full circle needs at least two steps");
  Schedule s;
  s.full_circle = true;
  for (int k = 0; k <= steps; ++k) {
    if (k == 0 || k == steps) {
      s.taus.push_back(TauParam::infinity());
    } else if (2 * k == steps) {
      s.taus.emplace_back(0.0);
    } else {
      s.taus.push_back(TauParam::from_angle(-kPi / 2 + kPi * k / steps));
    }
  }
  return s;
}

cplx solve_alpha(const N1Function& q, const TauParam& tau, cplx guess) {
  const Chart chart = chart_for(tau);
  const double p = chart_coordinate(tau, chart);
  const ChartFunction g(q, chart);
  cplx z = guess;
  bool converged = false;
  cplx g1 = 0.0;
  for (int it = 0; it < 100 && !converged; ++it) {
    Jet j;
    try {
      j = g.jet(z, 1);
    } catch (const Error& e) {
      throw NoConvergence(std::string("solve_alpha: ") + e.what());
    }
    const cplx r = j[0] - p;
    if (j[1] == 0.0) throw NoConvergence("solve_alpha: vanishing derivative");
    cplx dz = r / j[1];
    // damping: shrink until the residual does not grow
    for (int k = 0; k < 30; ++k) {
      try {
        if (std::abs(g.jet(z - dz, 0)[0] - p) <= std::abs(r)) break;
      } catch (const Error&) {
      }
      dz *= 0.5;
    }
    z -= dz;
    if (std::abs(dz) <= 1e-14 * (1.0 + std::abs(z)) || std::abs(r) <= 1e-16 * (1.0 + std::abs(p))) {
      converged = true;
      g1 = g.jet(z, 1)[1];
    }
  }
  if (!converged) throw NoConvergence("solve_alpha: no convergence within 100 iterations");
  if (z.imag() < -1e-8 * (1.0 + std::abs(z))) {
    std::ostringstream os;
    os << "solve_alpha: root " << z << " lies in the lower half-plane";
    throw NoConvergence(os.str());
  }
  if (is_real(z)) {
    const double scale = 1.0 + std::abs(g1);
    if (std::abs(g1) > 1e-7 * scale) {
      if (g1.real() > 1e-9 * scale) {
        std::ostringstream os;
        os << "solve_alpha: real root " << z.real() << " has positive derivative";
        throw NotNonpositiveType(os.str());
      }
    } else {
      try {
        (void)local_case(q, z.real(), tau);
      } catch (const Unclassifiable& e) {
        throw NotNonpositiveType(std::string("solve_alpha: degenerate real root rejected: ") + e.what());
      }
    }
  }
  return z;
}

ZeroPath track_path(const N1Function& q, const Schedule& schedule, const TrackOptions& options) {
  if (schedule.taus.empty()) throw DomainError("track_path: empty schedule");
  ZeroPath path;
  path.full_circle = schedule.full_circle;
  Tracker tracker(q, options, path.events);
  std::vector<std::optional<PathSample>> out(schedule.taus.size());

  auto sample = [](const TauParam& t, const Tracker::State& s) {
    return PathSample{t, s.z, is_real(s.z) ? SampleFlag::Real : SampleFlag::Upper, s.chart};
  };
  auto sweep = [&](Tracker::State s, const std::vector<std::size_t>& order, int direction) {
    for (std::size_t k : order) {
      tracker.advance(s, schedule.taus[k], direction);
      out[k] = sample(schedule.taus[k], s);
    }
  };

  const auto& alpha = q.gznt();
  const auto& beta = q.gpnt();
  if (schedule.full_circle) {
    if (!beta) throw DomainError("track_path: a full circle starts at alpha(inf) = beta, which must be finite");
    const auto s0 = tracker.anchor(TauParam::infinity(), *beta);
    std::vector<std::size_t> all(schedule.taus.size());
    for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
    sweep(s0, all, +1);
  } else {
    // ascending schedule assumed (Schedule::linear); split at the anchor
    std::vector<std::size_t> up, down;
    if (alpha) {
      const auto s0 = tracker.anchor(TauParam(0.0), *alpha);
      for (std::size_t k = 0; k < schedule.taus.size(); ++k) (schedule.taus[k].value() >= 0.0 ? up : down).push_back(k);
      std::reverse(down.begin(), down.end());
      sweep(s0, up, +1);
      sweep(s0, down, -1);
    } else {
      if (!beta) throw DomainError("track_path: neither alpha nor beta is finite");
      const auto s0 = tracker.anchor(TauParam::infinity(), *beta);
      for (std::size_t k = 0; k < schedule.taus.size(); ++k) (schedule.taus[k].value() > 0.0 ? up : down).push_back(k);
      std::reverse(up.begin(), up.end());
      sweep(s0, down, +1);  // from -infinity upwards
      sweep(s0, up, -1);    // from +infinity downwards
    }
  }
  for (auto& s : out) path.samples.push_back(*s);
  std::sort(path.events.begin(), path.events.end(),
            [](const ContactEvent& a, const ContactEvent& b) { return a.tau_star.angle() < b.tau_star.angle(); });
  return path;
}

ContactAngles contact_angles(const ZeroPath& path, double z0, double window) {
  const ContactEvent* ev = nullptr;
  for (const auto& e : path.events)
    if (std::abs(e.z0.real() - z0) <= 1e-6 * (1.0 + std::abs(z0)) && (!ev || std::abs(e.z0.real() - z0) < std::abs(ev->z0.real() - z0)))
      ev = &e;
  if (!ev) {
    std::ostringstream os;
    os << "contact_angles: no contact event at " << z0;
    throw InsufficientSamples(os.str());
  }
  const double ts = ev->tau_star.angle();

  struct Fit {
    double sr = 0, st = 0, srr = 0, srt = 0;
    int n = 0;
    void add(double r, double t) {
      sr += r;
      st += t;
      srr += r * r;
      srt += r * t;
      ++n;
    }
    double intercept() const {
      const double den = n * srr - sr * sr;
      if (n < 2 || den == 0.0) return st / n;
      const double slope = (n * srt - sr * st) / den;
      return (st - slope * sr) / n;
    }
  } left, right;

  for (const auto& smp : path.samples) {
    // on the tau circle, so that a contact at tau* = infinity works too
    double dt = smp.tau.angle() - ts;
    if (std::abs(dt) > kPi / 2) dt -= std::copysign(kPi, dt);
    if (!smp.tau.is_infinite() && !ev->tau_star.is_infinite()) dt = smp.tau.value() - ev->tau_star.value();
    if (dt == 0.0 || std::abs(dt) > window) continue;
    const cplx w = smp.alpha - ev->z0;
    const double r = std::abs(w);
    if (r == 0.0) continue;
    double theta = std::arg(w);
    if (theta < 0.0) theta = theta > -kPi / 2 ? 0.0 : kPi;
    (dt < 0 ? left : right).add(r, theta);
  }
  if (left.n < 2 || right.n < 2) {
    std::ostringstream os;
    os << "contact_angles: " << left.n << " samples before and " << right.n << " after tau* within the window " << window;
    throw InsufficientSamples(os.str());
  }
  auto clamp = [](double t) { return std::clamp(t, 0.0, kPi); };
  return {clamp(left.intercept()), clamp(right.intercept()), left.n, right.n};
}

CurveReport curve_diagnostics(const ZeroPath& path) {
  CurveReport rep;
  const auto& s = path.samples;
  rep.min_pairwise_separation = std::numeric_limits<double>::infinity();
  if (s.size() < 2) return rep;
  for (std::size_t k = 0; k + 1 < s.size(); ++k)
    rep.max_chordal_step = std::max(rep.max_chordal_step, chordal_distance(s[k].alpha, s[k + 1].alpha));
  rep.closure_gap = chordal_distance(s.front().alpha, s.back().alpha);

  const std::size_t n = path.full_circle ? s.size() - 1 : s.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 6; j < n; ++j) {
      if (path.full_circle && n - (j - i) < 6) continue;
      rep.min_pairwise_separation = std::min(rep.min_pairwise_separation, chordal_distance(s[i].alpha, s[j].alpha));
    }
  }
  return rep;
}

void write_path_csv(const ZeroPath& path, std::ostream& out) {
  out << "tau,re_alpha,im_alpha,flag,chart\n";
  for (const auto& s : path.samples) {
    out << (s.tau.is_infinite() ? std::string("inf") : format_double(s.tau.value())) << ','
        << format_double(s.alpha.real()) << ',' << format_double(s.alpha.imag()) << ','
        << (s.flag == SampleFlag::Real ? 'R' : 'U') << ',' << chart_name(s.chart) << '\n';
  }
}

nlohmann::json events_json(const ZeroPath& path) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : path.events) {
    nlohmann::json j;
    if (e.tau_star.is_infinite())
      j["tau_star"] = "inf";
    else
      j["tau_star"] = e.tau_star.value();
    j["z0"] = e.z0.real();
    if (e.report) {
      j["case"] = case_name(e.report->kind);
      j["theta0"] = e.report->theta0 ? nlohmann::json(*e.report->theta0) : nlohmann::json(nullptr);
    } else {
      j["case"] = nullptr;
      j["theta0"] = nullptr;
      j["note"] = e.note;
    }
    arr.push_back(j);
  }
  return arr;
}

}  // namespace gznt
