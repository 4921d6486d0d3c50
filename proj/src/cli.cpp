#include "gznt/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>

#include "gznt/classifier.hpp"
#include "gznt/config.hpp"
#include "gznt/errors.hpp"
#include "gznt/levelset.hpp"
#include "gznt/tracker.hpp"

namespace gznt {

namespace {

constexpr double kPi = std::numbers::pi;
using nlohmann::json;

std::vector<double> parse_list(const std::string& text, std::size_t count, const char* flag) {
  std::vector<double> v;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size() || !std::isfinite(v.back())) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError(std::string(flag) + ": cannot read a number from '" + item + "'");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (v.size() != count)
    throw ConfigError(std::string(flag) + ": expected " + std::to_string(count) + " comma-separated numbers");
  return v;
}

std::string format_complex(cplx z) {
  char buf[80];
  const double re = z.real() + 0.0, im = z.imag() + 0.0;
  std::snprintf(buf, sizeof buf, "%.12g%c%.12gi", re, std::signbit(im) ? '-' : '+', std::abs(im));
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + path + "'");
  return f;
}

std::string events_path_for(const std::string& csv) {
  std::filesystem::path p(csv);
  p.replace_extension(".events.json");
  return p.string();
}

json angles_json(const ContactAngles& a) {
  return {{"left", a.left}, {"right", a.right}, {"samples_left", a.samples_left}, {"samples_right", a.samples_right}};
}

json case_json(const CaseReport& r) {
  json j{{"z0", r.z0}, {"case", case_name(r.kind)}, {"tol", r.tol}};
  j["theta0"] = r.theta0 ? json(*r.theta0) : json(nullptr);
  j["theta0_on_boundary"] = r.theta0_on_boundary;
  json d = json::array();
  for (cplx v : r.derivatives) d.push_back({v.real(), v.imag()});
  j["derivatives"] = d;
  return j;
}

std::pair<double, double> predicted_angles(const CaseReport& r) {
  switch (r.kind) {
    case LocalCase::Case1:
      return {0.0, kPi};
    case LocalCase::Case2:
      return {(kPi - *r.theta0) / 2, kPi - *r.theta0 / 2};
    case LocalCase::Case3:
      return {kPi / 3, 2 * kPi / 3};
  }
  return {0.0, 0.0};
}

json optional_point(const std::optional<cplx>& z) {
  return z ? json::array({z->real(), z->imag()}) : json(nullptr);
}

json build_report(const FunctionSpec& spec) {
  const N1Function q = build(spec);
  json rep;
  rep["spec"] = to_json(spec);
  rep["gznt"] = optional_point(q.factor().alpha);
  rep["gpnt"] = optional_point(q.factor().beta);
  rep["kernel_negative_squares"] = count_negative_squares(q, kernel_sample_points(8));

  const auto& alpha = q.factor().alpha;
  if (!alpha || alpha->imag() != 0.0) {
    rep["note"] = "the zero of nonpositive type is not real; no contact at tau = 0";
    return rep;
  }
  const double a = alpha->real();
  const CaseReport lc = local_case(q, a);
  rep["local_case"] = case_json(lc);

  if (q.factor().kind == FactorKind::ZeroOnly) {
    rep["classification"] = evidence_json(classify(q));
  } else {
    rep["classification"] = nullptr;
    rep["classification_note"] = "classification needs the pole at infinity";
  }

  constexpr double span = 1e-3, window = 1e-4;
  constexpr int steps = 200;
  const ZeroPath path = track_path(q, Schedule::linear(-span, span, steps));
  const ContactAngles ang = contact_angles(path, a, window);
  const auto [pl, pr] = predicted_angles(lc);
  rep["contact"] = {{"tau_range", {-span, span}},
                    {"steps", steps},
                    {"fit_window", window},
                    {"measured", angles_json(ang)},
                    {"predicted", {{"left", pl}, {"right", pr}}}};
  rep["events"] = events_json(path);
  return rep;
}

int classify_error(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const DomainError*>(&e) ||
      dynamic_cast<const AmbiguousBoundary*>(&e))
    return 2;
  return 3;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Zero of nonpositive type laboratory"};
  app.require_subcommand(1);

  std::string spec_arg;
  auto add_spec = [&](CLI::App* sub) {
    sub->add_option("--spec", spec_arg, "builtin:NAME or a JSON file")->required();
  };

  auto* eval = app.add_subcommand("eval", "print Q(z)");
  add_spec(eval);
  std::string z_arg;
  bool extended = false;
  eval->add_option("--z", z_arg, "re,im")->required()->allow_extra_args(false);
  eval->add_flag("--extended", extended, "continue through the axis from above");

  auto* track = app.add_subcommand("track", "follow alpha(tau); writes CSV and events JSON");
  add_spec(track);
  double tau_min = -1.0, tau_max = 1.0;
  int steps = 100;
  bool full_circle = false;
  std::string out_path, events_path;
  track->add_option("--tau-min", tau_min);
  track->add_option("--tau-max", tau_max);
  track->add_option("--steps", steps);
  track->add_flag("--full-circle", full_circle, "tau over the whole circle from infinity to infinity");
  track->add_option("--out", out_path, "path CSV")->required();
  track->add_option("--events", events_path, "events JSON (default: next to the CSV)");

  auto* cls = app.add_subcommand("classify", "class A to E of a real zero");
  add_spec(cls);
  double alpha_arg = 0.0;
  cls->add_option("--alpha", alpha_arg)->required();

  auto* level = app.add_subcommand("levelset", "trace Im Q = 0");
  add_spec(level);
  std::string box_arg;
  int nx = 200, ny = 100;
  std::string svg_path;
  level->add_option("--box", box_arg, "x0,x1,y0,y1")->required();
  level->add_option("--nx", nx);
  level->add_option("--ny", ny);
  level->add_option("--out", out_path, "curve CSV")->required();
  level->add_option("--svg", svg_path);

  auto* report = app.add_subcommand("report", "classification, local case and contact angles as JSON");
  add_spec(report);
  report->add_option("--out", out_path, "JSON file (default: standard output)");

  auto* spec_cmd = app.add_subcommand("spec", "print the resolved function spec as JSON");
  add_spec(spec_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    const FunctionSpec spec = load_spec(spec_arg);
    if (eval->parsed()) {
      const auto xy = parse_list(z_arg, 2, "--z");
      const N1Function q = build(spec);
      const cplx z(xy[0], xy[1]);
      out << format_complex(extended ? q.extended(z) : q(z)) << '\n';
    } else if (track->parsed()) {
      if (steps < 1) throw ConfigError("--steps must be positive");
      const N1Function q = build(spec);
      const Schedule s = full_circle ? Schedule::circle(steps) : Schedule::linear(tau_min, tau_max, steps);
      const ZeroPath path = track_path(q, s);
      auto csv = open_out(out_path);
      write_path_csv(path, csv);
      auto ev = open_out(events_path.empty() ? events_path_for(out_path) : events_path);
      ev << events_json(path).dump(2) << '\n';
    } else if (cls->parsed()) {
      const N1Function q = build(spec);
      const auto& a = q.factor().alpha;
      if (!a || a->imag() != 0.0 || std::abs(a->real() - alpha_arg) > 1e-12 * (1.0 + std::abs(alpha_arg)))
        throw ConfigError("--alpha must be the real zero of nonpositive type of the given function");
      const auto ev = classify(q);
      out << class_name(ev.decided) << '\n' << evidence_json(ev).dump(2) << '\n';
    } else if (level->parsed()) {
      const auto b = parse_list(box_arg, 4, "--box");
      const N1Function q = build(spec);
      const auto curves = trace_im_zero(q, {b[0], b[1], b[2], b[3]}, nx, ny);
      auto csv = open_out(out_path);
      write_curves_csv(curves, csv);
      if (!svg_path.empty()) {
        auto svg = open_out(svg_path);
        write_curves_svg(curves, svg);
      }
      json d = json::array();
      for (double x : curves.contacts) d.push_back(x);
      out << json{{"polylines", curves.polylines.size()}, {"departure_points", d}}.dump() << '\n';
    } else if (report->parsed()) {
      const std::string text = build_report(spec).dump(2);
      if (out_path.empty()) {
        out << text << '\n';
      } else {
        auto f = open_out(out_path);
        f << text << '\n';
      }
    } else if (spec_cmd->parsed()) {
      build(spec);
      out << to_json(spec).dump(2) << '\n';
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return classify_error(e);
  }
  return 0;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"gznt_lab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace gznt
