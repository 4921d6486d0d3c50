#include "gznt/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "gznt/errors.hpp"

namespace gznt {

namespace {

constexpr double kPi = std::numbers::pi;
using nlohmann::json;

SpectralMeasure single_piece(std::vector<double> coeffs) {
  SpectralMeasure s;
  s.pieces.push_back({-1.0, 1.0, Polynomial(std::move(coeffs))});
  return s;
}

// M(z) = i - 1/z: full-line density 1/pi plus a unit atom at the origin.
FunctionSpec i_minus_inverse(FactorR factor) {
  FunctionSpec s;
  s.factor = factor;
  s.fullline = 1.0 / kPi;
  s.measure.atoms.push_back({0.0, 1.0});
  return s;
}

double parse_number(const std::string& text, const std::string& context) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("cannot read a number from '" + text + "' in " + context);
  }
}

const char* kind_name(FactorKind k) {
  switch (k) {
    case FactorKind::ZeroPole:
      return "ZeroPole";
    case FactorKind::ZeroOnly:
      return "ZeroOnly";
    case FactorKind::PoleOnly:
      return "PoleOnly";
  }
  return "?";
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from(const json& j, const char* what) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ConfigError(std::string(what) + ": expected a number or an [re, im] pair");
}

double number_or(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
  return j[key].get<double>();
}

}  // namespace

std::vector<std::string> builtin_names() { return {"A-simple", "A-poly", "Btheta", "B-log", "C", "D", "E"}; }

FunctionSpec builtin_spec(const std::string& name) {
  FunctionSpec s;
  const FactorR at_origin = FactorR::zero_only(0.0);
  if (name == "A-simple") {
    s = i_minus_inverse(FactorR::zero_pole(0.0, cplx(0.0, 1.0)));
  } else if (name == "A-poly") {
    s = i_minus_inverse(at_origin);
  } else if (name.rfind("Btheta", 0) == 0 || name.rfind("B-theta", 0) == 0) {
    // Btheta, Btheta:0.5, Btheta(0.5)
    const std::size_t cut = name.find_first_of(":(");
    double theta = kPi / 2;
    if (cut != std::string::npos) {
      std::string arg = name.substr(cut + 1);
      if (name[cut] == '(') {
        if (arg.empty() || arg.back() != ')') throw ConfigError("builtin '" + name + "': missing ')'");
        arg.pop_back();
      }
      theta = parse_number(arg, "builtin '" + name + "'");
    } else if (name != "Btheta" && name != "B-theta") {
      throw ConfigError("unknown builtin '" + name + "'");
    }
    if (theta < 0.0 || theta > kPi) throw ConfigError("builtin Btheta: angle must lie in [0, pi]");
    s.factor = at_origin;
    // cos(pi/2) and sin(pi) are not exactly zero in floating point
    auto snap = [](double v) { return std::abs(v) < 1e-15 ? 0.0 : v; };
    s.a_eff = snap(std::cos(theta));
    s.fullline = std::max(0.0, snap(std::sin(theta))) / kPi;
    std::ostringstream os;
    os.precision(17);
    os << "Btheta:" << theta;
    s.builtin = os.str();
    return s;
  } else if (name == "B-log") {
    s.factor = at_origin;
    s.measure = single_piece({1.0});
  } else if (name == "C") {
    s.factor = at_origin;
    s.a_eff = 1.0;
    s.measure = single_piece({0.0, 0.0, 1.0});
  } else if (name == "D") {
    s.factor = at_origin;
    s.measure = single_piece({0.0, 0.0, 1.0});
  } else if (name == "E") {
    s.factor = at_origin;
    s.measure = single_piece({0.0, 0.0, 0.0, 0.0, 1.0});
  } else {
    std::string known;
    for (const auto& n : builtin_names()) known += (known.empty() ? "" : ", ") + n;
    throw ConfigError("unknown builtin '" + name + "' (known: " + known + ")");
  }
  s.builtin = name;
  return s;
}

N1Function build(const FunctionSpec& spec) {
  const auto report = validate_measure(spec.measure);
  if (!report.valid()) {
    std::string msg = "invalid measure:";
    for (const auto& v : report.violations) msg += " " + v.message + ";";
    throw ConfigError(msg);
  }
  try {
    return N1Function(spec.factor, NevanlinnaFunction(spec.a_eff, spec.b, spec.measure, spec.fullline));
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

nlohmann::json to_json(const FunctionSpec& spec) {
  json j;
  if (spec.builtin) j["builtin_origin"] = *spec.builtin;
  json f;
  f["kind"] = kind_name(spec.factor.kind);
  if (spec.factor.alpha) f["alpha"] = complex_json(*spec.factor.alpha);
  if (spec.factor.beta) f["beta"] = complex_json(*spec.factor.beta);
  j["factor"] = f;
  j["a_eff"] = spec.a_eff;
  j["b"] = spec.b;
  j["fullline"] = spec.fullline;
  json m = json::array();
  for (const auto& p : spec.measure.pieces)
    m.push_back({{"type", "poly"}, {"interval", {p.lo, p.hi}}, {"coeffs", p.density.coeffs()}});
  for (const auto& a : spec.measure.atoms) m.push_back({{"type", "atom"}, {"at", a.at}, {"mass", a.mass}});
  j["measure"] = m;
  return j;
}

FunctionSpec spec_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("function spec must be a JSON object");
  if (j.contains("builtin")) {
    if (!j["builtin"].is_string()) throw ConfigError("'builtin' must be a string");
    return builtin_spec(j["builtin"].get<std::string>());
  }
  FunctionSpec s;
  if (!j.contains("factor") || !j["factor"].is_object()) throw ConfigError("missing 'factor' object");
  const json& f = j["factor"];
  const std::string kind = f.value("kind", "");
  if (kind == "ZeroPole")
    s.factor.kind = FactorKind::ZeroPole;
  else if (kind == "ZeroOnly")
    s.factor.kind = FactorKind::ZeroOnly;
  else if (kind == "PoleOnly")
    s.factor.kind = FactorKind::PoleOnly;
  else
    throw ConfigError("factor.kind must be ZeroPole, ZeroOnly or PoleOnly");
  if (f.contains("alpha")) s.factor.alpha = complex_from(f["alpha"], "factor.alpha");
  if (f.contains("beta")) s.factor.beta = complex_from(f["beta"], "factor.beta");
  try {
    s.factor.check();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }

  s.a_eff = number_or(j, "a_eff", 0.0);
  s.b = number_or(j, "b", 0.0);
  s.fullline = number_or(j, "fullline", 0.0);

  if (j.contains("measure")) {
    if (!j["measure"].is_array()) throw ConfigError("'measure' must be a list");
    for (const auto& e : j["measure"]) {
      const std::string type = e.value("type", "");
      if (type == "poly") {
        if (!e.contains("interval") || !e["interval"].is_array() || e["interval"].size() != 2)
          throw ConfigError("poly entry needs interval [a, b]");
        if (!e.contains("coeffs") || !e["coeffs"].is_array() || e["coeffs"].empty())
          throw ConfigError("poly entry needs a non-empty coeffs list");
        std::vector<double> c;
        for (const auto& v : e["coeffs"]) {
          if (!v.is_number()) throw ConfigError("poly coeffs must be numbers");
          c.push_back(v.get<double>());
        }
        if (!e["interval"][0].is_number() || !e["interval"][1].is_number())
          throw ConfigError("poly interval must hold numbers");
        s.measure.pieces.push_back(
            {e["interval"][0].get<double>(), e["interval"][1].get<double>(), Polynomial(std::move(c))});
      } else if (type == "atom") {
        if (!e.contains("at") || !e.contains("mass") || !e["at"].is_number() || !e["mass"].is_number())
          throw ConfigError("atom entry needs numeric 'at' and 'mass'");
        s.measure.atoms.push_back({e["at"].get<double>(), e["mass"].get<double>()});
      } else {
        throw ConfigError("measure entry type must be 'poly' or 'atom'");
      }
    }
  }
  if (j.contains("builtin_origin") && j["builtin_origin"].is_string()) s.builtin = j["builtin_origin"].get<std::string>();
  return s;
}

FunctionSpec load_spec(const std::string& arg) {
  const std::string prefix = "builtin:";
  if (arg.rfind(prefix, 0) == 0) return builtin_spec(arg.substr(prefix.size()));
  std::ifstream in(arg);
  if (!in) throw ConfigError("cannot open spec file '" + arg + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("spec file '" + arg + "': " + e.what());
  }
  return spec_from_json(j);
}

}  // namespace gznt
