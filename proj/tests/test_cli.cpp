#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "gznt/cli.hpp"
#include "gznt/config.hpp"
#include "json.hpp"

using namespace gznt;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result lab(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "gznt_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("eval") {
  auto r = lab({"eval", "--spec", "builtin:A-simple", "--z", "0,2"});
  CHECK(r.code == 0);
  CHECK(r.out == "0+2i\n");
  r = lab({"eval", "--spec", "builtin:A-simple", "--z=0,-1", "--extended"});
  CHECK(r.code == 0);
  CHECK(r.out == "0+0.5i\n");
  r = lab({"eval", "--spec", "builtin:Btheta", "--z", "1,0.5"});
  CHECK(r.out == "-1+0.75i\n");
}

TEST_CASE("classify") {
  const std::pair<const char*, const char*> table[] = {
      {"A-poly", "A"}, {"B-log", "B"}, {"C", "C"}, {"D", "D"}, {"E", "E"}};
  for (const auto& [name, letter] : table) {
    const auto r = lab({"classify", "--spec", std::string("builtin:") + name, "--alpha", "0"});
    CHECK(r.code == 0);
    CHECK(r.out.substr(0, 2) == std::string(letter) + "\n");
    const auto j = nlohmann::json::parse(r.out.substr(2));
    CHECK(j["class"] == letter);
  }
  CHECK(lab({"classify", "--spec", "builtin:D", "--alpha", "0.5"}).code == 2);
  CHECK(lab({"classify", "--spec", "builtin:A-simple", "--alpha", "0"}).code == 2);
}

TEST_CASE("track writes one row per scheduled tau and is deterministic") {
  const auto csv = scratch("p.csv");
  const std::vector<std::string> args = {"track", "--spec", "builtin:A-simple", "--tau-min", "-10", "--tau-max", "10",
                                         "--steps", "2000", "--out", csv.string()};
  REQUIRE(lab(args).code == 0);
  const std::string first = slurp(csv), first_events = slurp(scratch("p.events.json"));
  std::istringstream in(first);
  std::string line;
  int rows = 0;
  std::getline(in, line);
  CHECK(line == "tau,re_alpha,im_alpha,flag,chart");
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 2001);
  REQUIRE(lab(args).code == 0);
  CHECK(slurp(csv) == first);
  CHECK(slurp(scratch("p.events.json")) == first_events);
  CHECK(nlohmann::json::parse(first_events).at(0)["case"] == "1");

  const auto circle = scratch("circle.csv");
  CHECK(lab({"track", "--spec", "builtin:A-simple", "--full-circle", "--steps", "100", "--out", circle.string(),
             "--events", scratch("circle_events.json").string()})
            .code == 0);
  CHECK(slurp(circle).find("inf,") != std::string::npos);
}

TEST_CASE("spec round trip") {
  for (const auto& name : builtin_names()) {
    CAPTURE(name);
    const auto r = lab({"spec", "--spec", "builtin:" + name});
    REQUIRE(r.code == 0);
    const auto file = scratch(name + ".json");
    std::ofstream(file) << r.out;
    const auto original = build(builtin_spec(name));
    const auto reloaded = build(load_spec(file.string()));
    for (int k = 0; k < 10; ++k) {
      const cplx z(-2.0 + 0.45 * k, 0.1 + 0.2 * k);
      CHECK(reloaded(z) == original(z));
    }
    CHECK(to_json(load_spec(file.string())) == to_json(builtin_spec(name)));
  }
}

TEST_CASE("levelset and report") {
  const auto csv = scratch("curve.csv"), svg = scratch("curve.svg");
  auto r = lab({"levelset", "--spec", "builtin:B-log", "--box", "-3,3,0,2", "--nx", "300", "--ny", "100", "--out",
                csv.string(), "--svg", svg.string()});
  REQUIRE(r.code == 0);
  const auto summary = nlohmann::json::parse(r.out);
  CHECK(summary["departure_points"].size() == 3);
  CHECK(slurp(csv).rfind("polyline_id,re,im\n", 0) == 0);
  CHECK(slurp(svg).rfind("<svg", 0) == 0);

  r = lab({"report", "--spec", "builtin:E"});
  REQUIRE(r.code == 0);
  const auto rep = nlohmann::json::parse(r.out);
  CHECK(rep["classification"]["class"] == "E");
  CHECK(rep["local_case"]["case"] == "3");
  CHECK(rep["kernel_negative_squares"] == 1);
  const double measured = rep["contact"]["measured"]["left"], predicted = rep["contact"]["predicted"]["left"];
  CHECK(std::abs(measured - predicted) < 5e-2);

  const auto file = scratch("report.json");
  CHECK(lab({"report", "--spec", "builtin:A-simple", "--out", file.string()}).code == 0);
  CHECK(nlohmann::json::parse(slurp(file))["classification"].is_null());
}

TEST_CASE("exit codes") {
  CHECK(lab({}).code == 2);
  CHECK(lab({"eval", "--spec", "builtin:nope", "--z", "0,1"}).code == 2);
  CHECK(lab({"eval", "--spec", "builtin:D", "--z", "0"}).code == 2);
  CHECK(lab({"eval", "--spec", "/nonexistent/spec.json", "--z", "0,1"}).code == 2);
  CHECK(lab({"levelset", "--spec", "builtin:D", "--box", "-1,1,-1,1", "--out", scratch("x.csv").string()}).code == 2);
  const auto r = lab({"eval", "--spec", "builtin:A-simple", "--z", "0,1"});
  CHECK(r.code == 3);
  CHECK_FALSE(r.err.empty());

  // the zero of this function runs off to infinity at tau = 0
  const auto spec = scratch("pole_only.json");
  std::ofstream(spec) << R"({"factor": {"kind": "PoleOnly", "beta": [0.5, 1.0]}, "a_eff": 0.3, "b": 0.5,
                             "fullline": 0.1, "measure": []})";
  CHECK(lab({"track", "--spec", spec.string(), "--tau-min", "-1", "--tau-max", "1", "--steps", "10", "--out",
             scratch("lost.csv").string()})
            .code == 3);
  CHECK(lab({"--help"}).code == 0);
}
