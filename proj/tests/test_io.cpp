#include <cmath>
#include <limits>
#include <sstream>

#include "doctest.h"
#include "pl/io.hpp"

using namespace pl;
using nlohmann::json;

TEST_CASE("FNV-1a reference vectors") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("config round trip through JSON") {
  RunConfig c;
  c.command = "particle";
  c.preset = "custom";
  c.lambda = cd(0.5, -0.25);
  c.mu = cd(2.0, 0.0);
  c.N = 32;
  c.p0 = {0.1, 0.2, 0.3};
  c.seed = 7;
  RunConfig d = config_from_json(to_json(c));
  CHECK(to_json(d) == to_json(c));
  CHECK(config_hash(d) == config_hash(c));
  d.seed = 8;
  CHECK(config_hash(d) != config_hash(c));
  RunConfig e = config_from_json(json::parse(R"({"lambda": 1.5, "mu": [0, 2]})"));
  CHECK(*e.lambda == cd(1.5, 0));
  CHECK(*e.mu == cd(0, 2));
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"nonsense": 1})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"N": "many"})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"lambda": [1, 2, 3]})")), ConfigError);
  for (const char* bad : {R"({"N": 0})", R"({"dt": -1})", R"({"T": 0})", R"({"command": "fly"})",
                          R"({"init": "random"})", R"({"every": 0})"}) {
    RunConfig c = config_from_json(json::parse(bad));
    CHECK_THROWS_AS(validate_config(c), ConfigError);
  }
  RunConfig f;
  f.command = "field";
  validate_config(f);
  CHECK(f.algebra == "su2-real");
  RunConfig p;
  p.command = "particle";
  validate_config(p);
  CHECK(p.algebra == "su2");
}

TEST_CASE("shortest round-trip number format") {
  for (double x : {0.1, -2.5e-3, 1.0 / 3.0, 6.02214076e23, 0.0})
    CHECK(std::stod(fmt(x)) == x);
  CHECK(fmt(0.5) == "0.5");
  CHECK(fmt(std::numeric_limits<double>::quiet_NaN()) == "nan");
}

TEST_CASE("CSV header carries version and config hash") {
  RunConfig c;
  c.command = "particle";
  std::ostringstream os;
  CsvWriter w(os, c, {"t", "H"});
  w.row({0.0, 1.25});
  CHECK_THROWS_AS(w.row({1.0}), std::logic_error);
  std::string s = os.str();
  CHECK(s.rfind("# plsim 0.1.0 config_hash=" + config_hash(c), 0) == 0);
  CHECK(s.find("\nt,H\n0,1.25\n") != std::string::npos);
}

TEST_CASE("validate command succeeds on shipped presets") {
  for (const char* p : {"modified-principal", "g-invariant", "pure-qt", "principal-limit"}) {
    RunConfig c;
    c.preset = p;
    if (std::string(p) == "pure-qt") c.algebra = "sl2r";
    std::ostringstream out, err;
    CHECK(run(c, out, err) == 0);
    json j = json::parse(out.str());
    CHECK(j["max_residual"].get<double>() < 1e-10);
  }
}

TEST_CASE("bad configuration exits with code 2 and an error document") {
  RunConfig c;
  c.command = "field";
  c.preset = "pure-qt";
  std::ostringstream out, err;
  CHECK(run(c, out, err) == 2);
  json j = json::parse(err.str());
  CHECK(j["error"]["kind"] == "config");
}

TEST_CASE("repeated particle runs are byte-identical") {
  RunConfig c;
  c.command = "particle";
  c.seed = 11;
  c.T = 0.1;
  c.dt = 1e-2;
  std::ostringstream a, b, ea, eb;
  CHECK(run(c, a, ea) == 0);
  CHECK(run(c, b, eb) == 0);
  CHECK(a.str() == b.str());
  CHECK(a.str().size() > 100);
}
