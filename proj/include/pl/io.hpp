#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "pl/types.hpp"

namespace pl {

inline constexpr const char* kVersion = "0.1.0";

// Config file schema (all keys optional, flags override):
// { "command": "validate|particle|field|duality|sweep|limits", "preset": "modified-principal",
//   "algebra": "su2|su2-real|sl2r", "lambda": [re, im] | re, "mu": [re, im] | re,
//   "N": 64, "dt": 2.5e-3, "T": 1.0, "boundary": "double-neumann|periodic|free",
//   "init": "auto|two-mode|bump|pointlike", "amplitude": 0.3, "p0": [..], "seed": 0,
//   "out": "prefix", "mus": [..], "lambdas": [..], "every": 1 }
struct RunConfig {
  std::string command = "validate";
  std::string preset = "modified-principal";
  std::string algebra;  // empty: su2, or su2-real for field/duality
  std::optional<cd> lambda, mu;
  int N = 64;
  double dt = 2.5e-3;
  double T = 1.0;
  std::string boundary = "double-neumann";
  std::string init = "auto";
  double amplitude = 0.3;
  std::vector<double> p0;  // particle momentum (real components)
  std::uint64_t seed = 0;
  std::string out;  // output prefix; empty writes the data to stdout
  std::vector<double> mus{10.0, 100.0, 1000.0};
  std::vector<double> lambdas;
  int every = 1;  // output stride in steps
};

nlohmann::json to_json(const RunConfig& c);
// unknown keys or wrong types raise ConfigError
RunConfig config_from_json(const nlohmann::json& j, RunConfig base = {});
// positivity and command checks; fills the default algebra
void validate_config(RunConfig& c);

std::uint64_t fnv1a64(std::string_view s);
std::string config_hash(const RunConfig& c);
// shortest round-trip decimal form
std::string fmt(double x);

class CsvWriter {
 public:
  CsvWriter(std::ostream& os, const RunConfig& c, const std::vector<std::string>& columns);
  void row(const std::vector<double>& values);

 private:
  std::ostream& os_;
  size_t ncol_;
};

// metadata block attached to every JSON artifact
nlohmann::json metadata(const RunConfig& c);
nlohmann::json error_json(const std::string& kind, const std::string& message);

// executes one command; returns the process exit code (0, 2 config, 3 numerical)
int run(const RunConfig& c, std::ostream& out, std::ostream& err);

}  // namespace pl
