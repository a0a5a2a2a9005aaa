#include "pl/io.hpp"

#include <charconv>
#include <cstdio>
#include <set>

namespace pl {

namespace {

nlohmann::json complex_json(cd z) { return nlohmann::json::array({z.real(), z.imag()}); }

cd complex_from(const nlohmann::json& j, const char* key) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ConfigError(std::string("config: '") + key + "' must be a number or [re, im]");
}

template <class T>
T get(const nlohmann::json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(std::string("config: bad value for '") + key + "'");
  }
}

}  // namespace

nlohmann::json to_json(const RunConfig& c) {
  nlohmann::json j;
  j["command"] = c.command;
  j["preset"] = c.preset;
  j["algebra"] = c.algebra;
  if (c.lambda) j["lambda"] = complex_json(*c.lambda);
  if (c.mu) j["mu"] = complex_json(*c.mu);
  j["N"] = c.N;
  j["dt"] = c.dt;
  j["T"] = c.T;
  j["boundary"] = c.boundary;
  j["init"] = c.init;
  j["amplitude"] = c.amplitude;
  j["p0"] = c.p0;
  j["seed"] = c.seed;
  j["mus"] = c.mus;
  j["lambdas"] = c.lambdas;
  j["every"] = c.every;
  return j;
}

RunConfig config_from_json(const nlohmann::json& j, RunConfig c) {
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  static const std::set<std::string> known{"command", "preset", "algebra", "lambda", "mu", "N",
                                           "dt", "T", "boundary", "init", "amplitude", "p0",
                                           "seed", "out", "mus", "lambdas", "every"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key())) throw ConfigError("config: unknown key '" + it.key() + "'");
  if (j.contains("command")) c.command = get<std::string>(j, "command");
  if (j.contains("preset")) c.preset = get<std::string>(j, "preset");
  if (j.contains("algebra")) c.algebra = get<std::string>(j, "algebra");
  if (j.contains("lambda")) c.lambda = complex_from(j["lambda"], "lambda");
  if (j.contains("mu")) c.mu = complex_from(j["mu"], "mu");
  if (j.contains("N")) c.N = get<int>(j, "N");
  if (j.contains("dt")) c.dt = get<double>(j, "dt");
  if (j.contains("T")) c.T = get<double>(j, "T");
  if (j.contains("boundary")) c.boundary = get<std::string>(j, "boundary");
  if (j.contains("init")) c.init = get<std::string>(j, "init");
  if (j.contains("amplitude")) c.amplitude = get<double>(j, "amplitude");
  if (j.contains("p0")) c.p0 = get<std::vector<double>>(j, "p0");
  if (j.contains("seed")) c.seed = get<std::uint64_t>(j, "seed");
  if (j.contains("out")) c.out = get<std::string>(j, "out");
  if (j.contains("mus")) c.mus = get<std::vector<double>>(j, "mus");
  if (j.contains("lambdas")) c.lambdas = get<std::vector<double>>(j, "lambdas");
  if (j.contains("every")) c.every = get<int>(j, "every");
  return c;
}

void validate_config(RunConfig& c) {
  static const std::set<std::string> commands{"validate", "particle", "field", "duality", "sweep", "limits"};
  if (!commands.count(c.command)) throw ConfigError("unknown command '" + c.command + "'");
  if (c.algebra.empty()) c.algebra = (c.command == "field" || c.command == "duality") ? "su2-real" : "su2";
  if (c.N <= 0) throw ConfigError("N must be positive");
  if (!(c.dt > 0.0)) throw ConfigError("dt must be positive");
  if (!(c.T > 0.0)) throw ConfigError("T must be positive");
  if (c.every <= 0) throw ConfigError("every must be positive");
  if (!(c.amplitude >= 0.0)) throw ConfigError("amplitude must be non-negative");
  for (double m : c.mus)
    if (!(m > 0.0)) throw ConfigError("mus must be positive");
  static const std::set<std::string> inits{"auto", "two-mode", "bump", "pointlike"};
  if (!inits.count(c.init)) throw ConfigError("unknown init '" + c.init + "'");
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::string config_hash(const RunConfig& c) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(to_json(c).dump())));
  return buf;
}

std::string fmt(double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(std::ostream& os, const RunConfig& c, const std::vector<std::string>& columns)
    : os_(os), ncol_(columns.size()) {
  os_ << "# plsim " << kVersion << " config_hash=" << config_hash(c) << " command=" << c.command << "\n";
  for (size_t i = 0; i < columns.size(); ++i) os_ << (i ? "," : "") << columns[i];
  os_ << "\n";
}

void CsvWriter::row(const std::vector<double>& v) {
  if (v.size() != ncol_) throw std::logic_error("CsvWriter: row width mismatch");
  for (size_t i = 0; i < v.size(); ++i) os_ << (i ? "," : "") << fmt(v[i]);
  os_ << "\n";
}

nlohmann::json metadata(const RunConfig& c) {
  nlohmann::json m;
  m["version"] = kVersion;
  m["config_hash"] = config_hash(c);
  m["config"] = to_json(c);
  return m;
}

nlohmann::json error_json(const std::string& kind, const std::string& message) {
  return {{"error", {{"kind", kind}, {"message", message}}}, {"version", kVersion}};
}

}  // namespace pl
