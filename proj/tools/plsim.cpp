#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "pl/io.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Poisson-Lie T-duality simulator"};
  app.set_version_flag("--version", pl::kVersion);
  app.require_subcommand(1);

  pl::RunConfig f;  // flag values
  std::string config_path;
  double lambda_re = 0, lambda_im = 0, mu_re = 0, mu_im = 0;
  struct Bound {
    CLI::Option *preset, *algebra, *lre, *lim, *mre, *mim, *N, *dt, *T, *bc, *init, *amp, *p0, *seed, *out,
        *mus, *lambdas, *every;
  } b{};

  const std::pair<const char*, const char*> commands[] = {
      {"validate", "check bialgebra, splitting and graph-coordinate identities"},
      {"particle", "integrate the point-particle system"},
      {"field", "evolve a loop in the double"},
      {"duality", "compare the two factorizations on a random loop"},
      {"sweep", "particle runs over a grid of (lambda, mu)"},
      {"limits", "principal-limit deviations and log-log slopes"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "JSON config file; flags override its values");
    b.preset = sub->add_option("--preset", f.preset, "modified-principal | pure-qt | principal-limit | g-invariant | custom");
    b.algebra = sub->add_option("--algebra", f.algebra, "su2 | su2-real | sl2r");
    b.lre = sub->add_option("--lambda", lambda_re, "real part of lambda");
    b.lim = sub->add_option("--lambda-im", lambda_im, "imaginary part of lambda");
    b.mre = sub->add_option("--mu", mu_re, "real part of mu");
    b.mim = sub->add_option("--mu-im", mu_im, "imaginary part of mu");
    b.N = sub->add_option("--N", f.N, "grid intervals on (0, pi)");
    b.dt = sub->add_option("--dt", f.dt, "time step");
    b.T = sub->add_option("--T", f.T, "final time");
    b.bc = sub->add_option("--boundary", f.boundary, "double-neumann | periodic | free");
    b.init = sub->add_option("--init", f.init, "auto | two-mode | bump | pointlike");
    b.amp = sub->add_option("--amplitude", f.amplitude, "initial data amplitude");
    b.p0 = sub->add_option("--p0", f.p0, "initial momentum components")->delimiter(',');
    b.seed = sub->add_option("--seed", f.seed, "mt19937_64 seed (default 0)");
    b.out = sub->add_option("--out", f.out, "output prefix for .csv/.json (default stdout/stderr)");
    b.mus = sub->add_option("--mus", f.mus, "mu values for sweep/limits")->delimiter(',');
    b.lambdas = sub->add_option("--lambdas", f.lambdas, "lambda values for sweep")->delimiter(',');
    b.every = sub->add_option("--every", f.every, "output stride in steps");
    sub->callback([&, sub, bb = b] {
      pl::RunConfig c;
      c.command = sub->get_name();
      try {
        if (!config_path.empty()) {
          std::ifstream in(config_path);
          if (!in) throw pl::ConfigError("cannot read config file " + config_path);
          nlohmann::json j;
          try {
            in >> j;
          } catch (const nlohmann::json::exception& e) {
            throw pl::ConfigError(std::string("config file is not valid JSON: ") + e.what());
          }
          c = pl::config_from_json(j, c);
          c.command = sub->get_name();
        }
      } catch (const pl::ConfigError& e) {
        std::cerr << pl::error_json("config", e.what()).dump() << "\n";
        throw CLI::RuntimeError(2);
      }
      if (bb.preset->count()) c.preset = f.preset;
      if (bb.algebra->count()) c.algebra = f.algebra;
      if (bb.lre->count() || bb.lim->count()) c.lambda = pl::cd(lambda_re, lambda_im);
      if (bb.mre->count() || bb.mim->count()) c.mu = pl::cd(mu_re, mu_im);
      if (bb.N->count()) c.N = f.N;
      if (bb.dt->count()) c.dt = f.dt;
      if (bb.T->count()) c.T = f.T;
      if (bb.bc->count()) c.boundary = f.boundary;
      if (bb.init->count()) c.init = f.init;
      if (bb.amp->count()) c.amplitude = f.amplitude;
      if (bb.p0->count()) c.p0 = f.p0;
      if (bb.seed->count()) c.seed = f.seed;
      if (bb.out->count()) c.out = f.out;
      if (bb.mus->count()) c.mus = f.mus;
      if (bb.lambdas->count()) c.lambdas = f.lambdas;
      if (bb.every->count()) c.every = f.every;
      int code = pl::run(c, std::cout, std::cerr);
      if (code) throw CLI::RuntimeError(code);
    });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::RuntimeError& e) {
    return e.get_exit_code();
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << pl::error_json("config", e.what()).dump() << "\n";
    return 2;
  }
  return 0;
}
