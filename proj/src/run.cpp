#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "pl/field.hpp"
#include "pl/io.hpp"
#include "pl/particle.hpp"

namespace pl {

namespace {

using nlohmann::json;

// uniform in [-1, 1) from the raw 64-bit stream, identical on every platform
double uniform_pm1(std::mt19937_64& rng) { return 2.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53 - 1.0; }

M2 random_group_element(const Model& M, std::mt19937_64& rng, double scale = 1.0) {
  Vec x(3);
  for (int i = 0; i < 3; ++i) x(i) = scale * uniform_pm1(rng);
  return Realization(M.rep).exp(x);
}

struct Sink {
  std::ofstream file;
  std::ostream* os;
  Sink(const RunConfig& c, const std::string& ext, std::ostream& fallback) : os(&fallback) {
    if (!c.out.empty()) {
      file.open(c.out + ext);
      if (!file) throw ConfigError("cannot open output file " + c.out + ext);
      os = &file;
    }
  }
  std::ostream& operator*() { return *os; }
};

void emit_json(const RunConfig& c, json body, std::ostream& out) {
  body["meta"] = metadata(c);
  Sink s(c, ".json", out);
  *s << body.dump(2) << "\n";
}

int cmd_validate(const RunConfig& c, std::ostream& out) {
  Preset P = make_preset(c.preset, c.algebra, c.lambda, c.mu);
  Splitting S = make_splitting(P);
  const auto& B = S.B();
  DoubleAlgebra D = build_double(B);
  json bi = {{"cybe", cybe_residual(B.g, B.r)},
             {"ad_invariance", ad_invariance_residual(B.g, B.r)},
             {"jacobi_g", jacobi_residual(B.g)},
             {"jacobi_m", jacobi_residual(B.m)},
             {"jacobi_double", jacobi_residual(D.d)},
             {"pairing_invariance", ad_invariance_defect(D.d, D.pairing)}};
  SplittingReport sr = check_splitting(S);
  json sp = {{"orthogonality", sr.orthogonality}, {"diag_plus", sr.diag_plus}, {"diag_minus", sr.diag_minus},
             {"idempotence", sr.idempotence},     {"sum", sr.sum},             {"cross", sr.cross},
             {"self_adjoint", sr.self_adjoint},   {"et_difference", sr.et_difference},
             {"et_sum", sr.et_sum},               {"rank", sr.rank}};
  std::mt19937_64 rng(c.seed);
  double paths = 0.0, proj = 0.0;
  Realization R(P.model.rep);
  for (int i = 0; i < 10; ++i) {
    M2 u = random_group_element(P.model, rng);
    Mat A = R.adjoint(u.inverse());
    paths = std::max(paths, graph_path_defect(S, A));
    proj = std::max(proj, projector_formulas_check(S, A).max_residual());
  }
  double worst = std::max({bi["cybe"].get<double>(), bi["ad_invariance"].get<double>(),
                           bi["jacobi_double"].get<double>(), bi["pairing_invariance"].get<double>(),
                           sr.max_residual(), paths, proj});
  json body = {{"preset", P.name},
               {"algebra", c.algebra},
               {"lambda", {P.lambda.real(), P.lambda.imag()}},
               {"mu", {P.mu.real(), P.mu.imag()}},
               {"bialgebra", bi},
               {"splitting", sp},
               {"graph_path_defect", paths},
               {"projector_formulas", proj},
               {"max_residual", worst},
               {"pass", worst < 1e-10}};
  emit_json(c, body, out);
  if (!(worst < 1e-10)) throw NumericalError("validation residual " + fmt(worst) + " exceeds 1e-10");
  return 0;
}

Vec default_momentum(const RunConfig& c, const Preset& P) {
  const int n = P.model.B.n();
  if (!c.p0.empty()) {
    if (static_cast<int>(c.p0.size()) != n) throw ConfigError("p0 needs " + std::to_string(n) + " components");
    Vec p(n);
    for (int i = 0; i < n; ++i) p(i) = c.p0[i];
    return p;
  }
  Vec p(n);
  if (P.name == "pure-qt" && c.algebra == "sl2r")
    p << 2.0, 0.3, 0.3;  // 2 w phi + x psi- + conj(x) psi+, w = 1, x = 0.3
  else
    p << 0.3, -0.2, 0.5;
  return p;
}

int cmd_particle(const RunConfig& c, std::ostream& out, std::ostream& err) {
  Preset P = make_preset(c.preset, c.algebra, c.lambda, c.mu);
  Splitting S = make_splitting(P);
  const int n = S.n;
  ParticleState s0;
  std::mt19937_64 rng(c.seed);
  if (c.seed != 0) s0.u = random_group_element(P.model, rng);
  s0.p = default_momentum(c, P);
  Trajectory tr = integrate_particle(S, s0, c.dt, c.T);

  std::vector<std::string> cols{"t"};
  for (const char* e : {"u00", "u01", "u10", "u11"})
    for (const char* part : {"_re", "_im"}) cols.push_back(std::string(e) + part);
  auto add_c = [&](const std::string& base, int k) {
    for (int i = 1; i <= k; ++i)
      for (const char* part : {"_re", "_im"}) cols.push_back(base + std::to_string(i) + part);
  };
  add_c("p", n);
  cols.push_back("H_re");
  cols.push_back("H_im");
  add_c("Q_G", n);
  add_c("I_delta", 2 * n);
  Sink sink(c, ".csv", out);
  CsvWriter csv(*sink, c, cols);
  Vec Q0;
  double q_drift = 0.0, h_drift = 0.0;
  for (size_t k = 0; k < tr.states.size(); ++k) {
    const auto& st = tr.states[k];
    Charges ch = charges(S, st.u, st.p);
    if (k == 0) Q0 = ch.Q_G;
    q_drift = std::max(q_drift, max_abs(Vec(ch.Q_G - Q0)));
    h_drift = std::max(h_drift, std::abs(tr.H[k] - tr.H[0]));
    if (k % c.every && k + 1 != tr.states.size()) continue;
    std::vector<double> row{st.t};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) row.insert(row.end(), {st.u(i, j).real(), st.u(i, j).imag()});
    for (int i = 0; i < n; ++i) row.insert(row.end(), {st.p(i).real(), st.p(i).imag()});
    row.insert(row.end(), {tr.H[k].real(), tr.H[k].imag()});
    for (int i = 0; i < n; ++i) row.insert(row.end(), {ch.Q_G(i).real(), ch.Q_G(i).imag()});
    for (int i = 0; i < 2 * n; ++i) row.insert(row.end(), {ch.I(i).real(), ch.I(i).imag()});
    csv.row(row);
  }
  json body = {{"steps", tr.states.size() - 1},
               {"truncated", tr.truncated},
               {"message", tr.message},
               {"H_drift", h_drift},
               {"Q_G_drift", q_drift}};
  if (P.name == "pure-qt" && c.algebra == "sl2r" && !tr.states.empty()) {
    // closed forms of the y(0) = 0 branch at the final time
    const auto& st = tr.states.back();
    const cd w = s0.p(0) / 2.0;
    const cd x = s0.p(2);
    M2 Hm = P.model.rep[0];
    M2 u_ref = s0.u * expm2(-0.5 * w * st.t * Hm);
    Vec p_ref(3);
    p_ref << 2.0 * w, std::exp(w * st.t) * std::conj(x), std::exp(-w * st.t) * x;
    body["oracle_u_error"] = (st.u - u_ref).cwiseAbs().maxCoeff();
    body["oracle_p_error"] = max_abs(Vec(st.p - p_ref));
  }
  std::ostream& meta_os = c.out.empty() ? err : out;
  emit_json(c, body, meta_os);
  if (tr.truncated) throw NumericalError("trajectory truncated: " + tr.message);
  return 0;
}

std::vector<M2> initial_loop(const RunConfig& c, Boundary bc, std::string& kind) {
  const auto& D = sl2c();
  kind = c.init;
  if (kind == "auto")
    kind = bc == Boundary::Periodic ? "two-mode" : (bc == Boundary::Free ? "pointlike" : "bump");
  RVec6 X, Y;
  X << 0.7, -0.3, 0.5, 0.4, 0.2, -0.6;
  Y << -0.2, 0.5, 0.1, -0.4, 0.6, 0.3;
  std::vector<M2> k;
  const double a = c.amplitude;
  if (kind == "two-mode") {
    if (bc != Boundary::Periodic) throw ConfigError("two-mode initial data needs periodic boundary");
    for (double x : grid_x(c.N, bc))
      k.push_back(expm2(a * std::sin(2 * x) * D.from_coords(X)) * expm2(a * std::cos(2 * x) * D.from_coords(Y)));
  } else if (kind == "bump") {
    for (double x : grid_x(c.N, bc)) {
      double b = std::exp(-std::pow((x - std::numbers::pi / 2) / 0.3, 2));
      k.push_back(expm2(a * b * D.from_coords(X)) * expm2(a * b * b * D.from_coords(Y)));
    }
  } else {
    Vec3 p = c.p0.empty() ? Vec3(0.3, -0.2, 0.4) : Vec3::Zero();
    if (!c.p0.empty()) {
      if (c.p0.size() != 3) throw ConfigError("p0 needs 3 components");
      p = Vec3(c.p0[0], c.p0[1], c.p0[2]);
    }
    k = init_pointlike(M2::Identity(), p, c.N, bc).k;
  }
  return k;
}

int cmd_field(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.algebra != "su2-real") throw ConfigError("field runs use the real su2 model (algebra su2-real)");
  if (c.preset == "pure-qt" || c.preset.rfind("principal-limit", 0) == 0)
    throw ConfigError("preset '" + c.preset + "' has no real splitting; use modified-principal, g-invariant or custom");
  Preset P = make_preset(c.preset, c.algebra, c.lambda, c.mu);
  FieldModel F = make_field_model(P);
  Boundary bc = parse_boundary(c.boundary);
  if (bc != Boundary::Periodic && c.N % 2) throw ConfigError("non-periodic grids need even N");
  std::string kind;
  LoopState s;
  s.N = c.N;
  s.bc = bc;
  s.dx = std::numbers::pi / c.N;
  s.k = initial_loop(c, bc, kind);
  if (s.k.size() < 5 || c.N < 8) throw ConfigError("grid needs N >= 8");
  if (c.dt > 0.5 * s.dx) err << "warning: dt exceeds CFL 0.5 dx = " << fmt(0.5 * s.dx) << "\n";

  std::vector<std::string> cols{"t", "H_total", "eom_res_g", "eom_res_dual", "duality_gap"};
  for (int i = 1; i <= 6; ++i) cols.push_back("I_delta" + std::to_string(i));
  cols.push_back("f_d");
  Sink sink(c, ".csv", out);
  CsvWriter csv(*sink, c, cols);
  const double H0 = energy(F, s);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  double gap_max = 0.0, h_drift = 0.0, eom_g = 0.0, eom_dual = 0.0;
  auto emit = [&](const LoopState& st, double rg, double rd) {
    double gap = duality_check(F, st).total();
    gap_max = std::max(gap_max, gap);
    std::vector<double> row{st.t, energy(F, st), rg, rd, gap};
    for (int i = 0; i < 6; ++i) row.push_back(moment_map(st, RVec6::Unit(i)));
    row.push_back(loop_functions(st, {}).f_d);
    csv.row(row);
  };
  emit(s, nan, nan);
  const long steps = std::lround(c.T / c.dt);
  for (long i = 0; i < steps; ++i) {
    LoopState prev = s;
    step(F, s, c.dt);
    s.t = (i + 1) * c.dt;
    const double H = energy(F, s);
    if (!std::isfinite(H)) throw NumericalError("field blowup at t = " + fmt(s.t));
    h_drift = std::max(h_drift, std::abs(H - H0) / std::max(std::abs(H0), 1e-300));
    if ((i + 1) % c.every == 0 || i + 1 == steps) {
      EomResiduals R = eom_residuals(F, prev, s);
      eom_g = std::max(eom_g, R.g);
      eom_dual = std::max(eom_dual, R.dual);
      emit(s, R.g, R.dual);
    }
  }
  json body = {{"preset", P.name},
               {"lambda", {P.lambda.real(), P.lambda.imag()}},
               {"mu", {P.mu.real(), P.mu.imag()}},
               {"boundary", to_string(bc)},
               {"init", kind},
               {"steps", steps},
               {"H0", H0},
               {"H_relative_drift", h_drift},
               {"duality_gap_max", gap_max},
               {"eom_res_g_max", eom_g},
               {"eom_res_dual_max", eom_dual}};
  emit_json(c, body, c.out.empty() ? err : out);
  return 0;
}

int cmd_duality(const RunConfig& c, std::ostream& out) {
  if (c.algebra != "su2-real") throw ConfigError("duality check runs on the real su2 double (algebra su2-real)");
  Preset P = make_preset(c.preset, c.algebra, c.lambda, c.mu);
  FieldModel F = make_field_model(P);
  Boundary bc = parse_boundary(c.boundary);
  const auto& D = sl2c();
  std::mt19937_64 rng(c.seed);
  RVec6 A, B;
  for (int i = 0; i < 6; ++i) A(i) = uniform_pm1(rng);
  for (int i = 0; i < 6; ++i) B(i) = uniform_pm1(rng);
  LoopState s;
  s.N = c.N;
  s.bc = bc;
  s.dx = std::numbers::pi / c.N;
  for (double x : grid_x(c.N, bc))
    s.k.push_back(expm2(c.amplitude * std::sin(2 * x) * D.from_coords(A)) *
                  expm2(c.amplitude * std::cos(2 * x) * D.from_coords(B)));
  DualityGap g = duality_check(F, s);
  json body = {{"preset", P.name}, {"nodes", s.k.size()},       {"hamiltonian_gap", g.hamiltonian},
               {"product_gap", g.product}, {"duality_gap", g.total()}, {"pass", g.total() < 1e-9}};
  emit_json(c, body, out);
  return 0;
}

int cmd_sweep(const RunConfig& c, std::ostream& out) {
  std::vector<double> lambdas = c.lambdas.empty() ? std::vector<double>{0.0} : c.lambdas;
  struct Job {
    double lambda, mu;
    double h_drift = 0, q_drift = 0;
    int truncated = 0, config_error = 0;
  };
  std::vector<Job> jobs;
  for (double l : lambdas)
    for (double m : c.mus) jobs.push_back({l, m});
  const Model M = make_model(c.algebra);
  const int nj = static_cast<int>(jobs.size());
  // independent replicas; results land in their own slot
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < nj; ++i) {
    Job& J = jobs[i];
    try {
      Preset P = make_preset(M, J.lambda, J.mu, "custom");
      Splitting S = make_splitting(P);
      ParticleState s0;
      s0.p = Vec(3);
      if (c.p0.size() == 3)
        s0.p << c.p0[0], c.p0[1], c.p0[2];
      else
        s0.p << 0.3, -0.2, 0.5;
      Trajectory tr = integrate_particle(S, s0, c.dt, c.T);
      Vec Q0 = charges(S, s0.u, s0.p).Q_G;
      for (size_t k = 0; k < tr.states.size(); ++k) {
        J.h_drift = std::max(J.h_drift, std::abs(tr.H[k] - tr.H[0]));
        J.q_drift = std::max(J.q_drift, max_abs(Vec(charges(S, tr.states[k].u, tr.states[k].p).Q_G - Q0)));
      }
      J.truncated = tr.truncated;
    } catch (const ConfigError&) {
      J.config_error = 1;
    } catch (const NumericalError&) {
      J.truncated = 1;
    }
  }
  Sink sink(c, ".csv", out);
  CsvWriter csv(*sink, c, {"lambda", "mu", "H_drift", "Q_G_drift", "truncated", "config_error"});
  for (const auto& J : jobs)
    csv.row({J.lambda, J.mu, J.h_drift, J.q_drift, double(J.truncated), double(J.config_error)});
  return 0;
}

int cmd_limits(const RunConfig& c, std::ostream& out, std::ostream& err) {
  std::vector<double> mus = c.mus, dg, dd;
  Sink sink(c, ".csv", out);
  CsvWriter csv(*sink, c, {"mu", "dev_g", "dev_dual"});
  for (double m : mus) {
    LimitSample L = principal_limit_sample(m);
    dg.push_back(L.dev_g);
    dd.push_back(L.dev_dual);
    csv.row({m, L.dev_g, L.dev_dual});
  }
  json body = {{"slope_g", mus.size() > 1 ? loglog_slope(mus, dg) : 0.0},
               {"slope_dual", mus.size() > 1 ? loglog_slope(mus, dd) : 0.0}};
  emit_json(c, body, c.out.empty() ? err : out);
  return 0;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    RunConfig c = cfg;
    validate_config(c);
    if (c.command == "validate") return cmd_validate(c, out);
    if (c.command == "particle") return cmd_particle(c, out, err);
    if (c.command == "field") return cmd_field(c, out, err);
    if (c.command == "duality") return cmd_duality(c, out);
    if (c.command == "sweep") return cmd_sweep(c, out);
    return cmd_limits(c, out, err);
  } catch (const ConfigError& e) {
    err << error_json("config", e.what()).dump() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    err << error_json("numerical", e.what()).dump() << "\n";
    return 3;
  }
}

}  // namespace pl
