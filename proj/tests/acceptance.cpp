// Acceptance checks: one line per criterion, sub-checks indented below it.
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "pl/duality.hpp"
#include "pl/field.hpp"
#include "pl/particle.hpp"

using namespace pl;

namespace {

struct Check {
  std::string name;
  double value;
  double tol;
  bool pass;
};

struct Criterion {
  int id;
  std::string title;
  std::vector<Check> checks;

  // value < tol
  void below(const std::string& name, double value, double tol) {
    checks.push_back({name, value, tol, std::isfinite(value) && value < tol});
  }
  // |value - target| <= tol
  void near(const std::string& name, double value, double target, double tol) {
    checks.push_back({name + " (target " + fmt_num(target) + ")", value, tol,
                      std::isfinite(value) && std::abs(value - target) <= tol});
  }
  void truth(const std::string& name, bool ok) { checks.push_back({name, ok ? 1.0 : 0.0, 1.0, ok}); }

  static std::string fmt_num(double x) {
    char b[32];
    std::snprintf(b, sizeof b, "%g", x);
    return b;
  }

  bool report() const {
    bool ok = true;
    for (const auto& c : checks) ok = ok && c.pass;
    std::printf("CRITERION %d: %s  %s\n", id, ok ? "PASS" : "FAIL", title.c_str());
    for (const auto& c : checks)
      std::printf("    [%s] %s: %.3e (tol %.1e)\n", c.pass ? "ok" : "FAIL", c.name.c_str(), c.value, c.tol);
    std::fflush(stdout);
    return ok;
  }
};

struct Rng {
  std::mt19937_64 g;
  explicit Rng(std::uint64_t s) : g(s) {}
  double operator()() { return 2.0 * static_cast<double>(g() >> 11) * 0x1.0p-53 - 1.0; }
  Vec real(int n) {
    Vec x(n);
    for (int i = 0; i < n; ++i) x(i) = (*this)();
    return x;
  }
  Vec complex(int n) {
    Vec x(n);
    for (int i = 0; i < n; ++i) x(i) = cd((*this)(), (*this)());
    return x;
  }
};

Vec vec3(cd a, cd b, cd c) {
  Vec v(3);
  v << a, b, c;
  return v;
}

Criterion algebraic() {
  Criterion C{1, "algebraic validation (sl2(R), su2)", {}};
  Rng r(101);
  for (const char* name : {"sl2r", "su2"}) {
    std::string n = name;
    Model M = make_model(name);
    C.below(n + " CYBE residual", cybe_residual(M.B.g, M.B.r), 1e-13);
    C.below(n + " ad-invariance of 2r+", ad_invariance_residual(M.B.g, M.B.r), 1e-12);
    LieAlgebra table = n == "sl2r" ? sl2r_dual_table() : su2_dual_table();
    C.below(n + " dual brackets vs printed table", max_diff(M.B.m, table), 1e-13);
    DoubleAlgebra D = build_double(M.B);
    C.below(n + " double Jacobi", jacobi_residual(D.d), 1e-12);
    double hom = 0, tr = 0;
    for (int t = 0; t < 20; ++t) {
      Vec x = r.complex(6), y = r.complex(6);
      auto [xl, xr] = double_iso_lr(M.B, x);
      auto [yl, yr] = double_iso_lr(M.B, y);
      auto [zl, zr] = double_iso_lr(M.B, bracket(D.d, x, y));
      hom = std::max({hom, max_abs(Vec(zl - bracket(M.B.g, xl, yl))), max_abs(Vec(zr - bracket(M.B.g, xr, yr)))});
      tr = std::max(tr, std::abs(iso_pairing(M.B, x, y) - pair(D.pairing, x, y)));
    }
    C.below(n + " g_L + g_R homomorphism defect", hom, 1e-12);
    C.below(n + " pairing transport", tr, 1e-12);
  }
  return C;
}

Criterion splittings() {
  Criterion C{2, "splitting suite (100 random complex lambda, mu)", {}};
  Rng r(202);
  double orth = 0, diag = 0, proj = 0;
  int count = 0;
  while (count < 100) {
    Model M = make_model(count % 2 ? "su2" : "sl2r");
    cd lam(2 * r(), 2 * r()), mu(2 * r(), 2 * r());
    if (std::abs(lam + 1.0 + 2.0 * mu) <= 0.1) continue;
    SplittingReport R = check_splitting(make_splitting(M, lam, mu));
    orth = std::max(orth, R.orthogonality);
    diag = std::max({diag, R.diag_plus, R.diag_minus});
    proj = std::max({proj, R.idempotence, R.sum, R.self_adjoint});
    ++count;
  }
  C.below("E+ / E- orthogonality", orth, 1e-10);
  C.below("diagonal pairings vs +-(lambda+1+2mu) K^-1", diag, 1e-10);
  C.below("projector identities", proj, 1e-12);
  bool detected = true;
  for (const char* name : {"sl2r", "su2"})
    for (cd lam : {cd(0.0), cd(0.3, 0.2), cd(-2.0, 1.0)}) {
      cd mu = -(lam + 1.0) / 2.0;
      try {
        make_splitting(make_model(name), lam, mu);
        detected = false;
      } catch (const ConfigError&) {
      }
    }
  C.truth("rank drop at lambda+1+2mu = 0 detected", detected);
  return C;
}

Criterion graph_paths() {
  Criterion C{3, "graph-coordinate path equivalence (100 random u)", {}};
  Rng r(303);
  double defect = 0, indep = 0;
  for (int t = 0; t < 100; ++t) {
    Model M = make_model(t % 2 ? "su2" : "sl2r");
    Realization R(M.rep);
    cd lam(r(), r()), mu(r(), r());
    if (std::abs(lam + 1.0 + 2.0 * mu) <= 0.1) mu += 1.0;
    Splitting S = make_splitting(M, lam, mu);
    Mat A = R.adjoint(R.exp(r.real(3)).inverse());
    defect = std::max(defect, graph_path_defect(S, A));
    Splitting S0 = make_splitting(M, 0.0, mu);
    GraphCoord G = graph_at(S0, A);
    indep = std::max({indep, max_abs(Mat(G.Einv - S0.Einv)), max_abs(Mat(G.Tinv - S0.Tinv))});
  }
  C.below("Fqua = Fgenqua = EPi = double", defect, 1e-11);
  C.below("lambda = 0 u-independence", indep, 1e-12);
  return C;
}

Criterion su2_closed_forms() {
  Criterion C{4, "SU(2) closed forms", {}};
  Model M = make_su2();
  Realization R(M.rep);
  Splitting S = make_splitting(M, -1.0, 1.0);
  Rng r(404);
  double pir = 0, lag = 0, eps = 0;
  for (int t = 0; t < 50; ++t) {
    cd a(r(), r()), b(r(), r());
    double n = std::sqrt(std::norm(a) + std::norm(b));
    a /= n;
    b /= n;
    M2 u = su2_from_ab(a, b);
    Mat Ai = R.adjoint(u.inverse());
    pir = std::max(pir, max_abs(Mat(pi_r(M.B, Ai) - su_pi_r_closed(a, b))));
    Vec xp = r.real(3), xm = r.real(3);
    cd L = lagrangian_g(S, Ai, xp, xm);
    cd Lt = modprisu2_lagrangian(a, b, R.from_coords(xp), R.from_coords(xm));
    lag = std::max(lag, std::abs(L - Lt) / std::abs(Lt));
    Eigen::Vector3cd p = 0.5 * r.complex(3);
    eps = std::max(eps, max_abs(Mat(invert_eps_matrix(p) - eps_matrix(p).partialPivLu().inverse())));
  }
  C.below("Pi^R(u) vs closed form (50 samples)", pir, 1e-12);
  C.below("modified-principal Lagrangian, generic vs trace form (relative)", lag, 1e-10);
  C.below("epsilon-matrix closed inverse vs dense solve", eps, 1e-13);
  return C;
}

Criterion particle() {
  Criterion C{5, "point-particle analytic regression", {}};
  // pure quasitriangular sl2(R)
  Model M = make_sl2r();
  Splitting S = make_splitting(M, 0.0, 0.0);
  const double w = 1.0, x = 0.3;
  ParticleState s0;
  s0.p = vec3(2 * w, x, x);
  Trajectory tr = integrate_particle(S, s0, 1e-3, 1.0);
  const ParticleState& end = tr.states.back();
  M2 u_ref = expm2(-0.5 * w * end.t * M.rep[0]);
  C.below("pure-qt u(1) vs u(0) exp(-w t H / 2)", (end.u - u_ref).cwiseAbs().maxCoeff(), 1e-8);
  // basis order (phi, psi+, psi-): printed p(t) = 2w phi + e^{-wt} x psi- + e^{wt} xbar psi+
  Vec p_printed = vec3(2 * w, std::exp(w * end.t) * x, std::exp(-w * end.t) * x);
  C.below("pure-qt p(1) vs printed closed form", max_abs(Vec(end.p - p_printed)), 1e-8);
  Vec Q0 = charges(S, s0.u, s0.p).Q_G;
  double dQ = 0;
  for (const auto& st : tr.states) dQ = std::max(dQ, max_abs(Vec(charges(S, st.u, st.p).Q_G - Q0)));
  Splitting Sg = make_splitting(make_su2(), 0.0, 0.8);
  ParticleState g0;
  g0.u = su2_from_ab(cd(0.6, 0.0), cd(0.0, 0.8));
  g0.p = vec3(0.3, -0.2, 0.5);
  Trajectory tg = integrate_particle(Sg, g0, 1e-3, 1.0);
  Vec Qg = charges(Sg, g0.u, g0.p).Q_G;
  for (const auto& st : tg.states) dQ = std::max(dQ, max_abs(Vec(charges(Sg, st.u, st.p).Q_G - Qg)));
  C.below("Q_G drift (pure-qt sl2, G-invariant su2)", dQ, 1e-10);

  // Riccati branch h(0) = 0.3, omega = 1: x0 y0 = 1/4 - h0^2
  const double h0 = 0.3, xy = std::sqrt(0.25 - h0 * h0);
  Eigen::Vector3cd v0(h0, xy, xy);
  auto rt = integrate_riccati(v0, 1e-3, 1.0);
  C.below("Riccati h(1) vs closed form", std::abs(rt.back()(0) - riccati_h(h0, xy, xy, 1.0)), 1e-8);
  double inv = 0;
  for (const auto& v : rt) inv = std::max(inv, std::abs(v(0) * v(0) + v(1) * v(2) - (v0(0) * v0(0) + v0(1) * v0(2))));
  C.below("h^2 + xy drift", inv, 1e-11);
  std::vector<double> dts{0.1, 0.05, 0.025}, errs;
  for (double dt : dts) errs.push_back(std::abs(integrate_riccati(v0, dt, 1.0).back()(0) - riccati_h(h0, xy, xy, 1.0)));
  C.near("observed RK4 order (Riccati)", loglog_slope(dts, errs), 4.0, 0.3);
  // particle self-convergence on the modified principal su2 model
  Splitting Sm = make_splitting(make_su2(), -1.0, 1.0);
  auto end_u = [&](double dt) { return integrate_particle(Sm, g0, dt, 1.0).states.back().u; };
  M2 ref = end_u(1e-4);
  std::vector<double> pdts{0.1, 0.05, 0.025}, perr;
  for (double dt : pdts) perr.push_back((end_u(dt) - ref).cwiseAbs().maxCoeff());
  C.near("observed RKMK4 order (particle)", loglog_slope(pdts, perr), 4.0, 0.3);

  // principal limit at large mu: u(t) = u(0) exp(-t K^-1 pbar), pbar in renormalized units
  Model M0 = make_su2();
  Realization R0(M0.rep);
  Splitting Sl = make_splitting(make_preset("principal-limit", "su2", std::nullopt, cd(1e10)));
  Trajectory tl = integrate_particle(Sl, g0, 1e-3, 1.0);
  M2 ul = g0.u * R0.exp(Vec(-1.0 * M0.B.Kinv * g0.p));
  C.below("principal-limit u(1) vs closed form (mu = 1e10)", (tl.states.back().u - ul).cwiseAbs().maxCoeff(), 1e-9);
  C.below("principal-limit pbar drift", max_abs(Vec(tl.states.back().p - g0.p)), 1e-9);
  return C;
}

LoopState two_mode(int N, double a) {
  const auto& D = sl2c();
  RVec6 X, Y;
  X << 0.7, -0.3, 0.5, 0.4, 0.2, -0.6;
  Y << -0.2, 0.5, 0.1, -0.4, 0.6, 0.3;
  LoopState s;
  s.N = N;
  s.bc = Boundary::Periodic;
  s.dx = std::numbers::pi / N;
  for (double x : grid_x(N, s.bc))
    s.k.push_back(expm2(a * std::sin(2 * x) * D.from_coords(X)) * expm2(a * std::cos(2 * x) * D.from_coords(Y)));
  return s;
}

Criterion field() {
  Criterion C{6, "field simulation (su2 double, N = 64, dt = 2.5e-3, T = 1)", {}};
  const double dt = 2.5e-3, T = 1.0;
  const long steps = std::lround(T / dt);
  FieldModel F = make_field_model(make_preset("modified-principal", "su2-real"));
  {
    LoopState s = two_mode(64, 0.3);
    double H0 = energy(F, s), dH = 0, gap = duality_check(F, s).total();
    for (long i = 0; i < steps; ++i) {
      step(F, s, dt);
      dH = std::max(dH, std::abs(energy(F, s) - H0) / std::abs(H0));
      gap = std::max(gap, duality_check(F, s).total());
    }
    C.below("Hamiltonian relative drift", dH, 1e-6);
    C.below("duality gap (max over run)", gap, 1e-9);
  }
  std::vector<EomResiduals> R;
  for (int N : {32, 64, 128}) {
    double h = dt * 64 / N;
    LoopState s = two_mode(N, 0.3), prev = s;
    for (long i = 0; i < std::lround(T / h); ++i) {
      prev = s;
      step(F, s, h);
    }
    R.push_back(eom_residuals(F, prev, s));
  }
  for (int i = 0; i < 2; ++i) {
    std::string tag = " N=" + std::to_string(32 << i) + "->" + std::to_string(64 << i);
    C.near("g residual ratio" + tag, R[i].g / R[i + 1].g, 4.0, 0.8);
    C.near("dual residual ratio" + tag, R[i].dual / R[i + 1].dual, 4.0, 0.8);
  }
  {
    LoopState q = init_pointlike(su2_from_ab(cd(0.6, 0.0), cd(0.0, 0.8)), Vec3(0.3, -0.2, 0.4), 64);
    double worst = pointlike_constraints(q).max();
    for (long i = 0; i < steps; ++i) {
      step(F, q, dt);
      worst = std::max(worst, pointlike_constraints(q).max());
    }
    C.below("pointlike run: s_x s^-1 spread and dual constancy", worst, 1e-9);
  }
  {
    FieldModel G = make_field_model(make_preset("g-invariant", "su2-real"));
    LoopState s = two_mode(64, 0.3);
    RVec6 I0;
    for (int d = 0; d < 3; ++d) I0(d) = moment_map(s, RVec6::Unit(d));
    double dI = 0;
    for (long i = 0; i < steps; ++i) {
      step(G, s, dt);
      for (int d = 0; d < 3; ++d) dI = std::max(dI, std::abs(moment_map(s, RVec6::Unit(d)) - I0(d)));
    }
    C.below("G-invariant I_delta drift (delta in g)", dI, 1e-7);
  }
  return C;
}

Criterion point_phase() {
  Criterion C{7, "point-phase structure (50 random p)", {}};
  Rng r(707);
  double inv = 0, blocks = 0;
  for (int t = 0; t < 50; ++t) {
    Model M = make_model(t % 2 ? "su2" : "sl2r");
    Vec p = r.complex(3);
    PointPhase P = point_phase_matrices(M.B.g, p);
    inv = std::max(inv, max_abs(Mat(P.symplectic * P.poisson - Mat::Identity(6, 6))));
    // bivector from the bracket relations, ordering (m directions, g directions):
    // {xi, eta} = 2[xi, eta] on linear functions of p, {xi, f} = -2 xi~(f), {f, g} = 0;
    // the Poisson matrix is (2 omega_0)^-1 = gamma / 2
    Mat gamma = Mat::Zero(6, 6);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) gamma(i, j) = 2.0 * bracket(M.B.g, unit(3, i), unit(3, j)).cwiseProduct(p).sum();
      gamma(i, 3 + i) = -2.0;
      gamma(3 + i, i) = 2.0;
    }
    Mat ref = 0.5 * gamma;
    blocks = std::max(blocks, max_abs(Mat(P.poisson - ref)));
  }
  C.below("symplectic * Poisson - id", inv, 1e-13);
  C.below("Poisson blocks vs bracket relations", blocks, 1e-13);
  return C;
}

Criterion limits() {
  Criterion C{8, "limit behaviour (mu in 10, 100, 1000)", {}};
  std::vector<double> mus{10, 100, 1000}, dg, dd;
  for (double m : mus) {
    LimitSample s = principal_limit_sample(m);
    dg.push_back(s.dev_g);
    dd.push_back(s.dev_dual);
  }
  C.near("principal Lagrangian deviation slope", loglog_slope(mus, dg), -1.0, 0.2);
  C.near("dual Lagrangian deviation from 2 t+.t- slope", loglog_slope(mus, dd), -1.0, 0.2);
  return C;
}

}  // namespace

int main() {
  int passed = 0;
  const int total = 8;
  for (auto f : {algebraic, splittings, graph_paths, su2_closed_forms, particle, field, point_phase, limits}) {
    try {
      passed += f().report();
    } catch (const std::exception& e) {
      std::printf("CRITERION ?: FAIL  exception: %s\n", e.what());
    }
  }
  std::printf("ACCEPTANCE: %d/%d criteria passed\n", passed, total);
  return passed == total ? 0 : 1;
}
