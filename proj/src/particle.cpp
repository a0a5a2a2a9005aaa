#include "pl/particle.hpp"

#include <cmath>

namespace pl {

Mat model_adjoint(const Model& M, const M2& u) { return Realization(M.rep).adjoint(u); }

namespace {

Mat solve(const Mat& A, const Mat& B, const char* what) {
  if (!invertible(A)) throw NumericalError(std::string("singular operator: ") + what);
  return A.partialPivLu().solve(B);
}

}  // namespace

ParticleRhs particle_rhs(const Splitting& S, const M2& u, const Vec& p, RhsForm form) {
  const auto& B = S.B();
  ParticleRhs out;
  if (form == RhsForm::GInvariant) {
    if (!S.has_Ee || !S.has_Te) throw NumericalError("G-invariant form needs E_e and T_e");
    Mat U = 2.0 * solve(S.Te - S.Ee, Mat::Identity(S.n, S.n), "T_e - E_e");
    Mat V = 0.5 * (S.Ee + S.Te);
    out.du = U * p;
    out.dp = bracket(B.m, V * out.du, p);
    return out;
  }
  Mat Ad_uinv = model_adjoint(S.preset.model, u.inverse());
  GraphCoord G = graph_at(S, Ad_uinv);
  if (form == RhsForm::Direct) {
    if (!G.has_E || !G.has_T) throw NumericalError("E_u or T_u undefined");
    out.du = -2.0 * solve(G.E - G.T, p, "E_u - T_u");
  } else {
    out.du = 2.0 * G.Tinv * solve(G.Einv - G.Tinv, G.Einv * p, "E_u^-1 - T_u^-1");
  }
  Vec q = solve(G.Einv - G.Tinv, (G.Einv + G.Tinv) * p, "E_u^-1 - T_u^-1");
  out.dp = bracket(B.m, q, p);
  return out;
}

cd particle_hamiltonian(const Splitting& S, const M2& u, const Vec& p) {
  Mat Ad_uinv = model_adjoint(S.preset.model, u.inverse());
  GraphCoord G = graph_at(S, Ad_uinv);
  Vec x = G.Tinv * solve(G.Tinv - G.Einv, G.Einv * p, "T_u^-1 - E_u^-1");
  return 0.5 * p.cwiseProduct(x).sum();
}

Charges charges(const Splitting& S, const M2& u, const Vec& p) {
  const int n = S.n;
  Mat A = model_adjoint(S.preset.model, u);
  Mat Ad = double_adjoint_lr(S.B(), A, A);
  Vec x = Vec::Zero(2 * n);
  x.tail(n) = p;
  Vec y = Ad * x;
  Charges c;
  c.I = -0.5 * (S.pairing * y);
  c.Q_G = y.tail(n);
  c.Q_M = y.head(n);
  return c;
}

namespace {

// left-trivialized dexp^{-1} truncated at order 4
Vec dexpinv_left(const LieAlgebra& g, const Vec& T, const Vec& A) {
  Vec c1 = bracket(g, T, A);
  return A + 0.5 * c1 + bracket(g, T, c1) / 12.0;
}

M2 normalize(const M2& u) { return u / std::sqrt(u.determinant()); }

}  // namespace

ParticleState particle_step(const Splitting& S, const ParticleState& s, double dt, RhsForm form) {
  const auto& g = S.B().g;
  Realization R(S.preset.model.rep);
  auto f = [&](const M2& u, const Vec& p) { return particle_rhs(S, u, p, form); };
  ParticleRhs k1 = f(s.u, s.p);
  Vec T1 = dt * k1.du;
  ParticleRhs k2 = f(s.u * R.exp(0.5 * T1), s.p + 0.5 * dt * k1.dp);
  Vec T2 = dt * dexpinv_left(g, 0.5 * T1, k2.du);
  ParticleRhs k3 = f(s.u * R.exp(0.5 * T2), s.p + 0.5 * dt * k2.dp);
  Vec T3 = dt * dexpinv_left(g, 0.5 * T2, k3.du);
  ParticleRhs k4 = f(s.u * R.exp(T3), s.p + dt * k3.dp);
  Vec T4 = dt * dexpinv_left(g, T3, k4.du);
  ParticleState o;
  o.u = normalize(s.u * R.exp((T1 + 2.0 * T2 + 2.0 * T3 + T4) / 6.0));
  o.p = s.p + dt / 6.0 * (k1.dp + 2.0 * k2.dp + 2.0 * k3.dp + k4.dp);
  o.t = s.t + dt;
  return o;
}

Trajectory integrate_particle(const Splitting& S, const ParticleState& s0, double dt, double T, RhsForm form) {
  if (!(dt > 0.0) || !(T >= 0.0)) throw ConfigError("integrate_particle: need dt > 0 and T >= 0");
  if (s0.p.size() != S.n) throw ConfigError("integrate_particle: p has wrong dimension");
  Trajectory tr;
  const long steps = std::lround(T / dt);
  ParticleState s = s0;
  try {
    tr.states.push_back(s);
    tr.H.push_back(particle_hamiltonian(S, s.u, s.p));
    for (long i = 0; i < steps; ++i) {
      s = particle_step(S, s, dt, form);
      s.t = s0.t + (i + 1) * dt;
      cd H = particle_hamiltonian(S, s.u, s.p);
      if (!std::isfinite(std::abs(H)) || !s.p.allFinite()) throw NumericalError("non-finite state");
      tr.states.push_back(s);
      tr.H.push_back(H);
    }
  } catch (const NumericalError& e) {
    tr.truncated = true;
    tr.message = e.what();
  }
  return tr;
}

PointPhase point_phase_matrices(const LieAlgebra& g, const Vec& p) {
  const int n = g.dim;
  if (p.size() != n) throw ConfigError("point_phase_matrices: p has wrong dimension");
  Mat A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cd a = 0.0;
      for (int k = 0; k < n; ++k) a += p(k) * g.C(i, j, k);
      A(i, j) = a;
    }
  Mat I = Mat::Identity(n, n);
  PointPhase out;
  out.symplectic = Mat::Zero(2 * n, 2 * n);
  out.symplectic.topRightCorner(n, n) = I;
  out.symplectic.bottomLeftCorner(n, n) = -I;
  out.symplectic.bottomRightCorner(n, n) = A;
  out.poisson = Mat::Zero(2 * n, 2 * n);
  out.poisson.topLeftCorner(n, n) = A;
  out.poisson.topRightCorner(n, n) = -I;
  out.poisson.bottomLeftCorner(n, n) = I;
  return out;
}

Eigen::Vector3cd riccati_rhs(const Eigen::Vector3cd& v) {
  return {2.0 * v(1) * v(2), -2.0 * v(0) * v(1), -2.0 * v(0) * v(2)};
}

std::vector<Eigen::Vector3cd> integrate_riccati(const Eigen::Vector3cd& v0, double dt, double T) {
  if (!(dt > 0.0)) throw ConfigError("integrate_riccati: need dt > 0");
  const long steps = std::lround(T / dt);
  std::vector<Eigen::Vector3cd> out{v0};
  Eigen::Vector3cd v = v0;
  for (long i = 0; i < steps; ++i) {
    Eigen::Vector3cd k1 = riccati_rhs(v), k2 = riccati_rhs(v + 0.5 * dt * k1);
    Eigen::Vector3cd k3 = riccati_rhs(v + 0.5 * dt * k2), k4 = riccati_rhs(v + dt * k3);
    v += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    out.push_back(v);
  }
  return out;
}

cd riccati_h(cd h0, cd x0, cd y0, double t) {
  cd w = std::sqrt(4.0 * (h0 * h0 + x0 * y0));
  if (std::abs(w) < 1e-14) return h0 / (1.0 + 2.0 * h0 * t);
  cd c = 2.0 * h0 / w;
  return 0.5 * w * (std::sinh(w * t) + c * std::cosh(w * t)) / (std::cosh(w * t) + c * std::sinh(w * t));
}

double conjugate_description_residual(const Splitting& S, const Trajectory& tr, double dt) {
  const int n = S.n;
  const int M = static_cast<int>(tr.states.size());
  double worst = 0.0;
  for (int j = 2; j + 2 < M; ++j) {
    const auto& st = tr.states;
    Vec pdot = (st[j - 2].p - 8.0 * st[j - 1].p + 8.0 * st[j + 1].p - st[j + 2].p) / (12.0 * dt);
    Mat Ad_uinv = model_adjoint(S.preset.model, st[j].u.inverse());
    GraphCoord G = graph_at(S, Ad_uinv);
    Mat D = projector_difference(G);  // pi_u+ - pi_u-
    Vec x = Vec::Zero(2 * n);
    x.tail(n) = st[j].p;
    Vec Z = -(D * x).tail(n);
    worst = std::max(worst, max_abs(Vec(pdot - bracket(S.B().m, Z, st[j].p))));
  }
  return worst;
}

}  // namespace pl
