#include "pl/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pl {

Boundary parse_boundary(const std::string& s) {
  if (s == "double-neumann") return Boundary::DoubleNeumann;
  if (s == "periodic") return Boundary::Periodic;
  if (s == "free") return Boundary::Free;
  throw ConfigError("unknown boundary '" + s + "' (double-neumann, periodic, free)");
}

std::string to_string(Boundary b) {
  switch (b) {
    case Boundary::DoubleNeumann: return "double-neumann";
    case Boundary::Periodic: return "periodic";
    case Boundary::Free: return "free";
  }
  return "?";
}

FieldModel make_field_model(const Preset& P) {
  if (P.model.name != "su2-real")
    throw ConfigError("field simulation needs the real su2 model (algebra su2-real)");
  FieldModel F;
  F.S = make_splitting(P);
  if (max_abs(Mat(F.S.Einv.imag().cast<cd>())) > 1e-12 || max_abs(Mat(F.S.Tinv.imag().cast<cd>())) > 1e-12)
    throw ConfigError("splitting is not real: need mu = -(lambda+1)/2 + i s with real lambda");
  F.P = F.S.P.real();
  F.pairing = F.S.pairing.real();
  F.Ee_inv = F.S.Einv;
  F.Te_inv = F.S.Tinv;
  return F;
}

FieldModel flipped(const FieldModel& F) {
  FieldModel G = F;
  G.P = -F.P;
  std::swap(G.Ee_inv, G.Te_inv);
  G.flipped = !F.flipped;
  return G;
}

std::vector<double> grid_x(int N, Boundary bc) {
  const double dx = std::numbers::pi / N;
  const int M = bc == Boundary::Periodic ? N : N + 1;
  std::vector<double> x(M);
  for (int j = 0; j < M; ++j) x[j] = j * dx;
  return x;
}

namespace {

int node_count(int N, Boundary bc) { return bc == Boundary::Periodic ? N : N + 1; }

void check_grid(int N, Boundary bc) {
  if (N < 8) throw ConfigError("grid needs N >= 8");
  if (bc != Boundary::Periodic && N % 2) throw ConfigError("Simpson quadrature needs even N");
}

M2 unimodular(const M2& k) { return k / std::sqrt(k.determinant()); }

}  // namespace

LoopState init_from_us(const std::vector<M2>& u, const std::vector<M2>& s, int N, Boundary bc) {
  check_grid(N, bc);
  const int M = node_count(N, bc);
  if (static_cast<int>(u.size()) != M || static_cast<int>(s.size()) != M)
    throw ConfigError("init_from_us: wrong number of nodes");
  LoopState st;
  st.N = N;
  st.bc = bc;
  st.dx = std::numbers::pi / N;
  st.k.resize(M);
  for (int j = 0; j < M; ++j) {
    if (std::abs((u[j].adjoint() * u[j] - M2::Identity()).norm()) > 1e-10)
      throw ConfigError("init_from_us: u is not unitary");
    if (std::abs(s[j](1, 0)) > 1e-12 || s[j](0, 0).real() <= 0.0 || std::abs(s[j](0, 0).imag()) > 1e-12)
      throw ConfigError("init_from_us: s is not in SU2*");
    st.k[j] = unimodular(u[j] * s[j]);
  }
  return st;
}

LoopState init_pointlike(const M2& u0, const Vec3& p, int N, Boundary bc) {
  check_grid(N, bc);
  const auto& D = sl2c();
  M2 Pm = p(0) * D.F[0] + p(1) * D.F[1] + p(2) * D.F[2];
  LoopState st;
  st.N = N;
  st.bc = bc;
  st.dx = std::numbers::pi / N;
  for (double x : grid_x(N, bc)) st.k.push_back(u0 * expm2(x * Pm));
  return st;
}

std::vector<M2> derivative(const LoopState& s, bool parallel) {
  const int M = static_cast<int>(s.k.size());
  const double h12 = 12.0 * s.dx;
  const auto& k = s.k;
  std::vector<M2> out(M);
  if (s.bc == Boundary::Periodic) {
#pragma omp parallel for schedule(static) if (parallel)
    for (int j = 0; j < M; ++j) {
      auto at = [&](int i) -> const M2& { return k[(i % M + M) % M]; };
      out[j] = (at(j - 2) - 8.0 * at(j - 1) + 8.0 * at(j + 1) - at(j + 2)) / h12;
    }
    return out;
  }
  if (s.bc == Boundary::Free) {
    // group-geometric ghosts k_{-m} = (k0 k1^-1)^m k0
    M2 q0 = k[0] * k[1].inverse(), qN = k[M - 1] * k[M - 2].inverse();
    std::vector<M2> ext(M + 4);
    ext[1] = q0 * k[0];
    ext[0] = q0 * ext[1];
    for (int j = 0; j < M; ++j) ext[j + 2] = k[j];
    ext[M + 2] = qN * k[M - 1];
    ext[M + 3] = qN * ext[M + 2];
#pragma omp parallel for schedule(static) if (parallel)
    for (int j = 0; j < M; ++j) out[j] = (ext[j] - 8.0 * ext[j + 1] + 8.0 * ext[j + 3] - ext[j + 4]) / h12;
    return out;
  }
#pragma omp parallel for schedule(static) if (parallel)
  for (int j = 2; j < M - 2; ++j) out[j] = (k[j - 2] - 8.0 * k[j - 1] + 8.0 * k[j + 1] - k[j + 2]) / h12;
  out[0] = (-25.0 * k[0] + 48.0 * k[1] - 36.0 * k[2] + 16.0 * k[3] - 3.0 * k[4]) / h12;
  out[1] = (-3.0 * k[0] - 10.0 * k[1] + 18.0 * k[2] - 6.0 * k[3] + k[4]) / h12;
  out[M - 1] = -(-25.0 * k[M - 1] + 48.0 * k[M - 2] - 36.0 * k[M - 3] + 16.0 * k[M - 4] - 3.0 * k[M - 5]) / h12;
  out[M - 2] = -(-3.0 * k[M - 1] - 10.0 * k[M - 2] + 18.0 * k[M - 3] - 6.0 * k[M - 4] + k[M - 5]) / h12;
  return out;
}

std::vector<RVec6> currents(const LoopState& s, bool parallel) {
  const auto& D = sl2c();
  std::vector<M2> kx = derivative(s, parallel);
  const int M = static_cast<int>(s.k.size());
  std::vector<RVec6> w(M);
#pragma omp parallel for schedule(static) if (parallel)
  for (int j = 0; j < M; ++j) w[j] = D.coords(kx[j] * s.k[j].inverse());
  return w;
}

std::vector<M2> rhs(const FieldModel& F, const LoopState& s, bool parallel) {
  const auto& D = sl2c();
  std::vector<RVec6> w = currents(s, parallel);
  const int M = static_cast<int>(s.k.size());
  std::vector<M2> A(M);
  const RMat6 Am = -F.P;
#pragma omp parallel for schedule(static) if (parallel)
  for (int j = 0; j < M; ++j) A[j] = D.from_coords(Am * w[j]);
  if (s.bc == Boundary::DoubleNeumann) {
    A[0].setZero();
    A[M - 1].setZero();
  }
  return A;
}

namespace {

M2 comm(const M2& a, const M2& b) { return a * b - b * a; }

// right-trivialized dexp^{-1} truncated at order 4
M2 dexpinv(const M2& T, const M2& A) {
  M2 c1 = comm(T, A);
  return A - 0.5 * c1 + comm(T, c1) / 12.0;
}

LoopState shifted(const LoopState& s, const std::vector<M2>& Th, bool parallel) {
  LoopState o = s;
  const int M = static_cast<int>(s.k.size());
#pragma omp parallel for schedule(static) if (parallel)
  for (int j = 0; j < M; ++j) o.k[j] = expm2(Th[j]) * s.k[j];
  return o;
}

}  // namespace

void step(const FieldModel& F, LoopState& s, double dt, bool parallel) {
  const int M = static_cast<int>(s.k.size());
  std::vector<M2> F1 = rhs(F, s, parallel), F2(M), F3(M), F4(M), H(M);
  for (auto& a : F1) a *= dt;
#pragma omp parallel for schedule(static) if (parallel)
  for (int j = 0; j < M; ++j) H[j] = 0.5 * F1[j];
  std::vector<M2> A2 = rhs(F, shifted(s, H, parallel), parallel);
#pragma omp parallel for schedule(static) if (parallel)
  for (int j = 0; j < M; ++j) {
    F2[j] = dt * dexpinv(0.5 * F1[j], A2[j]);
    H[j] = 0.5 * F2[j];
  }
  std::vector<M2> A3 = rhs(F, shifted(s, H, parallel), parallel);
#pragma omp parallel for schedule(static) if (parallel)
  for (int j = 0; j < M; ++j) F3[j] = dt * dexpinv(0.5 * F2[j], A3[j]);
  std::vector<M2> A4 = rhs(F, shifted(s, F3, parallel), parallel);
#pragma omp parallel for schedule(static) if (parallel)
  for (int j = 0; j < M; ++j) {
    F4[j] = dt * dexpinv(F3[j], A4[j]);
    M2 Th = (F1[j] + 2.0 * F2[j] + 2.0 * F3[j] + F4[j]) / 6.0;
    s.k[j] = unimodular(expm2(Th) * s.k[j]);
  }
  s.t += dt;
}

RVec quadrature_weights(const LoopState& s) {
  const int M = static_cast<int>(s.k.size());
  RVec w(M);
  if (s.bc == Boundary::Periodic) {
    w.setConstant(s.dx);
    return w;
  }
  for (int j = 0; j < M; ++j) w(j) = (j == 0 || j == M - 1) ? 1.0 : (j % 2 ? 4.0 : 2.0);
  return w * (s.dx / 3.0);
}

double energy(const FieldModel& F, const LoopState& s, bool parallel) {
  std::vector<RVec6> w = currents(s, parallel);
  const int M = static_cast<int>(w.size());
  RVec dens(M);
#pragma omp parallel for schedule(static) if (parallel)
  for (int j = 0; j < M; ++j) dens(j) = 0.25 * w[j].dot(F.pairing * (F.P * w[j]));
  // fixed-order reduction
  RVec q = quadrature_weights(s);
  double H = 0.0;
  for (int j = 0; j < M; ++j) H += q(j) * dens(j);
  return H;
}

namespace {

// loop functionals: 8th-order central differences on periodic grids, the flow stencils otherwise
std::vector<RVec6> diagnostic_currents(const LoopState& s) {
  if (s.bc != Boundary::Periodic) return currents(s, false);
  const auto& D = sl2c();
  const int M = static_cast<int>(s.k.size());
  static constexpr double c[4] = {4.0 / 5, -1.0 / 5, 4.0 / 105, -1.0 / 280};
  std::vector<RVec6> w(M);
  for (int j = 0; j < M; ++j) {
    M2 d = M2::Zero();
    for (int m = 1; m <= 4; ++m) d += c[m - 1] * (s.k[(j + m) % M] - s.k[(j - m + M) % M]);
    w[j] = D.coords(d / s.dx * s.k[j].inverse());
  }
  return w;
}

}  // namespace

double moment_map(const LoopState& s, const RVec6& delta) {
  std::vector<RVec6> w = diagnostic_currents(s);
  RVec q = quadrature_weights(s);
  RMat6 Pr = RMat6::Zero();
  Pr.topRightCorner<3, 3>().setIdentity();
  Pr.bottomLeftCorner<3, 3>().setIdentity();
  double I = 0.0;
  for (size_t j = 0; j < w.size(); ++j) I += q(j) * w[j].dot(Pr * delta);
  return -0.5 * I;
}

LoopFunctions loop_functions(const LoopState& s, const std::vector<RVec6>& v) {
  std::vector<RVec6> w = diagnostic_currents(s);
  if (!v.empty() && v.size() != w.size()) throw ConfigError("loop_functions: v has wrong length");
  if (!v.empty() && s.bc != Boundary::Periodic &&
      (v.front().norm() > 1e-12 || v.back().norm() > 1e-12))
    throw ConfigError("loop_functions: v must vanish at the end points");
  RVec q = quadrature_weights(s);
  RMat6 Pr = RMat6::Zero();
  Pr.topRightCorner<3, 3>().setIdentity();
  Pr.bottomLeftCorner<3, 3>().setIdentity();
  LoopFunctions out;
  for (size_t j = 0; j < w.size(); ++j) {
    if (!v.empty()) out.f_v += q(j) * w[j].dot(Pr * v[j]);
    out.f_d += q(j) * w[j].dot(Pr * w[j]);
  }
  out.f_v *= -0.5;
  out.f_d *= -0.25;
  return out;
}

namespace {

const Realization& su2_rep() {
  static const Realization R(make_su2().rep);
  return R;
}

const QuasiBialgebra& real_bialgebra() {
  static const QuasiBialgebra B = make_su2_real().B;
  return B;
}

Eigen::Matrix3d m_adjoint(const M2& t) {
  return sl2c().adjoint(t).bottomRightCorner<3, 3>();
}

struct NodeData {
  Vec ap, am;  // light-cone currents in m (u side) or g (dual side)
  bool ok = true;
};

// per level: a_+ = T_u(u^-1 u_+), a_- = E_u(u^-1 u_-) and b_+ = That_t(t^-1 t_+), b_- = Ehat_t(t^-1 t_-)
void level_data(const FieldModel& F, const LoopState& s, std::vector<NodeData>& U, std::vector<NodeData>& V,
                std::vector<M2>& sfac) {
  const auto& D = sl2c();
  std::vector<RVec6> w = currents(s, false);
  std::vector<M2> A = rhs(F, s, false);
  const int M = static_cast<int>(s.k.size());
  U.assign(M, {});
  V.assign(M, {});
  sfac.assign(M, M2::Zero());
  for (int j = 0; j < M; ++j) {
    RVec6 kd = D.coords(A[j]);
    auto [u, sm] = factorize_gm(s.k[j]);
    sfac[j] = sm;
    RMat6 Aui = D.adjoint(u.inverse());
    Vec xt = (Aui * kd).head<3>().cast<cd>();
    Vec xx = (Aui * w[j]).head<3>().cast<cd>();
    Mat Ad_uinv = su2_rep().adjoint(u.inverse());
    GraphCoord G = graph_at(F.S, Ad_uinv);
    Mat Einv = F.flipped ? G.Tinv : G.Einv, Tinv = F.flipped ? G.Einv : G.Tinv;
    if (invertible(Einv) && invertible(Tinv)) {
      U[j].ap = Tinv.partialPivLu().solve(Vec(0.5 * (xt + xx)));
      U[j].am = Einv.partialPivLu().solve(Vec(0.5 * (xt - xx)));
    } else {
      U[j].ok = false;
    }
    auto [t, v] = factorize_mg(s.k[j]);
    (void)v;
    RMat6 Ati = D.adjoint(t.inverse());
    Vec yt = (Ati * kd).tail<3>().cast<cd>();
    Vec yx = (Ati * w[j]).tail<3>().cast<cd>();
    Vec3 sv = star_from_matrix(t);
    Mat Am = m_adjoint(t).cast<cd>();
    Mat Ami = Am.inverse();
    auto hat_inv = [&](const Mat& Xe) -> Mat {
      Mat Xbar = Xe.inverse() - hat_pi(sv) / F.S.preset.model.kappa;
      return Ami * Xbar * Ami.transpose();  // g -> m
    };
    Mat Eh_inv = hat_inv(F.Ee_inv), Th_inv = hat_inv(F.Te_inv);
    if (invertible(Eh_inv) && invertible(Th_inv)) {
      V[j].ap = Th_inv.partialPivLu().solve(Vec(0.5 * (yt + yx)));
      V[j].am = Eh_inv.partialPivLu().solve(Vec(0.5 * (yt - yx)));
    } else {
      V[j].ok = false;
    }
  }
}

double zero_curvature(const LieAlgebra& L, const std::vector<NodeData>& a, const std::vector<NodeData>& b,
                      double dt, double dx, bool periodic, int& skipped) {
  const int M = static_cast<int>(a.size());
  auto idx = [&](int i) { return periodic ? (i % M + M) % M : i; };
  double worst = 0.0;
  skipped = 0;
  const int lo = periodic ? 0 : 2, hi = periodic ? M : M - 2;
  for (int j = lo; j < hi; ++j) {
    int jm = idx(j - 1), jp = idx(j + 1);
    if (!(a[j].ok && b[j].ok && a[jm].ok && b[jm].ok && a[jp].ok && b[jp].ok)) {
      ++skipped;
      continue;
    }
    auto mid = [&](int i, bool plus) -> Vec { return 0.5 * (plus ? a[i].ap + b[i].ap : a[i].am + b[i].am); };
    Vec pdot = (b[j].ap - a[j].ap) / dt, mdot = (b[j].am - a[j].am) / dt;
    Vec px = (mid(jp, true) - mid(jm, true)) / (2 * dx), mx = (mid(jp, false) - mid(jm, false)) / (2 * dx);
    Vec R = 0.5 * (pdot - px) - 0.5 * (mdot + mx) - bracket(L, mid(j, false), mid(j, true));
    worst = std::max(worst, max_abs(R));
  }
  return worst;
}

}  // namespace

EomResiduals eom_residuals(const FieldModel& F, const LoopState& a, const LoopState& b) {
  if (a.k.size() != b.k.size()) throw ConfigError("eom_residuals: level mismatch");
  const double dt = b.t - a.t;
  if (dt <= 0.0) throw ConfigError("eom_residuals: levels must be increasing in time");
  std::vector<NodeData> Ua, Va, Ub, Vb;
  std::vector<M2> sa, sb;
  level_data(F, a, Ua, Va, sa);
  level_data(F, b, Ub, Vb, sb);
  const bool periodic = a.bc == Boundary::Periodic;
  EomResiduals R;
  R.g = zero_curvature(real_bialgebra().m, Ua, Ub, dt, a.dx, periodic, R.skipped_g);
  R.dual = zero_curvature(real_bialgebra().g, Va, Vb, dt, a.dx, periodic, R.skipped_dual);
  // s_- s^-1 against E_u(u^-1 u_-) at the half step
  const auto& D = sl2c();
  const int M = static_cast<int>(a.k.size());
  auto idx = [&](int i) { return periodic ? (i % M + M) % M : i; };
  const int lo = periodic ? 0 : 1, hi = periodic ? M : M - 1;
  for (int j = lo; j < hi; ++j) {
    if (!Ua[j].ok || !Ub[j].ok) continue;
    M2 smid_inv = 0.5 * (sa[j].inverse() + sb[j].inverse());
    M2 sdot = (sb[j] - sa[j]) / dt * smid_inv;
    auto sx_at = [&](const std::vector<M2>& s) -> M2 {
      return (s[idx(j + 1)] - s[idx(j - 1)]) / (2 * a.dx) * s[j].inverse();
    };
    M2 sx = 0.5 * (sx_at(sa) + sx_at(sb));
    Vec lhs = D.coords(0.5 * (sdot - sx)).tail<3>().cast<cd>();
    Vec rhs_v = 0.5 * (Ua[j].am + Ub[j].am);
    R.sx = std::max(R.sx, max_abs(Vec(lhs - rhs_v)));
  }
  return R;
}

DualityGap duality_check(const FieldModel& F, const LoopState& s) {
  const auto& D = sl2c();
  std::vector<RVec6> w = currents(s, false);
  DualityGap gap;
  for (size_t j = 0; j < s.k.size(); ++j) {
    auto [u, sm] = factorize_gm(s.k[j]);
    auto [t, v] = factorize_mg(s.k[j]);
    gap.product = std::max(gap.product, (u * sm - t * v).cwiseAbs().maxCoeff());
    // (u, s) path: pi_{u+-} from the inverse graph coordinates of u
    RMat6 Aui = D.adjoint(u.inverse());
    RVec6 wu = Aui * w[j];
    GraphCoord G = graph_at(F.S, su2_rep().adjoint(u.inverse()));
    if (F.flipped) std::swap(G.Einv, G.Tinv);
    cd Hus = hamiltonian_us(G, wu.head<3>().cast<cd>(), wu.tail<3>().cast<cd>());
    // (t, v) path: graphs of Ad_{t^-1} E+- over g via the SU2* cocycle
    RMat6 Ati = D.adjoint(t.inverse());
    RVec6 wt = Ati * w[j];
    Vec3 sv = star_from_matrix(t);
    Mat Ami = m_adjoint(t).cast<cd>().inverse();
    auto graph = [&](const Mat& Xe) -> Mat {
      Mat Xhat_inv = Ami * (Xe.inverse() - hat_pi(sv) / F.S.preset.model.kappa) * Ami.transpose();
      Mat B(6, 3);
      B << Mat::Identity(3, 3), Xhat_inv;
      return B;
    };
    Mat Pt = projector(graph(F.Ee_inv), graph(F.Te_inv));
    Mat Pdiff = 2.0 * Pt - Mat::Identity(6, 6);
    Vec wc = wt.cast<cd>();
    cd Htv = 0.25 * (F.S.pairing * (Pdiff * wc)).cwiseProduct(wc).sum();
    gap.hamiltonian = std::max(gap.hamiltonian, std::abs(Hus - Htv));
  }
  return gap;
}

double PointlikeReport::max() const { return std::max({u_spread, p_spread, tv_spread, w_spread}); }

PointlikeReport pointlike_constraints(const LoopState& s) {
  const auto& D = sl2c();
  const int M = static_cast<int>(s.k.size());
  std::vector<M2> us(M), ss(M), tvs(M);
  for (int j = 0; j < M; ++j) {
    auto [u, sm] = factorize_gm(s.k[j]);
    us[j] = u;
    ss[j] = sm;
    auto [t, v] = factorize_mg(s.k[j]);
    tvs[j] = act_m_on_g(t, v);
  }
  LoopState sl = s;
  sl.k = ss;
  std::vector<RVec6> p = currents(sl, false);
  std::vector<RVec6> w = currents(s, false);
  PointlikeReport R;
  const int c = M / 2;
  for (int j = 0; j < M; ++j) {
    R.u_spread = std::max(R.u_spread, (us[j] - us[c]).cwiseAbs().maxCoeff());
    R.tv_spread = std::max(R.tv_spread, (tvs[j] - tvs[c]).cwiseAbs().maxCoeff());
    R.p_spread = std::max(R.p_spread, (p[j] - p[c]).cwiseAbs().maxCoeff());
    R.w_spread = std::max(R.w_spread, (w[j] - w[c]).cwiseAbs().maxCoeff());
  }
  (void)D;
  return R;
}

namespace {

std::vector<RVec6> d4_vec(const std::vector<RVec6>& f, double dx, bool periodic) {
  const int M = static_cast<int>(f.size());
  const double h12 = 12.0 * dx;
  std::vector<RVec6> out(M);
  if (periodic) {
    for (int j = 0; j < M; ++j) {
      auto at = [&](int i) -> const RVec6& { return f[(i % M + M) % M]; };
      out[j] = (at(j - 2) - 8.0 * at(j - 1) + 8.0 * at(j + 1) - at(j + 2)) / h12;
    }
    return out;
  }
  for (int j = 2; j < M - 2; ++j) out[j] = (f[j - 2] - 8.0 * f[j - 1] + 8.0 * f[j + 1] - f[j + 2]) / h12;
  out[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / h12;
  out[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) / h12;
  out[M - 1] = -(-25.0 * f[M - 1] + 48.0 * f[M - 2] - 36.0 * f[M - 3] + 16.0 * f[M - 4] - 3.0 * f[M - 5]) / h12;
  out[M - 2] = -(-3.0 * f[M - 1] - 10.0 * f[M - 2] + 18.0 * f[M - 3] - 6.0 * f[M - 4] + f[M - 5]) / h12;
  return out;
}

}  // namespace

double symplectic_form(const LoopState& s, const std::vector<RVec6>& zz, const std::vector<RVec6>& zy) {
  const int M = static_cast<int>(s.k.size());
  if (static_cast<int>(zz.size()) != M || static_cast<int>(zy.size()) != M)
    throw ConfigError("symplectic_form: variation length mismatch");
  const auto& D = sl2c();
  RMat6 Pr = RMat6::Zero();
  Pr.topRightCorner<3, 3>().setIdentity();
  Pr.bottomLeftCorner<3, 3>().setIdentity();
  const bool periodic = s.bc == Boundary::Periodic;
  std::vector<RVec6> dy = d4_vec(zy, s.dx, periodic), dz = d4_vec(zz, s.dx, periodic);
  RVec q = quadrature_weights(s);
  double bulk = 0.0;
  for (int j = 0; j < M; ++j) bulk += q(j) * 0.5 * (dy[j].dot(Pr * zz[j]) - zy[j].dot(Pr * dz[j]));
  if (periodic) return bulk;
  // 1/2 [<zeta_y, zeta_z>] - [<s_z s^-1, u^-1 u_y>]
  auto edge = [&](int j) {
    auto [u, sm] = factorize_gm(s.k[j]);
    (void)u;
    RMat6 As = D.adjoint(sm);
    RVec6 vy = As * zy[j], vz = As * zz[j];
    RVec6 gy = RVec6::Zero(), mz = RVec6::Zero();
    gy.head<3>() = vy.head<3>();
    mz.tail<3>() = vz.tail<3>();
    return 0.5 * zy[j].dot(Pr * zz[j]) - mz.dot(Pr * gy);
  };
  return bulk + edge(M - 1) - edge(0);
}

void gauge_fix(LoopState& s) {
  auto [u, s0] = factorize_gm(s.k.front());
  (void)u;
  M2 c = s0.inverse();
  for (auto& k : s.k) k = k * c;
}

}  // namespace pl
