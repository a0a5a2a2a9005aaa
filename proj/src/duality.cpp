#include "pl/duality.hpp"

#include <algorithm>
#include <cmath>

namespace pl {

bool invertible(const Mat& A, double cutoff) {
  Eigen::JacobiSVD<Mat> svd(A);
  const auto& sv = svd.singularValues();
  double smin = sv(sv.size() - 1);
  return smin > 0.0 && sv(0) / smin < cutoff;
}

Mat graph_basis(const Mat& X) {
  const Eigen::Index n = X.rows();
  Mat G(2 * n, n);
  G << X, Mat::Identity(n, n);
  return G;
}

Mat projector(const Mat& A, const Mat& B) {
  Mat M(A.rows(), A.cols() + B.cols());
  M << A, B;
  Mat Z = M;
  Z.rightCols(B.cols()).setZero();
  return Z * M.inverse();
}

Splitting make_splitting(const Model& M, cd lambda, cd mu) {
  Splitting S;
  S.preset.name = "custom";
  S.preset.model = M;
  S.preset.lambda = lambda;
  S.preset.mu = mu;
  S.preset.g_invariant = std::abs(lambda) < 1e-14;
  const QuasiBialgebra& B = M.B;
  const int n = B.n();
  S.n = n;
  S.Einv = (lambda + 1.0) * B.r2() + mu * B.Kinv;
  S.Tinv = -(lambda + 1.0) * B.r1() - mu * B.Kinv;
  S.basis_plus = graph_basis(S.Einv);
  S.basis_minus = graph_basis(S.Tinv);
  Mat all(2 * n, 2 * n);
  all << S.basis_plus, S.basis_minus;
  if (!invertible(all) || std::abs(lambda + 1.0 + 2.0 * mu) <= 1e-8)
    throw ConfigError("splitting rank drop: E+ and E- do not span d (lambda + 1 + 2 mu = 0)");
  S.pi_plus = projector(S.basis_plus, S.basis_minus);
  S.pi_minus = Mat::Identity(2 * n, 2 * n) - S.pi_plus;
  S.P = S.pi_plus - S.pi_minus;
  S.pairing = Mat::Zero(2 * n, 2 * n);
  S.pairing.topRightCorner(n, n).setIdentity();
  S.pairing.bottomLeftCorner(n, n).setIdentity();
  S.has_Ee = invertible(S.Einv);
  S.has_Te = invertible(S.Tinv);
  if (S.has_Ee) S.Ee = S.Einv.inverse();
  if (S.has_Te) S.Te = S.Tinv.inverse();
  return S;
}

Splitting make_splitting(const Preset& P) {
  Splitting S = make_splitting(P.model, P.lambda, P.mu);
  S.preset = P;
  return S;
}

double SplittingReport::max_residual() const {
  return std::max({orthogonality, diag_plus, diag_minus, idempotence, sum, cross, self_adjoint,
                   et_difference, et_sum});
}

SplittingReport check_splitting(const Splitting& S) {
  const QuasiBialgebra& B = S.B();
  const int n = S.n, N = 2 * n;
  const cd c = S.lambda() + 1.0 + 2.0 * S.mu();
  SplittingReport R;
  R.orthogonality = max_abs(Mat(S.basis_plus.transpose() * S.pairing * S.basis_minus));
  // <E^-1 phi + phi, E^-1 psi + psi> = (lambda+1+2mu) K^-1(phi, psi); minus sign for E-
  R.diag_plus = max_abs(Mat(S.basis_plus.transpose() * S.pairing * S.basis_plus - c * B.Kinv));
  R.diag_minus = max_abs(Mat(S.basis_minus.transpose() * S.pairing * S.basis_minus + c * B.Kinv));
  Mat Id = Mat::Identity(N, N);
  R.idempotence = std::max(max_abs(Mat(S.pi_plus * S.pi_plus - S.pi_plus)),
                           max_abs(Mat(S.pi_minus * S.pi_minus - S.pi_minus)));
  R.sum = max_abs(Mat(S.pi_plus + S.pi_minus - Id));
  R.cross = std::max(max_abs(Mat(S.pi_plus * S.pi_minus)), max_abs(Mat(S.pi_minus * S.pi_plus)));
  Mat G = S.pairing * S.P;
  R.self_adjoint = max_abs(Mat(G - G.transpose()));
  R.et_difference = max_abs(Mat(S.Einv - S.Tinv - c * B.Kinv));
  R.et_sum = max_abs(Mat(S.Einv + S.Tinv - (S.lambda() + 1.0) * (B.r2() - B.r1())));
  Mat all(N, N);
  all << S.basis_plus, S.basis_minus;
  Eigen::JacobiSVD<Mat> svd(all);
  R.rank = static_cast<int>((svd.singularValues().array() > 1e-10 * svd.singularValues()(0)).count());
  return R;
}

Mat transport_graph(const QuasiBialgebra& B, const Mat& X, const Mat& Ad_uinv) {
  return Ad_uinv * (X - B.r) * Ad_uinv.transpose() + B.r;
}

namespace {

void fill_inverses(GraphCoord& G) {
  G.has_E = invertible(G.Einv);
  G.has_T = invertible(G.Tinv);
  if (G.has_E) G.E = G.Einv.inverse();
  if (G.has_T) G.T = G.Tinv.inverse();
}

Mat double_graph(const QuasiBialgebra& B, const Mat& X, const Mat& Dad) {
  const int n = B.n();
  Mat G = Dad * graph_basis(X);
  return G.topRows(n) * G.bottomRows(n).inverse();
}

}  // namespace

GraphCoord graph_at(const Splitting& S, const Mat& A, GraphPath path) {
  const QuasiBialgebra& B = S.B();
  GraphCoord G;
  switch (path) {
    case GraphPath::Fqua: {
      Mat Ar = A * B.r * A.transpose();
      G.Einv = S.lambda() * Ar + B.r + S.mu() * B.Kinv;
      G.Tinv = S.lambda() * Ar + B.r - (S.lambda() + 1.0 + S.mu()) * B.Kinv;
      break;
    }
    case GraphPath::Fgenqua:
      G.Einv = transport_graph(B, S.Einv, A);
      G.Tinv = transport_graph(B, S.Tinv, A);
      break;
    case GraphPath::EPi: {
      Mat PiR = pi_r(B, A);
      G.Einv = A * S.Einv * A.transpose() + PiR;
      G.Tinv = A * S.Tinv * A.transpose() + PiR;
      break;
    }
    case GraphPath::Double: {
      Mat Dad = double_adjoint_lr(B, A, A);
      G.Einv = double_graph(B, S.Einv, Dad);
      G.Tinv = double_graph(B, S.Tinv, Dad);
      break;
    }
  }
  fill_inverses(G);
  return G;
}

double graph_path_defect(const Splitting& S, const Mat& A) {
  GraphPath paths[] = {GraphPath::Fqua, GraphPath::Fgenqua, GraphPath::EPi, GraphPath::Double};
  std::vector<GraphCoord> gs;
  for (auto p : paths) gs.push_back(graph_at(S, A, p));
  double worst = 0.0;
  for (size_t i = 0; i < gs.size(); ++i)
    for (size_t j = i + 1; j < gs.size(); ++j)
      worst = std::max({worst, max_abs(Mat(gs[i].Einv - gs[j].Einv)), max_abs(Mat(gs[i].Tinv - gs[j].Tinv))});
  return worst;
}

Mat eps_matrix(const Eigen::Vector3cd& pi) {
  Mat E(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      cd v = (i == j) ? 1.0 : 0.0;
      for (int k = 0; k < 3; ++k) v += kI * double(levi(i, j, k)) * pi(k);
      E(i, j) = -2.0 * v;
    }
  return E;
}

Mat invert_eps_matrix(const Eigen::Vector3cd& pi) {
  cd p2 = pi.transpose() * pi;
  if (std::abs(1.0 - p2) < 1e-14) throw NumericalError("invert_eps_matrix: pi^2 = 1 is singular");
  Mat E(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      cd v = ((i == j) ? 1.0 : 0.0) - pi(i) * pi(j);
      for (int k = 0; k < 3; ++k) v -= kI * double(levi(i, j, k)) * pi(k);
      E(i, j) = -v / (2.0 * (1.0 - p2));
    }
  return E;
}

cd lagrangian_g(const Splitting& S, const Mat& A, const Vec& xp, const Vec& xm) {
  GraphCoord G = graph_at(S, A);
  if (!G.has_E) throw NumericalError("lagrangian_g: E_u does not exist (graph blowup)");
  return (G.E * xm).cwiseProduct(xp).sum();
}

cd lagrangian_g_bar(const Splitting& S, const Mat& Ad_u, const Vec& yp, const Vec& ym) {
  Mat Ebar_inv = S.Einv + pi_cocycle(S.B(), Ad_u);
  if (!invertible(Ebar_inv)) throw NumericalError("lagrangian_g_bar: graph blowup");
  return (Ebar_inv.partialPivLu().solve(ym)).cwiseProduct(yp).sum();
}

cd modprisu2_lagrangian(cd a, cd b, const M2& Xp, const M2& Xm) {
  M2 ps;
  ps << -std::norm(b), std::conj(a) * b, a * std::conj(b), std::norm(b);
  M2 Id = M2::Identity();
  return (((Id - ps) * Xp * Xm).trace() - 0.5 * (ps * Xp).trace() * (ps * Xm).trace()) / std::norm(a);
}

Mat dual_metric_inv(const Splitting& S, const Vec3& s) {
  if (!S.has_Ee) throw NumericalError("dual model needs E_e (generic mu)");
  return S.Ee - hat_pi(s) / S.preset.model.kappa;
}

cd lagrangian_dual(const Splitting& S, const Vec3& s, const Vec3& dsp, const Vec3& dsm) {
  Mat Minv = dual_metric_inv(S, s);
  if (!invertible(Minv)) throw NumericalError("lagrangian_dual: singular dual metric");
  const cd f = kI / S.preset.model.kappa;  // vector basis i f_k / kappa
  Vec xp = f * star_right_trivial(s, dsp).cast<cd>();
  Vec xm = f * star_right_trivial(s, dsm).cast<cd>();
  return (Minv.partialPivLu().solve(xm)).cwiseProduct(xp).sum();
}

Mat modpri_dual_metric(const Vec3& s) {
  Eigen::Vector3cd ph = (2.0 * s).cast<cd>();
  ph(2) += s.squaredNorm();
  return 4.0 * invert_eps_matrix(-ph);
}

cd hamiltonian_density(const Splitting& S, const Vec& w) {
  return 0.25 * (S.pairing * (S.P * w)).cwiseProduct(w).sum();
}

Mat projector_difference(const GraphCoord& G) {
  const Eigen::Index n = G.Einv.rows();
  Mat Dinv = G.Einv - G.Tinv;
  if (!invertible(Dinv)) throw NumericalError("E_u^-1 - T_u^-1 is singular");
  Mat Delta = Dinv.inverse();  // g -> m
  Mat Sum = G.Einv + G.Tinv;   // m -> g
  Mat P(2 * n, 2 * n);
  P.topLeftCorner(n, n) = Sum * Delta;
  P.bottomLeftCorner(n, n) = 2.0 * Delta;
  P.topRightCorner(n, n) = -2.0 * G.Einv * Delta * G.Tinv;
  P.bottomRightCorner(n, n) = -Delta * Sum;
  return P;
}

Mat projector_difference_ET(const GraphCoord& G) {
  if (!G.has_E || !G.has_T) throw NumericalError("E_u or T_u does not exist");
  const Eigen::Index n = G.E.rows();
  Mat D = (G.E - G.T).inverse();  // m -> g
  Mat P(2 * n, 2 * n);
  P.bottomLeftCorner(n, n) = -2.0 * G.E * D * G.T;
  P.topLeftCorner(n, n) = -D * (G.T + G.E);
  P.topRightCorner(n, n) = 2.0 * D;
  P.bottomRightCorner(n, n) = (G.T + G.E) * D;
  return P;
}

cd hamiltonian_us(const GraphCoord& G, const Vec& xi, const Vec& phi) {
  const Eigen::Index n = xi.size();
  Vec w(2 * n);
  w << xi, phi;
  Vec Pw = projector_difference(G) * w;
  cd v = Pw.head(n).cwiseProduct(phi).sum() + Pw.tail(n).cwiseProduct(xi).sum();
  return 0.25 * v;
}

cd hamiltonian_uhamilt(const GraphCoord& G, const Vec& xi_x, const Vec& xi_t) {
  if (!G.has_E || !G.has_T) throw NumericalError("E_u or T_u does not exist");
  Mat D = G.E - G.T;
  return ((D * xi_x).cwiseProduct(xi_x).sum() + (D * xi_t).cwiseProduct(xi_t).sum()) / 8.0;
}

cd hamiltonian_ushamilt(const GraphCoord& G, const Vec& xi_x, const Vec& phi) {
  if (!G.has_E || !G.has_T) throw NumericalError("E_u or T_u does not exist");
  Mat Di = (G.E - G.T).inverse();
  auto p = [](const Vec& a, const Vec& b) { return a.cwiseProduct(b).sum(); };
  cd v = -p(G.T * Di * G.E * xi_x, xi_x) - p(G.E * Di * G.T * xi_x, xi_x) -
         2.0 * p(phi, Di * (G.T + G.E) * xi_x) + 2.0 * p(phi, Di * phi);
  return 0.25 * v;
}

Vec velocity_from_sx(const GraphCoord& G, const Vec& xi_x, const Vec& phi) {
  if (!G.has_E || !G.has_T) throw NumericalError("E_u or T_u does not exist");
  // (T - E) xi_t = 2 phi - (T + E) xi_x
  return (G.T - G.E).partialPivLu().solve(2.0 * phi - (G.T + G.E) * xi_x);
}

double ProjectorReport::max_residual() const {
  return std::max({conjugation, et_form, modpri_diff, modpri_sum});
}

ProjectorReport projector_formulas_check(const Splitting& S, const Mat& A) {
  const QuasiBialgebra& B = S.B();
  ProjectorReport R;
  GraphCoord G = graph_at(S, A);
  Mat Pu = projector_difference(G);
  Mat Dinv = double_adjoint_lr(B, A, A);
  Mat Pc = Dinv * S.P * Dinv.inverse();
  R.conjugation = max_abs(Mat(Pu - Pc));
  if (G.has_E && G.has_T) R.et_form = max_abs(Mat(projector_difference_ET(G) - Pu));
  if (std::abs(S.lambda() + 1.0) < 1e-14 && std::abs(S.mu() - 1.0) < 1e-14) {
    R.modpri_diff = max_abs(Mat(G.Einv - G.Tinv - 2.0 * B.Kinv));
    R.modpri_sum = max_abs(Mat(G.Einv + G.Tinv - 2.0 * pi_r(B, A)));
  }
  return R;
}



LimitSample principal_limit_sample(double mu) {
  if (!(mu > 0.0)) throw ConfigError("principal_limit_sample: mu must be positive");
  Preset P = make_preset("principal-limit", "su2", std::nullopt, cd(mu));
  Splitting S = make_splitting(P);
  Realization R(P.model.rep);
  cd a(0.6, 0.3), b(0.2, -0.5);
  const double nrm = std::sqrt(std::norm(a) + std::norm(b));
  M2 u = su2_from_ab(a / nrm, b / nrm);
  Vec xp(3), xm(3);
  xp << 0.3, -0.7, 0.2;
  xm << -0.5, 0.1, 0.4;
  LimitSample out;
  out.mu = mu;
  cd L = lagrangian_g(S, R.adjoint(u.inverse()), xp, xm);
  cd Lref = (R.from_coords(xp) * R.from_coords(xm)).trace();
  out.dev_g = std::abs(L - Lref);
  Vec3 t(0.4, -0.3, 0.5), tp(0.2, 0.1, -0.3), tm(-0.1, 0.4, 0.2);
  cd Lhat = lagrangian_dual(S, t / mu, tp / mu, tm / mu);
  out.dev_dual = std::abs(Lhat - 2.0 * tp.dot(tm));
  return out;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw ConfigError("loglog_slope: need >= 2 matched points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace pl
