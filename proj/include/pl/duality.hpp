#pragma once

#include "pl/group.hpp"

namespace pl {

// orthogonal splitting d = E+ (+) E-, E+ = {E_e^{-1} phi + phi}, E- = {T_e^{-1} phi + phi}
struct Splitting {
  Preset preset;
  int n = 0;
  Mat Einv, Tinv;  // m -> g
  Mat Ee, Te;      // g -> m when invertible
  bool has_Ee = false, has_Te = false;
  Mat basis_plus, basis_minus;  // 2n x n
  Mat pi_plus, pi_minus;
  Mat P;        // pi_+ - pi_-
  Mat pairing;  // on d

  const QuasiBialgebra& B() const { return preset.model.B; }
  cd lambda() const { return preset.lambda; }
  cd mu() const { return preset.mu; }
};

// rank drop (|lambda + 1 + 2 mu| ~ 0) raises ConfigError
Splitting make_splitting(const Preset& P);
Splitting make_splitting(const Model& M, cd lambda, cd mu);

// graph of X viewed m -> g, as a 2n x n basis
Mat graph_basis(const Mat& X);
// projector onto span(A) along span(B)
Mat projector(const Mat& A, const Mat& B);
// condition-number test used for "invertible" (cutoff 1e8)
bool invertible(const Mat& A, double cutoff = 1e8);

struct SplittingReport {
  double orthogonality = 0, diag_plus = 0, diag_minus = 0;
  double idempotence = 0, sum = 0, cross = 0, self_adjoint = 0;
  double et_difference = 0, et_sum = 0;
  int rank = 0;
  double max_residual() const;
};
SplittingReport check_splitting(const Splitting& S);

enum class GraphPath { Fqua, Fgenqua, EPi, Double };

struct GraphCoord {
  Mat Einv, Tinv;  // m -> g
  Mat E, T;        // g -> m
  bool has_E = false, has_T = false;
};

// graph coordinates of Ad_{u^-1} E+- given Ad_{u^-1} on g
GraphCoord graph_at(const Splitting& S, const Mat& Ad_uinv, GraphPath path = GraphPath::Fqua);
// transport of an arbitrary graph X (m -> g) by Ad_{u^-1}
Mat transport_graph(const QuasiBialgebra& B, const Mat& X, const Mat& Ad_uinv);
// max pairwise difference of the four paths
double graph_path_defect(const Splitting& S, const Mat& Ad_uinv);

// closed inverse of -2(delta + i eps pi): -(delta - i eps pi - pi pi^T) / (2 (1 - pi^2))
Mat invert_eps_matrix(const Eigen::Vector3cd& pi);
Mat eps_matrix(const Eigen::Vector3cd& pi);  // -2(delta + i eps pi)

// L = <E_u(u^-1 u_-), u^-1 u_+>
cd lagrangian_g(const Splitting& S, const Mat& Ad_uinv, const Vec& xp, const Vec& xm);
// L = <Ebar_u(u_- u^-1), u_+ u^-1> with Ebar_u^{-1} = E_e^{-1} + Pi(u)
cd lagrangian_g_bar(const Splitting& S, const Mat& Ad_u, const Vec& yp, const Vec& ym);
// modified principal su2 trace formula; Xp = u^-1 u_+, Xm = u^-1 u_- as 2x2 matrices
cd modprisu2_lagrangian(cd a, cd b, const M2& Xp, const M2& Xm);

// dual model on SU2*: Lhat = <(E_e - Pihat(s)/kappa)^{-1} t_- t^-1, t_+ t^-1>
// s = vector coordinates, dsp/dsm their light-cone derivatives
Mat dual_metric_inv(const Splitting& S, const Vec3& s);
cd lagrangian_dual(const Splitting& S, const Vec3& s, const Vec3& dsp, const Vec3& dsm);
// modified principal: inverse of -1/2 (delta - i eps pihat), pihat = 2s + (0,0,s^2)
Mat modpri_dual_metric(const Vec3& s);

// 4H = <(pi_+ - pi_-) w, w>, returns H
cd hamiltonian_density(const Splitting& S, const Vec& w);
// pi_{u+} - pi_{u-} on d from the inverse graph coordinates
Mat projector_difference(const GraphCoord& G);
// same from E_u, T_u
Mat projector_difference_ET(const GraphCoord& G);
// 4H = <(pi_{u+} - pi_{u-})(xi + phi), xi + phi>, returns H
cd hamiltonian_us(const GraphCoord& G, const Vec& xi, const Vec& phi);
// 8H = <(E-T) xi_x, xi_x> + <(E-T) xi_t, xi_t>, returns H
cd hamiltonian_uhamilt(const GraphCoord& G, const Vec& xi_x, const Vec& xi_t);
// split form in terms of s_x s^-1, returns H
cd hamiltonian_ushamilt(const GraphCoord& G, const Vec& xi_x, const Vec& phi);
// u^-1 u_t from s_x s^-1 and u^-1 u_x
Vec velocity_from_sx(const GraphCoord& G, const Vec& xi_x, const Vec& phi);

struct ProjectorReport {
  double conjugation = 0;    // pixi/piphi vs Ad_{u^-1} (pi+ - pi-) Ad_u
  double et_form = 0;        // projxi/projphi vs pixi/piphi
  double modpri_diff = 0;    // E^-1 - T^-1 = 2 K^-1 (lambda = -1, mu = 1 only)
  double modpri_sum = 0;     // E^-1 + T^-1 = 2 Pi^R
  double max_residual() const;
};
ProjectorReport projector_formulas_check(const Splitting& S, const Mat& Ad_uinv);

// mu -> infinity on su2 with r rescaled to r/mu (lambda = 0), at a fixed configuration:
// dev_g = |L - Tr[u^-1 u_+ u^-1 u_-]|, dev_dual = |Lhat - 2 t_+ . t_-| with t = mu s
struct LimitSample {
  double mu = 0, dev_g = 0, dev_dual = 0;
};
LimitSample principal_limit_sample(double mu);
// least-squares slope of log y against log x
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace pl
