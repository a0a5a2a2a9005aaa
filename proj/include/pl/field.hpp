#pragma once

#include <string>
#include <vector>

#include "pl/duality.hpp"

namespace pl {

enum class Boundary { DoubleNeumann, Periodic, Free };
Boundary parse_boundary(const std::string& s);
std::string to_string(Boundary b);

// real su2 model on the double SL(2,C); all coordinates are real 6-vectors (g; m)
struct FieldModel {
  Splitting S;
  RMat6 P;        // pi_+ - pi_-
  RMat6 pairing;  // [[0, I], [I, 0]]
  Mat Ee_inv, Te_inv;
  bool flipped = false;
};

FieldModel make_field_model(const Preset& P);
// exchanges E+ and E-: reverses the flow
FieldModel flipped(const FieldModel& F);

struct LoopState {
  std::vector<M2> k;
  double t = 0.0;
  double dx = 0.0;
  int N = 0;  // nodes x_j = j dx; N+1 nodes unless periodic
  Boundary bc = Boundary::DoubleNeumann;
};

std::vector<double> grid_x(int N, Boundary bc);
LoopState init_from_us(const std::vector<M2>& u, const std::vector<M2>& s, int N, Boundary bc);
// k = u0 exp(p x)
LoopState init_pointlike(const M2& u0, const Vec3& p, int N, Boundary bc = Boundary::Free);

// k_x with 4th order stencils; the parallel flag selects the OpenMP kernel
std::vector<M2> derivative(const LoopState& s, bool parallel = true);
// coordinates of k_x k^-1 at each node
std::vector<RVec6> currents(const LoopState& s, bool parallel = true);
// k_dot k^-1 = (pi_- - pi_+)(k_x k^-1); frozen ends for double-Neumann
std::vector<M2> rhs(const FieldModel& F, const LoopState& s, bool parallel = true);
// one RKMK4 step of k_dot = A(k) k
void step(const FieldModel& F, LoopState& s, double dt, bool parallel = true);

RVec quadrature_weights(const LoopState& s);
// total H = integral of (1/4) <(pi+ - pi-) w, w>
double energy(const FieldModel& F, const LoopState& s, bool parallel = true);
// I_delta = -1/2 integral <k_x k^-1, delta>; periodic loop functionals use 8th-order differences
double moment_map(const LoopState& s, const RVec6& delta);
struct LoopFunctions {
  double f_v = 0, f_d = 0;
};
// f_v = -1/2 integral <w, v>, f_d = -1/4 integral <w, w>
LoopFunctions loop_functions(const LoopState& s, const std::vector<RVec6>& v);

struct EomResiduals {
  double g = 0, dual = 0;  // max-norm residuals of the zero-curvature equations
  double sx = 0;           // s_- s^-1 - E_u(u^-1 u_-)
  int skipped_g = 0, skipped_dual = 0;  // nodes without graph coordinates
};
// from two consecutive time levels a (time t) and b (time t + dt)
EomResiduals eom_residuals(const FieldModel& F, const LoopState& a, const LoopState& b);

struct DualityGap {
  double hamiltonian = 0;  // max over nodes of |H_(u,s) - H_(t,v)|
  double product = 0;      // max over nodes of |us - tv|
  double total() const { return hamiltonian + product; }
};
DualityGap duality_check(const FieldModel& F, const LoopState& s);

struct PointlikeReport {
  double u_spread = 0;    // x-dependence of u
  double p_spread = 0;    // x-dependence of s_x s^-1
  double tv_spread = 0;   // x-dependence of t |> v
  double w_spread = 0;    // x-dependence of t_x t^-1 + t v_x v^-1 t^-1
  double max() const;
};
PointlikeReport pointlike_constraints(const LoopState& s);

// 2 omega(k; k_z, k_y); variations given left-trivialized, zeta = k^-1 k_y.
// The bulk term is used in its skew form so that the discrete value is exactly antisymmetric.
double symplectic_form(const LoopState& s, const std::vector<RVec6>& zeta_z,
                       const std::vector<RVec6>& zeta_y);

// gauge s(0) = e: right-multiplies by a constant element of M
void gauge_fix(LoopState& s);

}  // namespace pl
