#pragma once

#include <string>
#include <vector>

#include "pl/duality.hpp"

namespace pl {

// u in the 2x2 defining representation of the model, p in m coordinates
struct ParticleState {
  M2 u = M2::Identity();
  Vec p;
  double t = 0.0;
};

enum class RhsForm { Inverse, Direct, GInvariant };

struct ParticleRhs {
  Vec du;  // u^-1 u_dot in g
  Vec dp;  // p_dot in m
};

ParticleRhs particle_rhs(const Splitting& S, const M2& u, const Vec& p, RhsForm form = RhsForm::Inverse);
// 4H = 2 <(E_u - T_u)^{-1} p, p>
cd particle_hamiltonian(const Splitting& S, const M2& u, const Vec& p);

struct Charges {
  Vec I;    // I_delta for delta running over the basis of d (g first, then m)
  Vec Q_G;  // p <| u^{-1} in m
  Vec Q_M;  // g-part of Ad_u p
};
Charges charges(const Splitting& S, const M2& u, const Vec& p);

struct Trajectory {
  std::vector<ParticleState> states;
  std::vector<cd> H;
  bool truncated = false;
  std::string message;
};

// one RKMK4 step: u by left-trivialized Munthe-Kaas, p by classical RK4
ParticleState particle_step(const Splitting& S, const ParticleState& s, double dt,
                            RhsForm form = RhsForm::Inverse);
Trajectory integrate_particle(const Splitting& S, const ParticleState& s0, double dt, double T,
                              RhsForm form = RhsForm::Inverse);

struct PointPhase {
  Mat symplectic;  // (0, id; -id, A)
  Mat poisson;     // (A, -id; id, 0)
};
// A_ij = <p, [e_i, e_j]>
PointPhase point_phase_matrices(const LieAlgebra& g, const Vec& p);

// xi_dot = 2 [r2 K xi, xi]; for sl2 pure qt in (h, x, y): h' = 2xy, x' = -2hx, y' = -2hy
Eigen::Vector3cd riccati_rhs(const Eigen::Vector3cd& hxy);
std::vector<Eigen::Vector3cd> integrate_riccati(const Eigen::Vector3cd& hxy0, double dt, double T);
// closed form h(t) with omega^2 = 4(h0^2 + x0 y0)
cd riccati_h(cd h0, cd x0, cd y0, double t);

// max over interior samples of |p_dot - [pi_m(pi_u- - pi_u+) p, p]| (4th-order central differences)
double conjugate_description_residual(const Splitting& S, const Trajectory& tr, double dt);

// Ad_u on g in the model basis
Mat model_adjoint(const Model& M, const M2& u);

}  // namespace pl
