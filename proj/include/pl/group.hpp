#pragma once

#include <array>
#include <utility>

#include "pl/models.hpp"

namespace pl {

using Vec3 = Eigen::Vector3d;
using RVec6 = Eigen::Matrix<double, 6, 1>;
using RMat6 = Eigen::Matrix<double, 6, 6>;

// exp of a 2x2 matrix via Cayley-Hamilton on the traceless part
M2 expm2(const M2& X);
// dense exponential (Pade, scaling and squaring)
Mat expm(const Mat& X);

// g basis realized by 2x2 matrices; used for coordinates and Ad
struct Realization {
  std::vector<M2> basis;
  Eigen::Matrix3cd flat_inv;  // (X00, X01, X10) -> coordinates
  explicit Realization(std::vector<M2> b);
  Vec coords(const M2& X) const;
  M2 from_coords(const Vec& x) const;
  M2 exp(const Vec& x) const { return expm2(from_coords(x)); }
  // Ad_u on g in this basis
  Mat adjoint(const M2& u) const;
};

inline Realization realization(const Model& M) { return Realization(M.rep); }

// SU(2) elements u = (a b; -conj(b) conj(a))
M2 su2_from_ab(cd a, cd b);
std::pair<cd, cd> su2_ab(const M2& u);

// SL(2,C) as the double of the real su2 model: g basis e_k = -i sigma_k / 2,
// m basis F1 = -E12, F2 = i E12, F3 = diag(-1/2, 1/2), pairing 2 Im tr(XY)
struct Sl2cDouble {
  std::array<M2, 3> e, F;
  Sl2cDouble();
  // (xi, phi) with xi_i = <W, F_i>, phi_i = <W, e_i>
  RVec6 coords(const M2& W) const;
  M2 from_coords(const RVec6& x) const;
  RMat6 adjoint(const M2& k) const;
};
const Sl2cDouble& sl2c();

// k = u s: u in SU(2), s upper triangular with positive diagonal
std::pair<M2, M2> factorize_gm(const M2& k);
// k = t v with t in M, v in G
std::pair<M2, M2> factorize_mg(const M2& k);
// s u = (s |> u)(u <| s): G-part and M-part of s u
M2 act_m_on_g(const M2& s, const M2& u);
M2 act_g_on_m(const M2& u, const M2& s);

// SU2* vector form: s t = s + (s3 + 1) t
Vec3 star_mul(const Vec3& s, const Vec3& t);
Vec3 star_inv(const Vec3& s);
Vec3 star_exp(const Vec3& phi);
// matrix form in SL(2,C): (sqrt(x), z/sqrt(x); 0, 1/sqrt(x)), x = s3 + 1, z = s1 - i s2;
// the vector basis is then -F_k
M2 star_to_matrix(const Vec3& s);
Vec3 star_from_matrix(const M2& t);
// Ad_t on m in the vector basis
Eigen::Matrix3d star_adjoint(const Vec3& s);
// right-trivialized derivative t' t^{-1} in the vector basis
Vec3 star_right_trivial(const Vec3& s, const Vec3& ds);

// Pi(u) = Ad_u r - r and Pi^R(u) = Ad_{u^-1} Pi(u) = -Pi(u^-1)
Mat pi_cocycle(const QuasiBialgebra& B, const Mat& Ad_u);
Mat pi_r(const QuasiBialgebra& B, const Mat& Ad_uinv);
// closed form of Pi^R for the complex su2 model
Mat su_pi_r_closed(cd a, cd b);
// printed SU2* cocycle -i(eps_ija s_a + s^2/2 eps_ij3) in f (x) f
Mat hat_pi(const Vec3& s);

// b_phi(u) = d/de G-part(exp(e phi) u) u^{-1} for the real su2 model (g coordinates)
Vec3 cocycle_b(const M2& u, const Vec3& phi, double h = 1e-5);
// infinitesimal right action phi <| u^{-1} = pi_m(Ad_u phi) on m (real model)
Vec3 coadjoint_right(const M2& u, const Vec3& phi);

}  // namespace pl
