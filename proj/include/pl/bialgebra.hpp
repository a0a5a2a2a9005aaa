#pragma once

#include <utility>

#include "pl/lie.hpp"

namespace pl {

// Tensors X = sum X(i,j) e_i (x) e_j are stored as n x n matrices and act m -> g
// by evaluation against the second slot, so the matrix is also the operator.
struct QuasiBialgebra {
  LieAlgebra g;
  Mat r;
  LieAlgebra m;  // dual algebra read off from the cobracket
  Mat Kinv;      // 2 r_+ = r + r21 as an operator m -> g
  Mat K;         // g -> m

  int n() const { return g.dim; }
  Mat r1() const { return r.transpose(); }  // evaluation against the first slot
  Mat r2() const { return r; }
  // K(a, b) as a bilinear form on g
  cd killing(const Vec& a, const Vec& b) const { return (K * a).cwiseProduct(b).sum(); }
  // K^{-1}(phi, psi) on m
  cd kinv_form(const Vec& phi, const Vec& psi) const { return (Kinv * phi).cwiseProduct(psi).sum(); }
};

double cybe_residual(const LieAlgebra& g, const Mat& r);
// ad_x acting in both slots of a tensor
Mat ad_tensor(const LieAlgebra& g, const Vec& x, const Mat& t);
Mat cobracket(const LieAlgebra& g, const Mat& r, const Vec& xi);
// max over basis x of |ad_x(r + r21)|
double ad_invariance_residual(const LieAlgebra& g, const Mat& r);
LieAlgebra dual_algebra(const LieAlgebra& g, const Mat& r, std::vector<std::string> labels = {},
                        double tol = 1e-10);

// validates CYBE, ad-invariance, factorisability (condition number < 1e8)
QuasiBialgebra make_bialgebra(const LieAlgebra& g, const Mat& r, std::vector<std::string> mlabels = {},
                              double tol = 1e-10);

Mat k_map(const QuasiBialgebra& B);
Mat r1_map(const QuasiBialgebra& B);
Mat r2_map(const QuasiBialgebra& B);

// indices 0..n-1 are g, n..2n-1 are m
struct DoubleAlgebra {
  LieAlgebra d;
  Mat pairing;  // [[0, I], [I, 0]]
  int n = 0;
  Vec embed_g(const Vec& xi) const;
  Vec embed_m(const Vec& phi) const;
};

DoubleAlgebra build_double(const QuasiBialgebra& B, double tol = 1e-10);

// x = xi + phi  ->  (xi + r1 phi, xi - r2 phi)
Mat iso_matrix(const QuasiBialgebra& B);
std::pair<Vec, Vec> double_iso_lr(const QuasiBialgebra& B, const Vec& x);
// (K_L - K_R)(iso x, iso y)
cd iso_pairing(const QuasiBialgebra& B, const Vec& x, const Vec& y);
// adjoint action on d of (uL, uR) in G x G, given Ad on g for each factor
Mat double_adjoint_lr(const QuasiBialgebra& B, const Mat& AdL, const Mat& AdR);

}  // namespace pl
