#include "pl/bialgebra.hpp"

#include <algorithm>

namespace pl {

double cybe_residual(const LieAlgebra& g, const Mat& r) {
  const int n = g.dim;
  // T(a,b,c) coefficients of [r12,r13] + [r12,r23] + [r13,r23]
  std::vector<cd> T(static_cast<size_t>(n) * n * n, cd(0.0));
  auto at = [&](int a, int b, int c) -> cd& { return T[(a * n + b) * n + c]; };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      cd rab = r(a, b);
      if (rab == 0.0) continue;
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          cd w = rab * r(c, d);
          if (w == 0.0) continue;
          for (int k = 0; k < n; ++k) {
            at(k, b, d) += w * g.C(a, c, k);  // [e_a,e_c] (x) e_b (x) e_d
            at(a, k, d) += w * g.C(b, c, k);  // e_a (x) [e_b,e_c] (x) e_d
            at(a, c, k) += w * g.C(b, d, k);  // e_a (x) e_c (x) [e_b,e_d]
          }
        }
    }
  double worst = 0.0;
  for (const cd& v : T) worst = std::max(worst, std::abs(v));
  return worst;
}

Mat ad_tensor(const LieAlgebra& g, const Vec& x, const Mat& t) {
  Mat A = ad_operator(g, x);
  return A * t + t * A.transpose();
}

Mat cobracket(const LieAlgebra& g, const Mat& r, const Vec& xi) { return ad_tensor(g, xi, r); }

double ad_invariance_residual(const LieAlgebra& g, const Mat& r) {
  Mat rp = r + r.transpose();
  double worst = 0.0;
  for (int i = 0; i < g.dim; ++i) worst = std::max(worst, max_abs(ad_tensor(g, unit(g.dim, i), rp)));
  return worst;
}

LieAlgebra dual_algebra(const LieAlgebra& g, const Mat& r, std::vector<std::string> labels, double tol) {
  const int n = g.dim;
  if (labels.empty())
    for (int i = 0; i < n; ++i) labels.push_back("f" + std::to_string(i + 1));
  LieAlgebra m(n, labels, g.real);
  for (int c = 0; c < n; ++c) {
    Mat D = cobracket(g, r, unit(n, c));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) m.C(a, b, c) = D(a, b);
  }
  double cj = jacobi_residual(m);
  if (cj > tol) throw NumericalError("dual_algebra: co-Jacobi residual " + std::to_string(cj));
  return m;
}

QuasiBialgebra make_bialgebra(const LieAlgebra& g, const Mat& r, std::vector<std::string> mlabels,
                              double tol) {
  if (r.rows() != g.dim || r.cols() != g.dim) throw ConfigError("r has wrong shape");
  double cy = cybe_residual(g, r);
  if (cy > tol) throw NumericalError("r fails CYBE: residual " + std::to_string(cy));
  double ai = ad_invariance_residual(g, r);
  if (ai > tol) throw NumericalError("r + r21 is not ad-invariant: residual " + std::to_string(ai));
  QuasiBialgebra B;
  B.g = g;
  B.r = r;
  B.m = dual_algebra(g, r, std::move(mlabels), tol);
  B.Kinv = r + r.transpose();
  Eigen::JacobiSVD<Mat> svd(B.Kinv);
  const auto& sv = svd.singularValues();
  double smin = sv(sv.size() - 1);
  if (smin == 0.0 || sv(0) / smin > 1e8) throw NumericalError("2 r_+ is not invertible (not factorisable)");
  B.K = B.Kinv.inverse();
  return B;
}

Mat k_map(const QuasiBialgebra& B) { return B.K; }
Mat r1_map(const QuasiBialgebra& B) { return B.r1(); }
Mat r2_map(const QuasiBialgebra& B) { return B.r2(); }

Vec DoubleAlgebra::embed_g(const Vec& xi) const {
  Vec x = Vec::Zero(2 * n);
  x.head(n) = xi;
  return x;
}

Vec DoubleAlgebra::embed_m(const Vec& phi) const {
  Vec x = Vec::Zero(2 * n);
  x.tail(n) = phi;
  return x;
}

DoubleAlgebra build_double(const QuasiBialgebra& B, double tol) {
  const int n = B.n(), N = 2 * n;
  std::vector<std::string> labels = B.g.labels;
  labels.insert(labels.end(), B.m.labels.begin(), B.m.labels.end());
  DoubleAlgebra D;
  D.n = n;
  D.d = LieAlgebra(N, labels, B.g.real);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        D.d.C(i, j, k) = B.g.C(i, j, k);
        D.d.C(n + i, n + j, n + k) = B.m.C(i, j, k);
      }
  // [e_i, f_a] = sum_b m(a,b,i) e_b - sum_j g(i,j,a) f_j
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        D.d.C(i, n + a, b) = B.m.C(a, b, i);
        D.d.C(n + a, i, b) = -B.m.C(a, b, i);
      }
      for (int j = 0; j < n; ++j) {
        D.d.C(i, n + a, n + j) = -B.g.C(i, j, a);
        D.d.C(n + a, i, n + j) = B.g.C(i, j, a);
      }
    }
  D.pairing = Mat::Zero(N, N);
  D.pairing.topRightCorner(n, n).setIdentity();
  D.pairing.bottomLeftCorner(n, n).setIdentity();
  double jr = jacobi_residual(D.d);
  if (jr > tol) throw NumericalError("double fails Jacobi: residual " + std::to_string(jr));
  return D;
}

Mat iso_matrix(const QuasiBialgebra& B) {
  const int n = B.n();
  Mat J(2 * n, 2 * n);
  J << Mat::Identity(n, n), B.r1(), Mat::Identity(n, n), -B.r2();
  return J;
}

std::pair<Vec, Vec> double_iso_lr(const QuasiBialgebra& B, const Vec& x) {
  const int n = B.n();
  if (x.size() != 2 * n) throw std::invalid_argument("double_iso_lr: expected an element of d");
  Vec y = iso_matrix(B) * x;
  return {y.head(n), y.tail(n)};
}

cd iso_pairing(const QuasiBialgebra& B, const Vec& x, const Vec& y) {
  auto [xl, xr] = double_iso_lr(B, x);
  auto [yl, yr] = double_iso_lr(B, y);
  auto kf = [&](const Vec& a, const Vec& b) -> cd { return (B.K * a).transpose() * b; };
  return kf(xl, yl) - kf(xr, yr);
}

Mat double_adjoint_lr(const QuasiBialgebra& B, const Mat& AdL, const Mat& AdR) {
  const int n = B.n();
  Mat J = iso_matrix(B);
  Mat D = Mat::Zero(2 * n, 2 * n);
  D.topLeftCorner(n, n) = AdL;
  D.bottomRightCorner(n, n) = AdR;
  return J.partialPivLu().solve(D * J);
}

}  // namespace pl
