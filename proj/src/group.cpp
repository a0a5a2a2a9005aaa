#include "pl/group.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace pl {

M2 expm2(const M2& X) {
  cd tr = 0.5 * X.trace();
  M2 Y = X - tr * M2::Identity();
  cd d = -Y.determinant();  // Y^2 = d I
  cd sd = std::sqrt(d);
  cd ch, sh;
  if (std::abs(d) < 1e-6) {
    ch = 1.0 + d / 2.0 + d * d / 24.0 + d * d * d / 720.0;
    sh = 1.0 + d / 6.0 + d * d / 120.0 + d * d * d / 5040.0;
  } else {
    ch = std::cosh(sd);
    sh = std::sinh(sd) / sd;
  }
  return std::exp(tr) * (ch * M2::Identity() + sh * Y);
}

Mat expm(const Mat& X) { return X.exp(); }

namespace {
Eigen::Vector3cd flat3(const M2& X) { return {X(0, 0), X(0, 1), X(1, 0)}; }
}  // namespace

Realization::Realization(std::vector<M2> b) : basis(std::move(b)) {
  if (basis.size() != 3) throw ConfigError("2x2 realizations need three basis matrices");
  Eigen::Matrix3cd F;
  for (int j = 0; j < 3; ++j) F.col(j) = flat3(basis[j]);
  flat_inv = F.inverse();
}

Vec Realization::coords(const M2& X) const { return flat_inv * flat3(X); }

M2 Realization::from_coords(const Vec& x) const {
  M2 X = M2::Zero();
  for (int j = 0; j < 3; ++j) X += x(j) * basis[j];
  return X;
}

Mat Realization::adjoint(const M2& u) const {
  M2 ui = u.inverse();
  Mat A(3, 3);
  for (int j = 0; j < 3; ++j) A.col(j) = coords(u * basis[j] * ui);
  return A;
}

M2 su2_from_ab(cd a, cd b) {
  M2 u;
  u << a, b, -std::conj(b), std::conj(a);
  return u;
}

std::pair<cd, cd> su2_ab(const M2& u) { return {u(0, 0), u(0, 1)}; }

Sl2cDouble::Sl2cDouble() {
  M2 s1, s2, s3;
  s1 << 0, 1, 1, 0;
  s2 << 0, -kI, kI, 0;
  s3 << 1, 0, 0, -1;
  e = {-0.5 * kI * s1, -0.5 * kI * s2, -0.5 * kI * s3};
  M2 E12;
  E12 << 0, 1, 0, 0;
  M2 F3;
  F3 << -0.5, 0, 0, 0.5;
  F = {-E12, kI * E12, F3};
}

RVec6 Sl2cDouble::coords(const M2& W) const {
  RVec6 x;
  for (int i = 0; i < 3; ++i) {
    x(i) = 2.0 * (W * F[i]).trace().imag();
    x(3 + i) = 2.0 * (W * e[i]).trace().imag();
  }
  return x;
}

M2 Sl2cDouble::from_coords(const RVec6& x) const {
  M2 W = M2::Zero();
  for (int i = 0; i < 3; ++i) W += x(i) * e[i] + x(3 + i) * F[i];
  return W;
}

RMat6 Sl2cDouble::adjoint(const M2& k) const {
  M2 ki = k.inverse();
  RMat6 A;
  for (int j = 0; j < 3; ++j) {
    A.col(j) = coords(k * e[j] * ki);
    A.col(3 + j) = coords(k * F[j] * ki);
  }
  return A;
}

const Sl2cDouble& sl2c() {
  static const Sl2cDouble D;
  return D;
}

std::pair<M2, M2> factorize_gm(const M2& k) {
  if (std::abs(k.determinant()) < 1e-300) throw NumericalError("factorize_gm: singular input");
  Eigen::HouseholderQR<M2> qr(k);
  M2 Q = qr.householderQ();
  M2 R = qr.matrixQR().triangularView<Eigen::Upper>();
  M2 D = M2::Zero();
  for (int i = 0; i < 2; ++i) D(i, i) = R(i, i) / std::abs(R(i, i));
  M2 u = Q * D;
  M2 s = D.adjoint() * R;
  s(1, 0) = 0.0;
  for (int i = 0; i < 2; ++i) s(i, i) = s(i, i).real();
  return {u, s};
}

std::pair<M2, M2> factorize_mg(const M2& k) {
  auto [u, s] = factorize_gm(k.inverse());
  return {s.inverse(), u.adjoint()};
}

M2 act_m_on_g(const M2& s, const M2& u) { return factorize_gm(s * u).first; }
M2 act_g_on_m(const M2& u, const M2& s) { return factorize_gm(s * u).second; }

Vec3 star_mul(const Vec3& s, const Vec3& t) { return s + (s(2) + 1.0) * t; }

Vec3 star_inv(const Vec3& s) {
  if (s(2) <= -1.0) throw NumericalError("SU2* element needs s3 > -1");
  return -s / (s(2) + 1.0);
}

Vec3 star_exp(const Vec3& phi) {
  double p3 = phi(2);
  double f = std::abs(p3) < 1e-8 ? 1.0 + p3 / 2.0 + p3 * p3 / 6.0 : std::expm1(p3) / p3;
  return phi * f;
}

M2 star_to_matrix(const Vec3& s) {
  double x = s(2) + 1.0;
  if (x <= 0.0) throw NumericalError("SU2* element needs s3 > -1");
  double q = std::sqrt(x);
  cd z(s(0), -s(1));
  M2 t;
  t << q, z / q, 0.0, 1.0 / q;
  return t;
}

Vec3 star_from_matrix(const M2& t) {
  double q = t(0, 0).real();
  cd z = t(0, 1) * q;
  return {z.real(), -z.imag(), q * q - 1.0};
}

Eigen::Matrix3d star_adjoint(const Vec3& s) {
  // [b1,b3] = -b1, [b2,b3] = -b2: Ad_t b_j from the matrix form
  M2 t = star_to_matrix(s), ti = t.inverse();
  M2 b[3];
  b[0] << 0, 1, 0, 0;
  b[1] << 0, -kI, 0, 0;
  b[2] << 0.5, 0, 0, -0.5;
  Eigen::Matrix3d A;
  for (int j = 0; j < 3; ++j) {
    M2 Y = t * b[j] * ti;
    A(0, j) = Y(0, 1).real();
    A(1, j) = -Y(0, 1).imag();
    A(2, j) = 2.0 * Y(0, 0).real();
  }
  return A;
}

Vec3 star_right_trivial(const Vec3& s, const Vec3& ds) { return ds - ds(2) * s / (s(2) + 1.0); }

Mat pi_cocycle(const QuasiBialgebra& B, const Mat& Ad_u) {
  return Ad_u * B.r * Ad_u.transpose() - B.r;
}

Mat pi_r(const QuasiBialgebra& B, const Mat& Ad_uinv) {
  return B.r - Ad_uinv * B.r * Ad_uinv.transpose();
}

Mat su_pi_r_closed(cd a, cd b) {
  auto wedge = [](int i, int j) {
    Mat w = Mat::Zero(3, 3);
    w(i, j) = 1.0;
    w(j, i) = -1.0;
    return w;
  };
  cd abb = a * std::conj(b), aab = std::conj(a) * b;
  return 2.0 * kI * std::norm(b) * wedge(0, 1) - (abb - aab) * wedge(2, 0) -
         kI * (abb + aab) * wedge(1, 2);
}

Mat hat_pi(const Vec3& s) {
  Mat P = Mat::Zero(3, 3);
  double s2 = s.squaredNorm();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double v = 0.5 * s2 * levi(i, j, 2);
      for (int a = 0; a < 3; ++a) v += levi(i, j, a) * s(a);
      P(i, j) = -kI * v;
    }
  return P;
}

namespace {
M2 m_element(const Vec3& phi) {
  const auto& D = sl2c();
  return phi(0) * D.F[0] + phi(1) * D.F[1] + phi(2) * D.F[2];
}
}  // namespace

Vec3 cocycle_b(const M2& u, const Vec3& phi, double h) {
  const auto& D = sl2c();
  M2 Phi = m_element(phi), ui = u.inverse();
  auto gpart = [&](double eps) { return factorize_gm(expm2(eps * Phi) * u).first; };
  auto diff = [&](double hh) -> M2 { return (gpart(hh) - gpart(-hh)) / (2.0 * hh) * ui; };
  M2 R = (4.0 * diff(h / 2.0) - diff(h)) / 3.0;
  return D.coords(R).head<3>();
}

Vec3 coadjoint_right(const M2& u, const Vec3& phi) {
  const auto& D = sl2c();
  return D.coords(u * m_element(phi) * u.inverse()).tail<3>();
}

}  // namespace pl
