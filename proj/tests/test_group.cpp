#include <random>

#include "doctest.h"
#include "pl/group.hpp"

using namespace pl;

namespace {

struct Rng {
  std::mt19937_64 g;
  explicit Rng(std::uint64_t s) : g(s) {}
  double operator()() { return 2.0 * static_cast<double>(g() >> 11) * 0x1.0p-53 - 1.0; }
  M2 sl2c_element(double scale = 0.8) {
    M2 X;
    X << cd((*this)(), (*this)()), cd((*this)(), (*this)()), cd((*this)(), (*this)()), 0.0;
    X(1, 1) = -X(0, 0);
    return expm2(scale * X);
  }
};

M2 series_exp(const M2& X) {
  M2 out = M2::Identity(), term = M2::Identity();
  for (int k = 1; k < 60; ++k) {
    term = term * X / double(k);
    out += term;
  }
  return out;
}

// classical Gram-Schmidt on the columns of k: k = Q R
std::pair<M2, M2> gram_schmidt(const M2& k) {
  Eigen::Vector2cd c0 = k.col(0), c1 = k.col(1);
  Eigen::Vector2cd q0 = c0 / c0.norm();
  cd r01 = q0.dot(c1);
  Eigen::Vector2cd w = c1 - r01 * q0;
  Eigen::Vector2cd q1 = w / w.norm();
  M2 Q, R;
  Q << q0, q1;
  R << c0.norm(), r01, 0.0, w.norm();
  return {Q, R};
}

}  // namespace

TEST_CASE("2x2 exponential against the power series") {
  Rng r(11);
  for (int t = 0; t < 20; ++t) {
    M2 X;
    X << cd(r(), r()), cd(r(), r()), cd(r(), r()), cd(r(), r());
    X *= 1.5;
    M2 E = expm2(X), S = series_exp(X);
    CHECK((E - S).cwiseAbs().maxCoeff() < 1e-12 * std::max(1.0, S.cwiseAbs().maxCoeff()));
  }
  M2 N;
  N << 0.0, 2.0, 0.0, 0.0;  // nilpotent
  CHECK((expm2(N) - series_exp(N)).norm() < 1e-15);
  M2 D = 1e-9 * M2::Identity();
  D(0, 1) = 1e-4;
  CHECK((expm2(D) - series_exp(D)).norm() < 1e-15);
  Mat big = Mat::Zero(3, 3);
  big(0, 1) = 1.0;
  big(1, 0) = -1.0;
  Mat E3 = expm(big);
  CHECK(std::abs(E3(0, 0) - std::cos(1.0)) < 1e-14);
  CHECK(std::abs(E3(0, 1) - std::sin(1.0)) < 1e-14);
}

TEST_CASE("realization coordinates and adjoint") {
  Model M = make_su2();
  Realization R(M.rep);
  Vec x(3);
  x << 0.2, -0.7, 1.1;
  CHECK(max_abs(Vec(R.coords(R.from_coords(x)) - x)) < 1e-15);
  M2 u = R.exp(x);
  CHECK((u.adjoint() * u - M2::Identity()).norm() < 1e-14);
  CHECK(max_abs(Mat(R.adjoint(u) - expm(ad_operator(M.B.g, x)))) < 1e-13);
  auto [a, b] = su2_ab(u);
  CHECK((su2_from_ab(a, b) - u).norm() < 1e-15);
}

TEST_CASE("Iwasawa factorization k = u s against Gram-Schmidt") {
  Rng r(3);
  for (int t = 0; t < 50; ++t) {
    M2 k = r.sl2c_element();
    auto [u, s] = factorize_gm(k);
    auto [Q, R] = gram_schmidt(k);
    CHECK((u - Q).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((s - R).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((u * s - k).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(s(1, 0)) == 0.0);
    CHECK(s(0, 0).real() > 0.0);
    CHECK(std::abs(u.determinant() - 1.0) < 1e-12);
    auto [tm, v] = factorize_mg(k);
    CHECK((tm * v - k).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((v.adjoint() * v - M2::Identity()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(tm(1, 0)) < 1e-14);
    // dressing: s u = (s |> u)(u <| s)
    CHECK((act_m_on_g(s, u) * act_g_on_m(u, s) - s * u).cwiseAbs().maxCoeff() < 1e-12);
  }
  CHECK_THROWS_AS(factorize_gm(M2::Zero()), NumericalError);
}

TEST_CASE("SU2* vector form") {
  Vec3 s(0.3, -0.4, 0.2), t(-0.1, 0.5, -0.3);
  M2 St = star_to_matrix(s) * star_to_matrix(t);
  CHECK((star_to_matrix(star_mul(s, t)) - St).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((star_from_matrix(star_to_matrix(s)) - s).norm() < 1e-14);
  CHECK(star_mul(s, star_inv(s)).norm() < 1e-15);
  // basis -F_k
  const auto& D = sl2c();
  Vec3 phi(0.4, 0.1, -0.6);
  M2 Phi = -(phi(0) * D.F[0] + phi(1) * D.F[1] + phi(2) * D.F[2]);
  CHECK((star_to_matrix(star_exp(phi)) - expm2(Phi)).cwiseAbs().maxCoeff() < 1e-14);
  Eigen::Matrix3d A = sl2c().adjoint(star_to_matrix(s)).bottomRightCorner<3, 3>();
  CHECK((star_adjoint(s) - A).cwiseAbs().maxCoeff() < 1e-14);
  // right-trivialized derivative from a matrix finite difference
  Vec3 ds(0.2, 0.3, -0.1);
  const double h = 1e-6;
  M2 dT = (star_to_matrix(s + h * ds) - star_to_matrix(s - h * ds)) / (2 * h) * star_to_matrix(s).inverse();
  Vec3 fd = -D.coords(dT).tail<3>();
  CHECK((star_right_trivial(s, ds) - fd).norm() < 1e-9);
  CHECK_THROWS_AS(star_to_matrix(Vec3(0, 0, -1.5)), NumericalError);
}

TEST_CASE("SL(2,C) realizes the double of the real su2 model") {
  const auto& D = sl2c();
  DoubleAlgebra Dd = build_double(make_su2_real().B);
  std::array<M2, 6> b;
  for (int i = 0; i < 3; ++i) {
    b[i] = D.e[i];
    b[3 + i] = D.F[i];
  }
  double worst = 0.0;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      RVec6 c = D.coords(b[i] * b[j] - b[j] * b[i]);
      for (int k = 0; k < 6; ++k) worst = std::max(worst, std::abs(c(k) - Dd.d.C(i, j, k)));
      // pairing 2 Im tr(XY)
      double p = 2.0 * (b[i] * b[j]).trace().imag();
      worst = std::max(worst, std::abs(p - Dd.pairing(i, j).real()));
    }
  CHECK(worst < 1e-14);
  Rng r(5);
  M2 k = r.sl2c_element();
  RVec6 x;
  for (int i = 0; i < 6; ++i) x(i) = r();
  CHECK((D.coords(k * D.from_coords(x) * k.inverse()) - D.adjoint(k) * x).norm() < 1e-13);
}

TEST_CASE("closed form of Pi^R on SU(2)") {
  Model M = make_su2();
  Realization R(M.rep);
  Rng r(9);
  for (int t = 0; t < 20; ++t) {
    cd a(r(), r()), b(r(), r());
    double n = std::sqrt(std::norm(a) + std::norm(b));
    a /= n;
    b /= n;
    M2 u = su2_from_ab(a, b);
    Mat PR = pi_r(M.B, R.adjoint(u.inverse()));
    CHECK(max_abs(Mat(PR - su_pi_r_closed(a, b))) < 1e-13);
    CHECK(max_abs(Mat(PR + pi_cocycle(M.B, R.adjoint(u.inverse())))) < 1e-13);
  }
  Mat P = hat_pi(Vec3(0.3, 0.1, -0.2));
  CHECK(max_abs(Mat(P + P.transpose())) == 0.0);
}

TEST_CASE("dressing cocycle b is the Poisson cocycle") {
  Model M = make_su2_real();
  Realization R(M.rep);
  Vec3 phi(0.3, -0.5, 0.2);
  Vec x(3);
  x << 0.4, 0.9, -0.3;
  M2 u = R.exp(x);
  Vec b = cocycle_b(u, phi).cast<cd>();
  Mat Pi = pi_cocycle(M.B, R.adjoint(u));
  CHECK(max_abs(Vec(b - Pi * phi.cast<cd>())) < 1e-8);
}
