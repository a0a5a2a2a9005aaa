#include "doctest.h"
#include "pl/group.hpp"

using namespace pl;

namespace {

M2 comm(const M2& a, const M2& b) { return a * b - b * a; }

std::vector<M2> sl2_matrices() {
  M2 H, Xp, Xm;
  H << 1, 0, 0, -1;
  Xp << 0, 1, 0, 0;
  Xm << 0, 0, 1, 0;
  return {H, Xp, Xm};
}

}  // namespace

TEST_CASE("sl2 structure constants from matrices") {
  auto B = sl2_matrices();
  LieAlgebra L = LieAlgebra::from_matrices(B, {"H", "X+", "X-"}, true);
  // [H, X+] = 2 X+, [H, X-] = -2 X-, [X+, X-] = H
  CHECK(std::abs(L.C(0, 1, 1) - 2.0) < 1e-14);
  CHECK(std::abs(L.C(0, 2, 2) + 2.0) < 1e-14);
  CHECK(std::abs(L.C(1, 2, 0) - 1.0) < 1e-14);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      M2 X = M2::Zero();
      for (int k = 0; k < 3; ++k) X += L.C(i, j, k) * B[k];
      CHECK((X - comm(B[i], B[j])).norm() < 1e-14);
    }
  CHECK(antisymmetry_residual(L) < 1e-15);
  CHECK(jacobi_residual(L) < 1e-14);
}

TEST_CASE("bracket agrees with matrix commutators on random vectors") {
  Model M = make_su2();
  LieAlgebra L = M.B.g;
  Realization R(M.rep);
  Vec a(3), b(3);
  a << 0.3, -1.2, 0.7;
  b << cd(0.1, 0.4), 2.0, cd(-0.5, 0.2);
  Vec c = bracket(L, a, b);
  CHECK((R.from_coords(c) - comm(R.from_coords(a), R.from_coords(b))).norm() < 1e-14);
  CHECK((ad_operator(L, a) * b - c).norm() < 1e-14);
  CHECK_THROWS_AS(bracket(L, Vec::Zero(2), b), std::invalid_argument);
}

TEST_CASE("trace form is ad-invariant") {
  Model M = make_sl2r();
  Mat form(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) form(i, j) = (M.rep[i] * M.rep[j]).trace();
  CHECK(ad_invariance_defect(M.B.g, form) < 1e-14);
  Mat bad = Mat::Identity(3, 3);
  CHECK(ad_invariance_defect(M.B.g, bad) > 0.5);
}

TEST_CASE("json round trip and malformed input") {
  LieAlgebra L = make_su2().B.m;
  LieAlgebra back = lie_from_json(to_json(L));
  CHECK(max_diff(L, back) == 0.0);
  CHECK(back.labels == L.labels);
  CHECK_THROWS_AS(lie_from_json(nlohmann::json::parse(R"({"dim": 2, "structure_constants": [[0, 5, 0, 1, 0]]})")), ConfigError);
  CHECK_THROWS_AS(lie_from_json(nlohmann::json::parse("[1, 2]")), ConfigError);
}
