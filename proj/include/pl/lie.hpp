#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "pl/types.hpp"

namespace pl {

// [e_i, e_j] = sum_k c(i,j,k) e_k
struct LieAlgebra {
  int dim = 0;
  std::vector<cd> c;
  std::vector<std::string> labels;
  bool real = false;

  LieAlgebra() = default;
  LieAlgebra(int n, std::vector<std::string> names, bool is_real = false);

  cd& C(int i, int j, int k) { return c[(i * dim + j) * dim + k]; }
  cd C(int i, int j, int k) const { return c[(i * dim + j) * dim + k]; }

  // structure constants of the span of traceless 2x2 matrices
  static LieAlgebra from_matrices(const std::vector<M2>& basis, std::vector<std::string> names,
                                  bool is_real = false);
};

Vec bracket(const LieAlgebra& L, const Vec& a, const Vec& b);
double jacobi_residual(const LieAlgebra& L);
double antisymmetry_residual(const LieAlgebra& L);
double max_diff(const LieAlgebra& A, const LieAlgebra& B);

// matrix of y -> [x, y]
Mat ad_operator(const LieAlgebra& L, const Vec& x);

// a^T form b
cd pair(const Mat& form, const Vec& a, const Vec& b);

// max |<[x,a],b> + <a,[x,b]>| over basis triples
double ad_invariance_defect(const LieAlgebra& L, const Mat& form);

nlohmann::json to_json(const LieAlgebra& L);
LieAlgebra lie_from_json(const nlohmann::json& j);

}  // namespace pl
