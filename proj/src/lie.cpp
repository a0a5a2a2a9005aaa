#include "pl/lie.hpp"

#include <algorithm>

namespace pl {

LieAlgebra::LieAlgebra(int n, std::vector<std::string> names, bool is_real)
    : dim(n), c(static_cast<size_t>(n) * n * n, cd(0.0)), labels(std::move(names)), real(is_real) {
  if (labels.empty())
    for (int i = 0; i < n; ++i) labels.push_back("e" + std::to_string(i + 1));
  if (static_cast<int>(labels.size()) != n) throw ConfigError("label count does not match dimension");
}

namespace {
// traceless 2x2 -> (X00, X01, X10)
Eigen::Vector3cd flat3(const M2& X) { return {X(0, 0), X(0, 1), X(1, 0)}; }
}  // namespace

LieAlgebra LieAlgebra::from_matrices(const std::vector<M2>& basis, std::vector<std::string> names,
                                     bool is_real) {
  const int n = static_cast<int>(basis.size());
  LieAlgebra L(n, std::move(names), is_real);
  Mat B(3, n);
  for (int j = 0; j < n; ++j) B.col(j) = flat3(basis[j]);
  auto solver = B.completeOrthogonalDecomposition();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      M2 C = basis[i] * basis[j] - basis[j] * basis[i];
      Vec x = solver.solve(Vec(flat3(C)));
      for (int k = 0; k < n; ++k) L.C(i, j, k) = x(k);
    }
  return L;
}

Vec bracket(const LieAlgebra& L, const Vec& a, const Vec& b) {
  if (a.size() != L.dim || b.size() != L.dim) throw std::invalid_argument("bracket: algebra mismatch");
  const int n = L.dim;
  Vec out = Vec::Zero(n);
  for (int i = 0; i < n; ++i) {
    if (a(i) == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      cd w = a(i) * b(j);
      if (w == 0.0) continue;
      for (int k = 0; k < n; ++k) out(k) += L.C(i, j, k) * w;
    }
  }
  return out;
}

double jacobi_residual(const LieAlgebra& L) {
  const int n = L.dim;
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Vec x = unit(n, i), y = unit(n, j), z = unit(n, k);
        Vec s = bracket(L, x, bracket(L, y, z)) + bracket(L, y, bracket(L, z, x)) +
                bracket(L, z, bracket(L, x, y));
        worst = std::max(worst, max_abs(s));
      }
  return worst;
}

double antisymmetry_residual(const LieAlgebra& L) {
  double worst = 0.0;
  for (int i = 0; i < L.dim; ++i)
    for (int j = 0; j < L.dim; ++j)
      for (int k = 0; k < L.dim; ++k) worst = std::max(worst, std::abs(L.C(i, j, k) + L.C(j, i, k)));
  return worst;
}

double max_diff(const LieAlgebra& A, const LieAlgebra& B) {
  if (A.dim != B.dim) throw std::invalid_argument("max_diff: dimension mismatch");
  double worst = 0.0;
  for (size_t i = 0; i < A.c.size(); ++i) worst = std::max(worst, std::abs(A.c[i] - B.c[i]));
  return worst;
}

Mat ad_operator(const LieAlgebra& L, const Vec& x) {
  if (x.size() != L.dim) throw std::invalid_argument("ad_operator: algebra mismatch");
  const int n = L.dim;
  Mat A = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) A(k, j) += x(i) * L.C(i, j, k);
  return A;
}

cd pair(const Mat& form, const Vec& a, const Vec& b) {
  if (form.rows() != a.size() || form.cols() != b.size())
    throw std::invalid_argument("pair: shape mismatch");
  return a.transpose() * form * b;
}

double ad_invariance_defect(const LieAlgebra& L, const Mat& form) {
  const int n = L.dim;
  double worst = 0.0;
  for (int x = 0; x < n; ++x) {
    Mat A = ad_operator(L, unit(n, x));
    // <A a, b> + <a, A b> for all basis a, b at once
    Mat D = A.transpose() * form + form * A;
    worst = std::max(worst, max_abs(D));
  }
  return worst;
}

nlohmann::json to_json(const LieAlgebra& L) {
  nlohmann::json j;
  j["dim"] = L.dim;
  j["labels"] = L.labels;
  j["real"] = L.real;
  auto sc = nlohmann::json::array();
  for (int i = 0; i < L.dim; ++i)
    for (int a = 0; a < L.dim; ++a)
      for (int k = 0; k < L.dim; ++k) {
        cd v = L.C(i, a, k);
        if (v != 0.0) sc.push_back({i, a, k, v.real(), v.imag()});
      }
  j["structure_constants"] = sc;
  return j;
}

LieAlgebra lie_from_json(const nlohmann::json& j) {
  try {
    int n = j.at("dim").get<int>();
    if (n <= 0) throw ConfigError("dim must be positive");
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    LieAlgebra L(n, labels, j.value("real", false));
    for (const auto& t : j.at("structure_constants")) {
      int a = t.at(0), b = t.at(1), k = t.at(2);
      if (a < 0 || b < 0 || k < 0 || a >= n || b >= n || k >= n)
        throw ConfigError("structure constant index out of range");
      L.C(a, b, k) = cd(t.at(3).get<double>(), t.at(4).get<double>());
    }
    return L;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad algebra json: ") + e.what());
  }
}

}  // namespace pl
