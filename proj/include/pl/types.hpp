#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace pl {

using cd = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using M2 = Eigen::Matrix2cd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

inline const cd kI{0.0, 1.0};

// bad user input: exit code 2 in the CLI
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// singular operator, graph blowup, failed factorization: exit code 3
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }
inline double max_abs(const Vec& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

inline int levi(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  return ((j - i + 3) % 3 == 1) ? 1 : -1;
}

inline Vec unit(int n, int i) {
  Vec v = Vec::Zero(n);
  v(i) = 1.0;
  return v;
}

}  // namespace pl
