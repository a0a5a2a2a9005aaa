#include "pl/models.hpp"

#include <sstream>

namespace pl {

namespace {

std::vector<M2> pauli() {
  M2 s1, s2, s3;
  s1 << 0, 1, 1, 0;
  s2 << 0, -kI, kI, 0;
  s3 << 1, 0, 0, -1;
  return {s1, s2, s3};
}

std::vector<M2> su2_basis() {
  std::vector<M2> e;
  for (const M2& s : pauli()) e.push_back(-0.5 * kI * s);
  return e;
}

Mat su2_r() {
  Mat r = -Mat::Identity(3, 3);
  r(0, 1) = kI;
  r(1, 0) = -kI;
  return r;
}

}  // namespace

Model make_sl2r() {
  M2 H, Xp, Xm;
  H << 1, 0, 0, -1;
  Xp << 0, 1, 0, 0;
  Xm << 0, 0, 1, 0;
  Model M;
  M.name = "sl2r";
  M.rep = {H, Xp, Xm};
  LieAlgebra g = LieAlgebra::from_matrices(M.rep, {"H", "X+", "X-"}, true);
  Mat r = Mat::Zero(3, 3);
  r(1, 2) = 1.0;
  r(0, 0) = 0.25;
  M.B = make_bialgebra(g, r, {"phi", "psi+", "psi-"});
  return M;
}

Model make_su2() {
  Model M;
  M.name = "su2";
  M.rep = su2_basis();
  LieAlgebra g = LieAlgebra::from_matrices(M.rep, {"e1", "e2", "e3"}, true);
  M.B = make_bialgebra(g, su2_r(), {"f1", "f2", "f3"});
  return M;
}

Model make_su2_real() {
  Model M = rescaled(make_su2(), -kI);
  M.name = "su2-real";
  return M;
}

Model make_model(const std::string& name) {
  if (name == "sl2r") return make_sl2r();
  if (name == "su2") return make_su2();
  if (name == "su2-real") return make_su2_real();
  throw ConfigError("unknown algebra '" + name + "' (expected sl2r, su2, su2-real)");
}

Model rescaled(const Model& M, cd factor) {
  if (factor == 0.0) throw ConfigError("rescale factor must be nonzero");
  Model out = M;
  out.B = make_bialgebra(M.B.g, factor * M.B.r, M.B.m.labels);
  out.kappa = M.kappa * factor;
  return out;
}

LieAlgebra sl2r_dual_table() {
  LieAlgebra m(3, {"phi", "psi+", "psi-"}, true);
  for (int a : {1, 2}) {
    m.C(0, a, a) = 0.5;
    m.C(a, 0, a) = -0.5;
  }
  return m;
}

LieAlgebra su2_dual_table() {
  LieAlgebra m(3, {"f1", "f2", "f3"}, true);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        m.C(i, j, k) = kI * (double((i == k) && (j == 2)) - double((j == k) && (i == 2)));
  return m;
}

Preset make_preset(const Model& M, cd lambda, cd mu, const std::string& name, cd rescale) {
  if (std::abs(lambda + 1.0 + 2.0 * mu) <= 1e-8)
    throw ConfigError("splitting condition violated: lambda + 1 + 2 mu = 0");
  Preset P;
  P.name = name;
  P.model = rescale == 1.0 ? M : rescaled(M, rescale);
  P.lambda = lambda;
  P.mu = mu;
  P.rescale = rescale;
  P.g_invariant = std::abs(lambda) < 1e-14;
  return P;
}

namespace {

// "name(a,b)" -> name, {a, b}
std::string split_args(const std::string& s, std::vector<double>& args) {
  auto open = s.find('(');
  if (open == std::string::npos) return s;
  auto close = s.rfind(')');
  if (close == std::string::npos || close < open) throw ConfigError("malformed preset '" + s + "'");
  std::stringstream in(s.substr(open + 1, close - open - 1));
  std::string tok;
  while (std::getline(in, tok, ',')) {
    try {
      args.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw ConfigError("bad preset argument '" + tok + "'");
    }
  }
  return s.substr(0, open);
}

}  // namespace

Preset make_preset(const std::string& spec, const std::string& algebra, std::optional<cd> lambda,
                   std::optional<cd> mu) {
  std::vector<double> args;
  const std::string name = split_args(spec, args);
  Model M = make_model(algebra);
  const bool real = algebra == "su2-real";
  if (name == "modified-principal") {
    return make_preset(M, -1.0, mu.value_or(real ? kI : cd(1.0)), name);
  }
  if (name == "pure-qt") return make_preset(M, 0.0, 0.0, name);
  if (name == "principal-limit") {
    cd m = mu.value_or(args.empty() ? 1e3 : args[0]);
    return make_preset(M, 0.0, m, name, 1.0 / m);
  }
  if (name == "g-invariant") {
    cd m = mu.value_or(args.empty() ? (real ? cd(-0.5, 1.0) : cd(1.0)) : cd(args[0]));
    return make_preset(M, 0.0, m, name);
  }
  if (name == "custom") {
    if (args.size() == 2) {
      lambda = lambda.value_or(args[0]);
      mu = mu.value_or(args[1]);
    }
    if (!lambda || !mu) throw ConfigError("custom preset needs lambda and mu");
    return make_preset(M, *lambda, *mu, name);
  }
  throw ConfigError("unknown preset '" + name + "'");
}

}  // namespace pl
