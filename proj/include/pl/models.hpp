#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pl/bialgebra.hpp"

namespace pl {

struct Model {
  std::string name;  // sl2r | su2 | su2-real
  QuasiBialgebra B;
  std::vector<M2> rep;  // defining 2x2 matrices of the g basis
  // r = kappa * r_reference; SU2* vector coordinates refer to the m basis i f_k / kappa
  cd kappa{1.0, 0.0};
};

Model make_sl2r();
Model make_su2();
Model make_su2_real();
Model make_model(const std::string& name);
Model rescaled(const Model& M, cd factor);

// dual brackets as printed in the source tables
LieAlgebra sl2r_dual_table();
LieAlgebra su2_dual_table();

struct Preset {
  std::string name;
  Model model;
  cd lambda{0.0}, mu{0.0};
  cd rescale{1.0};
  bool g_invariant = false;
};

Preset make_preset(const Model& M, cd lambda, cd mu, const std::string& name = "custom",
                   cd rescale = 1.0);

// names: modified-principal, pure-qt, principal-limit, g-invariant, custom;
// "g-invariant(mu)" and "custom(lambda,mu)" forms are accepted
Preset make_preset(const std::string& name, const std::string& algebra = "su2",
                   std::optional<cd> lambda = std::nullopt, std::optional<cd> mu = std::nullopt);

}  // namespace pl
