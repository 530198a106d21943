#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "kickmix/basis.hpp"
#include "kickmix/model.hpp"
#include "kickmix/rpa.hpp"

namespace kickmix {

// Local (per-site) and collective operators used in symmetry checks.
// Spin conventions treat occupation 1 as spin up.
enum class SpinOperatorKind {
  TauX, TauY, TauZ,        // fermion pseudo-spin at a site
  SigmaX, SigmaY, SigmaZ,  // qubit at a site
  K0, K1, K2, KPlus, KMinus,  // boson su(1,1) at a site
  SPlus, SMinus,           // sum_j (tau_j^+ + sigma_j^+), and conjugate
  TotalN,                  // sum_j (n_j + sigma_j^dag sigma_j)
  FermionN,                // sum_j n_j
  GlobalFlip               // prod_j tau_j^x sigma_j^x
};

bool is_collective(SpinOperatorKind k);

// Matrix elements restricted to the basis; images outside it are dropped.
// `site` is ignored for collective kinds.
Eigen::MatrixXcd operator_matrix(const Basis& basis, SpinOperatorKind kind, int site = 0);

// sum_j of a local operator.
Eigen::MatrixXcd site_sum(const Basis& basis, SpinOperatorKind kind);

// prod_j exp(i pi/4 (tau_j^y + sigma_j^y)) on the full 4^L fermion space.
Eigen::MatrixXd rabi_fermion_rotation(const Basis& basis);

struct SymmetryCheck {
  std::string name;
  double commutator_norm;  // max |[M, O]_ab|
  bool expect_commute;
  bool passed;
};

// Model-specific commutation checks of the map:
//   JC-F: total tau+sigma spin components and S^+/S^-
//   JC-B: sum (K0 + sigma^dag sigma) commutes, sum (K^+ + sigma) does not
//   R-F:  rotated frame, tau~^z total, each sigma~^z_j, global flip
//   R-B:  each sigma^x_j
std::vector<SymmetryCheck> symmetry_report(const StochasticMap& map, const Basis& basis);

}  // namespace kickmix
