#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "kickmix/basis.hpp"

namespace kickmix {

// Full experiment definition: sector, kick strengths and the disorder law of
// the diagonal base Hamiltonian.
struct ModelParams {
  SectorSpec sector;
  double g = 0.1;                             // uniform mixing strength
  std::optional<std::vector<double>> g_site;  // per-site mixing, overrides g
  double J = 0.4;                             // hopping
  double U0 = 10.0;                           // interaction amplitude
  double alpha = 1.4;                         // interaction exponent, in (1, 2)
  double omega_mean = 1.0;
  double omega_std = 0.3;
  double Omega_mean = 1.0;
  double Omega_std = 0.3;
  std::uint64_t base_seed = 0;
  // Use min(|i-j|, L-|i-j|) in U0/|i-j|^alpha instead of the linear distance.
  bool ring_distance = false;

  void validate() const;
  double coupling(int site) const { return g_site ? (*g_site)[site] : g; }
};

struct DisorderRealization {
  std::vector<double> omega;  // fermion/boson on-site energies
  std::vector<double> Omega;  // qubit transition frequencies
  std::uint64_t realization_index = 0;
};

// Diagonal phases theta of W = exp(-i H0), one per basis state.
struct PhaseVector {
  Eigen::VectorXd theta;
};

// Real symmetric matrix of the kick Hamiltonian in the occupation basis.
// Stored sparse: the largest dense workflows need the memory for the map.
struct DrivingMatrix {
  Eigen::SparseMatrix<double> H;

  Eigen::Index dim() const { return H.rows(); }
  Eigen::MatrixXd dense() const { return Eigen::MatrixXd(H); }
};

struct UnitaryMatrix {
  Eigen::MatrixXcd V;
};

enum class TermKind { Mixing, Hopping };

// One off-diagonal element <to|H|from> = amplitude; its transpose is implied.
// `site` is the mixing site or the first site of the hopping bond.
struct DrivingTerm {
  std::size_t from;
  std::size_t to;
  double amplitude;
  TermKind kind;
  int site;
};

// Nearest-neighbour pairs of the periodic ring. For L = 2 the two ring bonds
// coincide and are listed once; L = 1 has no bonds.
std::vector<std::pair<int, int>> ring_bonds(int L);

// Visits every nonzero off-diagonal element of H_JC or H_R exactly once (one
// of each transposed pair). Fermion amplitudes carry Jordan-Wigner string
// signs, so the bond L->1 picks up (-1)^(N_f - 1) relative to the bulk.
void for_each_driving_term(const ModelParams& params, const Basis& basis,
                           const std::function<void(const DrivingTerm&)>& visit);

// Gaussian draws for omega_i and Omega_i, fully determined by
// (params.base_seed, realization_index).
DisorderRealization draw_disorder(const ModelParams& params, std::uint64_t realization_index);

// theta = sum_i (omega_i n_i + Omega_i sigma_i) + sum_{i<j} U0 / d_ij^alpha n_i n_j.
PhaseVector build_phase_vector(const ModelParams& params, const Basis& basis,
                               const DisorderRealization& disorder);

DrivingMatrix build_driving_matrix(const ModelParams& params, const Basis& basis);

// V = exp(-i H) from the symmetric eigendecomposition of H.
UnitaryMatrix propagator(const DrivingMatrix& driving);

}  // namespace kickmix
