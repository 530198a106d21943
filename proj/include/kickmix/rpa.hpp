#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "kickmix/model.hpp"
#include "kickmix/sff_exact.hpp"

namespace kickmix {

enum class MapKind { Full, Trotter };

std::string to_string(MapKind k);

// Doubly stochastic matrix M_ab = |V_ab|^2, or its Trotter approximation.
struct StochasticMap {
  Eigen::MatrixXd M;
  MapKind kind = MapKind::Full;
};

// Eigenvalues within `tol` of their neighbour form one cluster.
struct EigenCluster {
  double value;            // first (largest) member
  std::size_t first;       // index into MapSpectrum::eigenvalues
  std::size_t count;
};

struct MapSpectrum {
  std::vector<double> eigenvalues;  // descending
  std::vector<EigenCluster> clusters;

  // Leading eigenvalue strictly below the top cluster (first value of the
  // second cluster). Throws if there is only one cluster.
  double subleading() const;
};

StochasticMap stochastic_map_from_unitary(const UnitaryMatrix& V);

// |exp(-i H)|^2 built column block by column block from a Chebyshev expansion
// of the sparse H; never forms a dense copy of H or V.
StochasticMap full_stochastic_map(const DrivingMatrix& driving, Eigen::Index block = 64);

// I + H o H - diag(H^2). In sigma^x-pattern Rabi-boson sectors each mixing
// element is weighted by the pattern sign s_i, so the result need not be
// stochastic when the pattern is not uniform.
StochasticMap trotter_generating_map(const ModelParams& params, const Basis& basis);

// Builds basis, H and the requested map for params.sector.
StochasticMap build_map(const ModelParams& params, MapKind kind);

// Symmetric eigenvalues (LAPACK), descending, clustered at `cluster_tol`.
// For full maps, checks lambda_0 = 1 and |lambda| <= 1 within 1e-10.
MapSpectrum map_spectrum(StochasticMap map, double cluster_tol = 1e-9);

// K(t) = 2t sum_i lambda_i^t = 2t (1 + sum_{i>=1} lambda_i^t).
SpectralSeries rpa_sff(const MapSpectrum& spectrum, std::span<const std::int64_t> t_grid);

// Second eigenvalue of the map in each fixed-N sector (JC models only).
// Defaults: N = 1..2L-1 for fermions, 1..L for bosons.
struct Lambda1Point {
  int N;
  std::size_t dim;
  double lambda1;
};
std::vector<Lambda1Point> lambda1_across_N(const ModelParams& params, MapKind kind,
                                           std::vector<int> Ns = {});

}  // namespace kickmix
