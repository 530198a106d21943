#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "kickmix/model.hpp"

namespace kickmix {

// Eigenphases of the Floquet operator U = V W, each in [0, 2pi).
struct EigenphaseSet {
  std::vector<double> phases;
};

struct SpectralSeries {
  std::vector<std::int64_t> t_grid;
  std::vector<double> K;
  std::size_t dim = 0;          // Heisenberg time
  std::size_t realizations = 0;
  std::string label;
};

// Diagonalizes U = V diag(exp(-i theta)) with a general complex eigensolver.
// Throws NumericalError if an eigenvalue modulus deviates from 1 by > 1e-8.
EigenphaseSet floquet_eigenphases(const UnitaryMatrix& V, const PhaseVector& theta);

// |sum_n exp(i phi_n t)|^2 at each t of the grid.
std::vector<double> form_factor(const EigenphaseSet& phases, std::span<const std::int64_t> t_grid);

// 1..min(4 dim, 10^4); every integer up to 100, then roughly 1% steps.
std::vector<std::int64_t> default_time_grid(std::size_t dim);

struct ExactSffOptions {
  int threads = 1;
  std::size_t max_dense_dim = 4096;
};

// Disorder-averaged K(t) over realizations 0..R-1 of params. The result does
// not depend on the number of worker threads.
SpectralSeries compute_exact_sff(const ModelParams& params, std::span<const std::int64_t> t_grid,
                                 int realizations, const ExactSffOptions& options = {});

// 2t - 2t^2/dim, or 2t with second_order = false.
double coe_reference(double t, std::size_t dim, bool second_order = true);

}  // namespace kickmix
