#include "kickmix/sff_exact.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include "kickmix/errors.hpp"

namespace kickmix {

EigenphaseSet floquet_eigenphases(const UnitaryMatrix& V, const PhaseVector& theta) {
  const Eigen::Index n = V.V.rows();
  if (V.V.cols() != n || theta.theta.size() != n) {
    throw ConfigError("floquet_eigenphases: dimension mismatch between V and theta");
  }
  EigenphaseSet out;
  if (n == 0) return out;
  Eigen::VectorXcd w(n);
  for (Eigen::Index k = 0; k < n; ++k) w[k] = std::polar(1.0, -theta.theta[k]);
  const Eigen::MatrixXcd U = V.V * w.asDiagonal();

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(U, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw NumericalError("floquet_eigenphases: eigensolver failed");
  const auto& ev = solver.eigenvalues();
  out.phases.resize(static_cast<std::size_t>(n));
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double mod = std::abs(ev[k]);
    if (!(std::abs(mod - 1.0) <= 1e-8)) {
      throw NumericalError("floquet_eigenphases: eigenvalue modulus " + std::to_string(mod) +
                           " deviates from 1");
    }
    double phi = std::arg(ev[k]);
    if (phi < 0.0) phi += two_pi;
    if (phi >= two_pi) phi -= two_pi;
    out.phases[static_cast<std::size_t>(k)] = phi;
  }
  return out;
}

std::vector<double> form_factor(const EigenphaseSet& phases, std::span<const std::int64_t> t_grid) {
  std::vector<double> K(t_grid.size());
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    const double t = static_cast<double>(t_grid[i]);
    double re = 0.0;
    double im = 0.0;
    for (double phi : phases.phases) {
      const double a = std::fmod(phi * t, 2.0 * std::numbers::pi);
      re += std::cos(a);
      im += std::sin(a);
    }
    K[i] = re * re + im * im;
  }
  return K;
}

std::vector<std::int64_t> default_time_grid(std::size_t dim) {
  const auto t_max = static_cast<std::int64_t>(std::min<std::size_t>(4 * std::max<std::size_t>(dim, 1), 10000));
  std::vector<std::int64_t> grid;
  for (std::int64_t t = 1; t <= std::min<std::int64_t>(t_max, 100); ++t) grid.push_back(t);
  double next = 100.0;
  while (true) {
    next *= 1.01;
    const auto t = static_cast<std::int64_t>(std::llround(next));
    if (t > t_max) break;
    if (t > grid.back()) grid.push_back(t);
  }
  if (grid.back() != t_max) grid.push_back(t_max);
  return grid;
}

SpectralSeries compute_exact_sff(const ModelParams& params, std::span<const std::int64_t> t_grid,
                                 int realizations, const ExactSffOptions& options) {
  params.validate();
  if (realizations < 1) throw ConfigError("compute_exact_sff: R must be >= 1");
  for (auto t : t_grid) {
    if (t < 1) throw ConfigError("compute_exact_sff: t_grid entries must be >= 1");
  }
  const std::size_t dim = sector_dimension(params.sector);
  if (dim > options.max_dense_dim) {
    throw BudgetError("compute_exact_sff: dimension " + std::to_string(dim) +
                      " exceeds the dense eigensolver budget " + std::to_string(options.max_dense_dim));
  }
  const Basis basis = enumerate_sector(params.sector);
  const UnitaryMatrix V = propagator(build_driving_matrix(params, basis));

  std::vector<std::vector<double>> per_realization(static_cast<std::size_t>(realizations));
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    while (true) {
      const int r = next.fetch_add(1);
      if (r >= realizations) return;
      try {
        const auto disorder = draw_disorder(params, static_cast<std::uint64_t>(r));
        const auto phases = floquet_eigenphases(V, build_phase_vector(params, basis, disorder));
        per_realization[static_cast<std::size_t>(r)] = form_factor(phases, t_grid);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(realizations);
        return;
      }
    }
  };
  const int n_threads = std::clamp(options.threads, 1, realizations);
  std::vector<std::thread> pool;
  for (int k = 1; k < n_threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  // Summed in realization order so the result is independent of scheduling.
  SpectralSeries out;
  out.t_grid.assign(t_grid.begin(), t_grid.end());
  out.K.assign(t_grid.size(), 0.0);
  for (const auto& k : per_realization) {
    for (std::size_t i = 0; i < k.size(); ++i) out.K[i] += k[i];
  }
  for (double& v : out.K) v /= static_cast<double>(realizations);
  out.dim = dim;
  out.realizations = static_cast<std::size_t>(realizations);
  out.label = "exact";
  return out;
}

double coe_reference(double t, std::size_t dim, bool second_order) {
  if (!second_order) return 2.0 * t;
  return 2.0 * t - 2.0 * t * t / static_cast<double>(dim);
}

}  // namespace kickmix
