#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "kickmix/errors.hpp"
#include "kickmix/sff_exact.hpp"
#include "oracles.hpp"

using namespace kickmix;

namespace {

ModelParams jcf(int L, int N, double g = 0.3, double J = 0.5) {
  ModelParams p;
  p.sector.L = L;
  p.sector.N = N;
  p.g = g;
  p.J = J;
  return p;
}

double window_mean(const SpectralSeries& s, std::int64_t lo, std::int64_t hi) {
  double sum = 0.0;
  int n = 0;
  for (std::size_t i = 0; i < s.t_grid.size(); ++i) {
    if (s.t_grid[i] >= lo && s.t_grid[i] <= hi) {
      sum += s.K[i] / (2.0 * static_cast<double>(s.t_grid[i]));
      ++n;
    }
  }
  return sum / n;
}

}  // namespace

TEST_CASE("identity propagator with zero phases") {
  UnitaryMatrix V{Eigen::MatrixXcd::Identity(5, 5)};
  PhaseVector th{Eigen::VectorXd::Zero(5)};
  for (double phi : floquet_eigenphases(V, th).phases) CHECK(std::min(phi, 2 * std::numbers::pi - phi) < 1e-12);
}

TEST_CASE("two-state block has phases +-g") {
  ModelParams p = jcf(1, 1, 0.41, 0.0);
  const Basis b = enumerate_sector(p.sector);
  const auto V = propagator(build_driving_matrix(p, b));
  auto phases = floquet_eigenphases(V, PhaseVector{Eigen::VectorXd::Zero(2)}).phases;
  std::sort(phases.begin(), phases.end());
  CHECK(phases[0] == doctest::Approx(0.41).epsilon(1e-12));
  CHECK(phases[1] == doctest::Approx(2 * std::numbers::pi - 0.41).epsilon(1e-12));
}

TEST_CASE("phases lie in [0, 2pi) and have unit modulus") {
  ModelParams p = jcf(3, 3);
  const Basis b = enumerate_sector(p.sector);
  const auto V = propagator(build_driving_matrix(p, b));
  const auto th = build_phase_vector(p, b, draw_disorder(p, 0));
  for (double phi : floquet_eigenphases(V, th).phases) {
    CHECK(phi >= 0.0);
    CHECK(phi < 2 * std::numbers::pi);
  }
}

TEST_CASE("non-unitary input is rejected") {
  UnitaryMatrix V{2.0 * Eigen::MatrixXcd::Identity(3, 3)};
  CHECK_THROWS_AS(floquet_eigenphases(V, PhaseVector{Eigen::VectorXd::Zero(3)}), NumericalError);
  CHECK_THROWS_AS(floquet_eigenphases(V, PhaseVector{Eigen::VectorXd::Zero(2)}), ConfigError);
}

TEST_CASE("phase sums agree with traces of matrix powers") {
  for (auto [L, N] : {std::pair{3, 3}, std::pair{4, 2}, std::pair{3, 2}}) {
    ModelParams p = jcf(L, N, 0.8, 0.6);
    const Basis b = enumerate_sector(p.sector);
    const auto V = propagator(build_driving_matrix(p, b));
    const auto th = build_phase_vector(p, b, draw_disorder(p, 5));
    Eigen::VectorXcd w(th.theta.size());
    for (Eigen::Index k = 0; k < w.size(); ++k) w[k] = std::polar(1.0, -th.theta[k]);
    const auto brute = oracle::brute_force_form_factor(V.V * w.asDiagonal(), 50);
    std::vector<std::int64_t> grid;
    for (int t = 1; t <= 50; ++t) grid.push_back(t);
    const auto K = form_factor(floquet_eigenphases(V, th), grid);
    for (int t = 0; t < 50; ++t) {
      CHECK(std::abs(K[t] - brute[t]) <= 1e-6 * std::max(1.0, brute[t]));
      CHECK(std::sqrt(K[t]) <= static_cast<double>(b.size()) + 1e-9);
    }
  }
}

TEST_CASE("single state gives K = 1") {
  ModelParams p = jcf(3, 0);
  const std::vector<std::int64_t> grid{1, 2, 7, 100};
  const auto s = compute_exact_sff(p, grid, 3);
  for (double k : s.K) CHECK(k == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("uncorrelated phases give K close to dim") {
  ModelParams p = jcf(4, 2, 0.0, 0.0);
  p.omega_std = 5.0;
  p.Omega_std = 5.0;
  std::vector<std::int64_t> grid;
  for (int t = 1; t <= 20; ++t) grid.push_back(t);
  const auto s = compute_exact_sff(p, grid, 2000);
  double mean = 0.0;
  for (double k : s.K) mean += k;
  mean /= static_cast<double>(s.K.size());
  CHECK(std::abs(mean / 28.0 - 1.0) < 0.1);
}

TEST_CASE("ensemble average is independent of the worker count") {
  ModelParams p = jcf(3, 3);
  p.base_seed = 99;
  const auto grid = default_time_grid(20);
  ExactSffOptions one;
  ExactSffOptions many;
  many.threads = 3;
  const auto a = compute_exact_sff(p, grid, 17, one);
  const auto b = compute_exact_sff(p, grid, 17, many);
  CHECK(a.K == b.K);
  CHECK(a.dim == 20);
  CHECK(a.realizations == 17);
  for (double k : a.K) CHECK(k >= 0.0);
}

TEST_CASE("doubling R moves the plateau average within its error bound") {
  ModelParams p = jcf(4, 2, 1.0, 1.0);
  std::vector<std::int64_t> grid;
  for (int t = 1; t <= 60; ++t) grid.push_back(t);
  const auto a = compute_exact_sff(p, grid, 200);
  const auto b = compute_exact_sff(p, grid, 400);
  const double ma = window_mean(a, 5, 20);
  const double mb = window_mean(b, 5, 20);
  CHECK(std::abs(ma - mb) < 3.0 * ma / std::sqrt(200.0));
}

TEST_CASE("argument checks") {
  ModelParams p = jcf(3, 2);
  const std::vector<std::int64_t> grid{1, 2};
  CHECK_THROWS_AS(compute_exact_sff(p, grid, 0), ConfigError);
  ExactSffOptions small;
  small.max_dense_dim = 10;
  CHECK_THROWS_AS(compute_exact_sff(p, grid, 1, small), BudgetError);
  const std::vector<std::int64_t> bad{0, 1};
  CHECK_THROWS_AS(compute_exact_sff(p, bad, 1), ConfigError);
}

TEST_CASE("default time grid") {
  const auto g = default_time_grid(15504);
  CHECK(g.front() == 1);
  CHECK(g.back() == 10000);
  CHECK(std::is_sorted(g.begin(), g.end()));
  CHECK(std::adjacent_find(g.begin(), g.end()) == g.end());
  for (int t = 1; t <= 100; ++t) CHECK(g[t - 1] == t);
  CHECK(g.size() < 700);
  CHECK(default_time_grid(20).back() == 80);
}

TEST_CASE("circular orthogonal reference") {
  CHECK(coe_reference(0.0, 100) == 0.0);
  CHECK(coe_reference(1.0, 100000) == doctest::Approx(2.0).epsilon(1e-4));
  CHECK(coe_reference(25.0, 100) == doctest::Approx(2.0 * 25 - 2.0 * 625 / 100));
  CHECK(coe_reference(25.0, 100, false) == 50.0);
}
