#include "kickmix/model.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include "kickmix/errors.hpp"

namespace kickmix {

void ModelParams::validate() const {
  sector.validate();
  if (!(alpha > 1.0 && alpha < 2.0)) throw ConfigError("model.alpha must lie in (1, 2)");
  if (omega_std < 0.0 || Omega_std < 0.0) throw ConfigError("model: standard deviations must be >= 0");
  if (g_site && static_cast<int>(g_site->size()) != sector.L) {
    throw ConfigError("model.g_site must have length L");
  }
  for (double v : {g, J, U0, alpha, omega_mean, omega_std, Omega_mean, Omega_std}) {
    if (!std::isfinite(v)) throw ConfigError("model: parameters must be finite");
  }
}

std::vector<std::pair<int, int>> ring_bonds(int L) {
  std::vector<std::pair<int, int>> bonds;
  if (L < 2) return bonds;
  if (L == 2) return {{0, 1}};
  for (int i = 0; i < L; ++i) bonds.emplace_back(i, (i + 1) % L);
  return bonds;
}

namespace {

// (-1)^(number of fermions on sites < site)
double string_sign(const std::vector<int>& n, int site) {
  int count = 0;
  for (int k = 0; k < site; ++k) count += n[k];
  return (count % 2 == 0) ? 1.0 : -1.0;
}

}  // namespace

void for_each_driving_term(const ModelParams& params, const Basis& basis,
                           const std::function<void(const DrivingTerm&)>& visit) {
  const SectorSpec& spec = basis.spec();
  const int L = spec.L;
  const bool fermion = spec.species == Species::Fermion;
  const bool rabi = spec.mixing == Mixing::Rabi;
  const bool pattern = spec.fixed_qubit_pattern.has_value();
  const auto bonds = ring_bonds(L);

  FockState next;
  for (std::size_t from = 0; from < basis.size(); ++from) {
    const FockState& s = basis.state_at(from);

    // Mixing: only the terms raising the boson/fermion number; their
    // Hermitian conjugates are the transposed elements.
    for (int i = 0; i < L; ++i) {
      const double gi = params.coupling(i);
      if (gi == 0.0) continue;
      if (fermion && s.occupations[i] == 1) continue;
      const double amp =
          fermion ? string_sign(s.occupations, i) : std::sqrt(static_cast<double>(s.occupations[i] + 1));
      next = s;
      next.occupations[i] += 1;
      if (pattern) {
        // sigma^x-diagonal sector: g (a + a^dag) sigma^x -> g s_i (a + a^dag).
        const double sx = s.qubits[i] == 1 ? 1.0 : -1.0;
        if (auto to = basis.find(next)) visit({from, *to, gi * sx * amp, TermKind::Mixing, i});
        continue;
      }
      // a^dag sigma (JC and Rabi) lowers the qubit; a^dag sigma^dag (Rabi only) raises it.
      for (int target : {0, 1}) {
        if (target == 0 && s.qubits[i] != 1) continue;
        if (target == 1 && (!rabi || s.qubits[i] != 0)) continue;
        next.qubits[i] = target;
        if (auto to = basis.find(next)) visit({from, *to, gi * amp, TermKind::Mixing, i});
      }
    }

    if (params.J == 0.0) continue;
    // Hopping -J a_i^dag a_j for each bond (i, j), one direction only.
    for (const auto& [i, j] : bonds) {
      if (s.occupations[j] == 0) continue;
      if (fermion && s.occupations[i] == 1) continue;
      next = s;
      double amp;
      if (fermion) {
        amp = string_sign(next.occupations, j);
        next.occupations[j] = 0;
        amp *= string_sign(next.occupations, i);
        next.occupations[i] = 1;
      } else {
        amp = std::sqrt(static_cast<double>(next.occupations[j]));
        next.occupations[j] -= 1;
        amp *= std::sqrt(static_cast<double>(next.occupations[i] + 1));
        next.occupations[i] += 1;
      }
      if (auto to = basis.find(next)) visit({from, *to, -params.J * amp, TermKind::Hopping, i});
    }
  }
}

DisorderRealization draw_disorder(const ModelParams& params, std::uint64_t realization_index) {
  const int L = params.sector.L;
  std::seed_seq seq{static_cast<std::uint32_t>(params.base_seed),
                    static_cast<std::uint32_t>(params.base_seed >> 32),
                    static_cast<std::uint32_t>(realization_index),
                    static_cast<std::uint32_t>(realization_index >> 32)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> unit(0.0, 1.0);

  DisorderRealization d;
  d.realization_index = realization_index;
  d.omega.resize(L);
  d.Omega.resize(L);
  for (int i = 0; i < L; ++i) d.omega[i] = params.omega_mean + params.omega_std * unit(rng);
  for (int i = 0; i < L; ++i) d.Omega[i] = params.Omega_mean + params.Omega_std * unit(rng);
  return d;
}

PhaseVector build_phase_vector(const ModelParams& params, const Basis& basis,
                               const DisorderRealization& disorder) {
  const int L = basis.sites();
  if (static_cast<int>(disorder.omega.size()) != L || static_cast<int>(disorder.Omega.size()) != L) {
    throw ConfigError("build_phase_vector: disorder realization does not match L");
  }
  if (basis.spec().fixed_qubit_pattern) {
    throw ConfigError("build_phase_vector: H0 is not diagonal in a sigma^x-pattern sector");
  }
  // Pair couplings U_ij for i < j.
  Eigen::MatrixXd U = Eigen::MatrixXd::Zero(L, L);
  for (int i = 0; i < L; ++i) {
    for (int j = i + 1; j < L; ++j) {
      int dist = j - i;
      if (params.ring_distance) dist = std::min(dist, L - dist);
      U(i, j) = params.U0 / std::pow(static_cast<double>(dist), params.alpha);
    }
  }
  PhaseVector out;
  out.theta.resize(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const FockState& s = basis.state_at(k);
    double theta = 0.0;
    for (int i = 0; i < L; ++i) {
      theta += disorder.omega[i] * s.occupations[i] + disorder.Omega[i] * s.qubits[i];
    }
    for (int i = 0; i < L; ++i) {
      if (s.occupations[i] == 0) continue;
      for (int j = i + 1; j < L; ++j) theta += U(i, j) * s.occupations[i] * s.occupations[j];
    }
    out.theta[static_cast<Eigen::Index>(k)] = theta;
  }
  return out;
}

DrivingMatrix build_driving_matrix(const ModelParams& params, const Basis& basis) {
  params.validate();
  SectorSpec expected = params.sector;
  expected.max_dim = basis.spec().max_dim;
  if (!(expected == basis.spec())) {
    throw ConfigError("build_driving_matrix: basis was built for a different sector");
  }
  std::vector<Eigen::Triplet<double>> triplets;
  for_each_driving_term(params, basis, [&](const DrivingTerm& t) {
    const auto r = static_cast<Eigen::Index>(t.to);
    const auto c = static_cast<Eigen::Index>(t.from);
    triplets.emplace_back(r, c, t.amplitude);
    triplets.emplace_back(c, r, t.amplitude);
  });
  const auto n = static_cast<Eigen::Index>(basis.size());
  DrivingMatrix out;
  out.H.resize(n, n);
  out.H.setFromTriplets(triplets.begin(), triplets.end());
  out.H.makeCompressed();
  return out;
}

UnitaryMatrix propagator(const DrivingMatrix& driving) {
  const Eigen::MatrixXd h = driving.dense();
  if (!h.allFinite()) throw NumericalError("propagator: driving matrix is not finite");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  if (es.info() != Eigen::Success) throw NumericalError("propagator: eigensolver failed");
  const Eigen::MatrixXd& Q = es.eigenvectors();
  const Eigen::VectorXd& E = es.eigenvalues();
  // V = Q diag(cos E - i sin E) Q^T, assembled from two real products.
  const Eigen::MatrixXd re = Q * E.array().cos().matrix().asDiagonal() * Q.transpose();
  const Eigen::MatrixXd im = -(Q * E.array().sin().matrix().asDiagonal() * Q.transpose());
  UnitaryMatrix out;
  out.V.resize(h.rows(), h.cols());
  out.V.real() = re;
  out.V.imag() = im;
  return out;
}

}  // namespace kickmix
