#include "kickmix/rpa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kickmix/errors.hpp"
#include "kickmix/linalg.hpp"

namespace kickmix {

std::string to_string(MapKind k) { return k == MapKind::Full ? "full" : "trotter"; }

double MapSpectrum::subleading() const {
  if (clusters.size() < 2) throw NumericalError("MapSpectrum::subleading: spectrum has a single cluster");
  return clusters[1].value;
}

StochasticMap stochastic_map_from_unitary(const UnitaryMatrix& V) {
  StochasticMap out;
  out.M = V.V.cwiseAbs2();
  out.kind = MapKind::Full;
  return out;
}

StochasticMap full_stochastic_map(const DrivingMatrix& driving, Eigen::Index block) {
  using SpMat = Eigen::SparseMatrix<double>;
  const Eigen::Index n = driving.dim();
  StochasticMap out;
  out.kind = MapKind::Full;
  if (n == 0) return out;
  if (block < 1) block = 1;

  // Gershgorin interval [lo, hi] for the spectrum of H.
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (Eigen::Index c = 0; c < n; ++c) {
    double diag = 0.0;
    double radius = 0.0;
    for (SpMat::InnerIterator it(driving.H, c); it; ++it) {
      if (it.row() == c) {
        diag = it.value();
      } else {
        radius += std::abs(it.value());
      }
    }
    lo = std::min(lo, diag - radius);
    hi = std::max(hi, diag + radius);
  }
  const double center = 0.5 * (lo + hi);
  const double r = 0.5 * (hi - lo);
  if (!std::isfinite(r)) throw NumericalError("full_stochastic_map: driving matrix is not finite");
  if (r < 1e-14) {
    out.M = Eigen::MatrixXd::Identity(n, n);
    return out;
  }

  SpMat identity(n, n);
  identity.setIdentity();
  const SpMat X = (driving.H - center * identity) / r;

  // exp(-i r x) = J_0(r) + 2 sum_k (-i)^k J_k(r) T_k(x); the global phase
  // exp(-i center) drops out of |V|^2.
  std::vector<double> coeff;
  for (int k = 0; k < 100000; ++k) {
    const double jk = std::cyl_bessel_j(static_cast<double>(k), r);
    coeff.push_back(k == 0 ? jk : 2.0 * jk);
    if (k > r + 5 && std::abs(jk) < 1e-18) break;
  }

  out.M.resize(n, n);
  for (Eigen::Index c0 = 0; c0 < n; c0 += block) {
    const Eigen::Index b = std::min(block, n - c0);
    Eigen::MatrixXd t_prev = Eigen::MatrixXd::Zero(n, b);
    for (Eigen::Index j = 0; j < b; ++j) t_prev(c0 + j, j) = 1.0;
    Eigen::MatrixXd re = coeff[0] * t_prev;
    Eigen::MatrixXd im = Eigen::MatrixXd::Zero(n, b);
    Eigen::MatrixXd t_cur = X * t_prev;
    Eigen::MatrixXd t_next(n, b);
    for (std::size_t k = 1; k < coeff.size(); ++k) {
      switch (k % 4) {
        case 0: re += coeff[k] * t_cur; break;
        case 1: im -= coeff[k] * t_cur; break;
        case 2: re -= coeff[k] * t_cur; break;
        default: im += coeff[k] * t_cur; break;
      }
      if (k + 1 == coeff.size()) break;
      t_next.noalias() = 2.0 * (X * t_cur);
      t_next -= t_prev;
      std::swap(t_prev, t_cur);
      std::swap(t_cur, t_next);
    }
    out.M.middleCols(c0, b) = re.cwiseAbs2() + im.cwiseAbs2();
  }
  return out;
}

StochasticMap trotter_generating_map(const ModelParams& params, const Basis& basis) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  const bool pattern = basis.spec().fixed_qubit_pattern.has_value();
  StochasticMap out;
  out.kind = MapKind::Trotter;
  out.M = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd h2_diag = Eigen::VectorXd::Zero(n);
  for_each_driving_term(params, basis, [&](const DrivingTerm& t) {
    const auto a = static_cast<Eigen::Index>(t.from);
    const auto b = static_cast<Eigen::Index>(t.to);
    const double sq = t.amplitude * t.amplitude;
    double w = sq;
    if (pattern && t.kind == TermKind::Mixing) {
      w *= basis.state_at(t.from).qubits[t.site] == 1 ? 1.0 : -1.0;
    }
    out.M(b, a) += w;
    out.M(a, b) += w;
    h2_diag[a] += sq;
    h2_diag[b] += sq;
  });
  out.M.diagonal().array() += 1.0 - h2_diag.array();
  return out;
}

StochasticMap build_map(const ModelParams& params, MapKind kind) {
  const Basis basis = enumerate_sector(params.sector);
  if (kind == MapKind::Trotter) return trotter_generating_map(params, basis);
  const DrivingMatrix h = build_driving_matrix(params, basis);
  if (h.dim() <= 1024) return stochastic_map_from_unitary(propagator(h));
  return full_stochastic_map(h);
}

MapSpectrum map_spectrum(StochasticMap map, double cluster_tol) {
  const Eigen::Index n = map.M.rows();
  if (map.M.cols() != n) throw ConfigError("map_spectrum: map is not square");
  if (!map.M.allFinite()) throw NumericalError("map_spectrum: map is not finite");
  double asym = 0.0;
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index r = c + 1; r < n; ++r) asym = std::max(asym, std::abs(map.M(r, c) - map.M(c, r)));
  }
  if (asym > 1e-9) throw NumericalError("map_spectrum: map is not symmetric");

  const MapKind kind = map.kind;
  const Eigen::VectorXd ev = linalg::symmetric_eigenvalues(std::move(map.M));
  MapSpectrum out;
  out.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  std::reverse(out.eigenvalues.begin(), out.eigenvalues.end());
  if (kind == MapKind::Full && !out.eigenvalues.empty()) {
    if (std::abs(out.eigenvalues.front() - 1.0) > 1e-10 || out.eigenvalues.back() < -1.0 - 1e-10) {
      throw NumericalError("map_spectrum: full map violates lambda_0 = 1, |lambda| <= 1");
    }
  }
  for (std::size_t k = 0; k < out.eigenvalues.size(); ++k) {
    if (k > 0 && out.eigenvalues[k - 1] - out.eigenvalues[k] <= cluster_tol) {
      ++out.clusters.back().count;
    } else {
      out.clusters.push_back({out.eigenvalues[k], k, 1});
    }
  }
  return out;
}

SpectralSeries rpa_sff(const MapSpectrum& spectrum, std::span<const std::int64_t> t_grid) {
  SpectralSeries out;
  out.t_grid.assign(t_grid.begin(), t_grid.end());
  out.K.resize(t_grid.size());
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (t_grid[i] < 1) throw ConfigError("rpa_sff: t_grid entries must be >= 1");
    const double t = static_cast<double>(t_grid[i]);
    double sum = 0.0;
    for (double lam : spectrum.eigenvalues) sum += std::pow(lam, t);
    out.K[i] = 2.0 * t * sum;
  }
  out.dim = spectrum.eigenvalues.size();
  out.realizations = 0;
  out.label = "rpa";
  return out;
}

std::vector<Lambda1Point> lambda1_across_N(const ModelParams& params, MapKind kind, std::vector<int> Ns) {
  if (params.sector.mixing != Mixing::JC) {
    throw ConfigError("lambda1_across_N: only JC models conserve N");
  }
  const int L = params.sector.L;
  if (Ns.empty()) {
    const int top = params.sector.species == Species::Fermion ? 2 * L - 1 : L;
    for (int N = 1; N <= top; ++N) Ns.push_back(N);
  }
  std::vector<Lambda1Point> out;
  for (int N : Ns) {
    ModelParams p = params;
    p.sector.N = N;
    p.sector.N_max.reset();
    MapSpectrum s = map_spectrum(build_map(p, kind));
    if (s.eigenvalues.size() < 2) throw ConfigError("lambda1_across_N: sector N=" + std::to_string(N) + " has dim < 2");
    out.push_back({N, s.eigenvalues.size(), s.eigenvalues[1]});
  }
  return out;
}

}  // namespace kickmix
