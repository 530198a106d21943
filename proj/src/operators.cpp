#include "kickmix/operators.hpp"

#include <cmath>
#include <complex>
#include <utility>

#include "kickmix/errors.hpp"

namespace kickmix {

namespace {

using cd = std::complex<double>;
using Image = std::vector<std::pair<FockState, cd>>;

constexpr cd kI{0.0, 1.0};

Image apply_local(const FockState& s, SpinOperatorKind kind, int site) {
  Image out;
  FockState t = s;
  const int n = s.occupations[site];
  switch (kind) {
    case SpinOperatorKind::TauX:
    case SpinOperatorKind::TauY:
    case SpinOperatorKind::TauZ: {
      const char axis = kind == SpinOperatorKind::TauX ? 'x' : kind == SpinOperatorKind::TauY ? 'y' : 'z';
      if (n != 0 && n != 1) throw ConfigError("operator_matrix: tau operator on a bosonic site");
      if (axis == 'z') {
        out.emplace_back(s, n == 1 ? 1.0 : -1.0);
      } else {
        t.occupations[site] = 1 - n;
        out.emplace_back(t, axis == 'x' ? cd{1.0} : (n == 1 ? kI : -kI));
      }
      break;
    }
    case SpinOperatorKind::SigmaX:
    case SpinOperatorKind::SigmaY:
    case SpinOperatorKind::SigmaZ: {
      const char axis = kind == SpinOperatorKind::SigmaX ? 'x' : kind == SpinOperatorKind::SigmaY ? 'y' : 'z';
      const int q = s.qubits[site];
      if (axis == 'z') {
        out.emplace_back(s, q == 1 ? 1.0 : -1.0);
      } else {
        t.qubits[site] = 1 - q;
        out.emplace_back(t, axis == 'x' ? cd{1.0} : (q == 1 ? kI : -kI));
      }
      break;
    }
    case SpinOperatorKind::K0:
      out.emplace_back(s, -(n + 0.5));
      break;
    case SpinOperatorKind::KPlus:
    case SpinOperatorKind::KMinus:
    case SpinOperatorKind::K1:
    case SpinOperatorKind::K2: {
      // K^+ |n> = n |n-1>, K^- |n> = (n+1) |n+1>.
      cd wp = 0.0;
      cd wm = 0.0;
      if (kind == SpinOperatorKind::KPlus) wp = 1.0;
      if (kind == SpinOperatorKind::KMinus) wm = 1.0;
      if (kind == SpinOperatorKind::K1) wp = wm = 0.5;
      if (kind == SpinOperatorKind::K2) {
        wp = 1.0 / (2.0 * kI);
        wm = -1.0 / (2.0 * kI);
      }
      if (n > 0 && wp != 0.0) {
        t.occupations[site] = n - 1;
        out.emplace_back(t, wp * static_cast<double>(n));
      }
      if (wm != 0.0) {
        t.occupations[site] = n + 1;
        out.emplace_back(t, wm * static_cast<double>(n + 1));
      }
      break;
    }
    default:
      throw std::logic_error("apply_local: collective operator");
  }
  return out;
}

Image apply_collective(const FockState& s, SpinOperatorKind kind) {
  Image out;
  const int L = s.sites();
  switch (kind) {
    case SpinOperatorKind::SPlus:
    case SpinOperatorKind::SMinus: {
      const int from = kind == SpinOperatorKind::SPlus ? 0 : 1;
      for (int j = 0; j < L; ++j) {
        if (s.occupations[j] > 1) throw ConfigError("operator_matrix: S^+/S^- need fermion sites");
        if (s.occupations[j] == from) {
          FockState t = s;
          t.occupations[j] = 1 - from;
          out.emplace_back(std::move(t), 1.0);
        }
        if (s.qubits[j] == from) {
          FockState t = s;
          t.qubits[j] = 1 - from;
          out.emplace_back(std::move(t), 1.0);
        }
      }
      break;
    }
    case SpinOperatorKind::TotalN:
      out.emplace_back(s, static_cast<double>(s.total_excitation()));
      break;
    case SpinOperatorKind::FermionN:
      out.emplace_back(s, static_cast<double>(s.boson_count()));
      break;
    case SpinOperatorKind::GlobalFlip: {
      FockState t = s;
      for (int j = 0; j < L; ++j) {
        if (s.occupations[j] > 1) throw ConfigError("operator_matrix: global flip needs fermion sites");
        t.occupations[j] = 1 - s.occupations[j];
        t.qubits[j] = 1 - s.qubits[j];
      }
      out.emplace_back(std::move(t), 1.0);
      break;
    }
    default:
      throw std::logic_error("apply_collective: local operator");
  }
  return out;
}

double commutator_norm(const Eigen::MatrixXd& M, const Eigen::MatrixXcd& O) {
  const Eigen::MatrixXcd Mc = M.cast<cd>();
  const Eigen::MatrixXcd c = Mc * O - O * Mc;
  return c.size() == 0 ? 0.0 : c.cwiseAbs().maxCoeff();
}

}  // namespace

bool is_collective(SpinOperatorKind k) {
  switch (k) {
    case SpinOperatorKind::SPlus:
    case SpinOperatorKind::SMinus:
    case SpinOperatorKind::TotalN:
    case SpinOperatorKind::FermionN:
    case SpinOperatorKind::GlobalFlip:
      return true;
    default:
      return false;
  }
}

Eigen::MatrixXcd operator_matrix(const Basis& basis, SpinOperatorKind kind, int site) {
  if (!is_collective(kind) && (site < 0 || site >= basis.sites())) {
    throw ConfigError("operator_matrix: site out of range");
  }
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd O = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t b = 0; b < basis.size(); ++b) {
    const FockState& s = basis.state_at(b);
    const Image img = is_collective(kind) ? apply_collective(s, kind) : apply_local(s, kind, site);
    for (const auto& [t, amp] : img) {
      if (auto a = basis.find(t)) O(static_cast<Eigen::Index>(*a), static_cast<Eigen::Index>(b)) += amp;
    }
  }
  return O;
}

Eigen::MatrixXcd site_sum(const Basis& basis, SpinOperatorKind kind) {
  if (is_collective(kind)) throw ConfigError("site_sum: operator is already collective");
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd O = Eigen::MatrixXcd::Zero(n, n);
  for (int j = 0; j < basis.sites(); ++j) O += operator_matrix(basis, kind, j);
  return O;
}

Eigen::MatrixXd rabi_fermion_rotation(const Basis& basis) {
  const int L = basis.sites();
  if (basis.spec().species != Species::Fermion || basis.size() != (std::size_t{1} << (2 * L))) {
    throw ConfigError("rabi_fermion_rotation: needs the full fermion space of dimension 4^L");
  }
  // exp(i pi/4 sigma^y) in the (down, up) = (0, 1) basis.
  const double c = std::sqrt(0.5);
  const double r[2][2] = {{c, -c}, {c, c}};
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd R(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    const FockState& sa = basis.state_at(static_cast<std::size_t>(a));
    for (Eigen::Index b = 0; b < n; ++b) {
      const FockState& sb = basis.state_at(static_cast<std::size_t>(b));
      double v = 1.0;
      for (int j = 0; j < L && v != 0.0; ++j) {
        v *= r[sa.occupations[j]][sb.occupations[j]] * r[sa.qubits[j]][sb.qubits[j]];
      }
      R(a, b) = v;
    }
  }
  return R;
}

std::vector<SymmetryCheck> symmetry_report(const StochasticMap& map, const Basis& basis) {
  if (map.M.rows() != static_cast<Eigen::Index>(basis.size())) {
    throw ConfigError("symmetry_report: map and basis dimensions differ");
  }
  constexpr double kCommuteTol = 1e-11;
  constexpr double kBreakTol = 1e-3;
  std::vector<SymmetryCheck> out;
  auto add = [&](std::string name, const Eigen::MatrixXd& M, const Eigen::MatrixXcd& O, bool expect) {
    const double norm = commutator_norm(M, O);
    out.push_back({std::move(name), norm, expect, expect ? norm < kCommuteTol : norm > kBreakTol});
  };
  const SectorSpec& spec = basis.spec();
  const int L = spec.L;
  using K = SpinOperatorKind;

  if (spec.species == Species::Fermion && spec.mixing == Mixing::JC) {
    add("sum (tau^x + sigma^x)/2", map.M, 0.5 * (site_sum(basis, K::TauX) + site_sum(basis, K::SigmaX)), true);
    add("sum (tau^y + sigma^y)/2", map.M, 0.5 * (site_sum(basis, K::TauY) + site_sum(basis, K::SigmaY)), true);
    add("sum (tau^z + sigma^z)/2", map.M, 0.5 * (site_sum(basis, K::TauZ) + site_sum(basis, K::SigmaZ)), true);
    add("S^+", map.M, operator_matrix(basis, K::SPlus), true);
    add("S^-", map.M, operator_matrix(basis, K::SMinus), true);
  } else if (spec.species == Species::Boson && spec.mixing == Mixing::JC) {
    // sigma^dag sigma = (1 + sigma^z)/2 on each site.
    const auto n = static_cast<Eigen::Index>(basis.size());
    const Eigen::MatrixXcd qubit_n = 0.5 * (site_sum(basis, K::SigmaZ) + L * Eigen::MatrixXcd::Identity(n, n));
    add("sum (K0 - sigma^dag sigma)", map.M, site_sum(basis, K::K0) - qubit_n, true);
    add("sum (K^+ + sigma)", map.M,
        site_sum(basis, K::KPlus) + 0.5 * (site_sum(basis, K::SigmaX) - kI * site_sum(basis, K::SigmaY)), false);
  } else if (spec.species == Species::Fermion) {
    const Eigen::MatrixXd R = rabi_fermion_rotation(basis);
    const Eigen::MatrixXd Mr = R * map.M * R.transpose();
    add("sum tau~^z", Mr, site_sum(basis, K::TauZ), true);
    for (int j = 0; j < L; ++j) add("sigma~^z_" + std::to_string(j + 1), Mr, operator_matrix(basis, K::SigmaZ, j), true);
    add("prod tau~^x sigma~^x", Mr, operator_matrix(basis, K::GlobalFlip), true);
  } else {
    if (spec.fixed_qubit_pattern) throw ConfigError("symmetry_report: needs sigma^z qubit labels, not a pattern sector");
    for (int j = 0; j < L; ++j) add("sigma^x_" + std::to_string(j + 1), map.M, operator_matrix(basis, K::SigmaX, j), true);
  }
  return out;
}

}  // namespace kickmix
