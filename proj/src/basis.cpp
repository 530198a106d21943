#include "kickmix/basis.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "kickmix/errors.hpp"

namespace kickmix {

std::string to_string(Species s) { return s == Species::Fermion ? "fermion" : "boson"; }
std::string to_string(Mixing m) { return m == Mixing::JC ? "jc" : "rabi"; }
std::string to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

int FockState::total_excitation() const { return boson_count() + qubit_count(); }

int FockState::boson_count() const {
  return std::accumulate(occupations.begin(), occupations.end(), 0);
}

int FockState::qubit_count() const { return std::accumulate(qubits.begin(), qubits.end(), 0); }

std::size_t FockStateHash::operator()(const FockState& s) const noexcept {
  // FNV-1a over both sequences.
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](int v) {
    h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL;
    h *= 1099511628211ULL;
  };
  for (int n : s.occupations) mix(n);
  mix(-1);
  for (int q : s.qubits) mix(q);
  return static_cast<std::size_t>(h);
}

void SectorSpec::validate() const {
  if (L < 1 || L > 30) throw ConfigError("sector.L must lie in [1, 30]");
  const bool fermion = species == Species::Fermion;
  const bool jc = mixing == Mixing::JC;

  if (fixed_qubit_pattern) {
    if (fermion || jc || !Nb_max) {
      throw ConfigError("sector.fixed_qubit_pattern is only valid for Rabi bosons with Nb_max");
    }
    if (static_cast<int>(fixed_qubit_pattern->size()) != L) {
      throw ConfigError("sector.fixed_qubit_pattern must have length L");
    }
    for (int b : *fixed_qubit_pattern) {
      if (b != 0 && b != 1) throw ConfigError("sector.fixed_qubit_pattern entries must be 0 or 1");
    }
  }
  if (N && *N < 0) throw ConfigError("sector.N must be non-negative");
  if (N_max && *N_max < 0) throw ConfigError("sector.N_max must be non-negative");
  if (Nb_max && *Nb_max < 0) throw ConfigError("sector.Nb_max must be non-negative");

  if (fermion && jc) {
    if (parity || N_max || Nb_max) {
      throw ConfigError("sector: fermion/jc accepts only N");
    }
    if (N && *N >= 2 * L) throw ConfigError("sector.N must be < 2L for fermion/jc");
  } else if (fermion && !jc) {
    if (N) throw ConfigError("sector.N is not conserved under Rabi mixing");
    if (N_max || Nb_max) throw ConfigError("sector: fermion/rabi accepts only parity");
  } else if (!fermion && jc) {
    if (parity || Nb_max) throw ConfigError("sector: boson/jc accepts only N or N_max");
    if (N.has_value() == N_max.has_value()) {
      throw ConfigError("sector: boson/jc needs exactly one of N, N_max");
    }
  } else {
    if (N) throw ConfigError("sector.N is not conserved under Rabi mixing");
    if (N_max.has_value() == Nb_max.has_value()) {
      throw ConfigError("sector: boson/rabi needs exactly one of N_max, Nb_max");
    }
    if (parity && !N_max) throw ConfigError("sector.parity requires N_max for boson/rabi");
  }
}

namespace {

using u128 = unsigned __int128;

u128 binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  u128 r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<u128>(n - k + i) / static_cast<u128>(i);
  return r;
}

// Boson/qubit states on L sites with exactly N excitations.
u128 boson_jc_count(int L, int N) {
  u128 total = 0;
  for (int m = 0; m <= std::min(N, L); ++m) total += binomial(L, m) * binomial(N - m + L - 1, L - 1);
  return total;
}

std::size_t saturate(u128 v) {
  constexpr auto cap = std::numeric_limits<std::size_t>::max();
  return v > static_cast<u128>(cap) ? cap : static_cast<std::size_t>(v);
}

}  // namespace

std::size_t sector_dimension(const SectorSpec& spec) {
  spec.validate();
  const int L = spec.L;
  const u128 full = static_cast<u128>(1) << (2 * L);
  if (spec.species == Species::Fermion) {
    if (spec.mixing == Mixing::JC) return saturate(spec.N ? binomial(2 * L, *spec.N) : full);
    return saturate(spec.parity ? full / 2 : full);
  }
  if (spec.N) return saturate(boson_jc_count(L, *spec.N));
  if (spec.N_max) {
    u128 total = 0;
    for (int n = 0; n <= *spec.N_max; ++n) {
      if (spec.parity && (n % 2 == 0) != (*spec.parity == Parity::Even)) continue;
      total += boson_jc_count(L, n);
    }
    return saturate(total);
  }
  const u128 bosons = binomial(*spec.Nb_max + L, L);
  return saturate(spec.fixed_qubit_pattern ? bosons : bosons * (static_cast<u128>(1) << L));
}

Basis::Basis(SectorSpec spec, std::vector<FockState> states)
    : spec_(std::move(spec)), states_(std::move(states)) {
  index_.reserve(states_.size());
  for (std::size_t k = 0; k < states_.size(); ++k) index_.emplace(states_[k], k);
}

const FockState& Basis::state_at(std::size_t k) const {
  if (k >= states_.size()) throw std::out_of_range("Basis::state_at: index out of range");
  return states_[k];
}

std::optional<std::size_t> Basis::find(const FockState& s) const {
  auto it = index_.find(s);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Basis::index_of(const FockState& s) const {
  auto k = find(s);
  if (!k) throw std::out_of_range("Basis::index_of: state outside sector");
  return *k;
}

namespace {

// Depth-first walk over (n_1..n_L, sigma_1..sigma_L) in ascending digit
// order, which yields the states already sorted lexicographically.
class SectorWalker {
 public:
  explicit SectorWalker(const SectorSpec& spec) : spec_(spec), L_(spec.L) {
    current_.occupations.assign(L_, 0);
    current_.qubits.assign(L_, 0);
    if (spec.N) {
      total_cap_ = *spec.N;
    } else if (spec.N_max) {
      total_cap_ = *spec.N_max;
    } else if (spec.species == Species::Fermion) {
      total_cap_ = 2 * L_;
    }
    if (spec.Nb_max) boson_cap_ = *spec.Nb_max;
  }

  std::vector<FockState> run() {
    visit(0, 0, 0);
    return std::move(out_);
  }

 private:
  void visit(int pos, int total, int bosons) {
    if (spec_.N) {
      // Remaining capacity for fermions is one per slot; bosons are unbounded.
      const int slots_left = 2 * L_ - pos;
      const bool bounded = spec_.species == Species::Fermion;
      if (bounded && total + slots_left < *spec_.N) return;
      if (!bounded && pos >= L_ && total + slots_left < *spec_.N) return;
    }
    if (pos == 2 * L_) {
      if (spec_.N && total != *spec_.N) return;
      if (spec_.parity && (total % 2 == 0) != (*spec_.parity == Parity::Even)) return;
      out_.push_back(current_);
      return;
    }
    if (pos < L_) {
      int cap = spec_.species == Species::Fermion ? 1 : std::numeric_limits<int>::max();
      if (total_cap_ >= 0) cap = std::min(cap, total_cap_ - total);
      if (boson_cap_ >= 0) cap = std::min(cap, boson_cap_ - bosons);
      for (int v = 0; v <= cap; ++v) {
        current_.occupations[pos] = v;
        visit(pos + 1, total + v, bosons + v);
      }
      current_.occupations[pos] = 0;
      return;
    }
    const int site = pos - L_;
    if (spec_.fixed_qubit_pattern) {
      const int v = (*spec_.fixed_qubit_pattern)[site];
      current_.qubits[site] = v;
      // Pattern labels are sigma^x eigenvalues, not excitations.
      visit(pos + 1, total, bosons);
      current_.qubits[site] = 0;
      return;
    }
    for (int v = 0; v <= 1; ++v) {
      if (total_cap_ >= 0 && total + v > total_cap_) break;
      current_.qubits[site] = v;
      visit(pos + 1, total + v, bosons);
    }
    current_.qubits[site] = 0;
  }

  const SectorSpec& spec_;
  int L_;
  int total_cap_ = -1;
  int boson_cap_ = -1;
  FockState current_;
  std::vector<FockState> out_;
};

}  // namespace

Basis enumerate_sector(const SectorSpec& spec) {
  spec.validate();
  const std::size_t dim = sector_dimension(spec);
  if (dim > spec.max_dim) {
    throw BudgetError("sector dimension " + std::to_string(dim) + " exceeds cap " +
                      std::to_string(spec.max_dim));
  }
  auto states = SectorWalker(spec).run();
  if (states.size() != dim) {
    throw std::logic_error("enumerate_sector: enumeration disagrees with closed-form dimension");
  }
  return Basis(spec, std::move(states));
}

}  // namespace kickmix
