#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace kickmix {

enum class Species { Fermion, Boson };
enum class Mixing { JC, Rabi };
enum class Parity { Even, Odd };

std::string to_string(Species s);
std::string to_string(Mixing m);
std::string to_string(Parity p);

// One lattice configuration |n_1..n_L> (x) |sigma_1..sigma_L>.
//
// For Rabi-boson sectors built at a fixed qubit pattern, `qubits` holds the
// sigma^x labels m_j = (s_j + 1) / 2 rather than sigma^z occupations.
struct FockState {
  std::vector<int> occupations;
  std::vector<int> qubits;

  int sites() const { return static_cast<int>(occupations.size()); }
  int total_excitation() const;
  int boson_count() const;
  int qubit_count() const;

  auto operator<=>(const FockState&) const = default;
  bool operator==(const FockState&) const = default;
};

struct FockStateHash {
  std::size_t operator()(const FockState& s) const noexcept;
};

// Quantum numbers labelling one sector. Which optional fields may be set
// depends on (species, mixing):
//   Fermion/JC    N (fixed total excitation, 0 <= N < 2L) or nothing (all 4^L states)
//   Fermion/Rabi  parity (Even/Odd total excitation) or nothing
//   Boson/JC      exactly one of N, N_max
//   Boson/Rabi    exactly one of N_max, Nb_max; parity only with N_max;
//                 fixed_qubit_pattern only with Nb_max
struct SectorSpec {
  Species species = Species::Fermion;
  Mixing mixing = Mixing::JC;
  int L = 2;
  std::optional<int> N;
  std::optional<Parity> parity;
  std::optional<int> N_max;
  std::optional<int> Nb_max;
  std::optional<std::vector<int>> fixed_qubit_pattern;
  std::size_t max_dim = 200000;

  // Throws ConfigError naming the offending field.
  void validate() const;
  bool operator==(const SectorSpec&) const = default;
};

// Closed-form sector size (binomials, the boson sum over qubit counts M,
// parity halving). Saturates at SIZE_MAX instead of overflowing.
std::size_t sector_dimension(const SectorSpec& spec);

// Immutable enumeration of a sector, sorted lexicographically on
// (n_1..n_L, sigma_1..sigma_L), with O(1) reverse lookup.
class Basis {
 public:
  const SectorSpec& spec() const { return spec_; }
  std::size_t size() const { return states_.size(); }
  int sites() const { return spec_.L; }
  const std::vector<FockState>& states() const { return states_; }

  // Throws std::out_of_range for k >= size().
  const FockState& state_at(std::size_t k) const;
  // Throws std::out_of_range if the state does not belong to the sector.
  std::size_t index_of(const FockState& s) const;
  std::optional<std::size_t> find(const FockState& s) const;
  bool contains(const FockState& s) const { return find(s).has_value(); }

 private:
  friend Basis enumerate_sector(const SectorSpec& spec);
  Basis(SectorSpec spec, std::vector<FockState> states);

  SectorSpec spec_;
  std::vector<FockState> states_;
  std::unordered_map<FockState, std::size_t, FockStateHash> index_;
};

// Throws ConfigError for inconsistent specs and BudgetError when the sector
// dimension exceeds spec.max_dim.
Basis enumerate_sector(const SectorSpec& spec);

}  // namespace kickmix
