#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "kickmix/model.hpp"
#include "kickmix/rpa.hpp"
#include "kickmix/sff_exact.hpp"

namespace kickmix {

enum class Experiment { SffExact, SffRpa, Spectrum, LambdaAcrossN, Thouless, BoundState, Extrapolate, SymmetryCheck };

std::string to_string(Experiment e);
Experiment experiment_from_string(const std::string& s);

// How the time grid is generated.
struct TimeGridSpec {
  enum class Kind { Default, Range, List } kind = Kind::Default;
  std::int64_t start = 1;
  std::int64_t stop = 100;
  std::int64_t step = 1;
  std::vector<std::int64_t> values;

  std::vector<std::int64_t> resolve(std::size_t dim) const;
  bool operator==(const TimeGridSpec&) const = default;
};

// Rescaling applied to emitted SFF curves.
struct Collapse {
  enum class Kind { None, LogL, Power } kind = Kind::None;
  double gamma = 0.0;
  bool operator==(const Collapse&) const = default;
};

struct RunConfig {
  Experiment experiment = Experiment::SffRpa;
  ModelParams model;
  MapKind map = MapKind::Trotter;
  TimeGridSpec t_grid;
  int realizations = 1;
  std::vector<int> L_sweep;      // empty: use model.sector.L only
  bool half_filling = false;     // with L_sweep, set N = L/2 for each entry
  std::vector<int> N_list;       // LambdaAcrossN
  std::vector<int> N_max_list;   // Extrapolate
  Collapse collapse;
  double thouless_eps = 0.05;
  int thouless_window = 5;
  std::size_t max_dense_dim = 4096;
  int threads = 1;

  // Throws ConfigError naming the field.
  void validate() const;
};

RunConfig parse_run_config(const nlohmann::json& j);
nlohmann::json to_json(const RunConfig& c);
bool same_config(const RunConfig& a, const RunConfig& b);

struct ManifestEntry {
  std::string path;  // relative to the output directory
  std::string experiment;
  std::string checksum;  // fnv1a64, hex
};

struct OutputManifest {
  std::vector<ManifestEntry> files;
  nlohmann::json parameters;
};

// Writes `t,K,K_over_2t[,t_scaled,K_scaled]` rows at 17 significant digits.
void emit_series(const SpectralSeries& series, const Collapse& collapse, int L, const std::filesystem::path& path);

std::string fnv1a64_file(const std::filesystem::path& path);

// Runs the experiment, writes every output under out_dir and then
// manifest.json.
OutputManifest run_experiment(const RunConfig& config, const std::filesystem::path& out_dir);

}  // namespace kickmix
