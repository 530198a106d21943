#include "kickmix/runner.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "kickmix/analytic.hpp"
#include "kickmix/errors.hpp"
#include "kickmix/operators.hpp"

namespace kickmix {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::vector<std::pair<Experiment, std::string>> kExperimentNames = {
    {Experiment::SffExact, "SffExact"},       {Experiment::SffRpa, "SffRpa"},
    {Experiment::Spectrum, "Spectrum"},       {Experiment::LambdaAcrossN, "LambdaAcrossN"},
    {Experiment::Thouless, "Thouless"},       {Experiment::BoundState, "BoundState"},
    {Experiment::Extrapolate, "Extrapolate"}, {Experiment::SymmetryCheck, "SymmetryCheck"}};

template <typename T>
T get_field(const json& j, const std::string& key, const std::string& where) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + "." + key + ": missing or wrong type");
  }
}

template <typename T>
void read_opt(const json& j, const std::string& key, const std::string& where, T& out) {
  if (j.contains(key)) out = get_field<T>(j, key, where);
}

template <typename T>
void read_opt(const json& j, const std::string& key, const std::string& where, std::optional<T>& out) {
  if (j.contains(key) && !j.at(key).is_null()) out = get_field<T>(j, key, where);
}

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw ConfigError(where + "." + key + ": unknown field");
  }
}

ModelParams parse_model(const json& j) {
  reject_unknown(j, {"species", "mixing", "L", "N", "parity", "N_max", "Nb_max", "fixed_qubit_pattern", "max_dim",
                     "g", "g_site", "J", "U0", "alpha", "omega_mean", "omega_std", "Omega_mean", "Omega_std",
                     "ring_distance"},
                 "model");
  ModelParams p;
  const auto species = get_field<std::string>(j, "species", "model");
  if (species == "fermion") {
    p.sector.species = Species::Fermion;
  } else if (species == "boson") {
    p.sector.species = Species::Boson;
  } else {
    throw ConfigError("model.species: expected \"fermion\" or \"boson\"");
  }
  const auto mixing = get_field<std::string>(j, "mixing", "model");
  if (mixing == "jc") {
    p.sector.mixing = Mixing::JC;
  } else if (mixing == "rabi") {
    p.sector.mixing = Mixing::Rabi;
  } else {
    throw ConfigError("model.mixing: expected \"jc\" or \"rabi\"");
  }
  p.sector.L = get_field<int>(j, "L", "model");
  read_opt(j, "N", "model", p.sector.N);
  if (j.contains("parity") && !j.at("parity").is_null()) {
    const auto par = get_field<std::string>(j, "parity", "model");
    if (par != "even" && par != "odd") throw ConfigError("model.parity: expected \"even\" or \"odd\"");
    p.sector.parity = par == "even" ? Parity::Even : Parity::Odd;
  }
  read_opt(j, "N_max", "model", p.sector.N_max);
  read_opt(j, "Nb_max", "model", p.sector.Nb_max);
  read_opt(j, "fixed_qubit_pattern", "model", p.sector.fixed_qubit_pattern);
  read_opt(j, "max_dim", "model", p.sector.max_dim);
  read_opt(j, "g", "model", p.g);
  read_opt(j, "g_site", "model", p.g_site);
  read_opt(j, "J", "model", p.J);
  read_opt(j, "U0", "model", p.U0);
  read_opt(j, "alpha", "model", p.alpha);
  read_opt(j, "omega_mean", "model", p.omega_mean);
  read_opt(j, "omega_std", "model", p.omega_std);
  read_opt(j, "Omega_mean", "model", p.Omega_mean);
  read_opt(j, "Omega_std", "model", p.Omega_std);
  read_opt(j, "ring_distance", "model", p.ring_distance);
  return p;
}

json model_to_json(const ModelParams& p) {
  json j;
  j["species"] = to_string(p.sector.species);
  j["mixing"] = to_string(p.sector.mixing);
  j["L"] = p.sector.L;
  if (p.sector.N) j["N"] = *p.sector.N;
  if (p.sector.parity) j["parity"] = to_string(*p.sector.parity);
  if (p.sector.N_max) j["N_max"] = *p.sector.N_max;
  if (p.sector.Nb_max) j["Nb_max"] = *p.sector.Nb_max;
  if (p.sector.fixed_qubit_pattern) j["fixed_qubit_pattern"] = *p.sector.fixed_qubit_pattern;
  j["max_dim"] = p.sector.max_dim;
  j["g"] = p.g;
  if (p.g_site) j["g_site"] = *p.g_site;
  j["J"] = p.J;
  j["U0"] = p.U0;
  j["alpha"] = p.alpha;
  j["omega_mean"] = p.omega_mean;
  j["omega_std"] = p.omega_std;
  j["Omega_mean"] = p.Omega_mean;
  j["Omega_std"] = p.Omega_std;
  j["ring_distance"] = p.ring_distance;
  return j;
}

TimeGridSpec parse_grid(const json& j) {
  reject_unknown(j, {"kind", "start", "stop", "step", "values"}, "t_grid");
  TimeGridSpec g;
  const auto kind = get_field<std::string>(j, "kind", "t_grid");
  if (kind == "default") {
    g.kind = TimeGridSpec::Kind::Default;
  } else if (kind == "range") {
    g.kind = TimeGridSpec::Kind::Range;
    g.start = get_field<std::int64_t>(j, "start", "t_grid");
    g.stop = get_field<std::int64_t>(j, "stop", "t_grid");
    read_opt(j, "step", "t_grid", g.step);
  } else if (kind == "list") {
    g.kind = TimeGridSpec::Kind::List;
    g.values = get_field<std::vector<std::int64_t>>(j, "values", "t_grid");
  } else {
    throw ConfigError("t_grid.kind: expected \"default\", \"range\" or \"list\"");
  }
  return g;
}

json grid_to_json(const TimeGridSpec& g) {
  switch (g.kind) {
    case TimeGridSpec::Kind::Default: return {{"kind", "default"}};
    case TimeGridSpec::Kind::Range: return {{"kind", "range"}, {"start", g.start}, {"stop", g.stop}, {"step", g.step}};
    default: return {{"kind", "list"}, {"values", g.values}};
  }
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string model_tag(const SectorSpec& s) {
  return std::string(s.mixing == Mixing::JC ? "jc" : "rabi") + "-" + (s.species == Species::Fermion ? "fermion" : "boson");
}

void write_json(const json& j, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

json spectrum_json(const MapSpectrum& s, const SectorSpec& sector, MapKind kind) {
  json clusters = json::array();
  for (const auto& c : s.clusters) clusters.push_back({{"value", c.value}, {"count", c.count}});
  return {{"model", model_tag(sector)}, {"L", sector.L},     {"map", to_string(kind)},
          {"dim", s.eigenvalues.size()}, {"eigenvalues", s.eigenvalues}, {"clusters", clusters}};
}

// One entry of the L sweep, with the sector adapted.
std::vector<ModelParams> sweep_params(const RunConfig& c) {
  if (c.L_sweep.empty()) return {c.model};
  std::vector<ModelParams> out;
  for (int L : c.L_sweep) {
    ModelParams p = c.model;
    p.sector.L = L;
    if (c.half_filling) p.sector.N = L / 2;
    out.push_back(p);
  }
  return out;
}

class Emitter {
 public:
  Emitter(fs::path dir, std::string experiment) : dir_(std::move(dir)), experiment_(std::move(experiment)) {}

  fs::path path(const std::string& name) {
    names_.push_back(name);
    return dir_ / name;
  }

  OutputManifest finish(const json& parameters) {
    OutputManifest m;
    m.parameters = parameters;
    json files = json::array();
    for (const auto& name : names_) {
      ManifestEntry e{name, experiment_, fnv1a64_file(dir_ / name)};
      files.push_back({{"path", e.path}, {"experiment", e.experiment}, {"checksum", e.checksum}});
      m.files.push_back(std::move(e));
    }
    write_json({{"parameters", parameters}, {"files", files}}, dir_ / "manifest.json");
    return m;
  }

 private:
  fs::path dir_;
  std::string experiment_;
  std::vector<std::string> names_;
};

void prepare_output_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir.string());
  // Allow overwriting a previous run, but nothing else.
  std::set<std::string> previous;
  if (fs::exists(dir / "manifest.json")) {
    std::ifstream in(dir / "manifest.json");
    try {
      const json m = json::parse(in);
      for (const auto& f : m.at("files")) previous.insert(f.at("path").get<std::string>());
    } catch (const json::exception&) {
      throw ConfigError("output directory holds an unreadable manifest.json");
    }
    previous.insert("manifest.json");
  }
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!previous.contains(entry.path().filename().string())) {
      throw ConfigError("output directory " + dir.string() + " contains files not produced by a previous run");
    }
  }
  for (const auto& name : previous) fs::remove(dir / name);
}

}  // namespace

std::string to_string(Experiment e) {
  for (const auto& [k, name] : kExperimentNames) {
    if (k == e) return name;
  }
  return "unknown";
}

Experiment experiment_from_string(const std::string& s) {
  for (const auto& [k, name] : kExperimentNames) {
    if (name == s) return k;
  }
  throw ConfigError("experiment: unknown experiment \"" + s + "\"");
}

std::vector<std::int64_t> TimeGridSpec::resolve(std::size_t dim) const {
  switch (kind) {
    case Kind::Default: return default_time_grid(dim);
    case Kind::Range: {
      std::vector<std::int64_t> out;
      for (std::int64_t t = start; t <= stop; t += step) out.push_back(t);
      return out;
    }
    default: return values;
  }
}

void RunConfig::validate() const {
  model.validate();
  if (realizations < 1) throw ConfigError("realizations: must be >= 1");
  if (threads < 1) throw ConfigError("threads: must be >= 1");
  if (!(thouless_eps > 0.0)) throw ConfigError("thouless.eps: must be > 0");
  if (thouless_window < 1) throw ConfigError("thouless.window: must be >= 1");
  if (t_grid.kind == TimeGridSpec::Kind::Range && (t_grid.start < 1 || t_grid.step < 1 || t_grid.stop < t_grid.start)) {
    throw ConfigError("t_grid: range needs 1 <= start <= stop and step >= 1");
  }
  if (t_grid.kind == TimeGridSpec::Kind::List) {
    if (t_grid.values.empty()) throw ConfigError("t_grid.values: must be nonempty");
    for (auto t : t_grid.values) {
      if (t < 1) throw ConfigError("t_grid.values: entries must be >= 1");
    }
  }
  if (collapse.kind == Collapse::Kind::Power && !(collapse.gamma > 0.0)) {
    throw ConfigError("collapse.power: exponent must be > 0");
  }
  if (!L_sweep.empty()) {
    if (model.g_site) throw ConfigError("L_sweep: incompatible with model.g_site");
    if (model.sector.fixed_qubit_pattern) throw ConfigError("L_sweep: incompatible with model.fixed_qubit_pattern");
    for (const auto& p : sweep_params(*this)) p.validate();
  } else if (half_filling) {
    throw ConfigError("half_filling: requires L_sweep");
  }
  const SectorSpec& s = model.sector;
  switch (experiment) {
    case Experiment::SffExact:
      if (s.fixed_qubit_pattern) throw ConfigError("model.fixed_qubit_pattern: SffExact needs a sigma^z sector");
      break;
    case Experiment::LambdaAcrossN:
      if (s.mixing != Mixing::JC) throw ConfigError("model.mixing: LambdaAcrossN needs jc mixing");
      break;
    case Experiment::Extrapolate:
      if (s.species != Species::Boson || s.mixing != Mixing::Rabi) {
        throw ConfigError("model: Extrapolate needs boson/rabi");
      }
      if (N_max_list.size() < 2) throw ConfigError("N_max_list: Extrapolate needs at least 2 entries");
      for (int n : N_max_list) {
        if (n < 1) throw ConfigError("N_max_list: entries must be >= 1");
      }
      break;
    case Experiment::Thouless:
      if (L_sweep.size() < 3) throw ConfigError("L_sweep: Thouless needs at least 3 entries");
      break;
    case Experiment::SffRpa:
    case Experiment::Spectrum:
      if (map == MapKind::Full && s.fixed_qubit_pattern) {
        throw ConfigError("map: full map is not defined in a sigma^x-pattern sector");
      }
      break;
    default:
      break;
  }
}

RunConfig parse_run_config(const json& j) {
  reject_unknown(j,
                 {"experiment", "model", "map", "t_grid", "realizations", "L_sweep", "half_filling", "N_list",
                  "N_max_list", "collapse", "thouless", "max_dense_dim", "seed", "threads"},
                 "config");
  RunConfig c;
  c.experiment = experiment_from_string(get_field<std::string>(j, "experiment", "config"));
  if (!j.contains("model")) throw ConfigError("config.model: missing");
  c.model = parse_model(j.at("model"));
  if (j.contains("map")) {
    const auto m = get_field<std::string>(j, "map", "config");
    if (m != "full" && m != "trotter") throw ConfigError("config.map: expected \"full\" or \"trotter\"");
    c.map = m == "full" ? MapKind::Full : MapKind::Trotter;
  }
  if (j.contains("t_grid")) c.t_grid = parse_grid(j.at("t_grid"));
  read_opt(j, "realizations", "config", c.realizations);
  read_opt(j, "L_sweep", "config", c.L_sweep);
  read_opt(j, "half_filling", "config", c.half_filling);
  read_opt(j, "N_list", "config", c.N_list);
  read_opt(j, "N_max_list", "config", c.N_max_list);
  if (j.contains("collapse")) {
    const json& cj = j.at("collapse");
    if (cj.is_string() && cj.get<std::string>() == "none") {
      c.collapse.kind = Collapse::Kind::None;
    } else if (cj.is_string() && cj.get<std::string>() == "logL") {
      c.collapse.kind = Collapse::Kind::LogL;
    } else if (cj.is_object() && cj.contains("power")) {
      c.collapse.kind = Collapse::Kind::Power;
      c.collapse.gamma = get_field<double>(cj, "power", "collapse");
    } else {
      throw ConfigError("config.collapse: expected \"none\", \"logL\" or {\"power\": gamma}");
    }
  }
  if (j.contains("thouless")) {
    const json& tj = j.at("thouless");
    reject_unknown(tj, {"eps", "window"}, "thouless");
    read_opt(tj, "eps", "thouless", c.thouless_eps);
    read_opt(tj, "window", "thouless", c.thouless_window);
  }
  read_opt(j, "max_dense_dim", "config", c.max_dense_dim);
  read_opt(j, "seed", "config", c.model.base_seed);
  read_opt(j, "threads", "config", c.threads);
  c.validate();
  return c;
}

json to_json(const RunConfig& c) {
  json j;
  j["experiment"] = to_string(c.experiment);
  j["model"] = model_to_json(c.model);
  j["map"] = to_string(c.map);
  j["t_grid"] = grid_to_json(c.t_grid);
  j["realizations"] = c.realizations;
  j["L_sweep"] = c.L_sweep;
  j["half_filling"] = c.half_filling;
  j["N_list"] = c.N_list;
  j["N_max_list"] = c.N_max_list;
  switch (c.collapse.kind) {
    case Collapse::Kind::None: j["collapse"] = "none"; break;
    case Collapse::Kind::LogL: j["collapse"] = "logL"; break;
    default: j["collapse"] = {{"power", c.collapse.gamma}}; break;
  }
  j["thouless"] = {{"eps", c.thouless_eps}, {"window", c.thouless_window}};
  j["max_dense_dim"] = c.max_dense_dim;
  j["seed"] = c.model.base_seed;
  j["threads"] = c.threads;
  return j;
}

bool same_config(const RunConfig& a, const RunConfig& b) { return to_json(a) == to_json(b); }

void emit_series(const SpectralSeries& series, const Collapse& collapse, int L, const fs::path& path) {
  if (series.t_grid.empty() || series.t_grid.size() != series.K.size()) {
    throw ConfigError("emit_series: series is empty or inconsistent");
  }
  double scale = 1.0;
  if (collapse.kind == Collapse::Kind::LogL) scale = std::log(static_cast<double>(L));
  if (collapse.kind == Collapse::Kind::Power) scale = std::pow(static_cast<double>(L), collapse.gamma);
  const bool scaled = collapse.kind != Collapse::Kind::None;
  if (scaled && !(scale > 0.0)) throw ConfigError("emit_series: collapse scale must be positive (L >= 2)");

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << (scaled ? "t,K,K_over_2t,t_scaled,K_scaled\n" : "t,K,K_over_2t\n");
  for (std::size_t i = 0; i < series.t_grid.size(); ++i) {
    const double t = static_cast<double>(series.t_grid[i]);
    const double K = series.K[i];
    out << series.t_grid[i] << ',' << fmt17(K) << ',' << fmt17(K / (2.0 * t));
    if (scaled) out << ',' << fmt17(t / scale) << ',' << fmt17(K / scale);
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string fnv1a64_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::uint64_t h = 1469598103934665603ULL;
  char buf[1 << 14];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 1099511628211ULL;
    }
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016" PRIx64, h);
  return hex;
}

OutputManifest run_experiment(const RunConfig& config, const fs::path& out_dir) {
  config.validate();
  prepare_output_dir(out_dir);
  Emitter emit(out_dir, to_string(config.experiment));
  const auto sweep = sweep_params(config);

  switch (config.experiment) {
    case Experiment::SffExact: {
      ExactSffOptions opts;
      opts.threads = config.threads;
      opts.max_dense_dim = config.max_dense_dim;
      for (const auto& p : sweep) {
        const auto grid = config.t_grid.resolve(sector_dimension(p.sector));
        const auto series = compute_exact_sff(p, grid, config.realizations, opts);
        emit_series(series, config.collapse, p.sector.L, emit.path("sff_exact_L" + std::to_string(p.sector.L) + ".csv"));
      }
      break;
    }
    case Experiment::SffRpa:
    case Experiment::Spectrum: {
      for (const auto& p : sweep) {
        const std::string L = std::to_string(p.sector.L);
        const MapSpectrum s = map_spectrum(build_map(p, config.map));
        write_json(spectrum_json(s, p.sector, config.map), emit.path("spectrum_L" + L + ".json"));
        if (config.experiment == Experiment::SffRpa) {
          const auto series = rpa_sff(s, config.t_grid.resolve(s.eigenvalues.size()));
          emit_series(series, config.collapse, p.sector.L, emit.path("sff_rpa_L" + L + ".csv"));
        }
      }
      break;
    }
    case Experiment::LambdaAcrossN: {
      for (const auto& p : sweep) {
        json rows = json::array();
        for (const auto& pt : lambda1_across_N(p, config.map, config.N_list)) {
          rows.push_back({{"N", pt.N}, {"dim", pt.dim}, {"lambda1", pt.lambda1}});
        }
        write_json({{"model", model_tag(p.sector)}, {"L", p.sector.L}, {"map", to_string(config.map)}, {"points", rows}},
                   emit.path("lambda1_across_N_L" + std::to_string(p.sector.L) + ".json"));
      }
      break;
    }
    case Experiment::Thouless: {
      json rows = json::array();
      std::vector<std::pair<double, double>> from_sff;
      for (const auto& p : sweep) {
        const MapSpectrum s = map_spectrum(build_map(p, config.map));
        const auto series = rpa_sff(s, config.t_grid.resolve(s.eigenvalues.size()));
        emit_series(series, config.collapse, p.sector.L, emit.path("sff_rpa_L" + std::to_string(p.sector.L) + ".csv"));
        json row{{"L", p.sector.L}, {"dim", s.eigenvalues.size()}};
        const double lambda1 = s.eigenvalues.size() > 1 ? s.eigenvalues[1] : 0.0;
        row["lambda1"] = lambda1;
        if (lambda1 > 0.0 && lambda1 < 1.0) row["t_star_lambda1"] = analytic::thouless_from_lambda1(lambda1).t_star;
        if (p.g != 0.0 && p.J != 0.0) {
          row["t_star_degenerate_sum"] = analytic::thouless_from_degenerate_sum(p.sector.L, p.g, p.J).t_star;
        }
        const double t_sff = analytic::thouless_from_sff(series, config.thouless_eps, config.thouless_window).t_star;
        row["t_star_sff"] = t_sff;
        from_sff.emplace_back(p.sector.L, t_sff);
        rows.push_back(row);
      }
      json fits;
      for (auto form : {analytic::FitForm::LogShift, analytic::FitForm::Power}) {
        const auto f = analytic::fit_scaling(from_sff, form);
        if (form == analytic::FitForm::LogShift) {
          fits["log_shift"] = {{"a", f.a}, {"b", f.b}, {"c", f.c}, {"residual_norm", f.residual_norm}, {"r_squared", f.r_squared}};
        } else {
          fits["power"] = {{"a", f.a}, {"gamma", f.gamma}, {"residual_norm", f.residual_norm}, {"r_squared", f.r_squared}};
        }
      }
      write_json({{"model", model_tag(config.model.sector)}, {"map", to_string(config.map)}, {"points", rows},
                  {"fits_sff_curve", fits}, {"eps", config.thouless_eps}, {"window", config.thouless_window}},
                 emit.path("thouless.json"));
      break;
    }
    case Experiment::BoundState: {
      const double g = config.model.g;
      const double J = config.model.J;
      const auto b = analytic::dyson_bound_states(g, J);
      const auto r = analytic::rabi_fermion_lambda1(g, J, config.model.sector.L);
      const auto x = analytic::crossover_scales(g, J);
      write_json({{"g", g}, {"J", J}, {"L", config.model.sector.L}, {"E_b_plus", b.E_b_plus}, {"E_b_minus", b.E_b_minus},
                  {"rabi_fermion_lambda1", r.value}, {"rabi_fermion_degeneracy", r.degeneracy},
                  {"l_c", x.l_c}, {"gJ_c", x.gJ_c}},
                 emit.path("bound_state.json"));
      break;
    }
    case Experiment::Extrapolate: {
      std::vector<std::pair<int, double>> points;
      json rows = json::array();
      std::ofstream csv;
      const fs::path csv_path = emit.path("extrapolation.csv");
      csv.open(csv_path, std::ios::binary);
      if (!csv) throw std::runtime_error("cannot open " + csv_path.string());
      csv << "N_max,inv_N_max,dim,lambda1,next_value,next_degeneracy\n";
      for (int n_max : config.N_max_list) {
        ModelParams p = config.model;
        p.sector.N_max = n_max;
        const MapSpectrum s = map_spectrum(build_map(p, config.map));
        if (s.clusters.size() < 3) throw NumericalError("Extrapolate: spectrum too small at N_max=" + std::to_string(n_max));
        const auto& lam = s.clusters[1];
        const auto& next = s.clusters[2];
        points.emplace_back(n_max, lam.value);
        csv << n_max << ',' << fmt17(1.0 / n_max) << ',' << s.eigenvalues.size() << ',' << fmt17(lam.value) << ','
            << fmt17(next.value) << ',' << next.count << '\n';
        rows.push_back({{"N_max", n_max}, {"dim", s.eigenvalues.size()}, {"lambda1", lam.value},
                        {"lambda1_degeneracy", lam.count}, {"top_degeneracy", s.clusters[0].count},
                        {"next_value", next.value}, {"next_degeneracy", next.count}});
      }
      csv.close();
      if (!csv) throw std::runtime_error("write failed: " + csv_path.string());
      const auto fit = analytic::extrapolate_lambda1(points);
      write_json({{"model", model_tag(config.model.sector)}, {"L", config.model.sector.L}, {"map", to_string(config.map)},
                  {"points", rows}, {"intercept", fit.intercept}, {"slope", fit.slope}, {"points_used", fit.points_used}},
                 emit.path("extrapolation.json"));
      break;
    }
    case Experiment::SymmetryCheck: {
      for (const auto& p : sweep) {
        const Basis basis = enumerate_sector(p.sector);
        StochasticMap m;
        if (config.map == MapKind::Trotter) {
          m = trotter_generating_map(p, basis);
        } else {
          m = build_map(p, MapKind::Full);
        }
        json rows = json::array();
        for (const auto& c : symmetry_report(m, basis)) {
          rows.push_back({{"generator", c.name}, {"commutator_norm", c.commutator_norm},
                          {"expect_commute", c.expect_commute}, {"passed", c.passed}});
        }
        write_json({{"model", model_tag(p.sector)}, {"L", p.sector.L}, {"map", to_string(config.map)}, {"checks", rows}},
                   emit.path("symmetry_L" + std::to_string(p.sector.L) + ".json"));
      }
      break;
    }
  }
  return emit.finish(to_json(config));
}

}  // namespace kickmix
