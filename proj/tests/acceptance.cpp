// Acceptance suite: one PASS/FAIL line per criterion.
// Usage: acceptance [criterion numbers...]   (default: all)

#include <Eigen/Eigenvalues>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <thread>

#include "kickmix/analytic.hpp"
#include "kickmix/basis.hpp"
#include "kickmix/rpa.hpp"
#include "kickmix/sff_exact.hpp"
#include "oracles.hpp"

using namespace kickmix;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

ModelParams make(Species sp, Mixing mx, int L, double g, double J) {
  ModelParams p;
  p.sector.species = sp;
  p.sector.mixing = mx;
  p.sector.L = L;
  p.g = g;
  p.J = J;
  return p;
}

std::string fmt(double v, int digits = 6) {
  std::ostringstream s;
  s.precision(digits);
  s << v;
  return s.str();
}

Outcome criterion1() {
  SectorSpec a;
  a.L = 10;
  a.N = 5;
  SectorSpec b;
  b.mixing = Mixing::Rabi;
  b.L = 7;
  b.parity = Parity::Even;
  const std::size_t da = enumerate_sector(a).size();
  const std::size_t db = enumerate_sector(b).size();
  return {da == 15504 && db == 8192, "JC-F(10,5) dim " + std::to_string(da) + ", R-F(7, even) dim " + std::to_string(db)};
}

Outcome criterion2() {
  std::vector<std::pair<std::string, ModelParams>> cases;
  auto jcf = make(Species::Fermion, Mixing::JC, 6, 0.1, 0.4);
  jcf.sector.N = 3;
  cases.emplace_back("JC-F L=6 N=3", jcf);
  auto jcb = make(Species::Boson, Mixing::JC, 4, 0.1, 0.4);
  jcb.sector.N = 2;
  cases.emplace_back("JC-B L=4 N=2", jcb);
  cases.emplace_back("R-F L=4", make(Species::Fermion, Mixing::Rabi, 4, 0.1, 0.4));
  auto rb = make(Species::Boson, Mixing::Rabi, 3, 0.1, 0.4);
  rb.sector.N_max = 4;
  cases.emplace_back("R-B L=3 N_max=4", rb);
  bool ok = true;
  std::string detail;
  for (const auto& [name, p] : cases) {
    const Eigen::MatrixXd M = build_map(p, MapKind::Full).M;
    const auto n = M.rows();
    const double rows = (M.rowwise().sum() - Eigen::VectorXd::Ones(n)).cwiseAbs().maxCoeff();
    const double cols = (M.colwise().sum().transpose() - Eigen::VectorXd::Ones(n)).cwiseAbs().maxCoeff();
    const double sym = (M - M.transpose()).cwiseAbs().maxCoeff();
    const double worst = std::max({rows, cols, sym});
    ok = ok && worst <= 1e-12 && M.minCoeff() >= 0.0;
    detail += name + " dev " + fmt(worst, 3) + "; ";
  }
  return {ok, detail};
}

Outcome criterion3() {
  double worst = 0.0;
  for (auto [g, J] : {std::pair{0.1, 0.4}, std::pair{0.4, 0.1}}) {
    for (int L = 4; L <= 12; ++L) {
      auto p = make(Species::Fermion, Mixing::JC, L, g, J);
      p.sector.N = 1;
      const auto s = map_spectrum(build_map(p, MapKind::Trotter));
      const auto br = analytic::jc_n1_eigenvalues(L, g, J);
      std::vector<double> expect(br.plus);
      expect.insert(expect.end(), br.minus.begin(), br.minus.end());
      std::sort(expect.rbegin(), expect.rend());
      for (std::size_t k = 0; k < expect.size(); ++k) worst = std::max(worst, std::abs(expect[k] - s.eigenvalues[k]));
    }
  }
  return {worst < 1e-10, "max |closed form - diagonalization| = " + fmt(worst, 3)};
}

Outcome criterion4() {
  const auto pts = lambda1_across_N(make(Species::Fermion, Mixing::JC, 5, 0.1, 0.4), MapKind::Trotter);
  double lo = pts.front().lambda1;
  double hi = lo;
  for (const auto& pt : pts) {
    lo = std::min(lo, pt.lambda1);
    hi = std::max(hi, pt.lambda1);
  }
  return {pts.size() == 9 && hi - lo < 1e-10,
          "lambda1 = " + fmt(hi, 12) + " over N=1..9, spread " + fmt(hi - lo, 3)};
}

Outcome criterion5() {
  std::vector<std::pair<std::string, ModelParams>> cases;
  auto jcf = make(Species::Fermion, Mixing::JC, 4, 0.1, 0.4);
  jcf.sector.N = 4;
  cases.emplace_back("JC-F", jcf);
  auto jcb = make(Species::Boson, Mixing::JC, 4, 0.1, 0.4);
  jcb.sector.N = 3;
  cases.emplace_back("JC-B", jcb);
  cases.emplace_back("R-F", make(Species::Fermion, Mixing::Rabi, 4, 0.1, 0.4));
  auto rb = make(Species::Boson, Mixing::Rabi, 4, 0.1, 0.4);
  rb.sector.N_max = 4;
  cases.emplace_back("R-B", rb);
  bool ok = true;
  std::string detail;
  auto remainder = [](const ModelParams& p) {
    return (build_map(p, MapKind::Full).M - build_map(p, MapKind::Trotter).M).cwiseAbs().maxCoeff();
  };
  auto halving_ratio = [&](const ModelParams& p) {
    auto half = p;
    half.g /= 2;
    half.J /= 2;
    return remainder(p) / remainder(half);
  };
  for (const auto& [name, p0] : cases) {
    // The expansion needs ||H||_2 <= 1; shrink (g, J) uniformly until it holds.
    const Basis basis = enumerate_sector(p0.sector);
    const Eigen::MatrixXd h = build_driving_matrix(p0, basis).dense();
    const double norm = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(h, Eigen::EigenvaluesOnly)
                            .eigenvalues()
                            .cwiseAbs()
                            .maxCoeff();
    auto p = p0;
    const double scale = norm > 1.0 + 1e-9 ? 1.0 / norm : 1.0;
    p.g *= scale;
    p.J *= scale;
    const double ratio = halving_ratio(p);
    ok = ok && ratio >= 12.0 && ratio <= 20.0;
    detail += name + " ratio " + fmt(ratio, 5) + " at ||H||=" + fmt(norm * scale, 3);
    if (scale < 1.0) detail += " (unscaled ||H||=" + fmt(norm, 3) + " ratio " + fmt(halving_ratio(p0), 5) + ")";
    detail += "; ";
  }
  return {ok, detail};
}

std::vector<std::int64_t> integer_grid(std::int64_t t_max) {
  std::vector<std::int64_t> g;
  for (std::int64_t t = 1; t <= t_max; ++t) g.push_back(t);
  return g;
}

Outcome criterion6() {
  const auto grid = integer_grid(20000);
  bool ok = true;
  std::string detail;
  for (auto [g, J] : {std::pair{0.1, 0.4}, std::pair{0.4, 0.1}}) {
    std::vector<std::pair<double, double>> pts;
    detail += "g=" + fmt(g) + ",J=" + fmt(J) + " t*:";
    for (int L : {4, 6, 8, 10}) {
      auto p = make(Species::Fermion, Mixing::JC, L, g, J);
      p.sector.N = L / 2;
      const auto s = map_spectrum(build_map(p, MapKind::Full));
      const double t = analytic::thouless_from_sff(rpa_sff(s, grid)).t_star;
      pts.emplace_back(L, t);
      detail += " " + fmt(t);
    }
    if (g < J) {
      const auto f = analytic::fit_scaling(pts, analytic::FitForm::LogShift);
      ok = ok && f.r_squared > 0.95;
      detail += " | log fit a=" + fmt(f.a) + " b=" + fmt(f.b) + " c=" + fmt(f.c) + " R2=" + fmt(f.r_squared, 8) + "; ";
    } else {
      const auto f = analytic::fit_scaling(pts, analytic::FitForm::Power);
      ok = ok && f.gamma >= 1.6 && f.gamma <= 2.1;
      detail += " | power fit gamma=" + fmt(f.gamma) + "; ";
    }
  }
  return {ok, detail};
}

Outcome criterion7() {
  std::vector<std::pair<double, double>> pts;
  for (int L = 6; L <= 12; ++L) pts.emplace_back(L, analytic::thouless_from_degenerate_sum(L, 0.1, 0.4).t_star);
  const auto f = analytic::fit_scaling(pts, analytic::FitForm::LogShift);
  auto rel = [](double x, double ref) { return std::abs(x / ref - 1.0); };
  const bool ok = rel(f.a, 129.24) < 0.01 && rel(f.b, 0.105) < 0.01 && rel(f.c, -67.75) < 0.01;
  return {ok, "a=" + fmt(f.a, 8) + " b=" + fmt(f.b, 6) + " c=" + fmt(f.c, 8)};
}

Outcome criterion8() {
  bool ok = true;
  std::string detail;
  for (auto [g, J, expect] : {std::tuple{0.2, 0.4, 7}, std::tuple{0.4, 0.1, 6}}) {
    auto p = make(Species::Fermion, Mixing::Rabi, 6, g, J);
    p.sector.parity = Parity::Even;
    const auto s = map_spectrum(build_map(p, MapKind::Trotter));
    const auto& c = s.clusters.at(1);
    const auto analytic_value = analytic::rabi_fermion_lambda1(g, J, 6).value;
    ok = ok && static_cast<int>(c.count) == expect && std::abs(c.value - analytic_value) < 1e-10;
    detail += "g/J=" + fmt(g / J) + ": lambda1 " + fmt(c.value, 10) + " x" + std::to_string(c.count) + "; ";
  }
  // Branch values at (g/J)^2 = 2/3 for several J.
  double worst = 0.0;
  for (double J : {0.05, 0.1, 0.2, 0.4, 1.0}) {
    const double g = J * std::sqrt(2.0 / 3.0);
    worst = std::max(worst, std::abs((1.0 - 2.0 * g * g) - analytic::dyson_bound_states(g, J).E_b_plus));
  }
  ok = ok && worst < 1e-12;
  detail += "branch gap at transition " + fmt(worst, 3);
  return {ok, detail};
}

Outcome criterion9() {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(oracle::impurity_chain(0.4, 0.1, 400), Eigen::EigenvaluesOnly);
  const double direct = es.eigenvalues().maxCoeff();
  const double formula = analytic::dyson_bound_states(0.4, 0.1).E_b_plus;
  return {std::abs(direct - formula) < 1e-6,
          "E_b+ formula " + fmt(formula, 10) + ", chain " + fmt(direct, 10)};
}

Outcome criterion10() {
  auto p = make(Species::Fermion, Mixing::JC, 6, 1.0, 1.0);
  p.sector.N = 3;
  p.base_seed = 2024;
  const auto s = map_spectrum(build_map(p, MapKind::Full));
  const double dim = static_cast<double>(s.eigenvalues.size());
  const auto grid = integer_grid(1000);
  const auto rpa = rpa_sff(s, grid);
  const double t_star = analytic::thouless_from_sff(rpa).t_star;
  const auto window_hi = static_cast<std::int64_t>(3 * t_star);
  ExactSffOptions opts;
  opts.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::int64_t> window;
  for (auto t = static_cast<std::int64_t>(t_star); t <= window_hi; ++t) window.push_back(t);
  const auto exact = compute_exact_sff(p, window, 500, opts);
  double dev_rpa = 0.0;
  double dev_coe = 0.0;
  for (std::size_t i = 0; i < window.size(); ++i) {
    const double t = static_cast<double>(window[i]);
    const double k_rpa = rpa.K[static_cast<std::size_t>(window[i] - 1)] - 2.0 * t * t / dim;
    dev_rpa += std::abs(exact.K[i] / k_rpa - 1.0);
    dev_coe += std::abs(exact.K[i] / coe_reference(t, exact.dim) - 1.0);
  }
  dev_rpa /= static_cast<double>(window.size());
  dev_coe /= static_cast<double>(window.size());
  return {dev_rpa < 0.15 && dev_coe < 0.10,
          "t*=" + fmt(t_star) + ", window [" + fmt(t_star) + "," + std::to_string(window_hi) +
              "], mean |K_exact/K_RPA-1|=" + fmt(dev_rpa, 4) + ", mean |K_exact/K_COE-1|=" + fmt(dev_coe, 4)};
}

Outcome criterion11() {
  const int L = 4;
  constexpr std::size_t kDenseCap = 12000;
  std::vector<std::pair<int, double>> pts;
  MapSpectrum last;
  int last_n = 0;
  std::string detail = "lambda1(N_max):";
  for (int n_max = 4;; ++n_max) {
    auto p = make(Species::Boson, Mixing::Rabi, L, 0.1, 0.4);
    p.sector.N_max = n_max;
    if (sector_dimension(p.sector) > kDenseCap) break;
    last = map_spectrum(build_map(p, MapKind::Trotter));
    last_n = n_max;
    pts.emplace_back(n_max, last.subleading());
    detail += " " + std::to_string(n_max) + ":" + fmt(last.subleading(), 8);
  }
  const auto fit = analytic::extrapolate_lambda1(pts);
  const double gap = 1.0 - fit.intercept;
  const auto& next = last.clusters.at(2);
  detail += " | intercept " + fmt(fit.intercept, 8) + " (gap " + fmt(gap, 4) + ")";
  detail += " | N_max=" + std::to_string(last_n) + ": lambda1 x" + std::to_string(last.clusters[1].count) +
            ", next cluster " + fmt(next.value, 8) + " x" + std::to_string(next.count);
  return {gap > 1e-3 && static_cast<int>(next.count) == L, detail};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"sector dimensions", criterion1},
      {"full maps doubly stochastic and symmetric", criterion2},
      {"N=1 closed form vs Trotter diagonalization", criterion3},
      {"lambda1 independent of N (JC-F Trotter, L=5)", criterion4},
      {"Trotter remainder fourth order", criterion5},
      {"Thouless scaling from RPA form factors", criterion6},
      {"degenerate-sum Thouless fit constants", criterion7},
      {"Rabi-F degeneracy transition", criterion8},
      {"impurity bound state", criterion9},
      {"exact vs RPA form factor", criterion10},
      {"Rabi-B truncation extrapolation", criterion11},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    if (!selected.empty() && !selected.contains(id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %d: %s (%s) [%.1fs]\n", o.pass ? "PASS" : "FAIL", id, criteria[k].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
