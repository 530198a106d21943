#include "kickmix/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "kickmix/errors.hpp"

namespace kickmix::analytic {

JcBranches jc_n1_eigenvalues(int L, double g, double J) {
  if (L < 2) throw ConfigError("jc_n1_eigenvalues: L must be >= 2");
  JcBranches out;
  const double g2 = g * g;
  const double J2 = J * J;
  for (int i = 0; i < L; ++i) {
    const double k = 1.0 - std::cos(2.0 * std::numbers::pi * i / L);
    const double root = std::sqrt(J2 * J2 * k * k + g2 * g2);
    const double base = 1.0 - g2 - J2 * k;
    out.plus.push_back(base + root);
    out.minus.push_back(base - root);
  }
  return out;
}

CrossoverScales crossover_scales(double g, double J) {
  if (J == 0.0) throw ConfigError("crossover_scales: J must be nonzero");
  const double x = std::abs(g) / (std::sqrt(2.0) * std::abs(J));
  return {x < 1.0 ? std::numbers::pi / std::asin(x) : 0.0, std::sqrt(2.0 / 3.0)};
}

std::string to_string(ThoulessMethod m) {
  switch (m) {
    case ThoulessMethod::FromLambda1: return "lambda1";
    case ThoulessMethod::FromDegenerateSum: return "degenerate_sum";
    default: return "sff_curve";
  }
}

ThoulessEstimate thouless_from_lambda1(double lambda1) {
  if (!(lambda1 < 1.0) || !(lambda1 > 0.0)) {
    throw NumericalError("thouless_from_lambda1: lambda1 must lie in (0, 1)");
  }
  return {-1.0 / std::log(lambda1), ThoulessMethod::FromLambda1};
}

ThoulessEstimate thouless_from_degenerate_sum(int L, double g, double J) {
  if (L < 2 || J == 0.0 || !(g * g < 1.0) || g == 0.0) {
    throw ConfigError("thouless_from_degenerate_sum: needs L >= 2, J != 0, 0 < g^2 < 1");
  }
  const double q = 1.0 - g * g;
  const double csc_sum = (static_cast<double>(L) * L - 1.0) / 3.0;
  const double slope = std::pow(g, 4) / (4.0 * J * J) * csc_sum;
  auto f = [&](double t) { return std::pow(q, t - 1.0) * ((L - 1) * q + t * slope) - 1.0; };

  double lo = 1.0;
  if (f(lo) <= 0.0) throw NumericalError("thouless_from_degenerate_sum: condition already met at t = 1");
  double hi = 2.0;
  while (f(hi) > 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) throw NumericalError("thouless_from_degenerate_sum: no crossing found");
  }
  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  return {0.5 * (lo + hi), ThoulessMethod::FromDegenerateSum};
}

ThoulessEstimate thouless_from_sff(const SpectralSeries& series, double eps, int window) {
  if (window < 1) throw ConfigError("thouless_from_sff: window must be >= 1");
  int run = 0;
  for (std::size_t i = 0; i < series.t_grid.size(); ++i) {
    const double t = static_cast<double>(series.t_grid[i]);
    if (std::abs(series.K[i] / (2.0 * t) - 1.0) < eps) {
      if (++run == window) {
        return {static_cast<double>(series.t_grid[i + 1 - static_cast<std::size_t>(window)]),
                ThoulessMethod::FromSFFCurve};
      }
    } else {
      run = 0;
    }
  }
  throw NumericalError("thouless_from_sff: K(t)/2t never settles within eps on the grid");
}

namespace {

struct LinearFit {
  double slope;
  double intercept;
  double rss;
};

LinearFit linear_least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw NumericalError("fit: degenerate design matrix");
  LinearFit f{sxy / sxx, 0.0, 0.0};
  f.intercept = my - f.slope * mx;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.slope * x[i] + f.intercept);
    f.rss += r * r;
  }
  return f;
}

double total_sum_of_squares(const std::vector<double>& y) {
  double m = 0.0;
  for (double v : y) m += v;
  m /= static_cast<double>(y.size());
  double s = 0.0;
  for (double v : y) s += (v - m) * (v - m);
  return s;
}

}  // namespace

ScalingFit fit_scaling(const std::vector<std::pair<double, double>>& points, FitForm form) {
  if (points.size() < 3) throw ConfigError("fit_scaling: needs at least 3 points");
  std::vector<double> L;
  std::vector<double> t;
  for (const auto& [l, ts] : points) {
    L.push_back(l);
    t.push_back(ts);
  }
  ScalingFit out;
  out.form = form;
  const double tss = total_sum_of_squares(t);

  if (form == FitForm::Power) {
    std::vector<double> lx;
    std::vector<double> ly;
    for (std::size_t i = 0; i < L.size(); ++i) {
      if (L[i] <= 0.0 || t[i] <= 0.0) throw ConfigError("fit_scaling: power fit needs positive data");
      lx.push_back(std::log(L[i]));
      ly.push_back(std::log(t[i]));
    }
    const LinearFit f = linear_least_squares(lx, ly);
    out.gamma = f.slope;
    out.a = std::exp(f.intercept);
    double rss = 0.0;
    for (std::size_t i = 0; i < L.size(); ++i) {
      const double r = t[i] - out.a * std::pow(L[i], out.gamma);
      rss += r * r;
    }
    out.residual_norm = std::sqrt(rss);
    out.r_squared = tss > 0.0 ? 1.0 - rss / tss : 1.0;
    return out;
  }

  // For fixed b the model is linear in (a, c); minimise the residual over b.
  const double L_min = *std::min_element(L.begin(), L.end());
  auto rss_at = [&](double b) {
    std::vector<double> x;
    for (double l : L) x.push_back(std::log(l + b));
    return linear_least_squares(x, t);
  };
  const double b_lo = -L_min + 1e-9;
  const double b_hi = 100.0 * std::max(1.0, *std::max_element(L.begin(), L.end()));
  // Coarse scan on a grid dense near the pole, then golden-section refinement.
  constexpr int kScan = 4000;
  double best_b = b_lo;
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> grid;
  for (int k = 0; k <= kScan; ++k) {
    const double u = static_cast<double>(k) / kScan;
    grid.push_back(b_lo + (b_hi - b_lo) * std::pow(u, 4.0));
  }
  std::size_t best_k = 0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double r = rss_at(grid[k]).rss;
    if (r < best) {
      best = r;
      best_k = k;
    }
  }
  double lo = grid[best_k == 0 ? 0 : best_k - 1];
  double hi = grid[std::min(best_k + 1, grid.size() - 1)];
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - phi * (hi - lo);
  double x2 = lo + phi * (hi - lo);
  double f1 = rss_at(x1).rss;
  double f2 = rss_at(x2).rss;
  for (int it = 0; it < 300 && hi - lo > 1e-13 * std::max(1.0, std::abs(lo)); ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = rss_at(x1).rss;
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = rss_at(x2).rss;
    }
  }
  best_b = 0.5 * (lo + hi);
  const LinearFit f = rss_at(best_b);
  out.a = f.slope;
  out.b = best_b;
  out.c = f.intercept;
  out.residual_norm = std::sqrt(f.rss);
  out.r_squared = tss > 0.0 ? 1.0 - f.rss / tss : 1.0;
  return out;
}

BoundStatePair dyson_bound_states(double g, double J) {
  if (J == 0.0) throw ConfigError("dyson_bound_states: J must be nonzero");
  const double J2 = J * J;
  const double g2 = g * g;
  const double base = 1.0 - 4.0 * g2 - 2.0 * J2;
  const double split = 2.0 * J2 * std::sqrt(1.0 + 4.0 * g2 * g2 / (J2 * J2));
  return {base + split, base - split};
}

RabiLambda1 rabi_fermion_lambda1(double g, double J, int L) {
  if (J == 0.0) throw ConfigError("rabi_fermion_lambda1: J must be nonzero");
  const double r2 = (g / J) * (g / J);
  if (r2 < 2.0 / 3.0) return {1.0 - 2.0 * g * g, L + 1};
  return {dyson_bound_states(g, J).E_b_plus, L};
}

ExtrapolationResult extrapolate_lambda1(std::vector<std::pair<int, double>> points, int last) {
  std::sort(points.begin(), points.end());
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].first == points[i - 1].first) throw ConfigError("extrapolate_lambda1: repeated N_max");
  }
  if (points.size() < 2 || last < 2) throw ConfigError("extrapolate_lambda1: needs at least 2 points");
  const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(last), points.size());
  std::vector<double> x;
  std::vector<double> y;
  for (std::size_t i = points.size() - k; i < points.size(); ++i) {
    if (points[i].first <= 0) throw ConfigError("extrapolate_lambda1: N_max must be positive");
    x.push_back(1.0 / points[i].first);
    y.push_back(points[i].second);
  }
  const LinearFit f = linear_least_squares(x, y);
  return {f.intercept, f.slope, static_cast<int>(k)};
}

}  // namespace kickmix::analytic
