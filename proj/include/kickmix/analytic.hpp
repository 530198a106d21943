#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "kickmix/rpa.hpp"
#include "kickmix/sff_exact.hpp"

namespace kickmix::analytic {

// N = 1 eigenvalues of the JC Trotter map, indexed by momentum i = 0..L-1.
struct JcBranches {
  std::vector<double> plus;
  std::vector<double> minus;
};
JcBranches jc_n1_eigenvalues(int L, double g, double J);

struct CrossoverScales {
  double l_c;   // pi / asin(g / (sqrt2 J)), 0 when the argument reaches 1
  double gJ_c;  // sqrt(2/3)
};
CrossoverScales crossover_scales(double g, double J);

enum class ThoulessMethod { FromLambda1, FromDegenerateSum, FromSFFCurve };
std::string to_string(ThoulessMethod m);

struct ThoulessEstimate {
  double t_star;
  ThoulessMethod method;
};

// t* = -1 / log(lambda1).
ThoulessEstimate thouless_from_lambda1(double lambda1);

// Smallest t with (1-g^2)^(t-1) [(L-1)(1-g^2) + t g^4/(4J^2) (L^2-1)/3] = 1,
// by bisection to 1e-6.
ThoulessEstimate thouless_from_degenerate_sum(int L, double g, double J);

// First grid time starting a run of `window` points with |K/(2t) - 1| < eps.
ThoulessEstimate thouless_from_sff(const SpectralSeries& series, double eps = 0.05, int window = 5);

enum class FitForm { LogShift, Power };

struct ScalingFit {
  FitForm form;
  double a = 0.0;
  double b = 0.0;      // LogShift only
  double c = 0.0;      // LogShift only
  double gamma = 0.0;  // Power only
  double residual_norm = 0.0;  // sqrt(sum of squared residuals) in t*
  double r_squared = 0.0;
};

// LogShift: t = a log(L + b) + c. Power: t = a L^gamma (fitted in log-log).
ScalingFit fit_scaling(const std::vector<std::pair<double, double>>& points, FitForm form);

struct RabiLambda1 {
  double value;
  int degeneracy;
};
RabiLambda1 rabi_fermion_lambda1(double g, double J, int L);

struct BoundStatePair {
  double E_b_plus;
  double E_b_minus;
};
BoundStatePair dyson_bound_states(double g, double J);

struct ExtrapolationResult {
  double intercept;
  double slope;
  int points_used;
};

// Least squares of lambda1 against 1/N_max over the `last` largest N_max.
ExtrapolationResult extrapolate_lambda1(std::vector<std::pair<int, double>> points, int last = 3);

}  // namespace kickmix::analytic
