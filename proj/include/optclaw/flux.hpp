#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace optclaw {

// Physical flux together with the analytic pieces the schemes consume.
// eo_plus / eo_minus are the running integrals of the positive and negative
// parts of f', so the decomposition
//   eo_plus(u) + eo_minus(u) + f_zero == f(u)
// holds for every u, with f_zero = f(0).
struct FluxModel {
  std::function<double(double)> f;
  std::function<double(double)> df;
  std::function<double(double)> eo_plus;   // int_0^u max(0, f'(s)) ds
  std::function<double(double)> eo_minus;  // int_0^u min(0, f'(s)) ds
  double f_zero = 0.0;
};

FluxModel burgers();

// Global bound alpha >= |f'| over the data range, frozen for a whole solve
// so that both split fluxes (f(u) +- alpha u)/2 stay monotone.
struct SplitBound {
  double alpha = 0.0;
};

// Exact for convex fluxes, where |f'| peaks at a range endpoint.
SplitBound split_bound(const FluxModel& model, double lo, double hi);
SplitBound split_bound_from_data(const FluxModel& model, const std::vector<double>& values);

// (f(u) + alpha u)/2 and (f(u) - alpha u)/2.
std::pair<double, double> split(const FluxModel& model, SplitBound bound, double u);

inline constexpr double kWenoEpsDefault = 1e-6;

// Linear reference weights of the two substencils. The minus flux mirrors
// the plus flux, which swaps the roles of the two gammas.
inline constexpr double kGamma1Plus = 1.0 / 3.0;
inline constexpr double kGamma2Plus = 2.0 / 3.0;
inline constexpr double kGamma1Minus = 2.0 / 3.0;
inline constexpr double kGamma2Minus = 1.0 / 3.0;

struct WenoWeights {
  double w1 = 0.0, w2 = 0.0;        // normalized nonlinear weights, w1 + w2 == 1
  double beta1 = 0.0, beta2 = 0.0;  // squared one-sided differences
  double eps = kWenoEpsDefault;
  double gamma1 = 0.0, gamma2 = 0.0;
};

// beta1 = (h_mid - h_left)^2, beta2 = (h_right - h_mid)^2,
// w_m proportional to gamma_m / (eps + beta_m)^2.
WenoWeights weno3_weights(double h_left, double h_mid, double h_right,
                          double gamma1, double gamma2, double eps);

// Upwind-biased interface values built from split-flux values on the
// three-cell stencil around the interface:
//   plus  : value at x_{j+1/2} from (y_{j-1}, y_j, y_{j+1}) data,
//   minus : value at x_{j-1/2} from the same stencil.
// weno3_flux_minus(a, b, c) == weno3_flux_plus(c, b, a) exactly.
double weno3_flux_plus(double fp_jm1, double fp_j, double fp_jp1, double eps);
double weno3_flux_minus(double fm_jm1, double fm_j, double fm_jp1, double eps);

// Interface value bundled with its three partial derivatives with respect
// to the stencil states. dh1..dh3 are the split-flux derivatives (f+-)'(y)
// at the stencil cells; the weight sensitivity is chained through them.
struct FluxJet {
  double value = 0.0;
  double d1 = 0.0, d2 = 0.0, d3 = 0.0;
};

FluxJet weno3_flux_plus_jet(double h1, double h2, double h3,
                            double dh1, double dh2, double dh3, double eps);
FluxJet weno3_flux_minus_jet(double h1, double h2, double h3,
                             double dh1, double dh2, double dh3, double eps);

// Two-point numerical fluxes of the fully discrete schemes.
double lf_flux(double a, double b, double gamma, double dx, double dt, const FluxModel& model);
double eo_flux(double a, double b, const FluxModel& model);

}  // namespace optclaw
