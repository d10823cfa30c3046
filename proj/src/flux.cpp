#include "optclaw/flux.hpp"

#include <algorithm>
#include <cmath>

#include "optclaw/errors.hpp"

namespace optclaw {

FluxModel burgers() {
  FluxModel model;
  model.f = [](double u) { return 0.5 * u * u; };
  model.df = [](double u) { return u; };
  // f'(s) = s, so the positive part integrates over [0, u] only when u > 0
  // and the negative part only when u < 0; both integrals are +u^2/2 there.
  model.eo_plus = [](double u) { double v = std::max(u, 0.0); return 0.5 * v * v; };
  model.eo_minus = [](double u) { double v = std::min(u, 0.0); return 0.5 * v * v; };
  model.f_zero = 0.0;
  return model;
}

SplitBound split_bound(const FluxModel& model, double lo, double hi) {
  if (!(lo <= hi)) throw ContractViolation("split_bound: empty range");
  return SplitBound{std::max(std::abs(model.df(lo)), std::abs(model.df(hi)))};
}

SplitBound split_bound_from_data(const FluxModel& model, const std::vector<double>& values) {
  // Ghost cells are zero, so the data range always contains 0.
  double lo = 0.0, hi = 0.0;
  for (double v : values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return split_bound(model, lo, hi);
}

std::pair<double, double> split(const FluxModel& model, SplitBound bound, double u) {
  const double fu = model.f(u);
  return {0.5 * (fu + bound.alpha * u), 0.5 * (fu - bound.alpha * u)};
}

WenoWeights weno3_weights(double h_left, double h_mid, double h_right,
                          double gamma1, double gamma2, double eps) {
  WenoWeights w;
  w.eps = eps;
  w.gamma1 = gamma1;
  w.gamma2 = gamma2;
  const double d1 = h_mid - h_left;
  const double d2 = h_right - h_mid;
  w.beta1 = d1 * d1;
  w.beta2 = d2 * d2;
  const double r1 = eps + w.beta1;
  const double r2 = eps + w.beta2;
  const double t1 = gamma1 / (r1 * r1);
  const double t2 = gamma2 / (r2 * r2);
  w.w1 = t1 / (t1 + t2);
  w.w2 = t2 / (t1 + t2);
  return w;
}

double weno3_flux_plus(double fp_jm1, double fp_j, double fp_jp1, double eps) {
  const WenoWeights w = weno3_weights(fp_jm1, fp_j, fp_jp1, kGamma1Plus, kGamma2Plus, eps);
  return w.w1 * (-0.5 * fp_jm1 + 1.5 * fp_j) + w.w2 * (0.5 * fp_j + 0.5 * fp_jp1);
}

double weno3_flux_minus(double fm_jm1, double fm_j, double fm_jp1, double eps) {
  const WenoWeights w = weno3_weights(fm_jm1, fm_j, fm_jp1, kGamma1Minus, kGamma2Minus, eps);
  return w.w2 * (-0.5 * fm_jp1 + 1.5 * fm_j) + w.w1 * (0.5 * fm_j + 0.5 * fm_jm1);
}

namespace {

// Sensitivity of the normalized first weight to the three stencil states.
// t_m = gamma_m / (eps + beta_m)^2 gives
//   d t_m = -2 gamma_m (eps + beta_m)^{-3} d beta_m,
// and w1 = t1 / (t1 + t2) gives d w1 = (dt1 t2 - t1 dt2) / (t1 + t2)^2.
struct WeightJet {
  double w1, w2;
  double dw1_1, dw1_2, dw1_3;
};

WeightJet weight_jet(double h1, double h2, double h3,
                     double dh1, double dh2, double dh3,
                     double gamma1, double gamma2, double eps) {
  const double d1 = h2 - h1;
  const double d2 = h3 - h2;
  const double r1 = eps + d1 * d1;
  const double r2 = eps + d2 * d2;
  const double t1 = gamma1 / (r1 * r1);
  const double t2 = gamma2 / (r2 * r2);
  const double sum = t1 + t2;

  const double c1 = -2.0 * gamma1 / (r1 * r1 * r1);  // dt1/dbeta1
  const double c2 = -2.0 * gamma2 / (r2 * r2 * r2);  // dt2/dbeta2
  // dbeta1 = 2 d1 * (dh2 - dh1 contributions), dbeta2 = 2 d2 * (dh3 - dh2).
  const double dt1_1 = c1 * (-2.0 * d1 * dh1);
  const double dt1_2 = c1 * (2.0 * d1 * dh2);
  const double dt2_2 = c2 * (-2.0 * d2 * dh2);
  const double dt2_3 = c2 * (2.0 * d2 * dh3);

  const double inv2 = 1.0 / (sum * sum);
  WeightJet jet;
  jet.w1 = t1 / sum;
  jet.w2 = t2 / sum;
  jet.dw1_1 = dt1_1 * t2 * inv2;
  jet.dw1_2 = (dt1_2 * t2 - t1 * dt2_2) * inv2;
  jet.dw1_3 = -t1 * dt2_3 * inv2;
  return jet;
}

}  // namespace

FluxJet weno3_flux_plus_jet(double h1, double h2, double h3,
                            double dh1, double dh2, double dh3, double eps) {
  const WeightJet w = weight_jet(h1, h2, h3, dh1, dh2, dh3, kGamma1Plus, kGamma2Plus, eps);
  const double upwind = -0.5 * h1 + 1.5 * h2;
  const double centered = 0.5 * h2 + 0.5 * h3;
  // w2 = 1 - w1, so the weight sensitivity acts on the substencil gap.
  const double gap = upwind - centered;
  FluxJet jet;
  jet.value = w.w1 * upwind + w.w2 * centered;
  jet.d1 = w.dw1_1 * gap - 0.5 * w.w1 * dh1;
  jet.d2 = w.dw1_2 * gap + (1.5 * w.w1 + 0.5 * w.w2) * dh2;
  jet.d3 = w.dw1_3 * gap + 0.5 * w.w2 * dh3;
  return jet;
}

FluxJet weno3_flux_minus_jet(double h1, double h2, double h3,
                             double dh1, double dh2, double dh3, double eps) {
  const WeightJet w = weight_jet(h1, h2, h3, dh1, dh2, dh3, kGamma1Minus, kGamma2Minus, eps);
  const double upwind = -0.5 * h3 + 1.5 * h2;
  const double centered = 0.5 * h1 + 0.5 * h2;
  const double gap = centered - upwind;
  FluxJet jet;
  jet.value = w.w2 * upwind + w.w1 * centered;
  jet.d1 = w.dw1_1 * gap + 0.5 * w.w1 * dh1;
  jet.d2 = w.dw1_2 * gap + (0.5 * w.w1 + 1.5 * w.w2) * dh2;
  jet.d3 = w.dw1_3 * gap - 0.5 * w.w2 * dh3;
  return jet;
}

double lf_flux(double a, double b, double gamma, double dx, double dt, const FluxModel& model) {
  return 0.5 * (model.f(b) + model.f(a)) - 0.5 * gamma * (dx / dt) * (b - a);
}

double eo_flux(double a, double b, const FluxModel& model) {
  return model.f_zero + model.eo_plus(a) + model.eo_minus(b);
}

}  // namespace optclaw
