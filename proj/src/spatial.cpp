#include "optclaw/spatial.hpp"

#include <cmath>

#include "optclaw/errors.hpp"

namespace optclaw {

namespace {

void require_weno_ghost(const Grid1D& grid) {
  if (grid.ghost < 2) throw ContractViolation("weno3: ghost width must be at least 2");
}

// Split-flux values of the padded state. fp/fm are indexed like the padded
// state itself.
void split_arrays(const std::vector<double>& padded, const FluxModel& model, SplitBound bound,
                  std::vector<double>& fp, std::vector<double>& fm) {
  fp.resize(padded.size());
  fm.resize(padded.size());
  for (std::size_t i = 0; i < padded.size(); ++i) {
    const double fu = model.f(padded[i]);
    const double au = bound.alpha * padded[i];
    fp[i] = 0.5 * (fu + au);
    fm[i] = 0.5 * (fu - au);
  }
}

}  // namespace

StateField weno3_rhs(const StateField& y, const FluxModel& model, SplitBound bound, double eps) {
  require_weno_ghost(y.grid);
  require_finite(y.values, "weno3_rhs state");
  const int n = y.grid.n_cells;
  const int g = y.grid.ghost;
  const double dx = y.grid.dx();

  const std::vector<double> padded = padded_view(y);
  std::vector<double> fp, fm;
  split_arrays(padded, model, bound, fp, fm);

  // Interface i sits between cells i-1 and i; the plus part reads cells
  // (i-2, i-1, i), the minus part (i-1, i, i+1).
  std::vector<double> fhat(n + 1);
  for (int i = 0; i <= n; ++i) {
    const int c = i + g;  // padded index of cell i
    fhat[i] = weno3_flux_plus(fp[c - 2], fp[c - 1], fp[c], eps) +
              weno3_flux_minus(fm[c - 1], fm[c], fm[c + 1], eps);
  }

  StateField rhs{y.grid, std::vector<double>(n)};
  for (int j = 0; j < n; ++j) rhs.values[j] = -(fhat[j + 1] - fhat[j]) / dx;
  return rhs;
}

BandedJacobian weno3_jacobian(const StateField& y, const FluxModel& model, SplitBound bound, double eps) {
  require_weno_ghost(y.grid);
  require_finite(y.values, "weno3_jacobian state");
  const int n = y.grid.n_cells;
  const int g = y.grid.ghost;
  const double dx = y.grid.dx();

  const std::vector<double> padded = padded_view(y);
  std::vector<double> fp, fm;
  split_arrays(padded, model, bound, fp, fm);
  std::vector<double> dfp(padded.size()), dfm(padded.size());
  for (std::size_t i = 0; i < padded.size(); ++i) {
    const double d = model.df(padded[i]);
    dfp[i] = 0.5 * (d + bound.alpha);
    dfm[i] = 0.5 * (d - bound.alpha);
  }

  // Jets of both interface flux halves, at the same interface indexing as
  // weno3_rhs. plus[i] differentiates with respect to cells (i-2, i-1, i),
  // minus[i] with respect to cells (i-1, i, i+1).
  std::vector<FluxJet> plus(n + 1), minus(n + 1);
  for (int i = 0; i <= n; ++i) {
    const int c = i + g;
    plus[i] = weno3_flux_plus_jet(fp[c - 2], fp[c - 1], fp[c], dfp[c - 2], dfp[c - 1], dfp[c], eps);
    minus[i] = weno3_flux_minus_jet(fm[c - 1], fm[c], fm[c + 1], dfm[c - 1], dfm[c], dfm[c + 1], eps);
  }

  BandedJacobian jac;
  jac.n = n;
  jac.rows.assign(n, {});
  const bool extend = y.grid.boundary == Boundary::Extend;
  for (int j = 0; j < n; ++j) {
    // F_j = (fhat_{j+1} - fhat_j) / dx; collect each interface's dependence
    // on the five cells around j.
    std::array<double, 5> row{};
    row[0] = -plus[j].d1;
    row[1] = plus[j + 1].d1 - plus[j].d2 - minus[j].d1;
    row[2] = plus[j + 1].d2 + minus[j + 1].d1 - plus[j].d3 - minus[j].d2;
    row[3] = plus[j + 1].d3 + minus[j + 1].d2 - minus[j].d3;
    row[4] = minus[j + 1].d3;
    for (int k = -2; k <= 2; ++k) {
      int col = j + k;
      if (col < 0 || col >= n) {
        // Ghost columns: under Extend the halo copies the edge cell, so its
        // derivative folds onto that cell; zero padding drops it.
        if (!extend) continue;
        col = col < 0 ? 0 : n - 1;
      }
      jac.rows[j][col - j + 2] += row[k + 2] / dx;
    }
  }
  return jac;
}

std::vector<double> jacobian_transpose_apply(const BandedJacobian& jac, const std::vector<double>& p) {
  if (static_cast<int>(p.size()) != jac.n)
    throw ContractViolation("jacobian_transpose_apply: dimension mismatch");
  std::vector<double> result(p.size(), 0.0);
  for (int j = 0; j < jac.n; ++j) {
    double acc = 0.0;
    for (int k = -2; k <= 2; ++k) {
      const int row = j + k;
      if (row < 0 || row >= jac.n) continue;
      // J_{j+k, j} lives in row j+k at column offset -k.
      acc += jac.rows[row][2 - k] * p[row];
    }
    result[j] = acc;
  }
  return result;
}

StateField jacobian_transpose_apply(const BandedJacobian& jac, const StateField& p) {
  return StateField{p.grid, jacobian_transpose_apply(jac, p.values)};
}

}  // namespace optclaw
