#pragma once

#include <array>
#include <vector>

#include "optclaw/flux.hpp"
#include "optclaw/grid.hpp"

namespace optclaw {

// Pentadiagonal derivative of the flux-difference operator F, stored by
// row: rows[j][k + 2] = dF_j / dy_{j+k}, k = -2..2. Entries whose column
// falls outside the interior are identically zero; ghost cells are
// constants, not unknowns.
struct BandedJacobian {
  static constexpr int bandwidth = 2;
  int n = 0;
  std::vector<std::array<double, 5>> rows;

  double entry(int row, int col) const {
    const int k = col - row;
    if (row < 0 || row >= n || col < 0 || col >= n || k < -2 || k > 2) return 0.0;
    return rows[row][k + 2];
  }
};

// Semi-discrete right-hand side of y' = rhs(y). F is the divided difference
// of the split WENO3 interface fluxes, and rhs = -F, so on smooth data
// rhs_j approximates -d/dx f(y) at x_j to third order. Requires ghost >= 2.
StateField weno3_rhs(const StateField& y, const FluxModel& model, SplitBound bound, double eps);

// Exact derivative of F (not of the rhs; callers account for the sign).
// Assembled from the interface flux jets by the chain rule, so it matches
// dense finite differences of F entry by entry.
BandedJacobian weno3_jacobian(const StateField& y, const FluxModel& model, SplitBound bound, double eps);

// result_j = sum_k J_{k,j} p_k, five terms per component.
std::vector<double> jacobian_transpose_apply(const BandedJacobian& jac, const std::vector<double>& p);
StateField jacobian_transpose_apply(const BandedJacobian& jac, const StateField& p);

}  // namespace optclaw
