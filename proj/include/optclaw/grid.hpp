#pragma once

#include <functional>
#include <vector>

#include "optclaw/errors.hpp"

namespace optclaw {

// How the ghost halo outside [a, b] is filled. Zero suits solutions that
// stay compactly supported inside the domain; Extend repeats the edge cell
// values and is exact for data that is constant near both boundaries
// (plateau inflow), where zero padding would inject spurious boundary
// waves.
enum class Boundary { Zero, Extend };

// Uniform mesh on [a, b] with n_cells cells and midpoint nodes
//   x_j = a + (j + 1/2) dx,  j = 0 .. n_cells-1.
// Every stencil in the library reads boundary data through the `ghost`
// halo, filled according to `boundary`.
struct Grid1D {
  double a = 0.0;
  double b = 1.0;
  int n_cells = 1;
  int ghost = 2;
  Boundary boundary = Boundary::Zero;

  double dx() const { return (b - a) / n_cells; }
  double center(int j) const { return a + (j + 0.5) * dx(); }
  bool symmetric() const { return a == -b; }
};

// Validates bounds and sizes; throws ConfigError on nonsense input.
Grid1D make_grid(double a, double b, int n_cells, int ghost = 2,
                 Boundary boundary = Boundary::Zero);

std::vector<double> cell_centers(const Grid1D& grid);

// Cell values on a grid; `values` holds interior cells only.
struct StateField {
  Grid1D grid;
  std::vector<double> values;
};

// Midpoint sampling of a pointwise function. All entries must come out
// finite; otherwise the input is rejected.
StateField sample(const Grid1D& grid, const std::function<double(double)>& u0);

StateField make_state(const Grid1D& grid, std::vector<double> values);

// Interior values framed by `ghost` cells on each side: exact zeros, or
// copies of the edge values under Boundary::Extend. The field overload
// picks the mode from its grid.
std::vector<double> padded_view(const std::vector<double>& values, int ghost,
                                Boundary boundary = Boundary::Zero);
std::vector<double> padded_view(const StateField& field);

bool all_finite(const std::vector<double>& values);
void require_finite(const std::vector<double>& values, const char* what);

}  // namespace optclaw
