#include "optclaw/grid.hpp"

#include <cmath>
#include <string>

namespace optclaw {

Grid1D make_grid(double a, double b, int n_cells, int ghost, Boundary boundary) {
  if (!(b > a)) throw ConfigError("grid: need b > a, got [" + std::to_string(a) + ", " + std::to_string(b) + "]");
  if (n_cells < 1) throw ConfigError("grid: need at least one cell");
  if (ghost < 0) throw ConfigError("grid: ghost width must be nonnegative");
  if (!std::isfinite(a) || !std::isfinite(b)) throw ConfigError("grid: bounds must be finite");
  return Grid1D{a, b, n_cells, ghost, boundary};
}

std::vector<double> cell_centers(const Grid1D& grid) {
  std::vector<double> x(grid.n_cells);
  for (int j = 0; j < grid.n_cells; ++j) x[j] = grid.center(j);
  return x;
}

StateField sample(const Grid1D& grid, const std::function<double(double)>& u0) {
  StateField field{grid, std::vector<double>(grid.n_cells)};
  for (int j = 0; j < grid.n_cells; ++j) field.values[j] = u0(grid.center(j));
  require_finite(field.values, "sampled state");
  return field;
}

StateField make_state(const Grid1D& grid, std::vector<double> values) {
  if (static_cast<int>(values.size()) != grid.n_cells)
    throw ContractViolation("state: value count does not match the grid");
  require_finite(values, "state");
  return StateField{grid, std::move(values)};
}

std::vector<double> padded_view(const std::vector<double>& values, int ghost, Boundary boundary) {
  std::vector<double> padded(values.size() + 2 * static_cast<std::size_t>(ghost), 0.0);
  for (std::size_t j = 0; j < values.size(); ++j) padded[j + ghost] = values[j];
  if (boundary == Boundary::Extend && !values.empty()) {
    for (int g = 0; g < ghost; ++g) {
      padded[g] = values.front();
      padded[padded.size() - 1 - g] = values.back();
    }
  }
  return padded;
}

std::vector<double> padded_view(const StateField& field) {
  return padded_view(field.values, field.grid.ghost, field.grid.boundary);
}

bool all_finite(const std::vector<double>& values) {
  for (double v : values)
    if (!std::isfinite(v)) return false;
  return true;
}

void require_finite(const std::vector<double>& values, const char* what) {
  if (!all_finite(values)) throw ContractViolation(std::string(what) + ": non-finite entries");
}

}  // namespace optclaw
