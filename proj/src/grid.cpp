#include "gdnls/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gdnls/errors.hpp"

namespace gdnls {

namespace {
bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

Grid::Grid(int n_points, double domain_length)
    : n_(n_points), length_(domain_length), dx_(domain_length / n_points) {
  nodes_.resize(n_);
  wavenumbers_.resize(n_);
  const double k_unit = 2.0 * std::numbers::pi / length_;
  for (int j = 0; j < n_; ++j) {
    nodes_[j] = -0.5 * length_ + j * dx_;
    const int m = (j < n_ / 2) ? j : j - n_;
    wavenumbers_[j] = k_unit * m;
  }
  k_max_ = k_unit * (n_ / 2);
}

std::shared_ptr<const Grid> Grid::make(int n_points, double domain_length) {
  if (!is_power_of_two(n_points) || n_points < 8) {
    throw ValidationError("grid.n_points must be a power of two >= 8, got " +
                          std::to_string(n_points));
  }
  if (!(domain_length > 0.0) || !std::isfinite(domain_length)) {
    throw ValidationError("grid.domain_length must be positive, got " +
                          std::to_string(domain_length));
  }
  return std::shared_ptr<const Grid>(new Grid(n_points, domain_length));
}

GridPtr make_grid(int n_points, double domain_length) {
  return Grid::make(n_points, domain_length);
}

}  // namespace gdnls
