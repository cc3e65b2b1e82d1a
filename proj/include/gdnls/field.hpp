#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "gdnls/grid.hpp"

namespace gdnls {

using complex = std::complex<double>;

// A complex-valued state sampled on a Grid. Value semantics; all spectral and
// pointwise operations are free functions returning new fields.
class Field {
 public:
  Field() = default;
  explicit Field(GridPtr grid)
      : grid_(std::move(grid)), values_(grid_ ? grid_->n() : 0) {}
  Field(GridPtr grid, std::vector<complex> values);

  const GridPtr& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  const std::vector<complex>& values() const { return values_; }
  std::vector<complex>& values() { return values_; }
  complex operator[](std::size_t j) const { return values_[j]; }
  complex& operator[](std::size_t j) { return values_[j]; }

  bool finite() const;

 private:
  GridPtr grid_;
  std::vector<complex> values_;
};

// A (phi, psi) pair evolving under the gauged system.
struct StatePair {
  Field phi;
  Field psi;
};

struct NormTriple {
  double l2 = 0.0;
  double h1 = 0.0;
  double linf = 0.0;
};

// Arithmetic on fields sharing a grid.
Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(complex s, const Field& a);
Field operator*(double s, const Field& a);
Field conjugate(const Field& a);
void require_same_grid(const Field& a, const Field& b, const char* where);

StatePair operator+(const StatePair& a, const StatePair& b);
StatePair operator-(const StatePair& a, const StatePair& b);
StatePair operator*(double s, const StatePair& a);

}  // namespace gdnls
