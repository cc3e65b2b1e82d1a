#include "gdnls/field.hpp"

#include <cmath>

#include "gdnls/errors.hpp"

namespace gdnls {

Field::Field(GridPtr grid, std::vector<complex> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_ || static_cast<int>(values_.size()) != grid_->n()) {
    throw ValidationError("field values do not match grid size");
  }
}

bool Field::finite() const {
  for (const auto& v : values_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

void require_same_grid(const Field& a, const Field& b, const char* where) {
  if (!a.grid() || !b.grid() || !a.grid()->same_as(*b.grid())) {
    throw ValidationError(std::string(where) + ": fields on different grids");
  }
}

Field operator+(const Field& a, const Field& b) {
  require_same_grid(a, b, "operator+");
  Field out(a.grid());
  for (std::size_t j = 0; j < a.size(); ++j) out[j] = a[j] + b[j];
  return out;
}

Field operator-(const Field& a, const Field& b) {
  require_same_grid(a, b, "operator-");
  Field out(a.grid());
  for (std::size_t j = 0; j < a.size(); ++j) out[j] = a[j] - b[j];
  return out;
}

Field operator*(complex s, const Field& a) {
  Field out(a.grid());
  for (std::size_t j = 0; j < a.size(); ++j) out[j] = s * a[j];
  return out;
}

Field operator*(double s, const Field& a) { return complex(s, 0.0) * a; }

Field conjugate(const Field& a) {
  Field out(a.grid());
  for (std::size_t j = 0; j < a.size(); ++j) out[j] = std::conj(a[j]);
  return out;
}

StatePair operator+(const StatePair& a, const StatePair& b) {
  return {a.phi + b.phi, a.psi + b.psi};
}

StatePair operator-(const StatePair& a, const StatePair& b) {
  return {a.phi - b.phi, a.psi - b.psi};
}

StatePair operator*(double s, const StatePair& a) {
  return {s * a.phi, s * a.psi};
}

}  // namespace gdnls
