#pragma once

#include <memory>
#include <vector>

namespace gdnls {

// Uniform periodic grid on [-L/2, L/2): nodes x_j = -L/2 + j*dx, dx = L/n.
// Wavenumbers are stored in FFT order: 2*pi/L * {0, 1, ..., n/2-1, -n/2, ..., -1}.
class Grid {
 public:
  static std::shared_ptr<const Grid> make(int n_points, double domain_length);

  int n() const { return n_; }
  double length() const { return length_; }
  double dx() const { return dx_; }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& wavenumbers() const { return wavenumbers_; }
  // Largest wavenumber magnitude on the grid (the Nyquist mode).
  double k_max() const { return k_max_; }

  bool same_as(const Grid& other) const {
    return n_ == other.n_ && length_ == other.length_;
  }

 private:
  Grid(int n_points, double domain_length);

  int n_;
  double length_;
  double dx_;
  double k_max_;
  std::vector<double> nodes_;
  std::vector<double> wavenumbers_;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(int n_points, double domain_length);

}  // namespace gdnls
