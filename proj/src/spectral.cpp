#include "gdnls/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "gdnls/errors.hpp"
#include "gdnls/fft.hpp"
#include "gdnls/strfmt.hpp"

namespace gdnls {

std::vector<complex> spectrum(const Field& f) {
  std::vector<complex> coeffs;
  fft::forward(f.values(), coeffs);
  const double inv_n = 1.0 / static_cast<double>(f.size());
  for (auto& c : coeffs) c *= inv_n;
  return coeffs;
}

Field field_from_spectrum(GridPtr grid, const std::vector<complex>& coeffs) {
  if (!grid || static_cast<int>(coeffs.size()) != grid->n()) {
    throw ValidationError("spectrum length does not match grid");
  }
  Field out(grid);
  fft::backward(coeffs, out.values());
  return out;
}

Field spectral_derivative(const Field& f) {
  auto coeffs = spectrum(f);
  const auto& ks = f.grid()->wavenumbers();
  const std::size_t n = coeffs.size();
  for (std::size_t j = 0; j < n; ++j) {
    coeffs[j] *= complex(0.0, ks[j]);
  }
  coeffs[n / 2] = 0.0;  // Nyquist: derivative sign is ambiguous on the grid
  return field_from_spectrum(f.grid(), coeffs);
}

Field spectral_second_derivative(const Field& f) {
  auto coeffs = spectrum(f);
  const auto& ks = f.grid()->wavenumbers();
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    coeffs[j] *= -ks[j] * ks[j];
  }
  return field_from_spectrum(f.grid(), coeffs);
}

Field free_propagate(const Field& f, double t) {
  auto coeffs = spectrum(f);
  const auto& ks = f.grid()->wavenumbers();
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    const double phase = -ks[j] * ks[j] * t;
    coeffs[j] *= complex(std::cos(phase), std::sin(phase));
  }
  return field_from_spectrum(f.grid(), coeffs);
}

Field dealias(const Field& f, double keep_fraction) {
  if (!(keep_fraction > 0.0) || keep_fraction > 1.0) {
    throw ValidationError("dealias keep_fraction must lie in (0, 1]");
  }
  auto coeffs = spectrum(f);
  const auto& ks = f.grid()->wavenumbers();
  const double cutoff = keep_fraction * f.grid()->k_max();
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (std::abs(ks[j]) > cutoff) coeffs[j] = 0.0;
  }
  return field_from_spectrum(f.grid(), coeffs);
}

Field cumulative_primitive(const Field& f, DiagnosticLog* diag,
                           double threshold_rel) {
  const std::size_t n = f.size();
  double max_abs = 0.0;
  for (std::size_t j = 0; j < n; ++j) max_abs = std::max(max_abs, std::abs(f[j]));
  if (diag && max_abs > 0.0 && std::abs(f[0]) > threshold_rel * max_abs) {
    diag->warn_boundary(strfmt(
        "cumulative primitive: integrand at the left boundary is %.3e of its "
        "peak (threshold %.1e); the left-anchored primitive is unreliable",
        std::abs(f[0]) / max_abs, threshold_rel));
  }
  Field out(f.grid());
  const double half_dx = 0.5 * f.grid()->dx();
  complex acc = 0.0;
  out[0] = 0.0;
  for (std::size_t j = 1; j < n; ++j) {
    acc += half_dx * (f[j - 1] + f[j]);
    out[j] = acc;
  }
  return out;
}

complex integrate(const Field& f) {
  complex acc = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) acc += f[j];
  return acc * f.grid()->dx();
}

NormTriple norms(const Field& f) {
  const auto coeffs = spectrum(f);
  const auto& ks = f.grid()->wavenumbers();
  const double L = f.grid()->length();
  double sum_l2 = 0.0;
  double sum_h1 = 0.0;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    const double a2 = std::norm(coeffs[j]);
    sum_l2 += a2;
    sum_h1 += (1.0 + ks[j] * ks[j]) * a2;
  }
  double linf = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    linf = std::max(linf, std::abs(f[j]));
  }
  return {std::sqrt(L * sum_l2), std::sqrt(L * sum_h1), linf};
}

double norm_l2(const Field& f) { return norms(f).l2; }
double norm_h1(const Field& f) { return norms(f).h1; }

double norm_linf(const Field& f) {
  double linf = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    linf = std::max(linf, std::abs(f[j]));
  }
  return linf;
}

double pair_l2(const StatePair& s) { return norm_l2(s.phi) + norm_l2(s.psi); }
double pair_h1(const StatePair& s) { return norm_h1(s.phi) + norm_h1(s.psi); }
double pair_linf(const StatePair& s) {
  return norm_linf(s.phi) + norm_linf(s.psi);
}

}  // namespace gdnls
