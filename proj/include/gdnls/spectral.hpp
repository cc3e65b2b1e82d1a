#pragma once

#include "gdnls/diagnostics.hpp"
#include "gdnls/field.hpp"

namespace gdnls {

// Spectral coefficients of f: the forward FFT divided by n. A plane wave
// exp(i k_m x) has unit-modulus coefficient (-1)^m in bin m; the sign
// alternates because the leftmost node sits at -L/2, half a period off the
// FFT's implicit origin. All in-library consumers pair bins diagonally, so
// only field_from_spectrum (the exact inverse) should rebuild fields.
std::vector<complex> spectrum(const Field& f);
Field field_from_spectrum(GridPtr grid, const std::vector<complex>& coeffs);

// d/dx by ik multiplication; the Nyquist mode is zeroed (its sign is
// ambiguous on the grid, and keeping it breaks conjugate symmetry).
Field spectral_derivative(const Field& f);
Field spectral_second_derivative(const Field& f);

// exp(i t d_xx) f: multiplies mode k by exp(-i k^2 t). Unitary in l2 and h1,
// exact group property up to rounding.
Field free_propagate(const Field& f, double t);

// Zeroes all modes with |k| > keep_fraction * k_max. keep_fraction in (0, 1].
Field dealias(const Field& f, double keep_fraction);

// Left-anchored cumulative trapezoid: F(x_0) = 0,
// F(x_j) = F(x_{j-1}) + dx*(f_{j-1}+f_j)/2. Used for the gauge phase
// integrals; assumes f is negligible at the left boundary. When
// |f(x_0)| > threshold_rel * max|f| a boundary warning is recorded in diag
// (non-fatal).
Field cumulative_primitive(const Field& f, DiagnosticLog* diag = nullptr,
                           double threshold_rel = 1e-8);

// Trapezoid quadrature of f over the full period: dx * sum_j f_j
// (spectrally accurate for smooth periodic integrands).
complex integrate(const Field& f);

// l2 = sqrt(L * sum |f_k|^2), h1 = sqrt(L * sum (1+k^2) |f_k|^2) over the
// normalized spectrum, linf = max_j |f_j|. The l2 norm agrees with the
// trapezoid quadrature of |f|^2 by the discrete Parseval identity.
NormTriple norms(const Field& f);
double norm_l2(const Field& f);
double norm_h1(const Field& f);
double norm_linf(const Field& f);

// Pair norms use the sum convention ||(a,b)|| = ||a|| + ||b||.
double pair_l2(const StatePair& s);
double pair_h1(const StatePair& s);
double pair_linf(const StatePair& s);

}  // namespace gdnls
