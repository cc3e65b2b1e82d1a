#include "gdnls/gauge.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "gdnls/errors.hpp"
#include "gdnls/spectral.hpp"
#include "gdnls/strfmt.hpp"

namespace gdnls {

namespace {

// Cumulative primitive of |u|^{2 sigma}: the shared gauge phase integral.
Field modulus_power_primitive(const Field& u, double exponent_half,
                              DiagnosticLog* diag, double boundary_tol) {
  Field w(u.grid());
  for (std::size_t j = 0; j < u.size(); ++j) {
    w[j] = std::pow(std::norm(u[j]), exponent_half);
  }
  return cumulative_primitive(w, diag, boundary_tol);
}

Field apply_phase(const Field& primitive, double factor, const Field& payload) {
  Field out(payload.grid());
  for (std::size_t j = 0; j < payload.size(); ++j) {
    const double th = factor * primitive[j].real();
    out[j] = complex(std::cos(th), std::sin(th)) * payload[j];
  }
  return out;
}

}  // namespace

Field gauge_g1(const Field& u, const ModelParams& p, DiagnosticLog* diag) {
  p.validate();
  const Field prim =
      modulus_power_primitive(u, p.sigma, diag, p.boundary_tolerance);
  return apply_phase(prim, 0.5, u);
}

Field gauge_g2(const Field& u, const ModelParams& p, DiagnosticLog* diag) {
  p.validate();
  const Field prim =
      modulus_power_primitive(u, p.sigma, diag, p.boundary_tolerance);
  return apply_phase(prim, 0.5, spectral_derivative(u));
}

Field gauge_inverse(const Field& v, const ModelParams& p, DiagnosticLog* diag) {
  p.validate();
  // The transform preserves the modulus, so the phase integral rebuilt from
  // the transformed field equals the original one and the inverse is exact.
  const Field prim =
      modulus_power_primitive(v, p.sigma, diag, p.boundary_tolerance);
  return apply_phase(prim, -0.5, v);
}

namespace detail {

void eval_F_raw(const std::vector<complex>& phi,
                const std::vector<complex>& psi, double sigma, double dx,
                std::vector<complex>& P, std::vector<complex>& Q) {
  const std::size_t n = phi.size();
  P.resize(n);
  Q.resize(n);
  const complex i_unit(0.0, 1.0);
  const double e1 = sigma - 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double a = (e1 == 0.0) ? 1.0 : std::pow(std::norm(phi[j]), e1);
    P[j] = i_unit * sigma * a * phi[j] * phi[j] * std::conj(psi[j]);
    Q[j] = -i_unit * sigma * a * psi[j] * psi[j] * std::conj(phi[j]);
  }
  if (sigma > 1.0) {
    // Integral term: -sigma(sigma-1) (phi, psi) int_{-inf}^x
    // |phi|^{2(sigma-2)} Im(psi^2 conj(phi)^2). |phi|^0 is 1 everywhere at
    // sigma = 2; for sigma > 2 the power of |phi| in the integrand is
    // positive, so vanishing phi contributes zero.
    const double e2 = sigma - 2.0;
    std::vector<double> g(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double m2 = std::norm(phi[j]);
      double b;
      if (e2 == 0.0) {
        b = 1.0;
      } else if (m2 < 1e-300) {
        b = 0.0;
      } else {
        b = std::pow(m2, e2);
      }
      const complex z = psi[j] * std::conj(phi[j]);
      g[j] = b * std::imag(z * z);
    }
    const double s2 = sigma * (sigma - 1.0);
    const double half_dx = 0.5 * dx;
    double acc = 0.0;
    double prev = g[0];
    // j = 0 has zero primitive
    for (std::size_t j = 1; j < n; ++j) {
      acc += half_dx * (prev + g[j]);
      prev = g[j];
      P[j] -= s2 * acc * phi[j];
      Q[j] -= s2 * acc * psi[j];
    }
  }
}

}  // namespace detail

StatePair nonlinearity_F(const StatePair& eta, const ModelParams& p,
                         double dealias_fraction, DiagnosticLog* diag) {
  p.validate();
  if (p.sigma > 1.0 && p.sigma < 2.0) {
    throw ValidationError(
        strfmt("nonlinearity_F: sigma in (1,2) is rejected (the modulus "
               "power sigma-2 in the integral term is singular), got %g",
               p.sigma));
  }
  require_same_grid(eta.phi, eta.psi, "nonlinearity_F");
  if (diag && p.sigma > 1.0) {
    // Boundary smallness check on the integral-term integrand.
    double max_abs = 0.0;
    double left = 0.0;
    for (std::size_t j = 0; j < eta.phi.size(); ++j) {
      const complex z = eta.psi[j] * std::conj(eta.phi[j]);
      const double e2 = p.sigma - 2.0;
      const double m2 = std::norm(eta.phi[j]);
      const double b = (e2 == 0.0) ? 1.0 : (m2 < 1e-300 ? 0.0 : std::pow(m2, e2));
      const double val = std::abs(b * std::imag(z * z));
      max_abs = std::max(max_abs, val);
      if (j == 0) left = val;
    }
    if (max_abs > 0.0 && left > p.boundary_tolerance * max_abs) {
      diag->warn_boundary(strfmt(
          "nonlinearity integral term: integrand at the left boundary is "
          "%.3e of its peak (threshold %.1e)",
          left / max_abs, p.boundary_tolerance));
    }
  }
  std::vector<complex> P, Q;
  detail::eval_F_raw(eta.phi.values(), eta.psi.values(), p.sigma,
                     eta.phi.grid()->dx(), P, Q);
  StatePair out{Field(eta.phi.grid(), std::move(P)),
                Field(eta.phi.grid(), std::move(Q))};
  out.phi = dealias(out.phi, dealias_fraction);
  out.psi = dealias(out.psi, dealias_fraction);
  return out;
}

double relation_residual(const StatePair& eta, const Field* h,
                         const ModelParams& p) {
  p.validate();
  require_same_grid(eta.phi, eta.psi, "relation_residual");
  const Field dphi = spectral_derivative(eta.phi);
  Field expr(eta.phi.grid());
  const complex half_i(0.0, 0.5);
  for (std::size_t j = 0; j < eta.phi.size(); ++j) {
    complex cubic;
    if (h) {
      const complex sum = eta.phi[j] + (*h)[j];
      cubic = std::pow(std::norm(sum), p.sigma) * sum -
              std::pow(std::norm((*h)[j]), p.sigma) * (*h)[j];
    } else {
      cubic = std::pow(std::norm(eta.phi[j]), p.sigma) * eta.phi[j];
    }
    expr[j] = dphi[j] - half_i * cubic;
  }
  return norm_l2(eta.psi - expr);
}

double lipschitz_ratio(const StatePair& eta1, const StatePair& eta2,
                       const ModelParams& p) {
  p.validate();
  if (p.sigma <= 2.0) {
    throw ValidationError(
        strfmt("lipschitz_ratio requires sigma > 2, got %g", p.sigma));
  }
  require_same_grid(eta1.phi, eta2.phi, "lipschitz_ratio");
  require_same_grid(eta1.phi, eta1.psi, "lipschitz_ratio");
  require_same_grid(eta2.phi, eta2.psi, "lipschitz_ratio");
  const std::size_t n = eta1.phi.size();
  const double dx = eta1.phi.grid()->dx();
  const double s2 = 2.0 * p.sigma;

  std::vector<complex> P1, Q1, P2, Q2;
  detail::eval_F_raw(eta1.phi.values(), eta1.psi.values(), p.sigma, dx, P1, Q1);
  detail::eval_F_raw(eta2.phi.values(), eta2.psi.values(), p.sigma, dx, P2, Q2);

  // Pointwise moduli with the sum convention |(a,b)| = |a| + |b|.
  std::vector<double> m1(n), m2(n), diff(n);
  bool any_diff = false;
  for (std::size_t j = 0; j < n; ++j) {
    m1[j] = std::abs(eta1.phi[j]) + std::abs(eta1.psi[j]);
    m2[j] = std::abs(eta2.phi[j]) + std::abs(eta2.psi[j]);
    diff[j] = std::abs(eta1.phi[j] - eta2.phi[j]) +
              std::abs(eta1.psi[j] - eta2.psi[j]);
    if (diff[j] > 0.0) any_diff = true;
  }
  if (!any_diff) {
    throw ValidationError("lipschitz_ratio: the two states are identical");
  }

  // Cumulative terms of the majorant.
  std::vector<double> cum1(n, 0.0), cumd(n, 0.0);
  for (std::size_t j = 1; j < n; ++j) {
    auto g1 = [&](std::size_t i) { return std::pow(m1[i], s2); };
    auto gd = [&](std::size_t i) {
      return diff[i] * (std::pow(m1[i], s2 - 1.0) + std::pow(m2[i], s2 - 1.0));
    };
    cum1[j] = cum1[j - 1] + 0.5 * dx * (g1(j - 1) + g1(j));
    cumd[j] = cumd[j - 1] + 0.5 * dx * (gd(j - 1) + gd(j));
  }

  double max_den = 0.0;
  std::vector<double> num(n), den(n);
  for (std::size_t j = 0; j < n; ++j) {
    num[j] = std::abs(P1[j] - P2[j]) + std::abs(Q1[j] - Q2[j]);
    den[j] = diff[j] * (std::pow(m1[j], s2) + std::pow(m2[j], s2) + cum1[j]) +
             m2[j] * cumd[j];
    max_den = std::max(max_den, den[j]);
  }
  double max_ratio = 0.0;
  const double floor = 1e-14 * max_den;
  for (std::size_t j = 0; j < n; ++j) {
    if (den[j] > floor) {
      max_ratio = std::max(max_ratio, num[j] / den[j]);
    }
  }
  return max_ratio;
}

CalibrationResult calibrate_lipschitz(GridPtr grid, const ModelParams& p,
                                      int n_pairs, std::uint64_t seed) {
  CalibrationResult out;
  out.n_pairs = n_pairs;
  for (int i = 0; i < n_pairs; ++i) {
    const std::uint64_t base = seed + 1000003ull * static_cast<std::uint64_t>(i);
    // Deterministic size in (0.3, 1.0] for the pair H1 norm.
    const double t1 = 0.3 + 0.7 * ((i * 2654435761ull % 1024) / 1023.0);
    const StatePair eta1 = random_smooth_pair(grid, 4 * base, t1);
    StatePair eta2;
    if (i % 2 == 0) {
      const double t2 = 0.3 + 0.7 * (((i + 7) * 2654435761ull % 1024) / 1023.0);
      eta2 = random_smooth_pair(grid, 4 * base + 1, t2);
    } else {
      eta2 = eta1 + random_smooth_pair(grid, 4 * base + 1, 0.01 * t1);
    }
    out.max_ratio = std::max(out.max_ratio, lipschitz_ratio(eta1, eta2, p));
  }
  return out;
}

StatePair random_smooth_pair(GridPtr grid, std::uint64_t seed,
                             double h1_target) {
  // Platform-stable: mt19937_64 output mapped to [0,1) explicitly.
  std::mt19937_64 eng(seed);
  auto uniform = [&]() {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
  };
  const int n_modes = 8;
  const double L = grid->length();
  const double k_unit = 2.0 * std::numbers::pi / L;
  auto make_component = [&]() {
    std::vector<complex> coeffs(2 * n_modes + 1);
    for (int m = -n_modes; m <= n_modes; ++m) {
      const double re = 2.0 * uniform() - 1.0;
      const double im = 2.0 * uniform() - 1.0;
      const double damp = std::exp(-(m / 3.0) * (m / 3.0));
      coeffs[m + n_modes] = damp * complex(re, im);
    }
    Field f(grid);
    for (int j = 0; j < grid->n(); ++j) {
      const double x = grid->nodes()[j];
      complex acc = 0.0;
      for (int m = -n_modes; m <= n_modes; ++m) {
        const double ph = k_unit * m * x;
        acc += coeffs[m + n_modes] * complex(std::cos(ph), std::sin(ph));
      }
      const double env = std::exp(-std::pow(6.0 * x / L, 2));
      f[j] = acc * env;
    }
    return f;
  };
  StatePair out{make_component(), make_component()};
  const double h1 = pair_h1(out);
  if (h1 > 0.0) {
    out = (h1_target / h1) * out;
  }
  return out;
}

}  // namespace gdnls
