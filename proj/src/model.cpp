#include "gdnls/model.hpp"

#include <cmath>
#include <numbers>

#include "gdnls/errors.hpp"
#include "gdnls/spectral.hpp"
#include "gdnls/strfmt.hpp"

namespace gdnls {

void ModelParams::validate() const {
  if (!std::isfinite(sigma) || sigma < 1.0) {
    throw ValidationError(strfmt("model.sigma must be >= 1, got %g", sigma));
  }
  if (!std::isfinite(omega) || omega <= 0.0) {
    throw ValidationError(strfmt("model.omega must be > 0, got %g", omega));
  }
  if (!std::isfinite(c) || std::abs(c) >= 2.0 * std::sqrt(omega)) {
    throw ValidationError(
        strfmt("model.c must satisfy |c| < 2*sqrt(omega): c=%g, omega=%g", c,
               omega));
  }
  if (!(boundary_tolerance >= 0.0)) {
    throw ValidationError("model.boundary_tolerance must be nonnegative");
  }
}

Field rhs_gdnls(const Field& u, const ModelParams& p,
                double dealias_fraction) {
  const Field ux = spectral_derivative(u);
  const Field uxx = spectral_second_derivative(u);
  Field nl(u.grid());
  for (std::size_t j = 0; j < u.size(); ++j) {
    nl[j] = std::pow(std::norm(u[j]), p.sigma) * ux[j];
  }
  nl = dealias(nl, dealias_fraction);
  Field out(u.grid());
  const complex i_unit(0.0, 1.0);
  for (std::size_t j = 0; j < u.size(); ++j) {
    out[j] = i_unit * uxx[j] - nl[j];
  }
  return out;
}

double mass(const Field& u) {
  double acc = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) acc += std::norm(u[j]);
  return acc * u.grid()->dx();
}

double momentum(const Field& u) {
  const Field ux = spectral_derivative(u);
  double acc = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    acc += std::real(complex(0.0, 1.0) * ux[j] * std::conj(u[j]));
  }
  return acc * u.grid()->dx();
}

namespace {

// Re int i |u|^{2 sigma} conj(u) u_x dx by trapezoid quadrature.
double chiral_term(const Field& u, double sigma) {
  const Field ux = spectral_derivative(u);
  double acc = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    const double w = std::pow(std::norm(u[j]), sigma);
    acc += w * std::real(complex(0.0, 1.0) * std::conj(u[j]) * ux[j]);
  }
  return acc * u.grid()->dx();
}

double gradient_sq(const Field& u) {
  const double l2 = norm_l2(spectral_derivative(u));
  return l2 * l2;
}

}  // namespace

double energy(const Field& u, double sigma) {
  return 0.5 * gradient_sq(u) - chiral_term(u, sigma) / (2.0 * sigma + 2.0);
}

double action_S(const Field& u, const ModelParams& p) {
  return energy(u, p.sigma) + 0.5 * p.omega * mass(u) +
         0.5 * p.c * momentum(u);
}

double nehari_K(const Field& u, const ModelParams& p) {
  return gradient_sq(u) + p.omega * mass(u) + p.c * momentum(u) -
         chiral_term(u, p.sigma);
}

namespace {

void require_zero_velocity(const ModelParams& p) {
  if (p.c != 0.0) {
    throw ValidationError(
        "ground_state_profile: only the zero-velocity family (c = 0) has a "
        "closed-form profile");
  }
}

}  // namespace

Field ground_state_modulus(GridPtr grid, const ModelParams& p) {
  p.validate();
  require_zero_velocity(p);
  const double a = 2.0 * std::sqrt(p.omega) * (p.sigma + 1.0);
  const double b = 2.0 * std::sqrt(p.omega) * p.sigma;
  Field out(grid);
  for (int j = 0; j < grid->n(); ++j) {
    const double x = grid->nodes()[j];
    out[j] = std::pow(a / std::cosh(b * x), 1.0 / (2.0 * p.sigma));
  }
  return out;
}

Field ground_state_profile(GridPtr grid, const ModelParams& p) {
  // Modulus from the closed form; the gauge phase solves
  // theta' = -Phi^{2 sigma} / (2 sigma + 2), which integrates to
  // theta(x) = -(1/(2 sigma)) (arcsin(tanh(b x)) + pi/2).
  Field out = ground_state_modulus(grid, p);
  const double b = 2.0 * std::sqrt(p.omega) * p.sigma;
  for (int j = 0; j < grid->n(); ++j) {
    const double x = grid->nodes()[j];
    const double theta =
        -(std::asin(std::tanh(b * x)) + 0.5 * std::numbers::pi) /
        (2.0 * p.sigma);
    out[j] *= complex(std::cos(theta), std::sin(theta));
  }
  return out;
}

double mu_omega0(double sigma, double omega) {
  ModelParams check{sigma, omega, 0.0};
  check.validate();
  // Closed-form integrand of sigma/(2 sigma + 2) * (|phi_x|^2 + omega |phi|^2)
  // for the phased profile:
  //   |phi_x|^2 = Phi'^2 + theta'^2 Phi^2
  //             = omega tanh^2(bx) Phi^2 + a^2 sech^2(bx) Phi^2/(2 sigma+2)^2,
  // with Phi^2 = (a sech(bx))^{1/sigma}. Integrated by trapezoid on an
  // internal grid wide enough that the tail is below 1e-18 of the peak.
  const double a = 2.0 * std::sqrt(omega) * (sigma + 1.0);
  const double b = 2.0 * std::sqrt(omega) * sigma;
  const double half_width = 22.0 / std::sqrt(omega);
  const int n_nodes = 200001;
  const double dx = half_width / (n_nodes - 1);
  const double s2 = (2.0 * sigma + 2.0) * (2.0 * sigma + 2.0);
  auto integrand = [&](double x) {
    const double sech = 1.0 / std::cosh(b * x);
    const double tanh_bx = std::tanh(b * x);
    const double phi2 = std::pow(a * sech, 1.0 / sigma);
    return phi2 * (omega * tanh_bx * tanh_bx + a * a * sech * sech / s2 +
                   omega);
  };
  // Even integrand: integrate [0, X] and double; trapezoid endpoint weights.
  double acc = 0.5 * integrand(0.0);
  for (int j = 1; j < n_nodes - 1; ++j) acc += integrand(j * dx);
  acc += 0.5 * integrand(half_width);
  return sigma / (2.0 * sigma + 2.0) * 2.0 * acc * dx;
}

GlobalPredicate global_predicate(const Field& u, const ModelParams& p) {
  p.validate();
  GlobalPredicate out;
  out.lhs = gradient_sq(u) + p.omega * mass(u);
  out.threshold = 2.0 * mu_omega0(p.sigma, p.omega);
  out.margin = out.threshold - out.lhs;
  out.holds = out.margin > 0.0;
  return out;
}

}  // namespace gdnls
