#pragma once

#include "gdnls/field.hpp"

namespace gdnls {

// Parameters of the derivative NLS family
//   i u_t + u_xx + i |u|^{2 sigma} u_x = 0,
// together with the (omega, c) frequency/velocity pair entering the action
// and constraint functionals. sigma is real, sigma >= 1; omega > 0;
// |c| < 2 sqrt(omega).
struct ModelParams {
  double sigma = 1.0;
  double omega = 1.0;
  double c = 0.0;
  // Relative boundary-smallness tolerance for cumulative phase integrands.
  double boundary_tolerance = 1e-8;

  void validate() const;
};

// u_t = i u_xx - |u|^{2 sigma} u_x, with the nonlinear product dealiased.
Field rhs_gdnls(const Field& u, const ModelParams& p,
                double dealias_fraction = 0.5);

// Conserved quantities of the flow.
double mass(const Field& u);                        // ||u||_{L2}^2
double momentum(const Field& u);                    // Re int i u_x conj(u) dx
double energy(const Field& u, double sigma);        // see below
// E = 1/2 ||u_x||^2 - 1/(2 sigma + 2) Re int i |u|^{2 sigma} conj(u) u_x dx.

// Action S_{omega,c} = E + omega/2 M + c/2 P.
double action_S(const Field& u, const ModelParams& p);

// K_{omega,c}(u) = ||u_x||^2 + omega ||u||^2 + c P(u)
//                  - Re int i |u|^{2 sigma} conj(u) u_x dx.
double nehari_K(const Field& u, const ModelParams& p);

// Solitary-wave profile at velocity c = 0: phi(x) = Phi(x) exp(i theta(x))
// with Phi^{2 sigma}(x) = 2 sqrt(omega) (sigma+1) sech(2 sqrt(omega) sigma x)
// and theta(x) = -(1/(2 sigma)) (arcsin(tanh(2 sqrt(omega) sigma x)) + pi/2).
// The phase solves theta' = -Phi^{2 sigma}/(2 sigma + 2); with it the profile
// satisfies the stationary equation, K_{omega,0}(phi) = 0 and
// S_{omega,0}(phi) = mu_omega0. Rejects c != 0.
Field ground_state_profile(GridPtr grid, const ModelParams& p);
// The real modulus Phi alone (for formula-level checks).
Field ground_state_modulus(GridPtr grid, const ModelParams& p);

// mu(omega, 0) = sigma/(2 sigma + 2) * int (|phi_x|^2 + omega |phi|^2) dx,
// evaluated by quadrature of the closed-form integrand on an internal grid
// (independent of any user Grid).
double mu_omega0(double sigma, double omega);

// Global-existence predicate for the gauged small-data theory:
//   ||d_x u||^2 + omega ||u||^2 < 2 mu(omega, 0), evaluated at omega = p.omega.
// Returns the margin too (positive means the predicate holds).
struct GlobalPredicate {
  bool holds = false;
  double lhs = 0.0;
  double threshold = 0.0;  // 2 mu(omega, 0)
  double margin = 0.0;     // threshold - lhs
};
GlobalPredicate global_predicate(const Field& u, const ModelParams& p);

}  // namespace gdnls
