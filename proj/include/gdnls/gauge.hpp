#pragma once

#include <cstdint>

#include "gdnls/diagnostics.hpp"
#include "gdnls/model.hpp"

namespace gdnls {

// First gauge transform: G1(u) = exp((i/2) int_{-inf}^x |u|^{2 sigma} dy) u.
// Preserves |u| pointwise, so mass and all L^p norms are unchanged.
Field gauge_g1(const Field& u, const ModelParams& p,
               DiagnosticLog* diag = nullptr);

// Second gauge transform: G2(u) = exp(same phase) * d_x u. Satisfies the
// compatibility identity G2(u) = d_x G1(u) - (i/2) |G1(u)|^{2 sigma} G1(u).
Field gauge_g2(const Field& u, const ModelParams& p,
               DiagnosticLog* diag = nullptr);

// Inverse of G1: since |G1(u)| = |u|, the phase can be rebuilt from the
// transformed field itself: u = exp(-(i/2) int |v|^{2 sigma}) v.
Field gauge_inverse(const Field& v, const ModelParams& p,
                    DiagnosticLog* diag = nullptr);

// Right-hand side F(eta) = (P, Q) of the gauged system L(phi,psi) = F:
//   P = i sigma |phi|^{2(sigma-1)} phi^2 conj(psi)
//       - sigma(sigma-1) phi int_{-inf}^x |phi|^{2(sigma-2)} Im(psi^2 conj(phi)^2) dy
//   Q = -i sigma |phi|^{2(sigma-1)} psi^2 conj(phi)
//       - sigma(sigma-1) psi int_{-inf}^x |phi|^{2(sigma-2)} Im(psi^2 conj(phi)^2) dy.
// For sigma = 1 the integral terms vanish ((sigma-1) factor); |phi|^0 is 1
// everywhere. sigma in (1,2) is rejected (the modulus power in the integrand
// is singular there). Products are dealiased with dealias_fraction.
StatePair nonlinearity_F(const StatePair& eta, const ModelParams& p,
                         double dealias_fraction = 0.5,
                         DiagnosticLog* diag = nullptr);

// L2 residual of the first-order relation tying the pair components:
//   || psi - [d_x phi - (i/2)(|phi + h|^{2 sigma}(phi + h) - |h|^{2 sigma} h)] ||_{L2}.
// With h = 0 this is the relation for a gauged physical state; with h the
// free gauged profile it applies to the corrected pair of the final-value
// problem. Pass h = nullptr for the h = 0 case.
double relation_residual(const StatePair& eta, const Field* h,
                         const ModelParams& p);

// Pointwise Lipschitz quotient of the nonlinearity: max over grid nodes of
//   |F(eta1) - F(eta2)| / majorant(eta1, eta2),
// where |(a,b)| = |a| + |b| and the majorant is
//   |eta1 - eta2| (|eta1|^{2s} + |eta2|^{2s} + int_{-inf}^x |eta1|^{2s})
//   + |eta2| int_{-inf}^x |eta1 - eta2| (|eta1|^{2s-1} + |eta2|^{2s-1}).
// Nodes where the majorant is below 1e-14 * its max are skipped. Requires
// sigma > 2 and eta1 != eta2.
double lipschitz_ratio(const StatePair& eta1, const StatePair& eta2,
                       const ModelParams& p);

// Deterministic smooth random pair generator used for calibration: band
// limited Fourier noise under a Gaussian envelope, scaled to a target H1
// size. Platform-stable (mt19937_64 + explicit uniform transform).
StatePair random_smooth_pair(GridPtr grid, std::uint64_t seed,
                             double h1_target);

// Frozen calibration constant for the quotient above (sigma = 3, grid
// n = 512 / L = 30, 200 pairs, seed 1729): observed max with 2% headroom,
// plus the observed max itself for drift checks.
inline constexpr double kLipschitzCalibrated = 0.62754;
inline constexpr double kLipschitzObservedMax = 0.61523371996262355;

// The canonical seeded calibration set: pair i uses states drawn from seeds
// derived from `seed`; even pairs are independent draws, odd pairs are a
// state plus a small perturbation (probing the first-order regime).
struct CalibrationResult {
  double max_ratio = 0.0;
  int n_pairs = 0;
};
CalibrationResult calibrate_lipschitz(GridPtr grid, const ModelParams& p,
                                      int n_pairs, std::uint64_t seed);

namespace detail {
// Pointwise evaluation of F = (P, Q) without dealiasing.
void eval_F_raw(const std::vector<complex>& phi,
                const std::vector<complex>& psi, double sigma, double dx,
                std::vector<complex>& P, std::vector<complex>& Q);
}  // namespace detail

}  // namespace gdnls
