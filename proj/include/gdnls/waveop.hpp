#pragma once

#include <map>

#include "gdnls/fit.hpp"
#include "gdnls/stepper.hpp"

namespace gdnls {

// Prescribed scattering datum at t = +infinity and the time window of the
// final-value problem. Requires sigma > 2. TN = 0 selects the horizon
// automatically: the smallest dyadic multiple of T0 that is >= 2*T0, has
// ||H(TN)||_{H1} < tail_tol, and spans at least 16*T0 so the decay fit has a
// factor-8 window inside [T0, TN/2].
struct AsymptoticState {
  Field u_plus;
  ModelParams params;
  double T0 = 2.0;
  double TN = 0.0;
  double tail_tol = 1e-6;
  // Phase exponent of the source profile m: |R|^{2 sigma} (default) or the
  // literal |R|^2 variant.
  bool literal_m_exponent = false;

  void validate() const;
};

// Time-dependent profiles derived from u_plus, memoized per query time:
//   R(t)  = exp(i t d_xx) u_plus           (free evolution)
//   v     = i |R|^{2 sigma} d_x R
//   h     = G1(R),  k = G2(R)              (gauged free pair W = (h, k))
//   m     = exp((i/2) int_{-inf}^x |R|^{2e}) v,  e = sigma or 1
//   n     = d_x m - (i/2)(sigma+1)|h|^{2 sigma} m
//                 - (i/2) sigma |h|^{2(sigma-1)} h^2 conj(m)
//   H     = -(m, n)                        (source pair)
// These satisfy L h = P(h,k) + m and L k = Q(h,k) + n for the gauged
// nonlinearity (P,Q) = F.
class ProfileBundle {
 public:
  explicit ProfileBundle(AsymptoticState state);

  const AsymptoticState& state() const { return state_; }
  Field free_profile(double t) const;
  StatePair gauged_profiles(double t) const;
  StatePair source_terms(double t) const;

  DiagnosticLog& diag() const { return diag_; }

 private:
  struct Snapshot {
    double t = 0.0;
    bool valid = false;
    StatePair w;
    StatePair h_src;
  };
  const Snapshot& at(double t) const;

  AsymptoticState state_;
  mutable Snapshot memo_;
  mutable DiagnosticLog diag_;
};

// Convenience wrappers matching the bundle accessors.
Field free_profile(const AsymptoticState& state, double t);
StatePair gauged_profiles(const AsymptoticState& state, double t);
StatePair source_terms(const AsymptoticState& state, double t);

// Integrates the corrected system L eta~ = F(eta~ + W) - F(W) + H backward
// from eta~(TN) = 0 to T0 with the integrating-factor stepper. Fails
// (ValidationError) if ||eta~(T0)||_{H1} > 1, which signals leaving the
// contraction regime.
PairTrajectory solve_final_value(const ProfileBundle& bundle,
                                 const StepperConfig& cfg,
                                 DiagnosticLog* diag = nullptr);

// Independent discretization of the same fixed point:
//   eta~(t) = i int_t^TN exp(i(t-s) d_xx) [F(eta~+W)-F(W)+H](s) ds,
// iterated from eta~ = 0 on a uniform grid of n_intervals Simpson panels in
// the interaction picture. Returns the sup-over-nodes H1 gap between
// successive iterates and the final iterate at T0.
struct PicardResult {
  std::vector<double> node_times;
  std::vector<double> iterate_gaps;  // sup over nodes of pair-H1 gap
  StatePair eta_T0;
};
PicardResult picard_oracle(const ProfileBundle& bundle, int iterations,
                           int n_intervals = 640);

// Full pipeline: final-value solve, decay-rate fits, reconstruction
// u = G1^{-1}(phi~ + h), and backward extension of u to t = 0.
struct WaveOpReport {
  double T0 = 0.0;
  double TN = 0.0;
  std::vector<double> times;            // recorded, increasing
  std::vector<double> eta_l2;           // ||eta~||_{L2 x L2}
  std::vector<double> eta_h1;           // ||eta~||_{H1 x H1}
  std::vector<double> eta_linf;         // ||eta~||_{inf} (sum convention)
  std::vector<double> boundary_series;  // edge/peak ratio of the pair
  std::vector<double> u_minus_R_h1;     // ||u - R||_{H1}
  std::vector<double> source_h1;        // ||H||_{H1 x H1}
  std::vector<double> relation_series;  // residual of the corrected relation
  StatePair eta_t0;                     // corrected-system state at T0
  PowerFit rate_fit;                    // log ||u-R||_{H1} vs log t on [T0, TN/2]
  PowerFit source_fit;                  // log ||H||_{H1}  vs log t on [T0, TN/2]
  double eta_weighted_max = 0.0;        // t^{sigma-1} ||eta~||_{H1} extremes
  double eta_weighted_min = 0.0;        //   over the fit window
  double truncation_estimate = 0.0;     // tail of the source fit past TN
  double sup_dx_u = 0.0;                // max ||d_x u||_inf over the window
  Field u0;                             // extension to t = 0
  GlobalPredicate global_flag;          // predicate evaluated on u0
  bool tainted = false;
  std::vector<std::string> warnings;
};

WaveOpReport reconstruct_and_extend(const AsymptoticState& state,
                                    const StepperConfig& cfg);

}  // namespace gdnls
