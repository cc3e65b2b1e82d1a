#pragma once

#include <functional>
#include <optional>

#include "gdnls/gauge.hpp"

namespace gdnls {

struct StepperConfig {
  double dt = 1e-2;
  double t_start = 0.0;
  double t_end = 1.0;
  int record_every = 1;       // snapshot cadence in accepted steps
  double dealias_fraction = 0.5;
  double max_linf_growth = 10.0;  // blow-up guard factor (relative to t_start)
  bool disable_nonlinearity = false;  // test hook: pure free flow

  void validate() const;
};

// Time series of scalar diagnostics at snapshot times.
struct FieldTrajectory {
  std::vector<double> times;
  std::vector<Field> states;
  std::vector<double> mass_series;
  std::vector<double> energy_series;
  std::vector<double> momentum_series;
  std::vector<NormTriple> norm_series;
  std::vector<double> boundary_series;  // |u| at the domain edge / ||u||_inf
  // Optional diagnostic: (sum dt ||u||_{W^{1,inf}}^4)^{1/4} accumulated at
  // snapshot cadence.
  std::vector<double> l4winf_series;

  const Field& final_state() const { return states.back(); }
  double final_time() const { return times.back(); }
};

struct PairTrajectory {
  std::vector<double> times;
  std::vector<StatePair> states;
  std::vector<NormTriple> phi_norms;
  std::vector<NormTriple> psi_norms;
  std::vector<double> boundary_series;
  std::vector<double> relation_series;  // residual with h = 0

  const StatePair& final_state() const { return states.back(); }
  double final_time() const { return times.back(); }
};

// Integrating-factor RK4 for u_t = i u_xx - |u|^{2 sigma} u_x. The linear
// flow is integrated exactly mode-by-mode; classical RK4 handles the gauged
// nonlinearity. dt > 0; integration direction is sign(t_end - t_start); the
// last step is shortened to land on t_end exactly. Throws BlowUpError when
// ||u||_inf exceeds max_linf_growth times its initial value or turns
// non-finite (growth guard suspended when the initial sup-norm is zero).
FieldTrajectory evolve_gdnls(const Field& u0, const StepperConfig& cfg,
                             const ModelParams& p,
                             DiagnosticLog* diag = nullptr);

// Forcing and background hooks for the gauged system. With a background W(t)
// the nonlinearity becomes the difference form F(eta + W(t)) - F(W(t)), which
// is the right-hand side of the corrected final-value problem; forcing H(t)
// is added as-is. Both are sampled at the RK4 stage times.
using PairSource = std::function<StatePair(double)>;

PairTrajectory evolve_gauged(const StatePair& eta0, const StepperConfig& cfg,
                             const ModelParams& p,
                             const PairSource& forcing = nullptr,
                             const PairSource& background = nullptr,
                             DiagnosticLog* diag = nullptr);

// Self-convergence order from three dt levels (dt0, dt0/2, dt0/4):
// order = log2(||u_dt0 - u_dt0/2|| / ||u_dt0/2 - u_dt0/4||) in L2 at t_end.
// When both differences sit at rounding level the run is flagged exact
// (the integrating factor alone is exact on the free flow).
struct ConvergenceResult {
  double order = 0.0;
  bool exact = false;
  double err_coarse = 0.0;
  double err_fine = 0.0;
};

enum class ConvergenceProblem { linear_only, gdnls_sigma1, gauged_sigma3 };

ConvergenceResult self_convergence_order(ConvergenceProblem problem,
                                         double dt0);

// Squared L2 distance series between two trajectories sampled at matching
// times (Gronwall-style uniqueness monitor). Throws ValidationError on
// mismatched grids or time vectors.
std::vector<double> pair_difference_monitor(const FieldTrajectory& a,
                                            const FieldTrajectory& b);

}  // namespace gdnls
