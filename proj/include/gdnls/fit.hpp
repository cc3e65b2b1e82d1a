#pragma once

#include <vector>

namespace gdnls {

// Least-squares fit of log(y) = slope * log(t) + intercept over the samples
// with t in [t_lo, t_hi]. Samples with y <= 0 are excluded; the fit is
// degenerate when fewer than two usable samples remain.
struct PowerFit {
  double slope = 0.0;
  double intercept = 0.0;  // of log(y) vs log(t)
  double residual_rms = 0.0;
  int n_points = 0;
  double t_min = 0.0;
  double t_max = 0.0;
  bool degenerate = true;
};

PowerFit fit_loglog(const std::vector<double>& ts, const std::vector<double>& ys,
                    double t_lo, double t_hi);

}  // namespace gdnls
