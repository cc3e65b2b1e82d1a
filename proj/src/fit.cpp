#include "gdnls/fit.hpp"

#include <cmath>

#include "gdnls/errors.hpp"

namespace gdnls {

PowerFit fit_loglog(const std::vector<double>& ts,
                    const std::vector<double>& ys, double t_lo, double t_hi) {
  if (ts.size() != ys.size()) {
    throw ValidationError("fit_loglog: mismatched sample lengths");
  }
  std::vector<double> lx, ly;
  PowerFit fit;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (ts[i] < t_lo || ts[i] > t_hi) continue;
    if (!(ts[i] > 0.0) || !(ys[i] > 0.0)) continue;
    if (!std::isfinite(ts[i]) || !std::isfinite(ys[i])) continue;
    lx.push_back(std::log(ts[i]));
    ly.push_back(std::log(ys[i]));
    if (fit.n_points == 0 || ts[i] < fit.t_min) fit.t_min = ts[i];
    if (fit.n_points == 0 || ts[i] > fit.t_max) fit.t_max = ts[i];
    ++fit.n_points;
  }
  if (fit.n_points < 2) {
    fit.degenerate = true;
    return fit;
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= lx.size();
  my /= lx.size();
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) {
    fit.degenerate = true;
    return fit;
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
    ss += r * r;
  }
  fit.residual_rms = std::sqrt(ss / lx.size());
  fit.degenerate = false;
  return fit;
}

}  // namespace gdnls
