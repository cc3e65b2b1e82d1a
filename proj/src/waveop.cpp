#include "gdnls/waveop.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gdnls/errors.hpp"
#include "gdnls/fft.hpp"
#include "gdnls/spectral.hpp"
#include "gdnls/strfmt.hpp"

namespace gdnls {

void AsymptoticState::validate() const {
  params.validate();
  if (params.sigma <= 2.0) {
    throw ValidationError(
        strfmt("wave operator requires sigma > 2, got %g (the source decay "
               "t^{-sigma} must be integrable twice)",
               params.sigma));
  }
  if (!u_plus.grid()) {
    throw ValidationError("asymptotic state has no grid");
  }
  if (!(T0 > 0.0) || !std::isfinite(T0)) {
    throw ValidationError(strfmt("waveop.T0 must be positive, got %g", T0));
  }
  if (TN != 0.0 && !(TN > T0)) {
    throw ValidationError(
        strfmt("waveop.TN must exceed T0 (or be 0 for automatic selection), "
               "got TN=%g, T0=%g",
               TN, T0));
  }
  if (!(tail_tol > 0.0)) {
    throw ValidationError("waveop.tail_tol must be positive");
  }
}

ProfileBundle::ProfileBundle(AsymptoticState state) : state_(std::move(state)) {
  state_.validate();
}

const ProfileBundle::Snapshot& ProfileBundle::at(double t) const {
  if (memo_.valid && memo_.t == t) return memo_;
  const ModelParams& p = state_.params;
  const double sigma = p.sigma;
  const GridPtr grid = state_.u_plus.grid();
  const std::size_t n = state_.u_plus.size();

  const Field R = gdnls::free_propagate(state_.u_plus, t);
  const Field dR = spectral_derivative(R);

  // Shared gauge phase integral (and its |R|^2 variant when requested).
  Field pow2s(grid);
  for (std::size_t j = 0; j < n; ++j) {
    pow2s[j] = std::pow(std::norm(R[j]), sigma);
  }
  const Field prim = cumulative_primitive(pow2s, &diag_, p.boundary_tolerance);
  Field prim_m = prim;
  if (state_.literal_m_exponent) {
    Field pow2(grid);
    for (std::size_t j = 0; j < n; ++j) pow2[j] = std::norm(R[j]);
    prim_m = cumulative_primitive(pow2, &diag_, p.boundary_tolerance);
  }

  Field h(grid), k(grid), m(grid);
  const complex i_unit(0.0, 1.0);
  for (std::size_t j = 0; j < n; ++j) {
    const double th = 0.5 * prim[j].real();
    const complex ph(std::cos(th), std::sin(th));
    h[j] = ph * R[j];
    k[j] = ph * dR[j];
    const complex v = i_unit * pow2s[j].real() * dR[j];
    const double thm = 0.5 * prim_m[j].real();
    m[j] = complex(std::cos(thm), std::sin(thm)) * v;
  }
  const Field dm = spectral_derivative(m);
  Field nn(grid);
  for (std::size_t j = 0; j < n; ++j) {
    const double h2 = std::norm(h[j]);
    const double a = std::pow(h2, sigma);
    const double b = (h2 < 1e-300) ? 0.0 : std::pow(h2, sigma - 1.0);
    nn[j] = dm[j] -
            0.5 * i_unit * (sigma + 1.0) * a * m[j] -
            0.5 * i_unit * sigma * b * h[j] * h[j] * std::conj(m[j]);
  }

  memo_.t = t;
  memo_.valid = true;
  memo_.w = StatePair{std::move(h), std::move(k)};
  memo_.h_src = StatePair{-1.0 * m, -1.0 * nn};
  return memo_;
}

Field ProfileBundle::free_profile(double t) const {
  return gdnls::free_propagate(state_.u_plus, t);
}

StatePair ProfileBundle::gauged_profiles(double t) const { return at(t).w; }

StatePair ProfileBundle::source_terms(double t) const { return at(t).h_src; }

Field free_profile(const AsymptoticState& state, double t) {
  ProfileBundle b(state);
  return b.free_profile(t);
}

StatePair gauged_profiles(const AsymptoticState& state, double t) {
  ProfileBundle b(state);
  return b.gauged_profiles(t);
}

StatePair source_terms(const AsymptoticState& state, double t) {
  ProfileBundle b(state);
  return b.source_terms(t);
}

namespace {

// Resolve the final-value horizon: explicit TN wins; otherwise the smallest
// dyadic multiple of 2*T0 whose source has H1 size below tail_tol, bumped to
// at least 16*T0 so the decay fit can span a factor of 8.
double resolve_horizon(const ProfileBundle& bundle) {
  const AsymptoticState& st = bundle.state();
  if (st.TN > 0.0) return st.TN;
  double tn = 2.0 * st.T0;
  for (int j = 0; j < 17; ++j) {
    if (pair_h1(bundle.source_terms(tn)) < st.tail_tol) {
      return std::max(tn, 16.0 * st.T0);
    }
    tn *= 2.0;
  }
  throw ValidationError(
      strfmt("source tail stays above tail_tol=%g out to TN=%g; the "
             "asymptotic state decays too slowly",
             st.tail_tol, tn));
}

}  // namespace

PairTrajectory solve_final_value(const ProfileBundle& bundle,
                                 const StepperConfig& cfg,
                                 DiagnosticLog* diag) {
  const AsymptoticState& st = bundle.state();
  const double tn = resolve_horizon(bundle);
  StepperConfig back = cfg;
  back.t_start = tn;
  back.t_end = st.T0;

  const GridPtr grid = st.u_plus.grid();
  StatePair zero{Field(grid), Field(grid)};
  PairSource forcing = [&bundle](double t) { return bundle.source_terms(t); };
  PairSource background = [&bundle](double t) {
    return bundle.gauged_profiles(t);
  };
  PairTrajectory traj =
      evolve_gauged(zero, back, st.params, forcing, background, diag);
  const double h1_final = pair_h1(traj.final_state());
  if (h1_final > 1.0) {
    throw ValidationError(
        strfmt("final-value correction grew to H1 size %.3e > 1 at T0=%g; "
               "outside the contraction regime",
               h1_final, st.T0));
  }
  return traj;
}

PicardResult picard_oracle(const ProfileBundle& bundle, int iterations,
                           int n_intervals) {
  if (iterations < 1) {
    throw ValidationError("picard_oracle: iterations must be >= 1");
  }
  if (n_intervals < 2 || n_intervals > 8192) {
    throw ValidationError("picard_oracle: n_intervals must be in [2, 8192]");
  }
  if (n_intervals % 2 != 0) ++n_intervals;
  const AsymptoticState& st = bundle.state();
  const double tn = resolve_horizon(bundle);
  const double t0 = st.T0;
  const int M = n_intervals;
  const double tau = (tn - t0) / M;
  const GridPtr grid = st.u_plus.grid();
  const std::size_t n = grid->n();
  const auto& ks = grid->wavenumbers();

  PicardResult out;
  out.node_times.resize(M + 1);
  for (int j = 0; j <= M; ++j) out.node_times[j] = t0 + j * tau;

  // Profiles at the nodes, evaluated once.
  std::vector<StatePair> W, H;
  W.reserve(M + 1);
  H.reserve(M + 1);
  for (int j = 0; j <= M; ++j) {
    W.push_back(bundle.gauged_profiles(out.node_times[j]));
    H.push_back(bundle.source_terms(out.node_times[j]));
  }

  auto pullback = [&](std::vector<complex>& spec, double t) {
    // exp(-i t d_xx): multiply mode k by exp(+i k^2 t).
    for (std::size_t i = 0; i < n; ++i) {
      const double ph = ks[i] * ks[i] * t;
      spec[i] *= complex(std::cos(ph), std::sin(ph));
    }
  };
  auto pushforward = [&](std::vector<complex>& spec, double t) {
    for (std::size_t i = 0; i < n; ++i) {
      const double ph = -ks[i] * ks[i] * t;
      spec[i] *= complex(std::cos(ph), std::sin(ph));
    }
  };

  std::vector<StatePair> eta(M + 1, StatePair{Field(grid), Field(grid)});
  std::vector<complex> p_raw(n), q_raw(n), pb(n), qb(n), phi_sum(n), psi_sum(n);
  std::vector<complex> spec(n);
  const double inv_n = 1.0 / static_cast<double>(n);

  for (int it = 0; it < iterations; ++it) {
    // Interaction-picture integrand at all nodes: g_j = exp(-i s_j d_xx) G_j.
    std::vector<std::vector<complex>> g_phi(M + 1), g_psi(M + 1);
    for (int j = 0; j <= M; ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        phi_sum[i] = eta[j].phi[i] + W[j].phi[i];
        psi_sum[i] = eta[j].psi[i] + W[j].psi[i];
      }
      detail::eval_F_raw(phi_sum, psi_sum, st.params.sigma, grid->dx(), p_raw,
                         q_raw);
      detail::eval_F_raw(W[j].phi.values(), W[j].psi.values(), st.params.sigma,
                         grid->dx(), pb, qb);
      for (std::size_t i = 0; i < n; ++i) {
        p_raw[i] += -pb[i] + H[j].phi[i];
        q_raw[i] += -qb[i] + H[j].psi[i];
      }
      fft::forward(p_raw, g_phi[j]);
      fft::forward(q_raw, g_psi[j]);
      for (std::size_t i = 0; i < n; ++i) {
        g_phi[j][i] *= inv_n;
        g_psi[j][i] *= inv_n;
      }
      pullback(g_phi[j], out.node_times[j]);
      pullback(g_psi[j], out.node_times[j]);
    }

    // Right-anchored cumulative Simpson: I_j = int_{s_j}^{TN} g ds.
    std::vector<std::vector<complex>> I_phi(M + 1), I_psi(M + 1);
    I_phi[M].assign(n, 0.0);
    I_psi[M].assign(n, 0.0);
    auto integrate_component = [&](std::vector<std::vector<complex>>& I,
                                   std::vector<std::vector<complex>>& g) {
      for (int j = M - 2; j >= 0; j -= 2) {
        I[j].resize(n);
        for (std::size_t i = 0; i < n; ++i) {
          I[j][i] = I[j + 2][i] + (tau / 3.0) * (g[j][i] + 4.0 * g[j + 1][i] +
                                                 g[j + 2][i]);
        }
      }
      for (int j = M - 1; j >= 1; j -= 2) {
        I[j].resize(n);
        if (j + 2 <= M) {
          for (std::size_t i = 0; i < n; ++i) {
            I[j][i] = I[j + 1][i] + (tau / 12.0) * (5.0 * g[j][i] +
                                                    8.0 * g[j + 1][i] -
                                                    g[j + 2][i]);
          }
        } else {
          for (std::size_t i = 0; i < n; ++i) {
            I[j][i] = I[j + 1][i] + (tau / 12.0) * (-g[j - 1][i] +
                                                    8.0 * g[j][i] +
                                                    5.0 * g[j + 1][i]);
          }
        }
      }
    };
    integrate_component(I_phi, g_phi);
    integrate_component(I_psi, g_psi);

    // eta_j = i exp(i s_j d_xx) I_j, back in physical space.
    double gap = 0.0;
    const complex i_unit(0.0, 1.0);
    for (int j = 0; j <= M; ++j) {
      StatePair next{Field(grid), Field(grid)};
      spec = I_phi[j];
      pushforward(spec, out.node_times[j]);
      fft::backward(spec, next.phi.values());
      spec = I_psi[j];
      pushforward(spec, out.node_times[j]);
      fft::backward(spec, next.psi.values());
      for (std::size_t i = 0; i < n; ++i) {
        next.phi[i] *= i_unit;
        next.psi[i] *= i_unit;
      }
      gap = std::max(gap, pair_h1(next - eta[j]));
      eta[j] = std::move(next);
    }
    out.iterate_gaps.push_back(gap);
  }
  out.eta_T0 = eta[0];
  return out;
}

WaveOpReport reconstruct_and_extend(const AsymptoticState& state,
                                    const StepperConfig& cfg) {
  const ModelParams& p = state.params;
  WaveOpReport rep;
  rep.T0 = state.T0;
  {
    ProfileBundle probe(state);
    rep.TN = resolve_horizon(probe);
  }
  AsymptoticState resolved = state;
  resolved.TN = rep.TN;
  ProfileBundle bundle(resolved);

  DiagnosticLog diag;
  const PairTrajectory traj = solve_final_value(bundle, cfg, &diag);

  // The trajectory runs backward; walk it in increasing time order.
  std::vector<std::size_t> order(traj.times.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return traj.times[a] < traj.times[b];
  });

  for (std::size_t idx : order) {
    const double t = traj.times[idx];
    const StatePair& eta = traj.states[idx];
    const StatePair w = bundle.gauged_profiles(t);
    const StatePair h_src = bundle.source_terms(t);
    const Field r = bundle.free_profile(t);
    const Field phi = eta.phi + w.phi;
    const Field u = gauge_inverse(phi, p, &diag);
    rep.times.push_back(t);
    rep.eta_l2.push_back(pair_l2(eta));
    rep.eta_h1.push_back(pair_h1(eta));
    rep.eta_linf.push_back(pair_linf(eta));
    rep.boundary_series.push_back(traj.boundary_series[idx]);
    rep.u_minus_R_h1.push_back(norm_h1(u - r));
    rep.source_h1.push_back(pair_h1(h_src));
    rep.relation_series.push_back(relation_residual(eta, &w.phi, p));
    rep.sup_dx_u =
        std::max(rep.sup_dx_u, norm_linf(spectral_derivative(u)));
  }

  const double window_hi = rep.TN / 2.0;
  rep.rate_fit = fit_loglog(rep.times, rep.u_minus_R_h1, rep.T0, window_hi);
  rep.source_fit = fit_loglog(rep.times, rep.source_h1, rep.T0, window_hi);

  rep.eta_weighted_max = 0.0;
  rep.eta_weighted_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < rep.times.size(); ++i) {
    const double t = rep.times[i];
    if (t < rep.T0 || t > window_hi) continue;
    const double w = std::pow(t, p.sigma - 1.0) * rep.eta_h1[i];
    rep.eta_weighted_max = std::max(rep.eta_weighted_max, w);
    rep.eta_weighted_min = std::min(rep.eta_weighted_min, w);
  }
  if (!std::isfinite(rep.eta_weighted_min)) rep.eta_weighted_min = 0.0;

  if (!rep.source_fit.degenerate && rep.source_fit.slope < -1.0) {
    const double c0 = std::exp(rep.source_fit.intercept);
    rep.truncation_estimate = c0 * std::pow(rep.TN, rep.source_fit.slope + 1.0) /
                              (-rep.source_fit.slope - 1.0);
  }

  // Extend the reconstructed solution backward from T0 to 0 on the
  // ungauged flow.
  const StatePair& eta_t0 = traj.final_state();
  rep.eta_t0 = eta_t0;
  const StatePair w_t0 = bundle.gauged_profiles(rep.T0);
  const Field u_t0 = gauge_inverse(eta_t0.phi + w_t0.phi, p, &diag);
  StepperConfig ext = cfg;
  ext.t_start = rep.T0;
  ext.t_end = 0.0;
  ext.record_every = 1 << 24;
  const FieldTrajectory back = evolve_gdnls(u_t0, ext, p, &diag);
  rep.u0 = back.final_state();
  rep.global_flag = global_predicate(rep.u0, p);

  for (const auto& msg : bundle.diag().messages) diag.warn(msg);
  rep.warnings = diag.messages;
  rep.tainted = diag.boundary_flagged || bundle.diag().boundary_flagged;
  return rep;
}

}  // namespace gdnls
