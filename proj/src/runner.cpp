#include "gdnls/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <thread>
#include <vector>

#include "json.hpp"

#include "gdnls/errors.hpp"
#include "gdnls/fit.hpp"
#include "gdnls/gauge.hpp"
#include "gdnls/scatter.hpp"
#include "gdnls/snapshot.hpp"
#include "gdnls/spectral.hpp"
#include "gdnls/stepper.hpp"
#include "gdnls/strfmt.hpp"
#include "gdnls/waveop.hpp"

namespace gdnls {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr const char* kOutputRootEnv = "GDNLS_OUTPUT_ROOT";
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

fs::path resolve_output_dir(const RunConfig& cfg) {
  fs::path dir(cfg.outputs.directory);
  if (dir.is_relative()) {
    if (const char* root = std::getenv(kOutputRootEnv)) {
      if (root[0] != '\0') dir = fs::path(root) / dir;
    }
  }
  return dir;
}

std::string num(double v) { return strfmt("%.17g", v); }

// Canonical CSV time series shared by every command that produces one.
struct SeriesRow {
  double t = kNan;
  double mass = kNan;
  double energy = kNan;
  double momentum = kNan;
  double l2 = kNan;
  double h1 = kNan;
  double linf = kNan;
  double boundary_mass = kNan;
  double relation_residual = kNan;
};

void write_timeseries(const fs::path& path, const std::vector<SeriesRow>& rows) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open for writing: " + path.string());
  out << "t,mass,energy,momentum,l2,h1,linf,boundary_mass,relation_residual\n";
  for (const SeriesRow& r : rows) {
    out << num(r.t) << ',' << num(r.mass) << ',' << num(r.energy) << ','
        << num(r.momentum) << ',' << num(r.l2) << ',' << num(r.h1) << ','
        << num(r.linf) << ',' << num(r.boundary_mass) << ','
        << num(r.relation_residual) << '\n';
  }
  if (!out) throw ValidationError("write failed: " + path.string());
}

void write_table(const fs::path& path, const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open for writing: " + path.string());
  for (std::size_t i = 0; i < header.size(); ++i) {
    out << (i ? "," : "") << header[i];
  }
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << num(row[i]);
    }
    out << '\n';
  }
  if (!out) throw ValidationError("write failed: " + path.string());
}

json fit_json(const PowerFit& f) {
  return json{{"slope", f.slope},
              {"intercept", f.intercept},
              {"residual_rms", f.residual_rms},
              {"n_points", f.n_points},
              {"window", json{f.t_min, f.t_max}},
              {"degenerate", f.degenerate}};
}

json predicate_json(const GlobalPredicate& g) {
  return json{{"holds", g.holds},
              {"lhs", g.lhs},
              {"threshold", g.threshold},
              {"margin", g.margin}};
}

double rel_drift(double now, double ref) {
  return std::abs(now - ref) / std::max(std::abs(ref), 1e-12);
}

// Drift normalized by the invariant's constituent scale rather than its
// value: energy and momentum can vanish identically (the solitary wave has
// E = 0 at sigma = omega = 1; real data carries P = 0), and dividing by the
// value would turn quadrature noise into spurious drift.
double scaled_drift(double now, double ref, double scale) {
  return std::abs(now - ref) / std::max({std::abs(ref), scale, 1e-12});
}

// Shared mutable context for one command execution.
struct RunContext {
  const RunConfig& cfg;
  fs::path dir;
  json& report;
  RunStatus status = RunStatus::ok;
};

void merge_warnings(json& report, const std::vector<std::string>& warnings,
                    bool tainted) {
  for (const auto& w : warnings) report["warnings"].push_back(w);
  if (tainted) report["tainted"] = true;
}

// ---------------------------------------------------------------------------
// simulate

void run_simulate(RunContext& ctx) {
  const RunConfig& cfg = ctx.cfg;
  DiagnosticLog diag;
  const Field u0 = build_initial_condition(cfg);
  const FieldTrajectory traj = evolve_gdnls(u0, cfg.stepper, cfg.model, &diag);

  std::vector<SeriesRow> rows(traj.times.size());
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    SeriesRow& r = rows[i];
    r.t = traj.times[i];
    r.mass = traj.mass_series[i];
    r.energy = traj.energy_series[i];
    r.momentum = traj.momentum_series[i];
    r.l2 = traj.norm_series[i].l2;
    r.h1 = traj.norm_series[i].h1;
    r.linf = traj.norm_series[i].linf;
    r.boundary_mass = traj.boundary_series[i];
  }
  if (cfg.outputs.csv) write_timeseries(ctx.dir / "timeseries.csv", rows);
  if (cfg.outputs.snapshots) {
    fs::create_directories(ctx.dir / "snapshots");
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
      const std::string name = strfmt("snap_%06zu.bin", i);
      write_snapshot((ctx.dir / "snapshots" / name).string(), traj.states[i],
                     traj.times[i], cfg.model.sigma);
    }
  }

  // Constituent scales at t = 0: the gradient term bounds the energy pieces,
  // and ||u|| ||u_x|| bounds the momentum by Cauchy-Schwarz.
  const double l2_0 = traj.norm_series[0].l2;
  const double grad0 =
      std::max(0.0, traj.norm_series[0].h1 * traj.norm_series[0].h1 -
                        l2_0 * l2_0);
  const double energy_scale = 0.5 * grad0;
  const double momentum_scale = l2_0 * std::sqrt(grad0);

  double mass_drift = 0.0, energy_drift = 0.0, momentum_drift = 0.0;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    mass_drift = std::max(
        mass_drift, rel_drift(traj.mass_series[i], traj.mass_series[0]));
    energy_drift = std::max(
        energy_drift, scaled_drift(traj.energy_series[i],
                                   traj.energy_series[0], energy_scale));
    momentum_drift = std::max(
        momentum_drift, scaled_drift(traj.momentum_series[i],
                                     traj.momentum_series[0], momentum_scale));
  }

  json& rep = ctx.report;
  rep["series"] = {{"t", traj.times},
                   {"mass", traj.mass_series},
                   {"energy", traj.energy_series},
                   {"momentum", traj.momentum_series},
                   {"boundary_mass", traj.boundary_series},
                   {"l4winf", traj.l4winf_series}};
  rep["drift"] = {{"mass", mass_drift},
                  {"energy", energy_drift},
                  {"momentum", momentum_drift}};
  rep["final"] = {{"time", traj.final_time()},
                  {"l2", traj.norm_series.back().l2},
                  {"h1", traj.norm_series.back().h1},
                  {"linf", traj.norm_series.back().linf}};
  const bool conserved =
      mass_drift < 1e-6 && energy_drift < 1e-6 && momentum_drift < 1e-6;
  rep["verdicts"] = {{"conservation", conserved}};
  rep["metrics"] = {{"mass_drift", mass_drift},
                    {"energy_drift", energy_drift},
                    {"momentum_drift", momentum_drift},
                    {"final_h1", traj.norm_series.back().h1}};
  merge_warnings(rep, diag.messages, diag.boundary_flagged);
}

// ---------------------------------------------------------------------------
// functionals

void run_functionals(RunContext& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const ModelParams& p = cfg.model;
  const Field u0 = build_initial_condition(cfg);

  const double m = mass(u0);
  const double e = energy(u0, p.sigma);
  const double mom = momentum(u0);
  const double s = action_S(u0, p);
  const double k = nehari_K(u0, p);
  const NormTriple norms_u = norms(u0);
  const GlobalPredicate g = global_predicate(u0, p);
  const double mu = (p.c == 0.0) ? mu_omega0(p.sigma, p.omega) : kNan;

  if (cfg.outputs.csv) {
    SeriesRow r;
    r.t = 0.0;
    r.mass = m;
    r.energy = e;
    r.momentum = mom;
    r.l2 = norms_u.l2;
    r.h1 = norms_u.h1;
    r.linf = norms_u.linf;
    write_timeseries(ctx.dir / "timeseries.csv", {r});
  }
  if (cfg.outputs.snapshots) {
    write_snapshot((ctx.dir / "u0.bin").string(), u0, 0.0, p.sigma);
  }

  json& rep = ctx.report;
  rep["functionals"] = {{"mass", m},       {"energy", e}, {"momentum", mom},
                        {"action", s},     {"nehari", k}, {"mu", mu},
                        {"l2", norms_u.l2}, {"h1", norms_u.h1},
                        {"linf", norms_u.linf}};
  rep["global"] = predicate_json(g);
  rep["verdicts"] = {{"global_predicate", g.holds}};
  rep["metrics"] = {{"mass", m},     {"energy", e},      {"momentum", mom},
                    {"action", s},   {"nehari", k},      {"mu", mu},
                    {"margin", g.margin}};
}

// ---------------------------------------------------------------------------
// waveop

void run_waveop(RunContext& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const ModelParams& p = cfg.model;

  AsymptoticState state;
  state.u_plus = build_initial_condition(cfg);
  state.params = p;
  state.T0 = cfg.waveop.T0;
  state.TN = cfg.waveop.TN;
  state.tail_tol = cfg.waveop.tail_tol;
  state.literal_m_exponent = cfg.waveop.literal_m_exponent;
  state.validate();

  const WaveOpReport wr = reconstruct_and_extend(state, cfg.stepper);

  if (cfg.outputs.csv) {
    std::vector<SeriesRow> rows(wr.times.size());
    for (std::size_t i = 0; i < wr.times.size(); ++i) {
      SeriesRow& r = rows[i];
      r.t = wr.times[i];
      r.l2 = wr.eta_l2[i];
      r.h1 = wr.eta_h1[i];
      r.linf = wr.eta_linf[i];
      r.boundary_mass = wr.boundary_series[i];
      r.relation_residual = wr.relation_series[i];
    }
    write_timeseries(ctx.dir / "timeseries.csv", rows);

    std::vector<std::vector<double>> rate(wr.times.size());
    for (std::size_t i = 0; i < wr.times.size(); ++i) {
      const double weighted = std::pow(wr.times[i], p.sigma - 1.0) * wr.eta_h1[i];
      rate[i] = {wr.times[i], wr.u_minus_R_h1[i], wr.source_h1[i],
                 wr.eta_h1[i], weighted};
    }
    write_table(ctx.dir / "waveop_rate.csv",
                {"t", "u_minus_R_h1", "source_h1", "eta_h1", "eta_h1_weighted"},
                rate);
  }
  if (cfg.outputs.snapshots) {
    write_snapshot((ctx.dir / "u0.bin").string(), wr.u0, 0.0, p.sigma);
  }

  double relation_max = 0.0;
  for (double r : wr.relation_series) relation_max = std::max(relation_max, r);
  const double weighted_ratio =
      wr.eta_weighted_min > 0.0 ? wr.eta_weighted_max / wr.eta_weighted_min
                                : kNan;

  json& rep = ctx.report;
  rep["T0"] = wr.T0;
  rep["TN"] = wr.TN;
  rep["rate_fit"] = fit_json(wr.rate_fit);
  rep["source_fit"] = fit_json(wr.source_fit);
  rep["eta_weighted"] = {{"max", wr.eta_weighted_max},
                         {"min", wr.eta_weighted_min},
                         {"ratio", weighted_ratio}};
  rep["truncation_estimate"] = wr.truncation_estimate;
  rep["sup_dx_u"] = wr.sup_dx_u;
  rep["relation_max"] = relation_max;
  rep["global"] = predicate_json(wr.global_flag);

  // Rate verdicts test the direction of the decay laws at the configured
  // sigma; the acceptance harness pins its own sharper tolerances.
  const double rate_bound = 1.0 - p.sigma + 0.5;
  const bool rate_ok = !wr.rate_fit.degenerate && wr.rate_fit.slope <= rate_bound;
  const bool source_ok =
      !wr.source_fit.degenerate && wr.source_fit.slope <= -p.sigma + 0.5;
  rep["verdicts"] = {{"rate_slope", rate_ok},
                     {"source_slope", source_ok},
                     {"global_predicate", wr.global_flag.holds}};
  rep["metrics"] = {{"rate_slope", wr.rate_fit.slope},
                    {"source_slope", wr.source_fit.slope},
                    {"weighted_ratio", weighted_ratio},
                    {"relation_max", relation_max},
                    {"margin", wr.global_flag.margin}};

  if (cfg.waveop.picard_iterations > 0) {
    AsymptoticState resolved = state;
    resolved.TN = wr.TN;
    ProfileBundle bundle(resolved);
    const PicardResult pic = picard_oracle(bundle, cfg.waveop.picard_iterations,
                                           cfg.waveop.picard_intervals);
    const double solver_gap = pair_h1(wr.eta_t0 - pic.eta_T0);
    rep["picard"] = {{"iterations", cfg.waveop.picard_iterations},
                     {"intervals", cfg.waveop.picard_intervals},
                     {"iterate_gaps", pic.iterate_gaps},
                     {"solver_gap", solver_gap}};
    rep["metrics"]["picard_gap"] = solver_gap;
  }

  merge_warnings(rep, wr.warnings, wr.tainted);
}

// ---------------------------------------------------------------------------
// scatter

void run_scatter(RunContext& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const Field u0 = build_initial_condition(cfg);
  const PhysicalScatterReport phys =
      scatter_from_physical(u0, cfg.model, cfg.stepper, cfg.scatter);

  if (cfg.outputs.csv) {
    std::vector<SeriesRow> rows;
    for (const ScatterReport* r : {&phys.plus, &phys.minus}) {
      for (std::size_t i = 0; i < r->sample_times.size(); ++i) {
        SeriesRow row;
        row.t = r->sample_times[i];
        row.l2 = r->pullback_l2[i];
        row.h1 = r->pullback_h1[i];
        row.linf = r->pullback_linf[i];
        rows.push_back(row);
      }
    }
    write_timeseries(ctx.dir / "timeseries.csv", rows);

    std::vector<std::vector<double>> gaps;
    for (const ScatterReport* r : {&phys.plus, &phys.minus}) {
      const double dir = r->sample_times.empty()
                             ? 0.0
                             : (r->sample_times.back() < 0 ? -1.0 : 1.0);
      for (std::size_t i = 1; i < r->sample_times.size(); ++i) {
        gaps.push_back({dir, r->sample_times[i], r->cauchy_gaps[i - 1]});
      }
    }
    write_table(ctx.dir / "scatter_gaps.csv", {"direction", "t", "gap"}, gaps);
  }
  if (cfg.outputs.snapshots && phys.plus.converged) {
    const double t_last = phys.plus.sample_times.back();
    write_snapshot((ctx.dir / "extracted_plus_phi.bin").string(),
                   phys.plus.extracted.phi, t_last, cfg.model.sigma);
    write_snapshot((ctx.dir / "extracted_plus_psi.bin").string(),
                   phys.plus.extracted.psi, t_last, cfg.model.sigma);
  }

  auto side_json = [](const ScatterReport& r) {
    return json{{"sample_times", r.sample_times},
                {"cauchy_gaps", r.cauchy_gaps},
                {"stability_gap", r.stability_gap},
                {"verdict", r.verdict},
                {"converged", r.converged},
                {"exploratory", r.exploratory}};
  };
  json& rep = ctx.report;
  rep["plus"] = side_json(phys.plus);
  rep["minus"] = side_json(phys.minus);
  rep["direct"] = {{"times", phys.direct_times},
                   {"gaps", phys.direct_gaps},
                   {"improves", phys.direct_improves}};
  rep["verdicts"] = {{"plus_converged", phys.plus.converged},
                     {"minus_converged", phys.minus.converged},
                     {"direct_improves", phys.direct_improves}};
  rep["metrics"] = {{"plus_gap", phys.plus.stability_gap},
                    {"minus_gap", phys.minus.stability_gap},
                    {"converged", (phys.plus.converged && phys.minus.converged)
                                      ? 1.0
                                      : 0.0}};

  const bool tainted = phys.plus.tainted || phys.minus.tainted;
  merge_warnings(rep, phys.plus.warnings, false);
  merge_warnings(rep, phys.minus.warnings, tainted);
  if (tainted) {
    ctx.status = RunStatus::tainted;
  } else if (!(phys.plus.converged && phys.minus.converged)) {
    ctx.status = RunStatus::no_convergence;
  }
}

// ---------------------------------------------------------------------------
// convergence

void run_convergence(RunContext& ctx) {
  const RunConfig& cfg = ctx.cfg;
  ConvergenceProblem problem = ConvergenceProblem::gdnls_sigma1;
  if (cfg.convergence.problem == "linear_only") {
    problem = ConvergenceProblem::linear_only;
  } else if (cfg.convergence.problem == "gauged_sigma3") {
    problem = ConvergenceProblem::gauged_sigma3;
  }
  const ConvergenceResult r =
      self_convergence_order(problem, cfg.convergence.dt0);

  if (cfg.outputs.csv) {
    write_table(ctx.dir / "convergence.csv",
                {"dt_coarse", "err_coarse", "err_fine", "order"},
                {{cfg.convergence.dt0, r.err_coarse, r.err_fine, r.order}});
  }
  json& rep = ctx.report;
  rep["problem"] = cfg.convergence.problem;
  rep["dt0"] = cfg.convergence.dt0;
  rep["order"] = r.order;
  rep["exact"] = r.exact;
  rep["err_coarse"] = r.err_coarse;
  rep["err_fine"] = r.err_fine;
  const bool order_ok = r.exact || (r.order >= 3.5 && r.order <= 4.5);
  rep["verdicts"] = {{"fourth_order", order_ok}};
  rep["metrics"] = {{"order", r.order},
                    {"err_coarse", r.err_coarse},
                    {"err_fine", r.err_fine}};
}

// ---------------------------------------------------------------------------
// sweep

struct SweepPoint {
  std::vector<double> values;  // one per swept key, key-sorted order
};

void apply_override(RunConfig& cfg, const std::string& key, double value) {
  if (key == "sigma") {
    cfg.model.sigma = value;
  } else if (key == "omega") {
    cfg.model.omega = value;
    cfg.initial_condition.omega = value;
  } else if (key == "amplitude") {
    cfg.initial_condition.amplitude = value;
  } else if (key == "width") {
    cfg.initial_condition.width = value;
  } else if (key == "phase_velocity") {
    cfg.initial_condition.phase_velocity = value;
  } else if (key == "n_points") {
    cfg.grid.n_points = static_cast<int>(value);
  } else if (key == "domain_length") {
    cfg.grid.domain_length = value;
  } else if (key == "dt") {
    cfg.stepper.dt = value;
  } else {
    throw ValidationError("unsupported sweep parameter '" + key + "'");
  }
}

void run_sweep(RunContext& ctx) {
  const RunConfig& cfg = ctx.cfg;
  std::vector<std::string> keys;
  for (const auto& kv : cfg.sweep.parameters) keys.push_back(kv.first);

  // Cartesian product in key-sorted, value-listed order.
  std::vector<SweepPoint> points;
  if (!keys.empty()) {
    points.push_back({});
    for (const auto& key : keys) {
      const auto& values = cfg.sweep.parameters.at(key);
      std::vector<SweepPoint> next;
      next.reserve(points.size() * values.size());
      for (const auto& base : points) {
        for (double v : values) {
          SweepPoint p = base;
          p.values.push_back(v);
          next.push_back(std::move(p));
        }
      }
      points = std::move(next);
    }
  }

  struct RowResult {
    RunOutcome outcome;
    json metrics;
    bool failed = false;
    std::string error;
  };
  std::vector<RowResult> results(points.size());

  auto run_point = [&](std::size_t idx) {
    RunConfig sub = cfg;
    sub.command = cfg.sweep.command;
    sub.sweep = SweepConfig{};
    sub.outputs.directory =
        (ctx.dir / strfmt("point_%04zu", idx)).string();
    RowResult& row = results[idx];
    try {
      for (std::size_t k = 0; k < keys.size(); ++k) {
        apply_override(sub, keys[k], points[idx].values[k]);
      }
      row.outcome = run(sub);
      if (!row.outcome.report_path.empty()) {
        std::ifstream in(row.outcome.report_path);
        if (in) {
          json sub_report = json::parse(in, nullptr, false);
          if (!sub_report.is_discarded() && sub_report.contains("metrics")) {
            row.metrics = sub_report["metrics"];
          }
        }
      }
      row.failed = row.outcome.status != RunStatus::ok;
      row.error = row.outcome.message;
    } catch (const std::exception& e) {
      row.failed = true;
      row.error = e.what();
      row.outcome.status = RunStatus::validation_failure;
    }
  };

  const std::size_t workers =
      std::min(static_cast<std::size_t>(cfg.sweep.max_concurrency),
               std::max<std::size_t>(points.size(), 1));
  std::atomic<std::size_t> cursor{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t idx = cursor.fetch_add(1);
        if (idx >= points.size()) return;
        run_point(idx);
      }
    });
  }
  for (auto& th : pool) th.join();

  // Deterministic column set: swept keys, then the sorted union of metric
  // names seen across rows.
  std::set<std::string> metric_names;
  for (const auto& row : results) {
    for (auto it = row.metrics.begin(); it != row.metrics.end(); ++it) {
      if (it.value().is_number()) metric_names.insert(it.key());
    }
  }
  std::vector<std::string> header = keys;
  header.push_back("status");
  header.insert(header.end(), metric_names.begin(), metric_names.end());

  std::vector<std::vector<double>> table(points.size());
  json rows_json = json::array();
  for (std::size_t i = 0; i < points.size(); ++i) {
    std::vector<double>& row = table[i];
    row = points[i].values;
    row.push_back(static_cast<double>(results[i].outcome.status));
    json entry;
    for (std::size_t k = 0; k < keys.size(); ++k) {
      entry["parameters"][keys[k]] = points[i].values[k];
    }
    entry["status"] = static_cast<int>(results[i].outcome.status);
    entry["failed"] = results[i].failed;
    if (!results[i].error.empty()) entry["message"] = results[i].error;
    entry["metrics"] = results[i].metrics;
    for (const auto& name : metric_names) {
      double v = kNan;
      if (results[i].metrics.contains(name) &&
          results[i].metrics[name].is_number()) {
        v = results[i].metrics[name].get<double>();
      }
      row.push_back(v);
    }
    rows_json.push_back(std::move(entry));
  }
  if (cfg.outputs.csv) {
    write_table(ctx.dir / "sweep_table.csv", header, table);
  }
  ctx.report["rows"] = std::move(rows_json);
  std::size_t failed = 0;
  for (const auto& r : results) {
    if (r.failed) ++failed;
  }
  ctx.report["points_total"] = points.size();
  ctx.report["points_failed"] = failed;
}

}  // namespace

RunOutcome run(const RunConfig& cfg) {
  RunOutcome outcome;
  try {
    cfg.validate();
  } catch (const ValidationError& e) {
    outcome.status = RunStatus::validation_failure;
    outcome.message = e.what();
    return outcome;
  }

  fs::path dir;
  json report;
  try {
    dir = resolve_output_dir(cfg);
    fs::create_directories(dir);
    report["command"] = cfg.command;
    report["config"] = json::parse(echo_config(cfg));
    report["status"] = "ok";
    report["warnings"] = json::array();
    report["tainted"] = false;

    RunContext ctx{cfg, dir, report};
    if (cfg.command == "simulate") {
      run_simulate(ctx);
    } else if (cfg.command == "functionals") {
      run_functionals(ctx);
    } else if (cfg.command == "waveop") {
      run_waveop(ctx);
    } else if (cfg.command == "scatter") {
      run_scatter(ctx);
    } else if (cfg.command == "convergence") {
      run_convergence(ctx);
    } else if (cfg.command == "sweep") {
      run_sweep(ctx);
    } else {
      throw ValidationError("unknown command '" + cfg.command + "'");
    }

    outcome.status = ctx.status;
    // Boundary taint is the weaker condition; an explicit non-ok status from
    // the handler wins (scatter already folds taint in).
    if (outcome.status == RunStatus::ok && report["tainted"].get<bool>()) {
      outcome.status = RunStatus::tainted;
    }
  } catch (const BlowUpError& e) {
    outcome.status = RunStatus::blow_up;
    outcome.message = e.what();
    report["blow_up"] = {{"last_good_time", e.last_good_time},
                         {"message", e.what()}};
  } catch (const ValidationError& e) {
    outcome.status = RunStatus::validation_failure;
    outcome.message = e.what();
    report["error"] = e.what();
  }

  switch (outcome.status) {
    case RunStatus::ok:
      report["status"] = "ok";
      break;
    case RunStatus::validation_failure:
      report["status"] = "validation_failure";
      break;
    case RunStatus::blow_up:
      report["status"] = "blow_up";
      break;
    case RunStatus::tainted:
      report["status"] = "tainted";
      break;
    case RunStatus::no_convergence:
      report["status"] = "no_convergence";
      break;
  }

  if (cfg.outputs.json && !dir.empty()) {
    const fs::path path = dir / "report.json";
    std::ofstream out(path);
    if (out) {
      out << report.dump(2) << '\n';
      if (out) outcome.report_path = path.string();
    }
  }
  if (outcome.message.empty()) {
    outcome.message = cfg.command + ": " + report["status"].get<std::string>();
  }
  return outcome;
}

}  // namespace gdnls
