#include "gdnls/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "gdnls/errors.hpp"
#include "gdnls/snapshot.hpp"
#include "gdnls/strfmt.hpp"

namespace gdnls {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& path) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) {
      throw ValidationError("unknown config key '" + path + it.key() + "'");
    }
  }
}

double get_num(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) {
    throw ValidationError(std::string("config key '") + key +
                          "' must be a number");
  }
  return obj[key].get<double>();
}

int get_int(const json& obj, const char* key, int fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number_integer()) {
    throw ValidationError(std::string("config key '") + key +
                          "' must be an integer");
  }
  return obj[key].get<int>();
}

bool get_bool(const json& obj, const char* key, bool fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_boolean()) {
    throw ValidationError(std::string("config key '") + key +
                          "' must be a boolean");
  }
  return obj[key].get<bool>();
}

std::string get_str(const json& obj, const char* key,
                    const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_string()) {
    throw ValidationError(std::string("config key '") + key +
                          "' must be a string");
  }
  return obj[key].get<std::string>();
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) {
    throw ValidationError("config root must be a JSON object");
  }
  reject_unknown_keys(root,
                      {"command", "grid", "model", "stepper",
                       "initial_condition", "waveop", "scatter", "sweep",
                       "convergence", "outputs"},
                      "");

  RunConfig cfg;
  cfg.command = get_str(root, "command", cfg.command);

  if (root.contains("grid")) {
    const json& g = root["grid"];
    reject_unknown_keys(g, {"n_points", "domain_length"}, "grid.");
    cfg.grid.n_points = get_int(g, "n_points", cfg.grid.n_points);
    cfg.grid.domain_length =
        get_num(g, "domain_length", cfg.grid.domain_length);
  }
  if (root.contains("model")) {
    const json& m = root["model"];
    reject_unknown_keys(m, {"sigma", "omega", "c", "boundary_tolerance"},
                        "model.");
    cfg.model.sigma = get_num(m, "sigma", cfg.model.sigma);
    cfg.model.omega = get_num(m, "omega", cfg.model.omega);
    cfg.model.c = get_num(m, "c", cfg.model.c);
    cfg.model.boundary_tolerance =
        get_num(m, "boundary_tolerance", cfg.model.boundary_tolerance);
  }
  if (root.contains("stepper")) {
    const json& s = root["stepper"];
    reject_unknown_keys(s,
                        {"dt", "t_start", "t_end", "record_every",
                         "dealias_fraction", "max_linf_growth",
                         "disable_nonlinearity"},
                        "stepper.");
    cfg.stepper.dt = get_num(s, "dt", cfg.stepper.dt);
    cfg.stepper.t_start = get_num(s, "t_start", cfg.stepper.t_start);
    cfg.stepper.t_end = get_num(s, "t_end", cfg.stepper.t_end);
    cfg.stepper.record_every =
        get_int(s, "record_every", cfg.stepper.record_every);
    cfg.stepper.dealias_fraction =
        get_num(s, "dealias_fraction", cfg.stepper.dealias_fraction);
    cfg.stepper.max_linf_growth =
        get_num(s, "max_linf_growth", cfg.stepper.max_linf_growth);
    cfg.stepper.disable_nonlinearity =
        get_bool(s, "disable_nonlinearity", cfg.stepper.disable_nonlinearity);
  }
  if (root.contains("initial_condition")) {
    const json& ic = root["initial_condition"];
    reject_unknown_keys(
        ic, {"family", "amplitude", "width", "phase_velocity", "omega", "path"},
        "initial_condition.");
    cfg.initial_condition.family =
        get_str(ic, "family", cfg.initial_condition.family);
    cfg.initial_condition.amplitude =
        get_num(ic, "amplitude", cfg.initial_condition.amplitude);
    cfg.initial_condition.width =
        get_num(ic, "width", cfg.initial_condition.width);
    cfg.initial_condition.phase_velocity =
        get_num(ic, "phase_velocity", cfg.initial_condition.phase_velocity);
    cfg.initial_condition.omega =
        get_num(ic, "omega", cfg.initial_condition.omega);
    cfg.initial_condition.path = get_str(ic, "path", cfg.initial_condition.path);
  }
  if (root.contains("waveop")) {
    const json& w = root["waveop"];
    reject_unknown_keys(w,
                        {"T0", "TN", "tail_tol", "literal_m_exponent",
                         "picard_iterations", "picard_intervals"},
                        "waveop.");
    cfg.waveop.T0 = get_num(w, "T0", cfg.waveop.T0);
    cfg.waveop.TN = get_num(w, "TN", cfg.waveop.TN);
    cfg.waveop.tail_tol = get_num(w, "tail_tol", cfg.waveop.tail_tol);
    cfg.waveop.literal_m_exponent =
        get_bool(w, "literal_m_exponent", cfg.waveop.literal_m_exponent);
    cfg.waveop.picard_iterations =
        get_int(w, "picard_iterations", cfg.waveop.picard_iterations);
    cfg.waveop.picard_intervals =
        get_int(w, "picard_intervals", cfg.waveop.picard_intervals);
  }
  if (root.contains("scatter")) {
    const json& s = root["scatter"];
    reject_unknown_keys(s, {"horizon", "base_time", "gap_tol", "direction"},
                        "scatter.");
    cfg.scatter.horizon = get_num(s, "horizon", cfg.scatter.horizon);
    cfg.scatter.base_time = get_num(s, "base_time", cfg.scatter.base_time);
    cfg.scatter.gap_tol = get_num(s, "gap_tol", cfg.scatter.gap_tol);
    cfg.scatter.direction = get_int(s, "direction", cfg.scatter.direction);
  }
  if (root.contains("sweep")) {
    const json& s = root["sweep"];
    reject_unknown_keys(s, {"command", "parameters", "max_concurrency"},
                        "sweep.");
    cfg.sweep.command = get_str(s, "command", cfg.sweep.command);
    cfg.sweep.max_concurrency =
        get_int(s, "max_concurrency", cfg.sweep.max_concurrency);
    if (s.contains("parameters")) {
      const json& pars = s["parameters"];
      if (!pars.is_object()) {
        throw ValidationError("sweep.parameters must be an object");
      }
      const std::set<std::string> sweepable = {
          "sigma",          "omega",      "amplitude", "width",
          "phase_velocity", "n_points",   "domain_length", "dt"};
      reject_unknown_keys(pars, sweepable, "sweep.parameters.");
      for (auto it = pars.begin(); it != pars.end(); ++it) {
        if (!it.value().is_array()) {
          throw ValidationError("sweep.parameters." + it.key() +
                                " must be an array of numbers");
        }
        std::vector<double> vals;
        for (const auto& v : it.value()) {
          if (!v.is_number()) {
            throw ValidationError("sweep.parameters." + it.key() +
                                  " must contain numbers only");
          }
          vals.push_back(v.get<double>());
        }
        cfg.sweep.parameters[it.key()] = std::move(vals);
      }
    }
  }
  if (root.contains("convergence")) {
    const json& c = root["convergence"];
    reject_unknown_keys(c, {"problem", "dt0"}, "convergence.");
    cfg.convergence.problem = get_str(c, "problem", cfg.convergence.problem);
    cfg.convergence.dt0 = get_num(c, "dt0", cfg.convergence.dt0);
  }
  if (root.contains("outputs")) {
    const json& o = root["outputs"];
    reject_unknown_keys(o, {"directory", "formats", "seed"}, "outputs.");
    cfg.outputs.directory = get_str(o, "directory", cfg.outputs.directory);
    cfg.outputs.seed = static_cast<std::uint64_t>(
        get_num(o, "seed", static_cast<double>(cfg.outputs.seed)));
    if (o.contains("formats")) {
      if (!o["formats"].is_array()) {
        throw ValidationError("outputs.formats must be an array");
      }
      cfg.outputs.csv = false;
      cfg.outputs.json = false;
      cfg.outputs.snapshots = false;
      for (const auto& f : o["formats"]) {
        const std::string name = f.get<std::string>();
        if (name == "csv") {
          cfg.outputs.csv = true;
        } else if (name == "json") {
          cfg.outputs.json = true;
        } else if (name == "snapshots") {
          cfg.outputs.snapshots = true;
        } else {
          throw ValidationError("unknown output format '" + name + "'");
        }
      }
    }
  }
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void RunConfig::validate() const {
  static const std::set<std::string> commands = {
      "simulate", "waveop", "scatter", "functionals", "sweep", "convergence"};
  if (!commands.count(command)) {
    throw ValidationError("unknown command '" + command + "'");
  }
  make_grid(grid.n_points, grid.domain_length);  // validates
  model.validate();
  stepper.validate();

  static const std::set<std::string> families = {"gaussian", "ground_state",
                                                 "file", "zero"};
  if (!families.count(initial_condition.family)) {
    throw ValidationError("unknown initial_condition.family '" +
                          initial_condition.family + "'");
  }
  if (initial_condition.family == "file" && initial_condition.path.empty()) {
    throw ValidationError("initial_condition.family 'file' requires a path");
  }
  if (initial_condition.family == "ground_state" &&
      !(initial_condition.omega > 0.0)) {
    throw ValidationError("initial_condition.omega must be positive");
  }

  if (command == "waveop") {
    if (model.sigma <= 2.0) {
      throw ValidationError(
          strfmt("command 'waveop' requires model.sigma > 2, got %g",
                 model.sigma));
    }
    if (!(waveop.T0 > 0.0)) {
      throw ValidationError("waveop.T0 must be positive");
    }
    if (waveop.TN != 0.0 && !(waveop.TN > waveop.T0)) {
      throw ValidationError("waveop.TN must exceed T0 or be 0 (auto)");
    }
    if (!(waveop.tail_tol > 0.0)) {
      throw ValidationError("waveop.tail_tol must be positive");
    }
    if (waveop.picard_iterations < 0 || waveop.picard_iterations > 64) {
      throw ValidationError("waveop.picard_iterations must be in [0, 64]");
    }
  }
  if (command == "scatter") {
    scatter.validate();
    if (model.sigma < 2.0) {
      throw ValidationError(
          strfmt("command 'scatter' requires model.sigma >= 2, got %g",
                 model.sigma));
    }
  }
  if (command == "sweep") {
    static const std::set<std::string> inner = {"simulate", "waveop",
                                                "scatter", "functionals"};
    if (!inner.count(sweep.command)) {
      throw ValidationError("sweep.command must be one of simulate, waveop, "
                            "scatter, functionals");
    }
    if (sweep.max_concurrency < 1 || sweep.max_concurrency > 64) {
      throw ValidationError("sweep.max_concurrency must be in [1, 64]");
    }
  }
  if (command == "convergence") {
    static const std::set<std::string> problems = {
        "linear_only", "gdnls_sigma1", "gauged_sigma3"};
    if (!problems.count(convergence.problem)) {
      throw ValidationError("convergence.problem must be one of linear_only, "
                            "gdnls_sigma1, gauged_sigma3");
    }
    if (!(convergence.dt0 > 0.0)) {
      throw ValidationError("convergence.dt0 must be positive");
    }
  }
  if (outputs.directory.empty()) {
    throw ValidationError("outputs.directory must not be empty");
  }
}

std::string echo_config(const RunConfig& cfg) {
  json root;
  root["command"] = cfg.command;
  root["grid"] = {{"n_points", cfg.grid.n_points},
                  {"domain_length", cfg.grid.domain_length}};
  root["model"] = {{"sigma", cfg.model.sigma},
                   {"omega", cfg.model.omega},
                   {"c", cfg.model.c},
                   {"boundary_tolerance", cfg.model.boundary_tolerance}};
  root["stepper"] = {{"dt", cfg.stepper.dt},
                     {"t_start", cfg.stepper.t_start},
                     {"t_end", cfg.stepper.t_end},
                     {"record_every", cfg.stepper.record_every},
                     {"dealias_fraction", cfg.stepper.dealias_fraction},
                     {"max_linf_growth", cfg.stepper.max_linf_growth},
                     {"disable_nonlinearity", cfg.stepper.disable_nonlinearity}};
  root["initial_condition"] = {
      {"family", cfg.initial_condition.family},
      {"amplitude", cfg.initial_condition.amplitude},
      {"width", cfg.initial_condition.width},
      {"phase_velocity", cfg.initial_condition.phase_velocity},
      {"omega", cfg.initial_condition.omega},
      {"path", cfg.initial_condition.path}};
  root["waveop"] = {{"T0", cfg.waveop.T0},
                    {"TN", cfg.waveop.TN},
                    {"tail_tol", cfg.waveop.tail_tol},
                    {"literal_m_exponent", cfg.waveop.literal_m_exponent},
                    {"picard_iterations", cfg.waveop.picard_iterations},
                    {"picard_intervals", cfg.waveop.picard_intervals}};
  root["scatter"] = {{"horizon", cfg.scatter.horizon},
                     {"base_time", cfg.scatter.base_time},
                     {"gap_tol", cfg.scatter.gap_tol},
                     {"direction", cfg.scatter.direction}};
  json sweep_pars = json::object();
  for (const auto& [k, v] : cfg.sweep.parameters) sweep_pars[k] = v;
  root["sweep"] = {{"command", cfg.sweep.command},
                   {"parameters", sweep_pars},
                   {"max_concurrency", cfg.sweep.max_concurrency}};
  root["convergence"] = {{"problem", cfg.convergence.problem},
                         {"dt0", cfg.convergence.dt0}};
  json formats = json::array();
  if (cfg.outputs.csv) formats.push_back("csv");
  if (cfg.outputs.json) formats.push_back("json");
  if (cfg.outputs.snapshots) formats.push_back("snapshots");
  root["outputs"] = {{"directory", cfg.outputs.directory},
                     {"formats", formats},
                     {"seed", cfg.outputs.seed}};
  return root.dump(2);
}

Field build_initial_condition(const RunConfig& cfg) {
  const GridPtr grid = make_grid(cfg.grid.n_points, cfg.grid.domain_length);
  const InitialCondition& ic = cfg.initial_condition;
  if (ic.family == "zero") {
    return Field(grid);
  }
  if (ic.family == "gaussian") {
    if (!(ic.width > 0.0)) {
      throw ValidationError("initial_condition.width must be positive");
    }
    Field f(grid);
    for (int j = 0; j < grid->n(); ++j) {
      const double x = grid->nodes()[j];
      const double envelope = ic.amplitude * std::exp(-(x / ic.width) *
                                                      (x / ic.width));
      const double ph = ic.phase_velocity * x;
      f[j] = envelope * complex(std::cos(ph), std::sin(ph));
    }
    return f;
  }
  if (ic.family == "ground_state") {
    ModelParams p = cfg.model;
    p.omega = ic.omega;
    p.c = 0.0;
    return ground_state_profile(grid, p);
  }
  if (ic.family == "file") {
    SnapshotMeta meta;
    Field f = read_snapshot(ic.path, &meta);
    if (!f.grid()->same_as(*grid)) {
      throw ValidationError(
          strfmt("snapshot grid (n=%d, L=%g) does not match configured grid "
                 "(n=%d, L=%g)",
                 f.grid()->n(), f.grid()->length(), grid->n(),
                 grid->length()));
    }
    return f;
  }
  throw ValidationError("unknown initial_condition.family '" + ic.family + "'");
}

}  // namespace gdnls
