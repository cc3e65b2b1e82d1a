#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gdnls/model.hpp"
#include "gdnls/scatter.hpp"
#include "gdnls/stepper.hpp"

namespace gdnls {

// Initial-condition families:
//   gaussian     amplitude * exp(-(x/width)^2) * exp(i * phase_velocity * x)
//   ground_state solitary-wave profile at the given omega (model sigma, c=0)
//   file         snapshot file whose grid must match the configured grid
//   zero         identically zero
struct InitialCondition {
  std::string family = "gaussian";
  double amplitude = 1.0;
  double width = 1.0;
  double phase_velocity = 0.0;
  double omega = 1.0;
  std::string path;
};

struct GridSpec {
  int n_points = 1024;
  double domain_length = 80.0;
};

struct WaveOpConfig {
  double T0 = 2.0;
  double TN = 0.0;  // 0 = auto-select
  double tail_tol = 1e-6;
  bool literal_m_exponent = false;
  int picard_iterations = 0;  // 0 = skip the oracle cross-check
  int picard_intervals = 640;
};

struct OutputsConfig {
  std::string directory = "out";
  bool csv = true;
  bool json = true;
  bool snapshots = false;
  std::uint64_t seed = 1;
};

struct SweepConfig {
  std::string command = "functionals";  // command run per grid point
  std::map<std::string, std::vector<double>> parameters;
  int max_concurrency = 2;
};

struct ConvergenceConfig {
  std::string problem = "gdnls_sigma1";  // linear_only | gdnls_sigma1 | gauged_sigma3
  double dt0 = 0.05;
};

struct RunConfig {
  std::string command = "simulate";
  GridSpec grid;
  ModelParams model;
  StepperConfig stepper;
  InitialCondition initial_condition;
  WaveOpConfig waveop;
  ScatterConfig scatter;
  SweepConfig sweep;
  ConvergenceConfig convergence;
  OutputsConfig outputs;

  // Full validation for the given command; throws ValidationError with the
  // offending key path.
  void validate() const;
};

// Strict JSON parsing: unknown keys are rejected with their path, missing
// keys fall back to the defaults above.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config_file(const std::string& path);
// The full config echoed back as canonical JSON (all defaults filled in).
std::string echo_config(const RunConfig& cfg);

// Builds the configured initial state on the configured grid.
Field build_initial_condition(const RunConfig& cfg);

}  // namespace gdnls
