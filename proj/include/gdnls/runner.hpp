#pragma once

#include "gdnls/config.hpp"

namespace gdnls {

// Process-level outcome, doubling as the CLI exit code.
enum class RunStatus : int {
  ok = 0,
  validation_failure = 2,
  blow_up = 3,
  tainted = 4,
  no_convergence = 5,
};

struct RunOutcome {
  RunStatus status = RunStatus::ok;
  std::string report_path;  // report.json location, empty if not written
  std::string message;      // one-line status summary
};

// Executes cfg.command, writes the requested artifacts (report.json,
// timeseries.csv, snapshots/...) into the output directory, and returns the
// status. Identical configs produce byte-identical artifacts. Exceptions are
// mapped to statuses; a report is still written for blow-up and taint.
RunOutcome run(const RunConfig& cfg);

}  // namespace gdnls
