#pragma once

#include <string>
#include <vector>

namespace gdnls {

// Collects non-fatal warnings emitted during a run. Boundary warnings mark
// the run as tainted at the reporting layer; they never abort computation.
struct DiagnosticLog {
  std::vector<std::string> messages;
  bool boundary_flagged = false;

  void warn(std::string msg) { messages.push_back(std::move(msg)); }
  void warn_boundary(std::string msg) {
    boundary_flagged = true;
    messages.push_back(std::move(msg));
  }
};

}  // namespace gdnls
