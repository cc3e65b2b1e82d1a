#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "gdnls/config.hpp"
#include "gdnls/errors.hpp"
#include "gdnls/runner.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "path to the JSON config")
      ->required();
  cmd->add_option("--out", args.out_dir, "override outputs.directory");
  cmd->add_option("--seed", args.seed, "override outputs.seed")
      ->each([&args](const std::string&) { args.seed_set = true; });
}

int execute(const std::string& command, const CommonArgs& args) {
  gdnls::RunConfig cfg;
  try {
    cfg = gdnls::load_config_file(args.config_path);
  } catch (const gdnls::ValidationError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return static_cast<int>(gdnls::RunStatus::validation_failure);
  }
  cfg.command = command;
  if (!args.out_dir.empty()) cfg.outputs.directory = args.out_dir;
  if (args.seed_set) cfg.outputs.seed = args.seed;

  const gdnls::RunOutcome outcome = gdnls::run(cfg);
  if (outcome.status == gdnls::RunStatus::ok) {
    std::cout << outcome.message << '\n';
    if (!outcome.report_path.empty()) {
      std::cout << "report: " << outcome.report_path << '\n';
    }
  } else {
    std::cerr << outcome.message << '\n';
  }
  return static_cast<int>(outcome.status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pseudospectral laboratory for a derivative NLS equation"};
  app.require_subcommand(1);

  const char* commands[] = {"simulate",    "waveop", "scatter",
                            "functionals", "sweep",  "convergence"};
  const char* blurbs[] = {
      "integrate the equation and track its invariants",
      "reconstruct a solution from prescribed scattering data",
      "extract scattering data from an initial condition",
      "evaluate conserved and variational functionals of the initial data",
      "run a parameter sweep of another command",
      "measure the self-convergence order of the integrator"};

  CommonArgs args[6];
  for (int i = 0; i < 6; ++i) {
    add_common(app.add_subcommand(commands[i], blurbs[i]), args[i]);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    for (int i = 0; i < 6; ++i) {
      if (app.get_subcommand(commands[i])->parsed()) {
        return execute(commands[i], args[i]);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "fatal: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
