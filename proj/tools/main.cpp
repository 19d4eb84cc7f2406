#include <CLI11.hpp>

#include <iostream>

#include "lab/lab.hpp"

namespace {

using pilot::lab::kExitUsage;

bool parse_overrides(const std::vector<std::string>& extras, std::vector<std::pair<std::string, std::string>>& out) {
  for (std::size_t i = 0; i < extras.size(); ++i) {
    const std::string& arg = extras[i];
    if (arg.rfind("--", 0) != 0 || arg.size() < 3) {
      std::cerr << "unexpected argument '" << arg << "'\n";
      return false;
    }
    const auto eq = arg.find('=');
    if (eq != std::string::npos) {
      out.emplace_back(arg.substr(2, eq - 2), arg.substr(eq + 1));
    } else if (i + 1 < extras.size()) {
      out.emplace_back(arg.substr(2), extras[++i]);
    } else {
      std::cerr << "missing value for '" << arg << "'\n";
      return false;
    }
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pilot-wave numerical laboratory"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "List the experiments");
  auto* run = app.add_subcommand("run", "Run one experiment; extra --name value pairs override parameters");
  run->allow_extras();
  std::string experiment;
  std::string config;
  std::uint64_t seed = 0;
  std::string out;
  run->add_option("experiment", experiment, "Experiment name")->required();
  auto* config_opt = run->add_option("--config", config, "JSON config file");
  auto* seed_opt = run->add_option("--seed", seed, "Random seed");
  auto* out_opt = run->add_option("--out", out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (list->parsed()) {
    pilot::lab::list_experiments(std::cout);
    return 0;
  }

  pilot::lab::RunRequest request;
  request.experiment = experiment;
  if (*config_opt) request.config = config;
  if (*seed_opt) request.seed = seed;
  if (*out_opt) request.out = out;
  if (!parse_overrides(run->remaining(), request.overrides)) return pilot::lab::kExitInvalidConfig;

  const auto outcome = pilot::lab::run_experiment(request, std::cout);
  if (!outcome.message.empty()) std::cerr << "error: " << outcome.message << "\n";
  return outcome.exit_code;
}
