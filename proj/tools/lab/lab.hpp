#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pilot/io.hpp"

namespace pilot::lab {

using io::Json;

enum ExitCode : int {
  kExitOk = 0,
  kExitRuntimeError = 1,
  kExitUnknownExperiment = 2,
  kExitInvalidConfig = 3,
  kExitAssertionFailed = 4,
  kExitUsage = 64,
};

/// Environment variable holding the default output root.
inline constexpr const char* kOutputRootEnv = "PILOTLAB_OUTPUT_ROOT";

/// Raised for any configuration problem; maps to kExitInvalidConfig.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Tolerance {
  double value = 0.0;
  /// "<", "<=", ">" or ">=": the measured value must satisfy `value <cmp> threshold`.
  std::string comparison = "<";
  /// Provenance label of the threshold value.
  std::string provenance = "derived";
  std::string description;
};

struct AssertionRecord {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  std::string comparison;
  std::string provenance;
  bool pass = false;
};

class RunContext;

struct Experiment {
  std::string name;
  std::string description;
  std::string reference;
  /// Flat parameter object; defaults also fix each parameter's type.
  Json defaults;
  std::map<std::string, Tolerance> tolerances;
  std::function<void(RunContext&)> run;
};

/// Stable-order catalog of the nine experiments.
const std::vector<Experiment>& catalog();
const Experiment* find_experiment(const std::string& name);

/// Artifact writer and assertion recorder for one run.
class RunContext {
 public:
  RunContext(const Experiment& experiment, Json parameters, std::map<std::string, Tolerance> tolerances,
             std::uint64_t seed, std::filesystem::path out);

  std::uint64_t seed() const noexcept { return seed_; }
  const Json& parameters() const noexcept { return parameters_; }
  const std::filesystem::path& output() const noexcept { return out_; }

  double number(const std::string& key) const;
  std::size_t count(const std::string& key) const;
  bool flag(const std::string& key) const;
  std::string text(const std::string& key) const;
  const Tolerance& tolerance(const std::string& name) const;

  /// Opens an artifact for writing (binary mode so CSV keeps CRLF) and records its name.
  std::ofstream artifact(const std::string& filename);
  void write_json(const std::string& filename, const Json& j);

  /// Records value against the named tolerance; returns whether it passed.
  bool check(const std::string& name, double value);
  /// Records a pass/fail condition as 1/0 against a threshold of 1 ("trivial"/"derived" given).
  bool check_true(const std::string& name, bool ok, const std::string& provenance);
  void warn(std::string message) { warnings_.push_back(std::move(message)); }
  void note(const std::string& key, Json value) { summary_[key] = std::move(value); }

  bool passed() const noexcept;
  Json metadata(const std::string& error = {}) const;

 private:
  const Experiment& experiment_;
  Json parameters_;
  std::map<std::string, Tolerance> tolerances_;
  std::uint64_t seed_;
  std::filesystem::path out_;
  std::vector<std::string> artifacts_;
  std::vector<AssertionRecord> assertions_;
  std::vector<std::string> warnings_;
  Json summary_ = Json::object();
};

struct RunRequest {
  std::string experiment;
  std::optional<std::filesystem::path> config;
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> out;
  /// Parameter overrides from the command line, values parsed as JSON when possible.
  std::vector<std::pair<std::string, std::string>> overrides;
};

struct RunOutcome {
  int exit_code = kExitOk;
  std::filesystem::path output;
  std::string message;
};

/// Resolves the configuration, runs the experiment and writes metadata.json.
RunOutcome run_experiment(const RunRequest& request, std::ostream& log);

/// Merged, validated parameters and tolerances (throws ConfigError).
struct ResolvedConfig {
  Json parameters;
  std::map<std::string, Tolerance> tolerances;
  std::uint64_t seed = 0;
  std::filesystem::path out;
};
ResolvedConfig resolve_config(const Experiment& experiment, const RunRequest& request);

/// One line per experiment: name, description and cross-reference.
void list_experiments(std::ostream& out);

}  // namespace pilot::lab
