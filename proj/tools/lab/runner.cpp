#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "lab/lab.hpp"
#include "pilot/error.hpp"

namespace pilot::lab {

namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "0.1.0";

Json checked_value(const std::string& key, const Json& fallback, const Json& given) {
  if (fallback.is_boolean()) {
    if (!given.is_boolean()) throw ConfigError("parameter '" + key + "' must be a boolean");
    return given;
  }
  if (fallback.is_number_unsigned()) {
    if (!given.is_number_unsigned()) throw ConfigError("parameter '" + key + "' must be a non-negative integer");
    return given;
  }
  if (fallback.is_number_integer()) {
    if (!given.is_number_integer()) throw ConfigError("parameter '" + key + "' must be an integer");
    return given;
  }
  if (fallback.is_number()) {
    if (!given.is_number()) throw ConfigError("parameter '" + key + "' must be a number");
    return given.get<double>();
  }
  if (fallback.is_string()) {
    if (!given.is_string()) throw ConfigError("parameter '" + key + "' must be a string");
    return given;
  }
  throw ConfigError("parameter '" + key + "' has an unsupported type");
}

bool compare(double value, const std::string& cmp, double threshold) {
  if (cmp == "<") return value < threshold;
  if (cmp == "<=") return value <= threshold;
  if (cmp == ">") return value > threshold;
  if (cmp == ">=") return value >= threshold;
  return false;
}

bool is_config_error(const std::exception& e) {
  return dynamic_cast<const InvalidInput*>(&e) != nullptr || dynamic_cast<const ShapeMismatch*>(&e) != nullptr ||
         dynamic_cast<const SizeLimitExceeded*>(&e) != nullptr ||
         dynamic_cast<const UnsupportedConfiguration*>(&e) != nullptr ||
         dynamic_cast<const OutOfRange*>(&e) != nullptr || dynamic_cast<const ConfigError*>(&e) != nullptr;
}

}  // namespace

const Experiment* find_experiment(const std::string& name) {
  for (const auto& e : catalog()) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

RunContext::RunContext(const Experiment& experiment, Json parameters, std::map<std::string, Tolerance> tolerances,
                       std::uint64_t seed, fs::path out)
    : experiment_(experiment),
      parameters_(std::move(parameters)),
      tolerances_(std::move(tolerances)),
      seed_(seed),
      out_(std::move(out)) {}

double RunContext::number(const std::string& key) const { return parameters_.at(key).get<double>(); }

std::size_t RunContext::count(const std::string& key) const { return parameters_.at(key).get<std::size_t>(); }

bool RunContext::flag(const std::string& key) const { return parameters_.at(key).get<bool>(); }

std::string RunContext::text(const std::string& key) const { return parameters_.at(key).get<std::string>(); }

const Tolerance& RunContext::tolerance(const std::string& name) const { return tolerances_.at(name); }

std::ofstream RunContext::artifact(const std::string& filename) {
  std::ofstream f(out_ / filename, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open artifact " + (out_ / filename).string());
  artifacts_.push_back(filename);
  return f;
}

void RunContext::write_json(const std::string& filename, const Json& j) {
  auto f = artifact(filename);
  f << j.dump(2) << "\n";
}

bool RunContext::check(const std::string& name, double value) {
  const auto& t = tolerances_.at(name);
  const bool ok = compare(value, t.comparison, t.value);
  assertions_.push_back({name, value, t.value, t.comparison, t.provenance, ok});
  return ok;
}

bool RunContext::check_true(const std::string& name, bool ok, const std::string& provenance) {
  assertions_.push_back({name, ok ? 1.0 : 0.0, 1.0, ">=", provenance, ok});
  return ok;
}

bool RunContext::passed() const noexcept {
  for (const auto& a : assertions_) {
    if (!a.pass) return false;
  }
  return true;
}

Json RunContext::metadata(const std::string& error) const {
  Json tol = Json::object();
  for (const auto& [name, t] : tolerances_) {
    tol[name] = {{"value", t.value}, {"comparison", t.comparison}, {"provenance", t.provenance}, {"description", t.description}};
  }
  Json checks = Json::array();
  for (const auto& a : assertions_) {
    checks.push_back({{"name", a.name},
                      {"value", a.value},
                      {"threshold", a.threshold},
                      {"comparison", a.comparison},
                      {"provenance", a.provenance},
                      {"pass", a.pass}});
  }
  const bool ok = error.empty() && passed();
  Json m = {{"tool", "pilotlab"},
            {"version", kVersion},
            {"experiment", experiment_.name},
            {"reference", experiment_.reference},
            {"seed", seed_},
            {"parameters", parameters_},
            {"tolerances", tol},
            {"assertions", checks},
            {"summary", summary_},
            {"warnings", warnings_},
            {"artifacts", artifacts_},
            {"result", ok ? "PASS" : "FAIL"}};
  if (!error.empty()) m["error"] = error;
  return m;
}

ResolvedConfig resolve_config(const Experiment& experiment, const RunRequest& request) {
  ResolvedConfig r;
  r.parameters = experiment.defaults;
  r.tolerances = experiment.tolerances;
  Json file = Json::object();
  if (request.config) {
    std::ifstream in(*request.config);
    if (!in) throw ConfigError("cannot read config file " + request.config->string());
    file = Json::parse(in, nullptr, false);
    if (file.is_discarded()) throw ConfigError("config file is not valid JSON");
    if (!file.is_object()) throw ConfigError("config must be a JSON object");
    try {
      io::reject_unknown_keys(file, {"experiment", "seed", "output", "parameters", "tolerances"}, "config");
    } catch (const InvalidInput& e) {
      throw ConfigError(e.what());
    }
    if (file.contains("experiment") && file["experiment"] != experiment.name) {
      throw ConfigError("config is for experiment '" + file["experiment"].dump() + "'");
    }
    if (file.contains("parameters")) {
      const auto& p = file["parameters"];
      if (!p.is_object()) throw ConfigError("'parameters' must be an object");
      for (const auto& [key, value] : p.items()) {
        if (!r.parameters.contains(key)) throw ConfigError("unknown parameter '" + key + "' for " + experiment.name);
        r.parameters[key] = checked_value(key, experiment.defaults[key], value);
      }
    }
    if (file.contains("tolerances")) {
      const auto& t = file["tolerances"];
      if (!t.is_object()) throw ConfigError("'tolerances' must be an object");
      for (const auto& [key, value] : t.items()) {
        auto it = r.tolerances.find(key);
        if (it == r.tolerances.end()) throw ConfigError("unknown tolerance '" + key + "' for " + experiment.name);
        if (!value.is_number()) throw ConfigError("tolerance '" + key + "' must be a number");
        it->second.value = value.get<double>();
        it->second.provenance += " (overridden)";
      }
    }
    if (file.contains("seed")) {
      if (!file["seed"].is_number_unsigned()) throw ConfigError("'seed' must be a non-negative integer");
      r.seed = file["seed"].get<std::uint64_t>();
    }
    if (file.contains("output")) {
      if (!file["output"].is_string()) throw ConfigError("'output' must be a string");
      r.out = file["output"].get<std::string>();
    }
  }
  for (const auto& [raw_key, raw_value] : request.overrides) {
    std::string key = raw_key;
    for (char& c : key) {
      if (c == '-') c = '_';
    }
    if (!r.parameters.contains(key)) throw ConfigError("unknown parameter '" + raw_key + "' for " + experiment.name);
    Json value = Json::parse(raw_value, nullptr, false);
    if (value.is_discarded()) value = raw_value;
    r.parameters[key] = checked_value(key, experiment.defaults[key], value);
  }
  if (request.seed) r.seed = *request.seed;
  if (request.out) {
    r.out = *request.out;
  } else if (r.out.empty()) {
    const char* root = std::getenv(kOutputRootEnv);
    r.out = fs::path(root != nullptr && *root != '\0' ? root : "runs") / experiment.name;
  }
  return r;
}

RunOutcome run_experiment(const RunRequest& request, std::ostream& log) {
  RunOutcome outcome;
  const Experiment* exp = find_experiment(request.experiment);
  if (exp == nullptr) {
    outcome.exit_code = kExitUnknownExperiment;
    outcome.message = "unknown experiment '" + request.experiment + "' (see 'list')";
    return outcome;
  }
  ResolvedConfig cfg;
  try {
    cfg = resolve_config(*exp, request);
  } catch (const ConfigError& e) {
    outcome.exit_code = kExitInvalidConfig;
    outcome.message = e.what();
    return outcome;
  }
  outcome.output = cfg.out;
  std::error_code ec;
  fs::create_directories(cfg.out, ec);
  if (ec) {
    outcome.exit_code = kExitRuntimeError;
    outcome.message = "cannot create output directory " + cfg.out.string() + ": " + ec.message();
    return outcome;
  }
  RunContext ctx(*exp, cfg.parameters, cfg.tolerances, cfg.seed, cfg.out);
  std::string error;
  try {
    exp->run(ctx);
    outcome.exit_code = ctx.passed() ? kExitOk : kExitAssertionFailed;
  } catch (const std::exception& e) {
    error = e.what();
    if (is_config_error(e)) {
      outcome.exit_code = kExitInvalidConfig;
    } else if (dynamic_cast<const pilot::Error*>(&e) != nullptr) {
      outcome.exit_code = kExitAssertionFailed;
    } else {
      outcome.exit_code = kExitRuntimeError;
    }
  }
  {
    std::ofstream meta(cfg.out / "metadata.json", std::ios::binary | std::ios::trunc);
    meta << ctx.metadata(error).dump(2) << "\n";
  }
  const auto m = ctx.metadata(error);
  for (const auto& a : m["assertions"]) {
    log << (a["pass"].get<bool>() ? "PASS " : "FAIL ") << a["name"].get<std::string>() << " = "
        << io::format_number(a["value"].get<double>()) << " (" << a["comparison"].get<std::string>() << " "
        << io::format_number(a["threshold"].get<double>()) << ", " << a["provenance"].get<std::string>() << ")\n";
  }
  for (const auto& w : m["warnings"]) log << "warning: " << w.get<std::string>() << "\n";
  log << m["result"].get<std::string>() << " " << exp->name << " -> " << cfg.out.string() << "\n";
  outcome.message = error;
  return outcome;
}

void list_experiments(std::ostream& out) {
  for (const auto& e : catalog()) out << e.name << "\t" << e.description << "\t[" << e.reference << "]\n";
}

}  // namespace pilot::lab
