#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "lab/lab.hpp"
#include "pilot/field/guidance.hpp"
#include "pilot/field/trajectory.hpp"
#include "pilot/field/wavefunctional.hpp"
#include "pilot/relativity/relativity.hpp"

namespace fs = std::filesystem;
using pilot::lab::Json;

namespace {

using Overrides = std::vector<std::pair<std::string, std::string>>;

struct Run {
  int exit_code = 0;
  Json meta;
  fs::path out;
  double seconds = 0.0;
};

fs::path g_root;

double elapsed(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Run run(const std::string& experiment, const std::string& tag, const Overrides& overrides = {}) {
  Run r;
  r.out = g_root / tag;
  fs::remove_all(r.out);
  std::ostringstream log;
  const auto start = std::chrono::steady_clock::now();
  const auto outcome = pilot::lab::run_experiment({experiment, {}, {}, r.out, overrides}, log);
  r.seconds = elapsed(start);
  r.exit_code = outcome.exit_code;
  if (fs::exists(r.out / "metadata.json")) r.meta = Json::parse(slurp(r.out / "metadata.json"));
  return r;
}

double assertion(const Run& r, const std::string& name) {
  if (!r.meta.is_object()) return NAN;
  for (const auto& a : r.meta["assertions"]) {
    if (a["name"] == name) return a["value"].get<double>();
  }
  return NAN;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

bool report(int id, bool pass, const std::string& detail, double seconds) {
  std::cout << "criterion " << id << ": " << (pass ? "PASS" : "FAIL") << "  " << detail << "  [" << fmt(seconds)
            << " s]" << std::endl;
  return pass;
}

bool criterion1() {
  const auto r = run("equivariance-particle", "c1");
  const double l1 = assertion(r, "histogram_l1");
  const bool ok = r.exit_code == 0 && l1 < 0.03 && r.seconds < 120.0;
  return report(1, ok, "free-packet equivariance, M=1e5, width x3: L1 = " + fmt(l1) + " (< 0.03)", r.seconds);
}

bool criterion2() {
  const auto r = run("pointer", "c2");
  const double z = assertion(r, "born_deviation_sigmas");
  const bool ok = r.exit_code == 0 && z < 3.0 && r.seconds < 300.0;
  return report(2, ok, "pointer Born rule (0.8, 0.2), 1e4 runs: deviation = " + fmt(z) + " sigma (< 3)", r.seconds);
}

bool criterion3() {
  const auto start = std::chrono::steady_clock::now();
  const auto two = run("fock-spectrum", "c3-n2", {{"sites", "2"}});
  const auto three = run("fock-spectrum", "c3-n3", {{"sites", "3"}});
  const double secs = elapsed(start);
  const double d2 = assertion(two, "max_relative_deviation");
  const double d3 = assertion(three, "max_relative_deviation");
  const bool ok = two.exit_code == 0 && three.exit_code == 0 && d2 < 1e-5 && d3 < 1e-5 && secs < 60.0;
  return report(3, ok, "Fock oracle, lowest 10 levels: N=2 " + fmt(d2) + ", N=3 " + fmt(d3) + " (< 1e-5)", secs);
}

bool criterion4() {
  using namespace pilot;
  const auto start = std::chrono::steady_clock::now();
  const auto model = lattice::LatticeModel::scalar_field(2, 1.0, 1.0);
  const field::FockSuperposition sup(
      model, {{lattice::FockState::vacuum(2), 1.0}, {lattice::FockState::single(2, 1), 1.0}});
  field::FieldConfiguration phi0;
  phi0.values.resize(2);
  phi0.values << 0.3, -0.2;
  const double dt = 0.01;
  const std::size_t steps = 1000;
  const auto modes = field::integrate_field_trajectory(field::FockDynamics(sup), phi0, dt, steps);
  const qm::SpatialGrid grid(2, 128, 0.125);
  const auto ref = field::grid_field_trajectory(sup, grid, phi0, dt, steps);
  double worst = ref.size() == modes.history.size() ? 0.0 : INFINITY;
  for (std::size_t i = 0; i < ref.size() && i < modes.history.size(); ++i) {
    worst = std::max(worst, (ref[i].values - modes.history[i].values).cwiseAbs().maxCoeff());
  }
  const double secs = elapsed(start);
  const bool ok = worst < 1e-3 && secs < 120.0;
  return report(4, ok, "N=2 field trajectory vs 2D grid over t in [0,10]: max deviation = " + fmt(worst) + " (< 1e-3)",
                secs);
}

bool criterion5() {
  const auto r = run("gauge-invariance", "c5");
  const double f = assertion(r, "field_strength_difference");
  const double d = assertion(r, "projected_divergence");
  const double p = assertion(r, "poisson_residual");
  const bool ok = r.exit_code == 0 && f < 1e-9 && d < 1e-10 && p < 1e-8 && r.seconds < 60.0;
  return report(5, ok,
                "100 gauge transforms: (E,B) " + fmt(f) + " (< 1e-9), div A_T " + fmt(d) + " (< 1e-10), Poisson " +
                    fmt(p) + " (< 1e-8)",
                r.seconds);
}

bool criterion6() {
  const auto r = run("dispersion-scan", "c6");
  const double disp = assertion(r, "dispersion_deviation");
  const double mono = assertion(r, "dispersion_monotone");
  const double corr = assertion(r, "correlator_deviation");
  const double refine = assertion(r, "correlator_refinement_decreases");
  double fine = NAN;
  if (r.meta.is_object()) fine = r.meta["summary"]["refined_correlator_deviation"].get<double>();
  const bool ok = r.exit_code == 0 && disp < 0.01 && mono == 1.0 && corr < 0.05 && refine == 1.0 && r.seconds < 120.0;
  return report(6, ok,
                "dispersion " + fmt(disp) + " (< 0.01, monotone " + (mono == 1.0 ? "yes" : "no") +
                    "); boosted correlator N=256 " + fmt(corr) + " (< 0.05) -> N=512 " + fmt(fine),
                r.seconds);
}

bool criterion7() {
  const auto start = std::chrono::steady_clock::now();
  const auto r = run("noncovariance-demo", "c7");
  const double traj = assertion(r, "trajectory_mismatch");
  double pred = NAN;
  if (r.meta.is_object()) pred = r.meta["summary"]["prediction_mismatch"].get<double>();

  pilot::relativity::NoncovarianceConfig rest;
  rest.sites = 128;
  rest.boost_velocity = 0.0;
  const auto at_rest = pilot::relativity::trajectory_noncovariance_demo(rest);
  pilot::relativity::NoncovarianceConfig vac;
  vac.sites = 128;
  vac.pulse_amplitude = 0.0;
  vac.offset_amplitude = 0.0;
  const auto ground = pilot::relativity::trajectory_noncovariance_demo(vac);
  const double secs = elapsed(start);
  const bool controls = at_rest.trajectory_mismatch < 1e-10 && ground.trajectory_mismatch == 0.0 &&
                        ground.stationary && !ground.warnings.empty();
  const bool ok = r.exit_code == 0 && traj > 0.0 && traj > pred && controls && secs < 120.0;
  return report(7, ok,
                "noncovariance: trajectory mismatch " + fmt(traj) + " > prediction mismatch " + fmt(pred) +
                    "; controls v=0 " + fmt(at_rest.trajectory_mismatch) + ", ground state " +
                    fmt(ground.trajectory_mismatch) + (ground.warnings.empty() ? " (no warning)" : " (warned)"),
                secs);
}

bool criterion8() {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<std::pair<std::string, Overrides>> small{
      {"two-slit", {{"members", "2000"}}},
      {"pointer", {{"runs", "500"}}},
      {"equivariance-particle", {{"members", "5000"}}},
      {"equivariance-field", {{"members", "2000"}, {"recorded_members", "2"}}},
      {"fock-spectrum", {}},
      {"dispersion-scan", {}},
      {"gauge-invariance", {{"transforms", "5"}}},
      {"frame-report", {{"members", "2000"}}},
      {"noncovariance-demo", {{"sites", "128"}, {"duration", "10.0"}}},
  };
  std::vector<std::string> differing;
  for (const auto& [name, overrides] : small) {
    const auto a = run(name, "c8-a-" + name, overrides);
    const auto b = run(name, "c8-b-" + name, overrides);
    bool same = a.exit_code == b.exit_code && a.exit_code != pilot::lab::kExitInvalidConfig &&
                a.exit_code != pilot::lab::kExitRuntimeError;
    std::size_t files = 0;
    for (const auto& entry : fs::directory_iterator(a.out)) {
      const auto other = b.out / entry.path().filename();
      same = same && fs::exists(other) && slurp(entry.path()) == slurp(other);
      ++files;
    }
    for ([[maybe_unused]] const auto& entry : fs::directory_iterator(b.out)) --files;
    same = same && files == 0;
    if (!same) differing.push_back(name);
  }
  std::string detail = "9 experiments rerun with identical config and seed: ";
  if (differing.empty()) {
    detail += "all artifacts byte-identical";
  } else {
    detail += "differences in";
    for (const auto& d : differing) detail += " " + d;
  }
  return report(8, differing.empty(), detail, elapsed(start));
}

}  // namespace

int main(int argc, char** argv) {
  g_root = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "pilotlab-acceptance";
  fs::create_directories(g_root);
  const std::vector<std::function<bool()>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                    criterion5, criterion6, criterion7, criterion8};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    try {
      if (!criteria[i]()) ++failed;
    } catch (const std::exception& e) {
      report(static_cast<int>(i + 1), false, std::string("error: ") + e.what(), 0.0);
      ++failed;
    }
  }
  std::cout << (failed == 0 ? "all acceptance criteria PASS" : std::to_string(failed) + " criteria FAIL") << std::endl;
  return failed == 0 ? 0 : 1;
}
