#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <map>
#include <sstream>

#include "catalog_data.hpp"
#include "lab/lab.hpp"
#include "pilot/bohm/equivariance.hpp"
#include "pilot/bohm/integrator.hpp"
#include "pilot/bohm/pointer.hpp"
#include "pilot/bohm/sampling.hpp"
#include "pilot/bohm/two_slit.hpp"
#include "pilot/error.hpp"
#include "pilot/field/equivariance.hpp"
#include "pilot/field/guidance.hpp"
#include "pilot/field/trajectory.hpp"
#include "pilot/gauge/gauge.hpp"
#include "pilot/lattice/brute_force.hpp"
#include "pilot/lattice/fock.hpp"
#include "pilot/lattice/gaussian.hpp"
#include "pilot/qm/observables.hpp"
#include "pilot/relativity/relativity.hpp"

namespace pilot::lab {

namespace {

using io::CsvWriter;
using lattice::Complex;
using lattice::LatticeModel;

Tolerance tol(double value, std::string comparison, std::string provenance, std::string description) {
  return {value, std::move(comparison), std::move(provenance), std::move(description)};
}

void write_record(RunContext& ctx, const bohm::TrajectoryRecord& rec, const std::string& filename) {
  auto f = ctx.artifact(filename);
  std::vector<std::string> header{"time", "member"};
  const char* names[] = {"x", "y"};
  for (int d = 0; d < rec.dimension; ++d) header.emplace_back(names[d]);
  CsvWriter csv(f, header);
  for (std::size_t t = 0; t < rec.times.size(); ++t) {
    for (std::size_t m = 0; m < rec.members.size(); ++m) {
      csv.cell(rec.times[t]).cell(rec.members[m]);
      for (double x : rec.at(t, m)) csv.cell(x);
      csv.end_row();
    }
  }
}

// ---------------------------------------------------------------- two-slit

void run_two_slit(RunContext& ctx) {
  bohm::TwoSlitConfig c;
  c.points = ctx.count("points");
  c.spacing = ctx.number("spacing");
  c.wavenumber = ctx.number("wavenumber");
  c.packet_width_x = ctx.number("packet_width_x");
  c.packet_width_y = ctx.number("packet_width_y");
  c.slit_separation = ctx.number("slit_separation");
  c.slit_width = ctx.number("slit_width");
  c.left_open = ctx.flag("left_open");
  c.right_open = ctx.flag("right_open");
  c.screen_y = ctx.number("screen_y");
  c.bins = ctx.count("bins");
  c.dt = ctx.number("dt");
  c.max_time = ctx.number("max_time");
  c.members = ctx.count("members");
  c.bundle_size = ctx.count("bundle_size");
  c.seed = ctx.seed();
  const auto r = bohm::two_slit_experiment(c);
  {
    auto f = ctx.artifact("histogram.csv");
    CsvWriter csv(f, {"bin", "x_lower", "x_upper", "count"});
    const double w = (r.bin_upper - r.bin_lower) / static_cast<double>(r.counts.size());
    for (std::size_t b = 0; b < r.counts.size(); ++b) {
      csv.cell(b).cell(r.bin_lower + w * static_cast<double>(b)).cell(r.bin_lower + w * static_cast<double>(b + 1));
      csv.cell(r.counts[b]).end_row();
    }
  }
  write_record(ctx, r.bundle, "trajectories.csv");
  for (const auto& w : r.warnings) ctx.warn(w);
  const std::size_t deep = bohm::count_minima(r.minima, ctx.number("min_contrast"));
  ctx.note("arrivals", r.arrivals);
  ctx.note("absorbed", r.absorbed);
  ctx.note("flagged", r.flagged);
  ctx.note("axis_crossings", r.axis_crossings);
  ctx.note("final_time", r.final_time);
  ctx.note("significant_minima", r.minima.size());
  ctx.check("fringe_minima", static_cast<double>(deep));
  ctx.check("symmetry_l1", r.symmetry_l1);
}

// ---------------------------------------------------------------- pointer

void run_pointer(RunContext& ctx) {
  const qm::SpatialGrid g(1, ctx.count("points"), ctx.number("spacing"));
  const double wl = ctx.number("weight_left");
  if (!(wl >= 0.0 && wl <= 1.0)) throw InvalidInput("weight_left must lie in [0, 1]");
  const double x0 = ctx.number("branch_offset");
  const double w = ctx.number("branch_width");
  auto psi = qm::WaveFunction::from_function(g, [&](double x, double) {
    return std::sqrt(wl) * std::exp(-(x + x0) * (x + x0) / (w * w)) +
           std::sqrt(1.0 - wl) * std::exp(-(x - x0) * (x - x0) / (w * w));
  });
  psi.normalize();
  bohm::PointerConfig c;
  c.coupling = ctx.number("coupling");
  c.duration = ctx.number("duration");
  c.dt = ctx.number("dt");
  c.pointer_mass = ctx.number("pointer_mass");
  c.pointer_width = ctx.number("pointer_width");
  c.runs = ctx.count("runs");
  c.seed = ctx.seed();
  const auto r = bohm::pointer_measurement(psi, c);
  {
    auto f = ctx.artifact("pointer.csv");
    CsvWriter csv(f, {"outcome", "count", "frequency", "born"});
    for (std::size_t o = 0; o < r.counts.size(); ++o) {
      csv.cell(o).cell(r.counts[o]).cell(r.frequencies[o]).cell(r.born[o]).end_row();
    }
  }
  {
    const std::size_t bins = ctx.count("bins");
    const double lo = -0.5 * g.length();
    const double width = g.length() / static_cast<double>(bins);
    std::vector<std::size_t> h(bins, 0);
    for (double y : r.final_pointer) {
      const auto b = static_cast<long>(std::floor((y - lo) / width));
      if (b >= 0 && b < static_cast<long>(bins)) ++h[static_cast<std::size_t>(b)];
    }
    auto f = ctx.artifact("histogram.csv");
    CsvWriter csv(f, {"bin", "y_lower", "y_upper", "count"});
    for (std::size_t b = 0; b < bins; ++b) {
      csv.cell(b).cell(lo + width * static_cast<double>(b)).cell(lo + width * static_cast<double>(b + 1));
      csv.cell(h[b]).end_row();
    }
  }
  const double n = static_cast<double>(r.runs);
  const double sigma = std::sqrt(wl * (1.0 - wl) / n);
  const double dev = std::abs(r.frequencies[0] - wl);
  ctx.note("frequency_left", r.frequencies[0]);
  ctx.note("born_left", r.born[0]);
  ctx.note("binomial_sigma", sigma);
  ctx.note("flagged", r.flagged);
  ctx.check("born_deviation_sigmas", sigma > 0.0 ? dev / sigma : (dev == 0.0 ? 0.0 : INFINITY));
  ctx.check("branch_separation", r.separation);
}

// ---------------------------------------------------------------- equivariance-particle

void run_equivariance_particle(RunContext& ctx) {
  const qm::SpatialGrid g(1, ctx.count("points"), ctx.number("spacing"));
  const double sigma = ctx.number("sigma");
  const double x0 = ctx.number("x0");
  const double k0 = ctx.number("k0");
  const double spread = ctx.number("spread_factor");
  if (!(spread >= 1.0)) throw InvalidInput("spread_factor must be at least 1");
  auto psi = qm::WaveFunction::from_function(g, [&](double x, double) {
    return std::exp(-(x - x0) * (x - x0) / (4.0 * sigma * sigma)) * std::polar(1.0, k0 * x);
  });
  psi.normalize();
  const double t = 2.0 * sigma * sigma * std::sqrt(spread * spread - 1.0);
  const std::size_t steps = ctx.count("steps");
  if (steps == 0) throw InvalidInput("steps must be positive");
  const auto e0 = bohm::sample_born(psi, ctx.count("members"), ctx.seed());
  bohm::IntegrationOptions opt;
  opt.record_every = ctx.count("record_every");
  opt.record_members = ctx.count("recorded_members");
  const auto r = bohm::integrate_trajectories(psi, qm::HamiltonianSpec{}, e0, t / static_cast<double>(steps), steps, opt);
  const auto stats = bohm::equivariance_statistic(r.ensemble, r.psi);
  const auto h = bohm::marginal_histogram(r.ensemble, r.psi, 0);
  {
    auto f = ctx.artifact("histogram.csv");
    CsvWriter csv(f, {"bin", "x_lower", "x_upper", "empirical", "born"});
    const double w = (h.upper - h.lower) / static_cast<double>(h.born.size());
    for (std::size_t b = 0; b < h.born.size(); ++b) {
      csv.cell(b).cell(h.lower + w * static_cast<double>(b)).cell(h.lower + w * static_cast<double>(b + 1));
      csv.cell(h.empirical[b]).cell(h.born[b]).end_row();
    }
  }
  write_record(ctx, r.record, "trajectories.csv");
  for (const auto& w : r.warnings) ctx.warn(w);
  ctx.note("final_time", r.psi.time());
  ctx.note("width_ratio", qm::position_moments(r.psi, 0).stddev / sigma);
  ctx.note("ks", stats.ks);
  ctx.note("flagged", r.flagged);
  ctx.check("histogram_l1", stats.l1);
}

// ---------------------------------------------------------------- equivariance-field

void run_equivariance_field(RunContext& ctx) {
  const auto model = LatticeModel::scalar_field(ctx.count("sites"), ctx.number("spacing"), ctx.number("field_mass"));
  const std::vector<Complex> alpha(model.sites, Complex(ctx.number("shift_re"), ctx.number("shift_im")));
  const auto psi0 = lattice::GaussianWavefunctional::coherent(model, alpha);
  const double t = ctx.number("time");
  const double dt = ctx.number("dt");
  field::FieldTrajectoryOptions opt;
  opt.guidance_sign = ctx.number("guidance_sign");
  auto ensemble = field::sample_field_ensemble(psi0, ctx.count("members"), ctx.seed());
  const Eigen::MatrixXd start = ensemble.modes;
  const auto stats = field::field_equivariance(psi0, std::move(ensemble), t, dt, opt);
  {
    auto f = ctx.artifact("moments.csv");
    CsvWriter csv(f, {"mode", "mean", "expected_mean", "mean_z", "variance", "expected_variance",
                      "variance_mismatch", "l1"});
    for (const auto& m : stats.modes) {
      csv.cell(m.mode).cell(m.mean).cell(m.expected_mean).cell(m.mean_z).cell(m.variance);
      csv.cell(m.expected_variance).cell(m.variance_mismatch).cell(m.l1).end_row();
    }
  }
  {
    const field::GaussianDynamics dyn(psi0);
    const std::size_t steps = static_cast<std::size_t>(std::llround(t / dt));
    field::FieldTrajectoryOptions rec = opt;
    rec.record_every = ctx.count("record_every");
    auto f = ctx.artifact("field_trajectories.csv");
    CsvWriter csv(f, {"time", "member", "site", "value"});
    const std::size_t shown = std::min<std::size_t>(ctx.count("recorded_members"), static_cast<std::size_t>(start.cols()));
    for (std::size_t m = 0; m < shown; ++m) {
      field::FieldConfiguration phi0;
      phi0.values = lattice::to_site_values(model, psi0.basis(), start.col(static_cast<Eigen::Index>(m)));
      const auto traj = field::integrate_field_trajectory(dyn, phi0, dt, steps, rec);
      for (const auto& c : traj.history) {
        for (Eigen::Index s = 0; s < c.values.size(); ++s) {
          csv.cell(c.time).cell(m).cell(static_cast<std::size_t>(s)).cell(c.values(s)).end_row();
        }
      }
    }
  }
  for (const auto& w : stats.warnings) ctx.warn(w);
  ctx.note("max_mean_z", stats.max_mean_z());
  ctx.note("max_variance_mismatch", stats.max_variance_mismatch());
  ctx.note("variance_bound", stats.variance_bound());
  ctx.note("flagged", stats.flagged);
  ctx.check("max_mean_z", stats.max_mean_z());
  ctx.check("variance_mismatch_over_bound", stats.max_variance_mismatch() / stats.variance_bound());
  ctx.check("max_mode_l1", stats.max_l1());
}

// ---------------------------------------------------------------- fock-spectrum

LatticeModel lattice_model(const RunContext& ctx) {
  const std::string kind = ctx.text("kind");
  if (kind == "chain") {
    return LatticeModel::atom_chain(ctx.count("sites"), ctx.number("spacing"), ctx.number("atom_mass"),
                                    ctx.number("spring"), ctx.number("pinning"));
  }
  if (kind == "scalar") return LatticeModel::scalar_field(ctx.count("sites"), ctx.number("spacing"), ctx.number("field_mass"));
  throw InvalidInput("kind must be 'chain' or 'scalar'");
}

void run_fock_spectrum(RunContext& ctx) {
  const auto model = lattice_model(ctx);
  const std::size_t levels = ctx.count("levels");
  const auto bf = lattice::brute_force_field_eigens(model, levels);
  const auto fock = lattice::fock_levels(model, levels);
  auto f = ctx.artifact("spectrum.csv");
  CsvWriter csv(f, {"level", "brute_force", "fock", "relative_deviation", "occupations"});
  double worst = 0.0;
  for (std::size_t i = 0; i < levels; ++i) {
    const double rel = std::abs(bf[i] - fock[i].energy) / std::abs(fock[i].energy);
    worst = std::max(worst, rel);
    std::ostringstream occ;
    for (std::size_t m = 0; m < fock[i].state.occupations.size(); ++m) occ << (m ? " " : "") << fock[i].state.occupations[m];
    csv.cell(i).cell(bf[i]).cell(fock[i].energy).cell(rel).cell(occ.str()).end_row();
  }
  ctx.check("max_relative_deviation", worst);
}

// ---------------------------------------------------------------- dispersion-scan

void run_dispersion_scan(RunContext& ctx) {
  const auto chain = LatticeModel::atom_chain(ctx.count("chain_sites"), ctx.number("chain_spacing"),
                                              ctx.number("atom_mass"), ctx.number("spring"));
  const double ka_max = ctx.number("ka_max");
  const auto scan = relativity::dispersion_linearity_scan(chain, ka_max / chain.spacing, ctx.count("samples"));
  {
    auto f = ctx.artifact("dispersion.csv");
    CsvWriter csv(f, {"ka", "omega", "linear", "relative_deviation"});
    for (std::size_t i = 0; i < scan.ka.size(); ++i) {
      const double k = scan.ka[i] / chain.spacing;
      csv.cell(scan.ka[i]).cell(chain.omega(k)).cell(chain.sound_speed() * k).cell(scan.deviation[i]).end_row();
    }
  }
  const relativity::SoundBoost boost(ctx.number("boost_velocity"), 1.0);
  const std::size_t n = ctx.count("correlator_sites");
  const double a = ctx.number("correlator_spacing");
  const double mass = ctx.number("correlator_mass");
  const double s = ctx.number("resolution_spacings");
  const std::vector<relativity::EventPair> pairs{relativity::equal_time_pair(ctx.number("separation"))};
  const auto coarse = relativity::boost_invariance_correlator(LatticeModel::scalar_field(n, a, mass), pairs, boost, {false, s * a});
  const auto fine =
      relativity::boost_invariance_correlator(LatticeModel::scalar_field(2 * n, 0.5 * a, mass), pairs, boost, {false, s * 0.5 * a});
  {
    auto f = ctx.artifact("correlator.csv");
    CsvWriter csv(f, {"sites", "spacing", "x1", "t1", "x2", "t2", "x1_boosted", "t1_boosted", "x2_boosted", "t2_boosted",
                      "w_re", "w_im", "w_boosted_re", "w_boosted_im", "relative_deviation"});
    auto rows = [&](std::size_t sites, double spacing, const relativity::BoostInvarianceReport& rep) {
      for (const auto& r : rep.rows) {
        csv.cell(sites).cell(spacing);
        csv.cell(r.original.first.x).cell(r.original.first.t).cell(r.original.second.x).cell(r.original.second.t);
        csv.cell(r.boosted.first.x).cell(r.boosted.first.t).cell(r.boosted.second.x).cell(r.boosted.second.t);
        csv.cell(r.w_original.real()).cell(r.w_original.imag()).cell(r.w_boosted.real()).cell(r.w_boosted.imag());
        csv.cell(r.relative_deviation).end_row();
      }
    };
    rows(n, a, coarse);
    rows(2 * n, 0.5 * a, fine);
  }
  ctx.write_json("report.json", {{"dispersion", {{"ka_max", ka_max}, {"max_deviation", scan.max_deviation}, {"monotone", scan.monotone}}},
                                 {"correlator", coarse.to_json()},
                                 {"refined_correlator", fine.to_json()}});
  ctx.note("refined_correlator_deviation", fine.max_relative_deviation);
  ctx.check("dispersion_deviation", scan.max_deviation);
  ctx.check_true("dispersion_monotone", scan.monotone, "derived");
  ctx.check("correlator_deviation", coarse.max_relative_deviation);
  ctx.check_true("correlator_refinement_decreases", fine.max_relative_deviation < coarse.max_relative_deviation, "derived");
}

// ---------------------------------------------------------------- gauge-invariance

void run_gauge_invariance(RunContext& ctx) {
  const gauge::GaugeGrid g(ctx.count("points"), ctx.number("spacing"));
  const double dt = ctx.number("dt");
  const auto rep = gauge::gauge_invariance_check(g, ctx.count("transforms"), ctx.seed(), dt);

  gauge::GaugeConfiguration cfg;
  cfg.grid = g;
  for (std::uint64_t s = 0; s < 2; ++s) {
    gauge::GaugeSnapshot snap;
    snap.time = dt * static_cast<double>(s);
    snap.rho = gauge::laplacian(g, gauge::random_smooth_field(g, ctx.seed() * 4 + s));
    for (double& v : snap.rho) v = -v;
    snap.phi = gauge::solve_scalar_potential(g, snap.rho);
    snap.a = gauge::coulomb_project(g, gauge::random_smooth_vector_field(g, ctx.seed() * 4 + 2 + s));
    cfg.snapshots.push_back(std::move(snap));
  }
  const auto lambda0 = gauge::random_smooth_field(g, ctx.seed() + 1000);
  auto lambda1 = lambda0;
  const auto drift = gauge::random_smooth_field(g, ctx.seed() + 2000);
  for (std::size_t p = 0; p < lambda1.size(); ++p) lambda1[p] += dt * drift[p];
  const auto moved = gauge::gauge_transform(cfg, {lambda0, lambda1});
  const auto f0 = gauge::field_strength(cfg);
  const auto f1 = gauge::field_strength(moved);
  {
    auto f = ctx.artifact("configuration.csv");
    gauge::write_snapshot_csv(f, g, cfg.snapshots[0]);
  }
  {
    auto f = ctx.artifact("transformed.csv");
    gauge::write_snapshot_csv(f, g, moved.snapshots[0]);
  }
  {
    auto f = ctx.artifact("field_strength.csv");
    gauge::write_field_strength_csv(f, g, f0);
  }

  const std::size_t steps = ctx.count("instantaneity_steps");
  std::vector<gauge::ScalarField> rho(steps, gauge::ScalarField(g.size(), 0.0));
  std::vector<double> times;
  const std::size_t corner = 2;
  for (std::size_t s = 0; s < steps; ++s) {
    times.push_back(dt * static_cast<double>(s));
    rho[s][g.index(corner, corner, corner)] = s >= steps / 2 ? 2.0 : 1.0;
  }
  const std::size_t far = g.points - 1;
  const std::array<double, 3> probe{g.coordinate(far), g.coordinate(far), g.coordinate(far)};
  const auto inst = gauge::instantaneity_demo(g, rho, times, probe);
  {
    auto f = ctx.artifact("instantaneity.csv");
    CsvWriter csv(f, {"time", "probe_phi"});
    for (std::size_t s = 0; s < inst.times.size(); ++s) csv.cell(inst.times[s]).cell(inst.probe_phi[s]).end_row();
  }
  ctx.write_json("report.json", {{"invariance", rep.to_json()},
                                 {"example_field_difference", std::max(gauge::max_abs_difference(f0.e, f1.e),
                                                                       gauge::max_abs_difference(f0.b, f1.b))},
                                 {"instantaneity", inst.to_json()}});
  ctx.note("max_div_b", rep.max_div_b);
  ctx.check("field_strength_difference", rep.max_field_difference);
  ctx.check("projected_divergence", rep.max_projected_divergence);
  ctx.check("poisson_residual", rep.max_poisson_residual);
  ctx.check("instantaneity_error", std::abs(inst.delta_phi - inst.predicted_delta_phi));
  ctx.check_true("same_slice_response", inst.change_time == inst.step_time && inst.delta_phi != 0.0, "derived");
}

// ---------------------------------------------------------------- frame-report

void run_frame_report(RunContext& ctx) {
  relativity::FrameReportConfig c;
  c.field_sites = ctx.count("field_sites");
  c.field_spacing = ctx.number("field_spacing");
  c.field_mass = ctx.number("field_mass");
  c.coherent_shift = Complex(ctx.number("shift_re"), ctx.number("shift_im"));
  c.members = ctx.count("members");
  c.time = ctx.number("time");
  c.dt = ctx.number("dt");
  c.guidance_sign = ctx.number("guidance_sign");
  c.seed = ctx.seed();
  c.boost_velocity = ctx.number("boost_velocity");
  c.correlator_sites = ctx.count("correlator_sites");
  c.correlator_spacing = ctx.number("correlator_spacing");
  c.correlator_mass = ctx.number("correlator_mass");
  c.separation = ctx.number("separation");
  c.resolution_spacings = ctx.number("resolution_spacings");
  c.correlator_bound = ctx.tolerance("correlator_deviation").value;
  c.refine = ctx.flag("refine");
  const auto rep = relativity::frame_prediction_report(c);
  ctx.write_json("report.json", rep.to_json());
  for (const auto& w : rep.equivariance.warnings) ctx.warn(w);
  ctx.note("culprits", rep.culprits);
  ctx.note("refined_deviation", rep.refined_deviation);
  ctx.check_true("preferred_frame_equivariance", rep.equivariance_pass, "derived");
  ctx.check("correlator_deviation", rep.correlator.max_relative_deviation);
  ctx.check_true("correlator_refinement_decreases", rep.refinement_pass, "derived");
  ctx.check_true("frame_report_pass", rep.pass, "derived");
}

// ---------------------------------------------------------------- noncovariance-demo

void run_noncovariance(RunContext& ctx) {
  relativity::NoncovarianceConfig c;
  c.sites = ctx.count("sites");
  c.spacing = ctx.number("spacing");
  c.field_mass = ctx.number("field_mass");
  c.pulse_amplitude = ctx.number("pulse_amplitude");
  c.pulse_width = ctx.number("pulse_width");
  c.pulse_centre = ctx.number("pulse_centre");
  c.offset_amplitude = ctx.number("offset_amplitude");
  c.offset_width = ctx.number("offset_width");
  c.offset_centre = ctx.number("offset_centre");
  c.boost_velocity = ctx.number("boost_velocity");
  c.duration = ctx.number("duration");
  c.samples = ctx.count("samples");
  c.dt = ctx.number("dt");
  c.guidance_sign = ctx.number("guidance_sign");
  const auto rep = relativity::trajectory_noncovariance_demo(c);
  {
    auto f = ctx.artifact("field_trajectories.csv");
    CsvWriter csv(f, {"time", "member", "frame", "site", "position", "value"});
    for (std::size_t t = 0; t < rep.sample_times.size(); ++t) {
      for (std::size_t frame = 0; frame < 2; ++frame) {
        const auto& row = frame == 0 ? rep.bohm_boosted_s0[t] : rep.bohm_frame_s[t];
        for (std::size_t s = 0; s < row.size(); ++s) {
          csv.cell(rep.sample_times[t]).cell(frame).cell(frame == 0 ? "preferred_boosted" : "moving_frame");
          csv.cell(s).cell(rep.sites[s]).cell(row[s]).end_row();
        }
      }
    }
  }
  ctx.write_json("report.json", rep.to_json());
  for (const auto& w : rep.warnings) ctx.warn(w);
  ctx.note("trajectory_mismatch", rep.trajectory_mismatch);
  ctx.note("prediction_mismatch", rep.prediction_mismatch);
  ctx.note("stationary", rep.stationary);
  ctx.check("trajectory_mismatch", rep.trajectory_mismatch);
  ctx.check("mismatch_ratio", rep.ratio);
}

// ---------------------------------------------------------------- definitions

std::vector<Experiment> definitions() {
  std::vector<Experiment> v;
  v.push_back({"two-slit", "", "",
               Json{{"points", 256u}, {"spacing", 0.35}, {"wavenumber", 3.0}, {"packet_width_x", 4.0},
                    {"packet_width_y", 4.0}, {"slit_separation", 6.0}, {"slit_width", 1.5}, {"left_open", true},
                    {"right_open", true}, {"screen_y", 25.0}, {"bins", 64u}, {"dt", 0.02}, {"max_time", 20.0},
                    {"members", 40000u}, {"bundle_size", 64u}, {"min_contrast", 0.5}},
               {{"fringe_minima", tol(3.0, ">=", "derived", "fringe minima with contrast above min_contrast")},
                {"symmetry_l1", tol(0.02, "<", "derived", "L1 asymmetry of the screen histogram")}},
               run_two_slit});
  v.push_back({"pointer", "", "",
               Json{{"points", 128u}, {"spacing", 0.16}, {"weight_left", 0.8}, {"branch_offset", 4.0},
                    {"branch_width", 2.0}, {"coupling", 1.0}, {"duration", 1.0}, {"dt", 0.01},
                    {"pointer_mass", 100.0}, {"pointer_width", 0.5}, {"runs", 10000u}, {"bins", 64u}},
               {{"born_deviation_sigmas", tol(3.0, "<", "derived", "|f_left - w_left| in binomial standard deviations")},
                {"branch_separation", tol(bohm::kRequiredBranchSeparation, ">", "derived", "pointer branch separation in widths")}},
               run_pointer});
  v.push_back({"equivariance-particle", "", "",
               Json{{"points", 1024u}, {"spacing", 0.1}, {"sigma", 1.0}, {"x0", -8.0}, {"k0", 1.5},
                    {"spread_factor", 3.0}, {"members", 100000u}, {"steps", 400u}, {"record_every", 10u},
                    {"recorded_members", 32u}},
               {{"histogram_l1", tol(0.03, "<", "derived", "L1 distance between ensemble histogram and |psi(t)|^2")}},
               run_equivariance_particle});
  v.push_back({"equivariance-field", "", "",
               Json{{"sites", 8u}, {"spacing", 1.0}, {"field_mass", 0.5}, {"shift_re", 1.0}, {"shift_im", -0.5},
                    {"members", 20000u}, {"time", 2.5}, {"dt", 0.05}, {"guidance_sign", 1.0}, {"record_every", 5u},
                    {"recorded_members", 8u}},
               {{"max_mean_z", tol(3.0, "<", "derived", "largest per-mode mean offset in standard errors")},
                {"variance_mismatch_over_bound", tol(1.0, "<", "derived", "largest relative variance mismatch over 3 sqrt(2/M)")},
                {"max_mode_l1", tol(0.1, "<", "derived", "largest per-mode histogram L1 distance")}},
               run_equivariance_field});
  v.push_back({"fock-spectrum", "", "",
               Json{{"kind", "chain"}, {"sites", 2u}, {"spacing", 1.0}, {"atom_mass", 1.0}, {"spring", 1.0},
                    {"pinning", 1.0}, {"field_mass", 1.0}, {"levels", 10u}},
               {{"max_relative_deviation", tol(1e-5, "<", "derived", "brute-force levels against the Fock tower")}},
               run_fock_spectrum});
  v.push_back({"dispersion-scan", "", "",
               Json{{"chain_sites", 64u}, {"chain_spacing", 1.0}, {"atom_mass", 1.0}, {"spring", 1.0},
                    {"ka_max", 0.2}, {"samples", 256u}, {"boost_velocity", 0.3}, {"correlator_sites", 256u},
                    {"correlator_spacing", 1.0}, {"correlator_mass", 0.05}, {"separation", 32.0},
                    {"resolution_spacings", 2.0}},
               {{"dispersion_deviation", tol(0.01, "<", "paper", "relative deviation from omega = c_s k for ka <= ka_max")},
                {"correlator_deviation", tol(0.05, "<", "derived", "relative change of the two-point function under the boost")}},
               run_dispersion_scan});
  v.push_back({"gauge-invariance", "", "",
               Json{{"points", 16u}, {"spacing", 1.0}, {"transforms", 100u}, {"dt", 0.1}, {"instantaneity_steps", 6u}},
               {{"field_strength_difference", tol(1e-9, "<", "trivial", "max |(E,B) change| under gauge transforms")},
                {"projected_divergence", tol(1e-10, "<", "trivial", "max |div A| after Coulomb projection")},
                {"poisson_residual", tol(1e-8, "<", "derived", "max |lap phi + rho| for the periodic solve")},
                {"instantaneity_error", tol(1e-8, "<", "derived", "probe potential step against the kernel prediction")}},
               run_gauge_invariance});
  v.push_back({"frame-report", "", "",
               Json{{"field_sites", 8u}, {"field_spacing", 1.0}, {"field_mass", 0.5}, {"shift_re", 1.0},
                    {"shift_im", -0.5}, {"members", 20000u}, {"time", 2.5}, {"dt", 0.05}, {"guidance_sign", 1.0},
                    {"boost_velocity", 0.3}, {"correlator_sites", 256u}, {"correlator_spacing", 1.0},
                    {"correlator_mass", 0.05}, {"separation", 32.0}, {"resolution_spacings", 2.0}, {"refine", true}},
               {{"correlator_deviation", tol(0.05, "<", "derived", "relative change of the two-point function under the boost")}},
               run_frame_report});
  v.push_back({"noncovariance-demo", "", "",
               Json{{"sites", 256u}, {"spacing", 1.0}, {"field_mass", 0.05}, {"pulse_amplitude", 1.0},
                    {"pulse_width", 8.0}, {"pulse_centre", 0.0}, {"offset_amplitude", 0.5}, {"offset_width", 4.0},
                    {"offset_centre", 10.0}, {"boost_velocity", 0.3}, {"duration", 20.0}, {"samples", 11u},
                    {"dt", 0.02}, {"guidance_sign", 1.0}},
               {{"trajectory_mismatch", tol(0.0, ">", "derived", "RMS difference of frame-S and boosted preferred-frame Bohmian fields")},
                {"mismatch_ratio", tol(10.0, ">", "derived", "trajectory mismatch over prediction mismatch")}},
               run_noncovariance});
  return v;
}

}  // namespace

const std::vector<Experiment>& catalog() {
  static const std::vector<Experiment> entries = [] {
    auto defs = definitions();
    const auto meta = Json::parse(generated::kCatalogJson);
    std::vector<Experiment> out;
    for (const auto& m : meta) {
      const auto name = m.at("name").get<std::string>();
      auto it = std::find_if(defs.begin(), defs.end(), [&](const Experiment& e) { return e.name == name; });
      if (it == defs.end()) throw std::logic_error("catalog entry without implementation: " + name);
      it->description = m.at("description").get<std::string>();
      it->reference = m.at("reference").get<std::string>();
      out.push_back(std::move(*it));
    }
    return out;
  }();
  return entries;
}

}  // namespace pilot::lab
