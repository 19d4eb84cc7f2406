#include "pilot/field/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pilot/error.hpp"
#include "pilot/parallel.hpp"

namespace pilot::field {

namespace {

using Velocity = FieldDynamics::Velocity;

struct Stages {
  Velocity start;
  Velocity mid;
  Velocity end;
};

bool rk4(const Stages& s, double dt, double sign, Eigen::VectorXd& q) {
  Eigen::VectorXd k1, k2, k3, k4;
  double d = 0.0;
  if (!s.start(q, k1, d)) return false;
  if (!s.mid(q + 0.5 * dt * sign * k1, k2, d)) return false;
  if (!s.mid(q + 0.5 * dt * sign * k2, k3, d)) return false;
  if (!s.end(q + dt * sign * k3, k4, d)) return false;
  const Eigen::VectorXd next = q + dt * sign / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  if (!next.allFinite()) return false;
  q = next;
  return true;
}

/// Returns 0 on success, 1 after a successful retry, 2 when the member must be flagged.
int step_member(const FieldDynamics& dyn, const Stages& coarse, std::vector<Stages>& fine, double t, double dt,
                double sign, Eigen::VectorXd& q) {
  Eigen::VectorXd trial = q;
  if (rk4(coarse, dt, sign, trial)) {
    q = trial;
    return 0;
  }
  if (fine.empty()) {
    const double h = dt / 4.0;
    for (int i = 0; i < 4; ++i) {
      const double t0 = t + i * h;
      fine.push_back({dyn.at_time(t0), dyn.at_time(t0 + 0.5 * h), dyn.at_time(t0 + h)});
    }
  }
  trial = q;
  for (const auto& f : fine) {
    if (!rk4(f, dt / 4.0, sign, trial)) return 2;
  }
  q = trial;
  return 1;
}

void check_step(double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidInput("time step must be positive and finite");
}

}  // namespace

FieldTrajectory integrate_field_trajectory(const FieldDynamics& dynamics, const FieldConfiguration& phi0,
                                           double dt, std::size_t steps, const FieldTrajectoryOptions& options) {
  if (dt == 0.0 || !std::isfinite(dt)) throw InvalidInput("time step must be nonzero and finite");
  const auto& model = dynamics.model();
  phi0.validate(model);
  if (std::abs(phi0.time - dynamics.start_time()) > 1e-12 * std::max(1.0, std::abs(phi0.time))) {
    throw StaleEnsemble("initial configuration time differs from the wavefunctional time");
  }
  const lattice::ModeBasis basis(model.sites);
  Eigen::VectorXd q = lattice::to_mode_coordinates(model, basis, phi0.values);
  FieldTrajectory out;
  out.history.push_back(phi0);
  double t = phi0.time;
  for (std::size_t s = 0; s < steps; ++s) {
    if (!out.flagged) {
      const Stages coarse{dynamics.at_time(t), dynamics.at_time(t + 0.5 * dt), dynamics.at_time(t + dt)};
      std::vector<Stages> fine;
      const int r = step_member(dynamics, coarse, fine, t, dt, options.guidance_sign, q);
      if (r == 1) ++out.retried;
      if (r == 2) {
        out.flagged = true;
        std::ostringstream msg;
        msg << "trajectory met a wavefunctional node at t=" << t << " and was frozen";
        out.warnings.push_back(msg.str());
      }
    }
    t = phi0.time + static_cast<double>(s + 1) * dt;
    const bool last = s + 1 == steps;
    if (last || (options.record_every > 0 && (s + 1) % options.record_every == 0)) {
      out.history.push_back({lattice::to_site_values(model, basis, q), t});
    }
  }
  return out;
}

std::size_t FieldEnsemble::flagged_count() const noexcept {
  return static_cast<std::size_t>(std::count(flagged.begin(), flagged.end(), true));
}

void advance_field_ensemble(const FieldDynamics& dynamics, FieldEnsemble& ensemble, double dt,
                            std::size_t steps, const FieldTrajectoryOptions& options) {
  check_step(dt);
  if (std::abs(ensemble.time - dynamics.start_time()) > 1e-9 * std::max(1.0, std::abs(ensemble.time)) &&
      ensemble.time < dynamics.start_time()) {
    throw StaleEnsemble("ensemble time precedes the wavefunctional time");
  }
  if (static_cast<std::size_t>(ensemble.modes.rows()) != dynamics.model().sites) {
    throw ShapeMismatch("ensemble mode count differs from the model");
  }
  ensemble.flagged.resize(ensemble.size(), false);
  const double t_start = ensemble.time;
  for (std::size_t s = 0; s < steps; ++s) {
    const double t = t_start + static_cast<double>(s) * dt;
    const Stages coarse{dynamics.at_time(t), dynamics.at_time(t + 0.5 * dt), dynamics.at_time(t + dt)};
    std::vector<int> result(ensemble.size(), 0);
    parallel_for(
        ensemble.size(),
        [&](std::size_t i) {
          if (ensemble.flagged[i]) return;
          Eigen::VectorXd q = ensemble.modes.col(static_cast<Eigen::Index>(i));
          std::vector<Stages> fine;
          result[i] = step_member(dynamics, coarse, fine, t, dt, options.guidance_sign, q);
          if (result[i] < 2) ensemble.modes.col(static_cast<Eigen::Index>(i)) = q;
        },
        256);
    for (std::size_t i = 0; i < result.size(); ++i) {
      if (result[i] == 1) ++ensemble.retried;
      if (result[i] == 2) ensemble.flagged[i] = true;
    }
    ensemble.time = t_start + static_cast<double>(s + 1) * dt;
  }
}

qm::HamiltonianSpec site_hamiltonian(const lattice::LatticeModel& model, const qm::SpatialGrid& grid) {
  if (grid.dimension() != static_cast<int>(model.sites)) {
    throw ShapeMismatch("grid dimension must equal the number of sites");
  }
  const Eigen::MatrixXd k = model.stiffness();
  qm::HamiltonianSpec h;
  h.masses = std::vector<double>(model.sites, model.site_mass());
  h.hbar = model.hbar;
  h.potential = qm::sample_potential(grid, [&](double x0, double x1) {
    Eigen::VectorXd phi(static_cast<Eigen::Index>(model.sites));
    phi(0) = x0;
    if (model.sites == 2) phi(1) = x1;
    return 0.5 * phi.dot(k * phi);
  });
  return h;
}

std::vector<FieldConfiguration> grid_field_trajectory(const FockSuperposition& psi, const qm::SpatialGrid& grid,
                                                      const FieldConfiguration& phi0, double dt,
                                                      std::size_t steps, std::size_t substeps) {
  const auto& model = psi.model();
  phi0.validate(model);
  const auto psi0 = site_grid_wavefunction(psi, grid, phi0.time);
  const auto h = site_hamiltonian(model, grid);
  std::vector<double> x(phi0.values.data(), phi0.values.data() + phi0.values.size());
  bohm::TrajectoryEnsemble e(grid.dimension(), x, phi0.time, 0);
  bohm::IntegrationOptions opts;
  opts.substeps = substeps;
  opts.record_every = 1;
  const auto r = bohm::integrate_trajectories(psi0, h, e, dt, steps, opts);
  std::vector<FieldConfiguration> out;
  for (std::size_t s = 0; s < r.record.times.size(); ++s) {
    FieldConfiguration c;
    c.time = r.record.times[s];
    c.values.resize(static_cast<Eigen::Index>(model.sites));
    for (std::size_t a = 0; a < model.sites; ++a) c.values(static_cast<Eigen::Index>(a)) = r.record.at(s, 0)[a];
    out.push_back(c);
  }
  return out;
}

}  // namespace pilot::field
