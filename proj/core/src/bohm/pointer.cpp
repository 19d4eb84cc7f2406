#include "pilot/bohm/pointer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pilot/bohm/integrator.hpp"
#include "pilot/bohm/sampling.hpp"
#include "pilot/error.hpp"

namespace pilot::bohm {

PointerResult pointer_measurement(const qm::WaveFunction& system_psi, const PointerConfig& cfg) {
  const auto& sg = system_psi.grid();
  if (sg.dimension() != 1) throw InvalidInput("pointer measurement needs a 1D system state");
  if (system_psi.components() != 1) throw InvalidInput("pointer measurement needs a single component");
  if (!sg.periodic()) throw UnsupportedConfiguration("pointer measurement runs on periodic grids");
  if (!(cfg.duration > 0.0) || !(cfg.dt > 0.0) || !(cfg.pointer_width > 0.0) ||
      !(cfg.pointer_mass > 0.0) || !(cfg.system_mass > 0.0)) {
    throw InvalidInput("pointer duration, dt, width and masses must be positive");
  }
  if (cfg.runs == 0) throw InvalidInput("pointer measurement needs at least one run");
  const auto steps = static_cast<std::size_t>(std::llround(cfg.duration / cfg.dt));
  if (steps == 0 || std::abs(static_cast<double>(steps) * cfg.dt - cfg.duration) > 1e-9 * cfg.duration) {
    throw InvalidInput("pointer duration must be an integer multiple of dt");
  }

  const qm::SpatialGrid grid(2, sg.points_per_axis(), sg.spacing());
  const std::size_t n = sg.points_per_axis();
  qm::WaveFunction psi(grid);
  const double w = cfg.pointer_width;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double y = grid.coordinate(j);
      psi(0, grid.flatten(i, j)) = system_psi(0, i) * std::exp(-y * y / (4.0 * w * w));
    }
  }
  psi.normalize();

  qm::HamiltonianSpec h;
  h.masses = {cfg.system_mass, cfg.pointer_mass};
  h.hbar = cfg.hbar;
  h.momentum_coupling = qm::MomentumCoupling{0, 1, cfg.coupling};

  const auto e0 = sample_born(psi, cfg.runs, cfg.seed);
  const auto r = integrate_trajectories(psi, h, e0, cfg.dt, steps);

  PointerResult out;
  out.runs = cfg.runs;
  out.flagged = r.flagged;
  out.counts.assign(2, 0);
  for (std::size_t m = 0; m < r.ensemble.size(); ++m) {
    const double y = r.ensemble.position(m)[1];
    out.final_pointer.push_back(y);
    ++out.counts[y < 0.0 ? 0 : 1];
  }
  for (std::size_t c : out.counts) {
    out.frequencies.push_back(static_cast<double>(c) / static_cast<double>(cfg.runs));
  }

  // Branch diagnostic from the pointer marginal of psi(T).
  const double spread = cfg.hbar * cfg.duration / (2.0 * cfg.pointer_mass * w * w);
  out.pointer_width = w * std::sqrt(1.0 + spread * spread);
  const auto rho = r.psi.density();
  double mass[2] = {0.0, 0.0}, first[2] = {0.0, 0.0};
  for (std::size_t p = 0; p < rho.size(); ++p) {
    const double y = grid.point(p)[1];
    const int side = y < 0.0 ? 0 : 1;
    mass[side] += rho[p] * grid.measure();
    first[side] += y * rho[p] * grid.measure();
  }
  const double total = mass[0] + mass[1];
  double nearest = std::numeric_limits<double>::infinity();
  for (int s = 0; s < 2; ++s) {
    out.born.push_back(mass[s] / total);
    if (mass[s] / total > 1e-3) nearest = std::min(nearest, std::abs(first[s] / mass[s]));
  }
  out.separation = 2.0 * nearest / out.pointer_width;
  if (!(out.separation > kRequiredBranchSeparation)) {
    throw InconclusiveMeasurement(out.separation, kRequiredBranchSeparation);
  }
  return out;
}

}  // namespace pilot::bohm
