#include "pilot/bohm/integrator.hpp"

#include <cmath>
#include <cstdio>
#include <variant>

#include "pilot/error.hpp"
#include "pilot/parallel.hpp"
#include "pilot/qm/evolution.hpp"

namespace pilot::bohm {

struct BohmIntegrator::Stepper {
  std::variant<qm::SplitStepPropagator, qm::EigenbasisPropagator> prop;
  std::size_t per_half;  // propagator steps per half of the stepper's interval
};

namespace {

bool same_time(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)); }

using Pos = std::array<double, 2>;

// One RK4 step with fields at t, t + h/2, t + h.
bool rk4(const qm::SpatialGrid& grid, int dim, const GuidanceField& f0, const GuidanceField& fm,
         const GuidanceField& f1, double h, Pos& x) {
  const auto d = static_cast<std::size_t>(dim);
  auto eval = [&](const GuidanceField& f, const Pos& p, Pos& v) {
    Pos q = p;
    for (std::size_t a = 0; a < d; ++a) q[a] = grid.wrap(q[a]);
    const auto s = f.sample(std::span<const double>(q.data(), d));
    v = s.velocity;
    return s.resolved;
  };
  Pos k1{}, k2{}, k3{}, k4{}, y{};
  if (!eval(f0, x, k1)) return false;
  for (std::size_t a = 0; a < d; ++a) y[a] = x[a] + 0.5 * h * k1[a];
  if (!eval(fm, y, k2)) return false;
  for (std::size_t a = 0; a < d; ++a) y[a] = x[a] + 0.5 * h * k2[a];
  if (!eval(fm, y, k3)) return false;
  for (std::size_t a = 0; a < d; ++a) y[a] = x[a] + h * k3[a];
  if (!eval(f1, y, k4)) return false;
  Pos out = x;
  for (std::size_t a = 0; a < d; ++a) {
    out[a] = grid.wrap(x[a] + h / 6.0 * (k1[a] + 2.0 * k2[a] + 2.0 * k3[a] + k4[a]));
  }
  if (!grid.contains(std::span<const double>(out.data(), d))) return false;
  x = out;
  return true;
}

}  // namespace

BohmIntegrator::BohmIntegrator(qm::WaveFunction psi0, qm::HamiltonianSpec h, double dt,
                               IntegrationOptions options)
    : psi_(std::move(psi0)), h_(std::move(h)), dt_(dt), options_(options) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidInput("trajectory dt must be positive and finite");
  if (options_.substeps == 0) throw InvalidInput("substeps must be at least 1");
  h_.validate(psi_.grid(), psi_.components());
  const double sub = dt_ / (2.0 * static_cast<double>(options_.substeps));
  if (psi_.grid().periodic()) {
    stepper_.reset(new Stepper{qm::SplitStepPropagator(psi_.grid(), psi_.components(), h_, sub),
                               options_.substeps});
  } else {
    stepper_.reset(new Stepper{qm::EigenbasisPropagator(psi_.grid(), psi_.components(), h_, sub),
                               options_.substeps});
  }
  current_ = std::make_unique<GuidanceField>(psi_, h_, options_.node_threshold);
}

BohmIntegrator::~BohmIntegrator() = default;
BohmIntegrator::BohmIntegrator(BohmIntegrator&&) noexcept = default;
BohmIntegrator& BohmIntegrator::operator=(BohmIntegrator&&) noexcept = default;

void BohmIntegrator::advance_psi(qm::WaveFunction& psi, const Stepper& s, std::size_t steps) const {
  std::visit([&](const auto& p) { p.advance(psi, steps); }, s.prop);
}

const BohmIntegrator::Stepper& BohmIntegrator::fine_stepper() {
  if (!fine_) {
    // Interval dt/4: halves of dt/8.
    const double sub = dt_ / (8.0 * static_cast<double>(options_.substeps));
    if (psi_.grid().periodic()) {
      fine_.reset(new Stepper{qm::SplitStepPropagator(psi_.grid(), psi_.components(), h_, sub),
                              options_.substeps});
    } else {
      fine_.reset(new Stepper{qm::EigenbasisPropagator(psi_.grid(), psi_.components(), h_, sub),
                              options_.substeps});
    }
  }
  return *fine_;
}

void BohmIntegrator::step(TrajectoryEnsemble& ensemble) {
  const auto& grid = psi_.grid();
  if (ensemble.dimension != grid.dimension()) throw ShapeMismatch("ensemble and grid dimensions differ");
  if (!same_time(ensemble.time, psi_.time())) {
    throw StaleEnsemble("ensemble time differs from wavefunction time");
  }
  const int dim = grid.dimension();
  const auto d = static_cast<std::size_t>(dim);
  const qm::WaveFunction start = psi_;

  qm::WaveFunction mid = psi_;
  advance_psi(mid, *stepper_, stepper_->per_half);
  qm::WaveFunction end = mid;
  advance_psi(end, *stepper_, stepper_->per_half);
  const GuidanceField f_mid(mid, h_, options_.node_threshold);
  auto f_end = std::make_unique<GuidanceField>(end, h_, options_.node_threshold);

  const std::size_t count = ensemble.size();
  std::vector<std::uint8_t> failed(count, 0);
  parallel_for(count, [&](std::size_t i) {
    if (ensemble.status[i] != MemberStatus::active) return;
    Pos x{};
    const auto p = ensemble.position(i);
    for (std::size_t a = 0; a < d; ++a) x[a] = p[a];
    if (rk4(grid, dim, *current_, f_mid, *f_end, dt_, x)) {
      for (std::size_t a = 0; a < d; ++a) p[a] = x[a];
    } else {
      failed[i] = 1;
    }
  });

  std::vector<std::size_t> retry;
  for (std::size_t i = 0; i < count; ++i) {
    if (failed[i]) retry.push_back(i);
  }
  if (!retry.empty()) {
    retried_ += retry.size();
    // Snapshots at t + j dt/8, j = 0..8.
    const Stepper& fine = fine_stepper();
    std::vector<std::unique_ptr<GuidanceField>> fields(9);
    qm::WaveFunction w = start;
    for (std::size_t j = 1; j < 9; ++j) {
      advance_psi(w, fine, fine.per_half);
      if (j != 4 && j != 8) fields[j] = std::make_unique<GuidanceField>(w, h_, options_.node_threshold);
    }
    auto field_at = [&](std::size_t j) -> const GuidanceField& {
      if (j == 0) return *current_;
      if (j == 4) return f_mid;
      if (j == 8) return *f_end;
      return *fields[j];
    };
    for (std::size_t i : retry) {
      Pos x{};
      const auto p = ensemble.position(i);
      for (std::size_t a = 0; a < d; ++a) x[a] = p[a];
      bool ok = true;
      for (std::size_t q = 0; q < 4 && ok; ++q) {
        ok = rk4(grid, dim, field_at(2 * q), field_at(2 * q + 1), field_at(2 * q + 2), dt_ / 4.0, x);
      }
      if (ok) {
        for (std::size_t a = 0; a < d; ++a) p[a] = x[a];
      } else {
        ensemble.status[i] = MemberStatus::flagged;
      }
    }
  }

  psi_ = std::move(end);
  current_ = std::move(f_end);
  ensemble.time = psi_.time();
}

IntegrationResult integrate_trajectories(const qm::WaveFunction& psi0, const qm::HamiltonianSpec& h,
                                         const TrajectoryEnsemble& ensemble0, double dt,
                                         std::size_t steps, const IntegrationOptions& options) {
  ensemble0.validate(psi0.grid());
  if (!same_time(ensemble0.time, psi0.time())) {
    throw StaleEnsemble("initial ensemble time differs from wavefunction time");
  }
  BohmIntegrator integrator(psi0, h, dt, options);
  IntegrationResult out{ensemble0, psi0, {}, 0, 0, {}};
  out.record.dimension = ensemble0.dimension;
  const std::size_t recorded = std::min(options.record_members, ensemble0.size());
  for (std::size_t m = 0; m < recorded; ++m) out.record.members.push_back(m);
  out.record.append(out.ensemble);
  for (std::size_t s = 1; s <= steps; ++s) {
    integrator.step(out.ensemble);
    const bool record = options.record_every > 0 ? (s % options.record_every == 0) : (s == steps);
    if (record) out.record.append(out.ensemble);
  }
  if (steps > 0 && options.record_every > 0 && steps % options.record_every != 0) {
    out.record.append(out.ensemble);
  }
  out.psi = integrator.psi();
  out.retried = integrator.retried();
  out.flagged = out.ensemble.count(MemberStatus::flagged);
  const double fraction = static_cast<double>(out.flagged) / static_cast<double>(out.ensemble.size());
  if (fraction > kFlaggedWarningFraction) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "%zu of %zu members (%.3g%%) stayed unresolved near nodes and were frozen",
                  out.flagged, out.ensemble.size(), 100.0 * fraction);
    out.warnings.emplace_back(buf);
  }
  return out;
}

}  // namespace pilot::bohm
