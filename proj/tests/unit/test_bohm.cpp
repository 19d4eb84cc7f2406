#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pilot/bohm/equivariance.hpp"
#include "pilot/bohm/guidance.hpp"
#include "pilot/bohm/integrator.hpp"
#include "pilot/bohm/nonlocality.hpp"
#include "pilot/bohm/pointer.hpp"
#include "pilot/bohm/sampling.hpp"
#include "pilot/bohm/two_slit.hpp"
#include "pilot/error.hpp"
#include "pilot/qm/eigensolver.hpp"
#include "pilot/qm/observables.hpp"
#include "pilot/rng.hpp"

using namespace pilot;
using namespace pilot::bohm;
using qm::Complex;
using qm::SpatialGrid;
using qm::WaveFunction;

namespace {

constexpr double kPi = std::numbers::pi;

WaveFunction packet(const SpatialGrid& g, double sigma, double x0, double k0) {
  auto psi = WaveFunction::from_function(g, [&](double x, double) {
    return std::exp(-(x - x0) * (x - x0) / (4.0 * sigma * sigma)) * std::polar(1.0, k0 * x);
  });
  psi.normalize();
  return psi;
}

TrajectoryEnsemble mirrored(const TrajectoryEnsemble& half, double centre) {
  std::vector<double> pos = half.positions;
  for (double x : half.positions) pos.push_back(2.0 * centre - x);
  return TrajectoryEnsemble(1, std::move(pos), half.time, half.seed);
}

}  // namespace

TEST_CASE("real wavefunction carries no current") {
  SpatialGrid g(1, 128, 0.1);
  qm::HamiltonianSpec h;
  auto psi = WaveFunction::from_function(g, [](double x, double) { return std::exp(-x * x / 2.0); });
  psi.normalize();
  GuidanceField f(psi, h);
  RandomStream rng(1, 0);
  for (int i = 0; i < 200; ++i) {
    const double x = -3.0 + 6.0 * rng.uniform();
    CHECK(std::abs(f.velocity(std::span<const double>(&x, 1))[0]) < 1e-10);
  }
}

TEST_CASE("plane wave velocity is hbar k over m") {
  SpatialGrid g(1, 64, 0.25);
  const double k = 2.0 * kPi * 3.0 / g.length();
  qm::HamiltonianSpec h;
  h.masses = {2.0};
  h.hbar = 0.7;
  auto psi = WaveFunction::from_function(g, [&](double x, double) { return std::polar(1.0, k * x); });
  GuidanceField f(psi, h);
  for (double x : {-7.9, -1.234, 0.0, 0.1, 3.3, 7.95}) {
    CHECK(f.velocity(std::span<const double>(&x, 1))[0] == doctest::Approx(h.hbar * k / 2.0).epsilon(1e-8));
  }
  const auto grid_v = f.grid_velocities();
  for (double v : grid_v) CHECK(v == doctest::Approx(h.hbar * k / 2.0).epsilon(1e-10));
}

TEST_CASE("two-component state with one occupied component matches the scalar result") {
  SpatialGrid g(1, 128, 0.1);
  qm::HamiltonianSpec h;
  const auto one = packet(g, 0.8, 0.5, 1.7);
  WaveFunction two(g, 2);
  for (std::size_t p = 0; p < g.size(); ++p) two(1, p) = one(0, p);
  GuidanceField f1(one, h), f2(two, h);
  for (double x : {-1.0, 0.0, 0.37, 1.2, 2.5}) {
    const std::span<const double> pos(&x, 1);
    CHECK(f2.velocity(pos)[0] == doctest::Approx(f1.velocity(pos)[0]).epsilon(1e-14));
  }
}

TEST_CASE("velocity at a node raises node proximity with the density") {
  SpatialGrid g(1, 64, 0.25);
  qm::HamiltonianSpec h;
  auto psi = WaveFunction::from_function(g, [](double x, double) { return x * std::exp(-x * x / 2.0); });
  psi.normalize();
  GuidanceField f(psi, h);
  const double x = 0.0;
  try {
    (void)f.velocity(std::span<const double>(&x, 1));
    FAIL("expected NodeProximity");
  } catch (const NodeProximity& e) {
    CHECK(e.density() <= f.threshold());
  }
}

TEST_CASE("hard-wall guidance uses the sine derivative") {
  SpatialGrid g(1, 63, 0.125, qm::Boundary::hard_wall);
  qm::HamiltonianSpec h;
  const double len = g.length();
  const double k = 2.0;
  // Standing wave envelope times a travelling phase: v = k exactly where psi is nonzero.
  auto psi = WaveFunction::from_function(g, [&](double x, double) {
    const double env = std::sin(kPi * (x - g.lower()) / len);
    return std::pow(env, 6) * std::polar(1.0, k * x);
  });
  GuidanceField f(psi, h);
  for (double x : {-2.0, -0.5, 0.0, 1.3}) {
    CHECK(f.velocity(std::span<const double>(&x, 1))[0] == doctest::Approx(k).epsilon(1e-3));
  }
  const auto v = f.grid_velocities();
  for (std::size_t p = 16; p < 48; ++p) CHECK(v[p] == doctest::Approx(k).epsilon(1e-6));
}

TEST_CASE("Born sampling of a uniform density passes KS") {
  SpatialGrid g(1, 64, 0.5);
  auto psi = WaveFunction::from_function(g, [](double, double) { return Complex(1.0, 0.0); });
  psi.normalize();
  const std::size_t m = 20000;
  const auto e = sample_born(psi, m, 42);
  REQUIRE(e.size() == m);
  const auto s = equivariance_statistic(e, psi);
  CHECK(s.ks < 1.63 / std::sqrt(static_cast<double>(m)));
}

TEST_CASE("Born sampling of a one-cell density stays in that cell") {
  SpatialGrid g(1, 32, 0.5);
  WaveFunction psi(g);
  psi(0, 20) = 1.0;
  psi.normalize();
  const auto e = sample_born(psi, 1000, 3);
  const double c = g.coordinate(20);
  for (double x : e.positions) {
    CHECK(x >= c - 0.25);
    CHECK(x < c + 0.25);
  }
}

TEST_CASE("Born sampling is deterministic and validates input") {
  SpatialGrid g(2, 32, 0.3);
  auto psi = WaveFunction::from_function(g, [](double x, double y) { return std::exp(-(x * x + y * y)); });
  psi.normalize();
  const auto a = sample_born(psi, 5000, 99);
  const auto b = sample_born(psi, 5000, 99);
  const auto c = sample_born(psi, 5000, 100);
  CHECK(a.positions == b.positions);
  CHECK(a.positions != c.positions);
  CHECK_THROWS_AS(sample_born(psi, 0, 1), InvalidInput);
  WaveFunction raw = psi;
  for (auto& v : raw.amplitudes()) v *= 2.0;
  CHECK_THROWS_AS(sample_born(raw, 10, 1), InvalidInput);
}

TEST_CASE("equivariance statistic on fresh and shifted ensembles") {
  SpatialGrid g(1, 256, 0.1);
  const auto psi = packet(g, 1.0, 0.0, 0.0);
  auto e = sample_born(psi, 100000, 7);
  CHECK(equivariance_statistic(e, psi).l1 < 0.02);

  for (auto& x : e.positions) x = g.wrap(x + 0.5 * g.length());
  CHECK(equivariance_statistic(e, psi).l1 > 1.5);

  e.time = 1.0;
  CHECK_THROWS_AS(equivariance_statistic(e, psi), StaleEnsemble);
}

TEST_CASE("equivariance statistic in 2D") {
  SpatialGrid g(2, 64, 0.2);
  auto psi = WaveFunction::from_function(g, [](double x, double y) {
    return std::exp(-(x - 0.5) * (x - 0.5) / 4.0 - y * y / 2.0);
  });
  psi.normalize();
  const auto e = sample_born(psi, 50000, 11);
  const auto s = equivariance_statistic(e, psi);
  CHECK(s.l1 < 0.03);
  CHECK(s.ks_per_axis.size() == 2);
  CHECK(s.ks < 1.63 / std::sqrt(50000.0));
}

TEST_CASE("stationary ground state ensemble stays put") {
  SpatialGrid g(1, 64, 0.15, qm::Boundary::hard_wall);
  qm::HamiltonianSpec h;
  h.potential = qm::harmonic_potential(g, 1.0, 1.0);
  const auto eig = qm::brute_force_eigens(g, 1, h, 1);
  WaveFunction psi = eig[0].state;
  psi.normalize();
  const auto e0 = sample_born(psi, 500, 5);
  const auto r = integrate_trajectories(psi, h, e0, 0.05, 100);
  double worst = 0.0;
  for (std::size_t i = 0; i < e0.positions.size(); ++i) {
    worst = std::max(worst, std::abs(r.ensemble.positions[i] - e0.positions[i]));
  }
  CHECK(worst < 1e-8);
  CHECK(r.ensemble.time == doctest::Approx(5.0));
  CHECK(r.flagged == 0);
}

TEST_CASE("free packet trajectories follow the closed-form flow") {
  SpatialGrid g(1, 1024, 0.1);
  qm::HamiltonianSpec h;
  const double sigma = 1.0, x0 = -10.0, p0 = 2.0;
  const auto psi = packet(g, sigma, x0, p0);
  const auto e0 = mirrored(sample_born(psi, 2000, 21), x0);
  const double t = 5.0;
  const auto r = integrate_trajectories(psi, h, e0, 0.01, 500);
  double mean = 0.0;
  for (double x : r.ensemble.positions) mean += x;
  mean /= static_cast<double>(r.ensemble.size());
  CHECK(mean == doctest::Approx(x0 + p0 * t).epsilon(1e-3));

  const double scale = std::sqrt(1.0 + std::pow(t / (2.0 * sigma * sigma), 2));
  double worst = 0.0;
  for (std::size_t i = 0; i < e0.size(); ++i) {
    const double expect = x0 + p0 * t + (e0.positions[i] - x0) * scale;
    worst = std::max(worst, std::abs(r.ensemble.positions[i] - expect));
  }
  CHECK(worst < 1e-3);
}

TEST_CASE("trajectories from two symmetric packets never cross the axis") {
  SpatialGrid g(1, 512, 0.1);
  qm::HamiltonianSpec h;
  auto psi = WaveFunction::from_function(g, [](double x, double) {
    auto bump = [](double u, double k) { return std::exp(-u * u / 2.0) * std::polar(1.0, k * u); };
    return bump(x + 6.0, 2.0) + bump(x - 6.0, -2.0);
  });
  psi.normalize();
  const auto e0 = sample_born(psi, 2000, 8);
  IntegrationOptions opt;
  opt.record_every = 1;
  const auto r = integrate_trajectories(psi, h, e0, 0.005, 1200, opt);
  std::size_t crossings = 0;
  for (std::size_t t = 0; t < r.record.times.size(); ++t) {
    for (std::size_t m = 0; m < r.record.members.size(); ++m) {
      if (r.record.at(t, m)[0] * e0.positions[m] < 0.0) ++crossings;
    }
  }
  CHECK(crossings == 0);
  CHECK(r.record.times.size() == 1201);
}

TEST_CASE("evolved free packet ensemble stays Born distributed") {
  SpatialGrid g(1, 1024, 0.1);
  qm::HamiltonianSpec h;
  const double sigma = 1.0;
  const auto psi = packet(g, sigma, -8.0, 1.5);
  const auto e0 = sample_born(psi, 100000, 2024);
  // Width reaches three times its initial value at t = 2 sqrt(8) m sigma^2.
  const double t = 2.0 * std::sqrt(8.0);
  const std::size_t steps = 400;
  const auto r = integrate_trajectories(psi, h, e0, t / static_cast<double>(steps), steps);
  CHECK(qm::position_moments(r.psi, 0).stddev == doctest::Approx(3.0 * sigma).epsilon(1e-6));
  CHECK(equivariance_statistic(r.ensemble, r.psi).l1 < 0.03);
}

TEST_CASE("members parked on a permanent node are flagged and reported") {
  SpatialGrid g(1, 64, 0.15, qm::Boundary::hard_wall);
  qm::HamiltonianSpec h;
  h.potential = qm::harmonic_potential(g, 1.0, 1.0);
  const auto eig = qm::brute_force_eigens(g, 1, h, 2);
  WaveFunction psi = eig[1].state;
  psi.normalize();
  // Hard-wall points sit at half-integer offsets: put members exactly on the odd node.
  std::vector<double> pos(200, 1.0);
  pos[0] = 0.0;
  TrajectoryEnsemble e0(1, pos);
  const auto r = integrate_trajectories(psi, h, e0, 0.05, 4);
  CHECK(r.flagged == 1);
  CHECK(r.retried >= 1);
  CHECK(r.ensemble.status[0] == MemberStatus::flagged);
  CHECK(r.warnings.size() == 1);
}

TEST_CASE("integration rejects members outside the grid and stale ensembles") {
  SpatialGrid g(1, 64, 0.1);
  qm::HamiltonianSpec h;
  const auto psi = packet(g, 0.5, 0.0, 0.0);
  CHECK_THROWS_AS(integrate_trajectories(psi, h, TrajectoryEnsemble(1, {100.0}), 0.01, 1), InvalidInput);
  CHECK_THROWS_AS(integrate_trajectories(psi, h, TrajectoryEnsemble(1, {0.0}, 0.5), 0.01, 1), StaleEnsemble);
}

TEST_CASE("product state has no nonlocal sensitivity") {
  SpatialGrid g(2, 64, 0.25);
  qm::HamiltonianSpec h;
  auto psi = WaveFunction::from_function(g, [](double x1, double x2) {
    return std::exp(-x1 * x1 / 2.0) * std::polar(1.0, 0.7 * x1) *
           std::exp(-(x2 - 1.0) * (x2 - 1.0) / 3.0) * std::polar(1.0, -0.4 * x2 * x2);
  });
  psi.normalize();
  CHECK(nonlocality_probe(psi, h, 0.3, 0.8, 0.05) < 1e-8);
  CHECK(nonlocality_probe(psi, h, -0.61, 1.9, 0.01) < 1e-8);
}

TEST_CASE("entangled state velocity depends on the distant particle") {
  // Freely evolved EPR-like Gaussian in relative and centre coordinates.
  SpatialGrid g(2, 128, 0.125);
  qm::HamiltonianSpec h;
  const double t = 0.5;
  const Complex sr(0.25, 0.5 * t);   // sigma_r^2 + i hbar t / (2 mu), mu = 1/2
  const Complex sR(4.0, 0.25 * t);   // sigma_R^2 + i hbar t / (2 M), M = 2
  auto psi = WaveFunction::from_function(g, [&](double x1, double x2) {
    const double r = x1 - x2, cm = 0.5 * (x1 + x2);
    return std::exp(-r * r / (4.0 * sr) - cm * cm / (4.0 * sR));
  });
  psi.normalize();
  const double exact = std::abs((1.0 / (2.0 * sr) - 1.0 / (8.0 * sR)).imag());
  const double s1 = nonlocality_probe(psi, h, 0.2, -0.1, 0.02);
  const double s2 = nonlocality_probe(psi, h, 0.2, -0.1, 0.01);
  CHECK(s1 > 0.1);
  CHECK(s1 == doctest::Approx(exact).epsilon(1e-3));
  CHECK(std::abs(s2 - s1) / s1 < 0.05);
}

TEST_CASE("pointer registers a single branch with certainty") {
  SpatialGrid g(1, 128, 0.16);
  PointerConfig cfg;
  cfg.runs = 2000;
  cfg.seed = 5;
  const auto psi = packet(g, 0.75, 6.0, 0.0);
  const auto r = pointer_measurement(psi, cfg);
  CHECK(r.frequencies[1] == 1.0);
  CHECK(r.separation > 5.0);
}

TEST_CASE("pointer frequencies follow Born weights") {
  SpatialGrid g(1, 128, 0.16);
  for (double wl : {0.5, 0.8}) {
    auto psi = WaveFunction::from_function(g, [&](double x, double) {
      return std::sqrt(wl) * std::exp(-(x + 4.0) * (x + 4.0) / 4.0) +
             std::sqrt(1.0 - wl) * std::exp(-(x - 4.0) * (x - 4.0) / 4.0);
    });
    psi.normalize();
    PointerConfig cfg;
    cfg.seed = 17;
    const auto r = pointer_measurement(psi, cfg);
    const double sigma = std::sqrt(wl * (1.0 - wl) / static_cast<double>(cfg.runs));
    CHECK(std::abs(r.frequencies[0] - wl) < 3.0 * sigma);
    CHECK(r.born[0] == doctest::Approx(wl).epsilon(1e-3));
    CHECK(r.separation > 5.0);
  }
}

TEST_CASE("weak pointer coupling is inconclusive") {
  SpatialGrid g(1, 128, 0.16);
  auto psi = WaveFunction::from_function(g, [](double x, double) {
    return std::exp(-(x + 4.0) * (x + 4.0) / 4.0) + std::exp(-(x - 4.0) * (x - 4.0) / 4.0);
  });
  psi.normalize();
  PointerConfig cfg;
  cfg.coupling = 0.1;
  cfg.runs = 100;
  try {
    (void)pointer_measurement(psi, cfg);
    FAIL("expected InconclusiveMeasurement");
  } catch (const InconclusiveMeasurement& e) {
    CHECK(e.separation() < 5.0);
  }
}

TEST_CASE("fringe minima require significant depth") {
  CHECK(fringe_minima({10, 100, 5, 100, 10}).size() == 1);
  CHECK(fringe_minima({0, 2, 0, 3, 0}).empty());
  CHECK(fringe_minima({100, 95, 100}).empty());
}

TEST_CASE("two slits produce symmetric interference fringes") {
  TwoSlitConfig cfg;
  cfg.seed = 1;
  const auto r = two_slit_experiment(cfg);
  CHECK(r.antithetic);
  CHECK(count_minima(r.minima, 0.5) >= 3);
  CHECK(r.symmetry_l1 < 0.02);
  CHECK(r.axis_crossings == 0);
  std::size_t through = 0;
  for (std::size_t b = 0; b < r.bundle.members.size(); ++b) {
    if (r.bundle_slit[b] == 0) continue;
    ++through;
    for (std::size_t t = 0; t < r.bundle.times.size(); ++t) {
      const double x = r.bundle.at(t, b)[0];
      if (r.bundle.at(t, b)[1] > 0.0) CHECK(x * r.bundle_slit[b] > 0.0);
    }
  }
  CHECK(through > 0);
}

TEST_CASE("one open slit gives no deep minima") {
  TwoSlitConfig cfg;
  cfg.left_open = false;
  cfg.seed = 1;
  const auto r = two_slit_experiment(cfg);
  CHECK(count_minima(r.minima, 0.5) == 0);
}

TEST_CASE("two-slit timeout when the screen is out of reach") {
  TwoSlitConfig cfg;
  cfg.max_time = 1.0;
  cfg.members = 200;
  CHECK_THROWS_AS(two_slit_experiment(cfg), Timeout);
}
