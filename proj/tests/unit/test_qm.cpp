#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "pilot/error.hpp"
#include "pilot/qm/config.hpp"
#include "pilot/qm/eigensolver.hpp"
#include "pilot/qm/evolution.hpp"
#include "pilot/qm/interpolation.hpp"
#include "pilot/qm/observables.hpp"

using namespace pilot;
using namespace pilot::qm;

namespace {

constexpr double kPi = std::numbers::pi;

WaveFunction gaussian_1d(const SpatialGrid& g, double sigma, double x0 = 0.0, double k0 = 0.0) {
  auto psi = WaveFunction::from_function(g, [&](double x, double) {
    return std::exp(-(x - x0) * (x - x0) / (4.0 * sigma * sigma)) * std::polar(1.0, k0 * x);
  });
  psi.normalize();
  return psi;
}

double max_abs_diff(const WaveFunction& a, const WaveFunction& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.amplitudes().size(); ++i) {
    m = std::max(m, std::abs(a.amplitudes()[i] - b.amplitudes()[i]));
  }
  return m;
}

}  // namespace

TEST_CASE("grid geometry") {
  SpatialGrid g(1, 8, 0.5);
  CHECK(g.coordinate(0) == doctest::Approx(-2.0));
  CHECK(g.coordinate(4) == doctest::Approx(0.0));
  CHECK(g.length() == doctest::Approx(4.0));
  CHECK(g.wrap(2.25) == doctest::Approx(-1.75));
  const auto k = g.wavenumbers();
  CHECK(k[1] == doctest::Approx(2.0 * kPi / 4.0));
  CHECK(k[4] == doctest::Approx(-kPi / 0.5));

  SpatialGrid hw(1, 7, 1.0, Boundary::hard_wall);
  CHECK(hw.coordinate(3) == doctest::Approx(0.0));
  CHECK(hw.lower() == doctest::Approx(-4.0));

  CHECK_THROWS_AS(SpatialGrid(3, 8, 1.0), InvalidInput);
  CHECK_THROWS_AS(SpatialGrid(1, 8, 0.0), InvalidInput);
  CHECK_THROWS_AS(SpatialGrid(2, 100, 1.0, Boundary::periodic, 1000), SizeLimitExceeded);
}

TEST_CASE("free plane wave picks up the dispersion phase") {
  SpatialGrid g(1, 64, 0.25);
  const double k = 2.0 * kPi * 3.0 / g.length();
  auto psi = WaveFunction::from_function(g, [&](double x, double) { return std::polar(1.0, k * x); });
  psi.normalize();
  HamiltonianSpec h;
  const double dt = 0.01;
  const std::size_t steps = 100;
  const auto out = evolve_split_step(psi, h, dt, steps);
  const double t = dt * static_cast<double>(steps);
  const Complex phase = std::polar(1.0, -h.hbar * k * k * t / 2.0);
  for (std::size_t p = 0; p < g.size(); ++p) {
    CHECK(std::abs(out(0, p) - psi(0, p) * phase) < 1e-12);
  }
  CHECK(out.norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(out.time() == doctest::Approx(t));
}

TEST_CASE("harmonic ground state density is stationary") {
  SpatialGrid g(1, 128, 0.1);
  HamiltonianSpec h;
  h.potential = harmonic_potential(g, 1.0, 1.0);
  const auto psi = gaussian_1d(g, std::sqrt(0.5));
  const auto out = evolve_split_step(psi, h, 1e-3, 2000);
  const auto r0 = psi.density();
  const auto r1 = out.density();
  double worst = 0.0;
  for (std::size_t p = 0; p < r0.size(); ++p) worst = std::max(worst, std::abs(r0[p] - r1[p]));
  CHECK(worst < 1e-6);
}

TEST_CASE("free Gaussian spreads as the closed form") {
  // Oracle: sigma(t) = sigma0 sqrt(1 + (hbar t / 2 m sigma0^2)^2).
  SpatialGrid g(1, 1024, 0.1);
  HamiltonianSpec h;
  h.masses = {1.5};
  const double sigma0 = 1.0;
  const auto psi = gaussian_1d(g, sigma0, -3.0, 0.7);
  for (double t : {0.5, 2.0, 5.0}) {
    const auto out = evolve_split_step(psi, h, t / 200.0, 200);
    const double expected = sigma0 * std::sqrt(1.0 + std::pow(t / (2.0 * 1.5 * sigma0 * sigma0), 2));
    const auto m = position_moments(out);
    CHECK(std::abs(m.stddev / expected - 1.0) < 1e-4);
    CHECK(m.mean == doctest::Approx(-3.0 + 0.7 / 1.5 * t).epsilon(1e-6));
  }
}

TEST_CASE("split-step rejects hard-wall grids and catches divergence") {
  SpatialGrid hw(1, 16, 0.5, Boundary::hard_wall);
  WaveFunction psi(hw);
  HamiltonianSpec h;
  CHECK_THROWS_AS(evolve_split_step(psi, h, 0.1, 1), UnsupportedConfiguration);

  SpatialGrid g(1, 16, 0.5);
  WaveFunction bad(g);
  bad(0, 3) = Complex(std::nan(""), 0.0);
  CHECK_THROWS_AS(evolve_split_step(bad, h, 0.1, 1), DivergedEvolution);

  SpatialGrid tiny(1, 4, 0.5);
  CHECK_THROWS_AS(evolve_split_step(WaveFunction(tiny), h, 0.1, 1), InvalidInput);
}

TEST_CASE("brute-force eigens: harmonic ladder") {
  SpatialGrid g(1, 128, 0.1);
  HamiltonianSpec h;
  h.potential = harmonic_potential(g, 1.0, 1.0);
  const auto pairs = brute_force_eigens(g, 1, h, 3);
  REQUIRE(pairs.size() == 3);
  CHECK(std::abs(pairs[0].energy - 0.5) < 1e-4);
  CHECK(std::abs(pairs[1].energy - 1.5) < 1e-4);
  CHECK(std::abs(pairs[2].energy - 2.5) < 1e-4);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      const Complex o = overlap(pairs[i].state, pairs[j].state);
      CHECK(std::abs(o - (i == j ? 1.0 : 0.0)) < 1e-8);
    }
  }
}

TEST_CASE("brute-force eigens: particle in a box") {
  // Oracle: E_n = hbar^2 pi^2 n^2 / (2 m L^2) with L the wall-to-wall width.
  SpatialGrid g(1, 63, 0.1, Boundary::hard_wall);
  HamiltonianSpec h;
  const auto pairs = brute_force_eigens(g, 1, h, 4);
  const double len = g.length();
  for (std::size_t n = 1; n <= 4; ++n) {
    const double exact = kPi * kPi * static_cast<double>(n * n) / (2.0 * len * len);
    CHECK(std::abs(pairs[n - 1].energy / exact - 1.0) < 1e-4);
    CHECK(std::abs(pairs[n - 1].energy / pairs[0].energy - static_cast<double>(n * n)) < 1e-4 * static_cast<double>(n * n));
  }
}

TEST_CASE("brute-force eigens: single pair and cap") {
  SpatialGrid g(1, 32, 0.2);
  HamiltonianSpec h;
  h.potential = harmonic_potential(g, 1.0, 2.0);
  const auto one = brute_force_eigens(g, 1, h, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].state.norm() == doctest::Approx(1.0).epsilon(1e-12));

  SpatialGrid big(2, 80, 0.1);
  CHECK_THROWS_AS(brute_force_eigens(big, 1, HamiltonianSpec{}, 1), SizeLimitExceeded);
}

TEST_CASE("expectation values") {
  SpatialGrid g(1, 256, 0.05);
  const auto psi = gaussian_1d(g, std::sqrt(0.5));
  std::vector<double> one(g.size(), 1.0);
  CHECK(expectation(psi, one) == doctest::Approx(1.0).epsilon(1e-12));
  std::vector<double> x(g.size());
  std::vector<double> x2(g.size());
  for (std::size_t p = 0; p < g.size(); ++p) {
    x[p] = g.coordinate(p);
    x2[p] = x[p] * x[p];
  }
  CHECK(std::abs(expectation(psi, x)) < 1e-10);
  // Oracle: <x^2> = hbar / (2 m omega) for the ground state.
  CHECK(std::abs(expectation(psi, x2) - 0.5) < 1e-5);

  std::vector<double> wrong(g.size() + 1, 1.0);
  CHECK_THROWS_AS(expectation(psi, wrong), ShapeMismatch);
}

TEST_CASE("unitarity over 1e4 steps") {
  SpatialGrid g(1, 128, 0.1);
  HamiltonianSpec h;
  h.potential = harmonic_potential(g, 1.0, 1.0, 0.5);
  auto psi = gaussian_1d(g, 0.8, -1.0, 1.0);
  SplitStepPropagator prop(g, 1, h, 1e-3);
  prop.advance(psi, 10000);
  CHECK(std::abs(psi.norm() - 1.0) < 1e-8);
}

TEST_CASE("energy is conserved for a time-independent Hamiltonian") {
  SpatialGrid g(1, 256, 0.08);
  HamiltonianSpec h;
  h.potential = harmonic_potential(g, 1.0, 1.0);
  auto psi = gaussian_1d(g, 0.6, 1.5, -0.5);
  const double e0 = energy(psi, h);
  // Oracle for <H>: displaced coherent-like packet, E = p^2/2 + hbar^2/(8 sigma^2) + ...
  SplitStepPropagator prop(g, 1, h, 1e-3);
  double worst = 0.0;
  for (int block = 0; block < 20; ++block) {
    prop.advance(psi, 250);
    worst = std::max(worst, std::abs(energy(psi, h) / e0 - 1.0));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("stationary eigenstates acquire exp(-iEt) under split-step") {
  SpatialGrid g(1, 96, 0.12);
  HamiltonianSpec h;
  h.potential = harmonic_potential(g, 1.0, 1.0);
  const auto pairs = brute_force_eigens(g, 1, h, 3);
  const double t = 2.0;
  for (const auto& pair : pairs) {
    const auto out = evolve_split_step(pair.state, h, 1e-3, 2000);
    const Complex phase = overlap(pair.state, out);
    CHECK(std::abs(phase - std::polar(1.0, -pair.energy * t)) < 1e-5);
  }
}

TEST_CASE("Strang splitting is second order") {
  SpatialGrid g(1, 128, 0.1);
  HamiltonianSpec h;
  h.potential = harmonic_potential(g, 1.0, 1.3);
  const auto psi = gaussian_1d(g, 0.5, 1.0, 0.3);
  const double t = 1.0;
  const auto reference = evolve_split_step(psi, h, t / 3200.0, 3200);
  const auto coarse = evolve_split_step(psi, h, t / 50.0, 50);
  const auto fine = evolve_split_step(psi, h, t / 100.0, 100);
  const double ratio = max_abs_diff(coarse, reference) / max_abs_diff(fine, reference);
  CHECK(ratio > 3.5);
  CHECK(ratio < 4.5);
}

TEST_CASE("eigenbasis propagator on hard-wall grid is unitary and exact for eigenstates") {
  SpatialGrid g(1, 40, 0.2, Boundary::hard_wall);
  HamiltonianSpec h;
  const auto pairs = brute_force_eigens(g, 1, h, 2);
  const auto out = evolve(pairs[1].state, h, 0.05, 40);
  CHECK(out.norm() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(overlap(pairs[1].state, out) - std::polar(1.0, -pairs[1].energy * 2.0)) < 1e-10);
}

TEST_CASE("internal coupling drives Rabi oscillation between components") {
  SpatialGrid g(1, 16, 0.5);
  HamiltonianSpec h;
  const double delta = 0.7;
  Eigen::MatrixXcd c(2, 2);
  c << 0.0, delta, delta, 0.0;
  h.internal_coupling = c;
  WaveFunction psi(g, 2);
  for (std::size_t p = 0; p < g.size(); ++p) psi(0, p) = 1.0;
  psi.normalize();
  const double t = 1.1;
  const auto out = evolve_split_step(psi, h, t / 100.0, 100);
  double p0 = 0.0;
  for (std::size_t p = 0; p < g.size(); ++p) p0 += std::norm(out(0, p));
  p0 *= g.measure();
  CHECK(p0 == doctest::Approx(std::pow(std::cos(delta * t), 2)).epsilon(1e-10));

  Eigen::MatrixXcd bad(2, 2);
  bad << 0.0, Complex(0.0, 1.0), Complex(0.0, 1.0), 0.0;
  h.internal_coupling = bad;
  CHECK_THROWS_AS(h.validate(g, 2), InvalidInput);
}

TEST_CASE("momentum coupling translates the target axis by g x t") {
  SpatialGrid g(2, 64, 0.25);
  HamiltonianSpec h;
  h.masses = {1e6, 1e6};
  h.momentum_coupling = MomentumCoupling{0, 1, 0.8};
  auto psi = WaveFunction::from_function(g, [](double x, double y) {
    return std::exp(-(x - 1.5) * (x - 1.5) / 0.5 - y * y / 0.5);
  });
  psi.normalize();
  const double t = 2.0;
  const auto out = evolve_split_step(psi, h, t / 100.0, 100);
  CHECK(position_moments(out, 1).mean == doctest::Approx(0.8 * 1.5 * t).epsilon(1e-6));
  CHECK(position_moments(out, 0).mean == doctest::Approx(1.5).epsilon(1e-6));
}

TEST_CASE("dense and split-step propagators agree with momentum coupling") {
  SpatialGrid g(2, 16, 0.5);
  HamiltonianSpec h;
  h.masses = {1.0, 3.0};
  h.potential = harmonic_potential(g, 1.0, 0.8);
  h.momentum_coupling = MomentumCoupling{0, 1, 0.3};
  auto psi = WaveFunction::from_function(g, [](double x, double y) {
    return std::exp(-(x - 0.5) * (x - 0.5) / 1.5 - y * y / 2.0);
  });
  psi.normalize();
  const auto exact = evolve_eigenbasis(psi, h, 0.5, 1);
  const auto split = evolve_split_step(psi, h, 0.5 / 400.0, 400);
  CHECK(max_abs_diff(exact, split) < 1e-5);
  CHECK(energy(psi, h) == doctest::Approx(energy(exact, h)).epsilon(1e-10));
}

TEST_CASE("cubic interpolation reproduces cubics exactly") {
  SpatialGrid g(1, 32, 0.3);
  std::vector<Complex> f(g.size());
  auto poly = [](double x) { return Complex(0.2 * x * x * x - x + 1.0, x * x); };
  for (std::size_t p = 0; p < g.size(); ++p) f[p] = poly(g.coordinate(p));
  for (double x : {-1.234, 0.01, 2.5}) {
    const double pos[1] = {x};
    CHECK(std::abs(interpolate(g, f, pos) - poly(x)) < 1e-12);
  }
}

TEST_CASE("JSON configuration and CSV export") {
  const auto j = io::Json::parse(R"({"dimension": 1, "points_per_axis": 16, "spacing": 0.5})");
  const auto g = grid_from_json(j);
  CHECK(g.size() == 16);
  const auto hj = io::Json::parse(R"({"masses": [2.0], "potential": {"type": "harmonic", "omega": 1.0}})");
  const auto h = hamiltonian_from_json(hj, g);
  CHECK(h.potential.size() == 16);
  CHECK(h.potential[0] == doctest::Approx(0.5 * 2.0 * 16.0));
  CHECK_THROWS_AS(grid_from_json(io::Json::parse(R"({"points_per_axis": 16, "spacing": 0.5, "bogus": 1})")),
                  InvalidInput);

  WaveFunction psi(SpatialGrid(1, 8, 1.0));
  psi(0, 2) = Complex(0.5, -0.25);
  std::ostringstream out;
  write_wavefunction_csv(out, psi);
  const std::string text = out.str();
  CHECK(text.rfind("x,component,re,im\r\n", 0) == 0);
  CHECK(text.find("-2,0,0.5,-0.25\r\n") != std::string::npos);
}
