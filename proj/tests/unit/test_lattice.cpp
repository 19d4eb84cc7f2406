#include <doctest.h>

#include <chrono>
#include <cmath>
#include <numbers>

#include "pilot/error.hpp"
#include "pilot/lattice/brute_force.hpp"
#include "pilot/lattice/correlator.hpp"
#include "pilot/lattice/fock.hpp"
#include "pilot/lattice/gaussian.hpp"
#include "pilot/qm/evolution.hpp"
#include "pilot/rng.hpp"

using namespace pilot;
using namespace pilot::lattice;

namespace {

constexpr double kPi = std::numbers::pi;

void check_against_fock(const LatticeModel& model, std::size_t count, double rel) {
  const auto bf = brute_force_field_eigens(model, count);
  const auto fock = fock_levels(model, count);
  REQUIRE(bf.size() == count);
  for (std::size_t i = 0; i < count; ++i) {
    CHECK(std::abs(bf[i] - fock[i].energy) / fock[i].energy < rel);
  }
}

}  // namespace

TEST_CASE("chain dispersion closed forms") {
  const auto chain = LatticeModel::atom_chain(64, 0.5, 2.0, 3.0);
  const auto w = chain.dispersion();
  CHECK(w[0] == 0.0);
  CHECK(w[32] == doctest::Approx(2.0 * std::sqrt(3.0 / 2.0)).epsilon(1e-14));
  CHECK(chain.sound_speed() == doctest::Approx(0.5 * std::sqrt(1.5)));
  CHECK(chain.has_zero_mode());
}

TEST_CASE("long-wavelength dispersion is linear and deviation grows with k") {
  const auto chain = LatticeModel::atom_chain(1000, 1.0, 1.0, 1.0);
  double previous = -1.0;
  for (std::size_t j = 1; j <= 500; ++j) {
    const double k = chain.wavenumber(j);
    const double ratio = chain.omega(k) / (chain.sound_speed() * k);
    if (k * chain.spacing <= 0.2) {
      CHECK(ratio >= 0.998);
      CHECK(ratio <= 1.0);
    }
    const double dev = std::abs(ratio - 1.0);
    CHECK(dev > previous);
    previous = dev;
  }
}

TEST_CASE("scalar field dispersion") {
  const auto f = LatticeModel::scalar_field(16, 0.5, 0.3);
  CHECK(f.omega(0.0) == doctest::Approx(0.3));
  CHECK(f.omega(kPi / 0.5) == doctest::Approx(std::sqrt(0.09 + 16.0)));
  CHECK_FALSE(f.has_zero_mode());
  // Stiffness eigenvalues over the site mass reproduce the dispersion.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(f.stiffness() / f.site_mass());
  auto w = f.dispersion();
  std::sort(w.begin(), w.end());
  for (std::size_t i = 0; i < w.size(); ++i) {
    CHECK(std::sqrt(es.eigenvalues()(static_cast<Eigen::Index>(i))) == doctest::Approx(w[i]).epsilon(1e-12));
  }
}

TEST_CASE("mode basis is orthonormal") {
  for (std::size_t n : {1u, 2u, 3u, 7u, 16u}) {
    ModeBasis b(n);
    const auto& u = b.matrix();
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(u.rows(), u.cols());
    CHECK((u * u.transpose() - id).cwiseAbs().maxCoeff() < 1e-12);
    Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(static_cast<Eigen::Index>(n), -1.0, 2.0);
    CHECK((b.to_sites(b.to_modes(x)) - x).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("Fock energies") {
  const auto chain = LatticeModel::atom_chain(4, 1.0, 1.0, 1.0, 0.5);
  const auto w = mode_frequencies(chain, ModeBasis(4));
  double vac = 0.0;
  for (double v : w) vac += 0.5 * v;
  CHECK(fock_energy(chain, FockState::vacuum(4)) == doctest::Approx(vac));
  CHECK(fock_energy(chain, FockState::single(4, 2)) == doctest::Approx(vac + w[2]));

  const auto single = LatticeModel::atom_chain(1, 1.0, 1.0, 1.0, 1.0);
  CHECK(fock_energy(single, FockState::single(1, 0, 2)) == doctest::Approx(2.5));
  CHECK_THROWS_AS(fock_energy(single, FockState::vacuum(2)), ShapeMismatch);
  CHECK_THROWS_AS(fock_levels(LatticeModel::atom_chain(3, 1.0, 1.0, 1.0), 3), ZeroMode);
}

TEST_CASE("brute-force single oscillator ladder") {
  const auto single = LatticeModel::atom_chain(1, 1.0, 1.0, 1.0, 1.0);
  const auto e = brute_force_field_eigens(single, 8);
  for (std::size_t n = 0; n < e.size(); ++n) {
    CHECK(e[n] == doctest::Approx(static_cast<double>(n) + 0.5).epsilon(1e-8));
  }
}

TEST_CASE("brute-force two-site spectrum matches the Fock tower") {
  check_against_fock(LatticeModel::atom_chain(2, 1.0, 1.0, 1.0, 1.0), 6, 1e-5);
  check_against_fock(LatticeModel::atom_chain(2, 1.0, 1.0, 1.0, 1.0), 10, 1e-5);
  check_against_fock(LatticeModel::scalar_field(2, 1.0, 1.0), 10, 1e-5);
}

TEST_CASE("decoupled sites give degenerate ladders") {
  const auto model = LatticeModel::atom_chain(2, 1.0, 1.0, 0.0, 1.0);
  const auto e = brute_force_field_eigens(model, 6);
  const double expected[] = {1.0, 2.0, 2.0, 3.0, 3.0, 3.0};
  for (std::size_t i = 0; i < 6; ++i) CHECK(e[i] == doctest::Approx(expected[i]).epsilon(1e-8));
}

TEST_CASE("brute-force three-site spectrum matches the Fock tower") {
  const auto start = std::chrono::steady_clock::now();
  check_against_fock(LatticeModel::atom_chain(3, 1.0, 1.0, 1.0, 1.0), 10, 1e-5);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(secs < 60.0);
}

TEST_CASE("brute-force oracle rejects oversize grids") {
  SiteGridOptions opt;
  opt.points_per_site = 17;
  CHECK_THROWS_AS(brute_force_field_eigens(LatticeModel::atom_chain(3, 1.0, 1.0, 1.0, 1.0), 4, opt),
                  SizeLimitExceeded);
  CHECK_THROWS_AS(brute_force_field_eigens(LatticeModel::atom_chain(4, 1.0, 1.0, 1.0, 1.0), 4),
                  UnsupportedConfiguration);
}

TEST_CASE("Gaussian ground state is stationary up to the vacuum phase") {
  const auto model = LatticeModel::scalar_field(5, 1.0, 0.7);
  const auto g0 = GaussianWavefunctional::ground(model);
  const auto g1 = evolve_gaussian(g0, 3.7);
  double e0 = 0.0;
  for (double w : g0.frequencies()) e0 += 0.5 * w;
  Eigen::VectorXd q(5);
  q << 0.1, -0.3, 0.2, 0.05, -0.4;
  for (std::size_t m = 0; m < 5; ++m) {
    CHECK(std::abs(g1.width()[m] - g0.width()[m]) < 1e-12);
    CHECK(std::abs(g1.alpha()[m]) == 0.0);
  }
  const auto ratio = g1.amplitude(q) / g0.amplitude(q);
  CHECK(std::abs(ratio - std::polar(1.0, -e0 * 3.7)) < 1e-12);
  CHECK(g0.velocity(q).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("coherent shift rotates with the mode frequency") {
  const auto model = LatticeModel::scalar_field(4, 1.0, 0.5);
  std::vector<Complex> alpha(4, 0.0);
  alpha[1] = 1.0;
  const auto g0 = GaussianWavefunctional::coherent(model, alpha);
  const double w = g0.frequencies()[1];
  const auto g1 = evolve_gaussian(g0, kPi / w);
  CHECK(std::abs(g1.alpha()[1] - Complex(-1.0, 0.0)) < 1e-12);
}

TEST_CASE("squeezed width follows grid evolution of a single oscillator") {
  const auto model = LatticeModel::atom_chain(1, 1.0, 1.3, 0.0, 2.0);
  const double w = model.omega(0.0);
  const double mass = model.site_mass();
  std::vector<Complex> width{Complex(2.5 * w, 0.4)};
  std::vector<Complex> alpha{Complex(0.6, -0.3)};
  const GaussianWavefunctional g0(model, width, alpha);

  qm::SpatialGrid grid(1, 128, 0.09);
  auto psi = qm::WaveFunction::from_function(grid, [&](double u, double) {
    Eigen::VectorXd q(1);
    q << std::sqrt(mass) * u;
    return g0.amplitude(q) * std::pow(mass, 0.25);
  });
  CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-10));
  qm::HamiltonianSpec h;
  h.masses = {mass};
  h.potential = qm::harmonic_potential(grid, mass, w);
  const double period = kPi / w;
  std::vector<double> widths;
  for (int s = 1; s <= 6; ++s) {
    const double t = 0.25 * period * s;
    const auto grid_psi = qm::evolve_eigenbasis(psi, h, t, 1);
    const auto g = evolve_gaussian(g0, t);
    double worst = 0.0;
    for (std::size_t p = 0; p < grid.size(); ++p) {
      Eigen::VectorXd q(1);
      q << std::sqrt(mass) * grid.coordinate(p);
      worst = std::max(worst, std::abs(grid_psi(0, p) - g.amplitude(q) * std::pow(mass, 0.25)));
    }
    CHECK(worst < 1e-4);
    widths.push_back(g.variance(0));
  }
  // Width oscillates at 2 omega: the variance repeats after pi / omega.
  CHECK(widths[4] == doctest::Approx(widths[0]).epsilon(1e-10));
  CHECK(widths[5] == doctest::Approx(widths[1]).epsilon(1e-10));
  CHECK(std::abs(widths[0] - widths[1]) > 1e-3);
}

TEST_CASE("non-normalizable widths are rejected") {
  const auto model = LatticeModel::scalar_field(1, 1.0, 1.0);
  CHECK_THROWS_AS(GaussianWavefunctional(model, {Complex(-1.0, 0.0)}, {0.0}), NonNormalizable);
}

TEST_CASE("two-point function coincidence and parity") {
  const auto model = LatticeModel::scalar_field(32, 1.0, 0.4);
  const auto w0 = two_point_function(model, 2.0, 1.0, 2.0, 1.0);
  double expected = 0.0;
  for (double w : model.dispersion()) expected += model.hbar / (2.0 * 32.0 * model.site_mass() * w);
  CHECK(w0.imag() == 0.0);
  CHECK(w0.real() == doctest::Approx(expected).epsilon(1e-14));
  const auto plus = two_point_function(model, 3.0, 0.0, 0.0, 0.0);
  const auto minus = two_point_function(model, -3.0, 0.0, 0.0, 0.0);
  CHECK(std::abs(plus - minus) < 1e-14);
  CHECK_THROWS_AS(two_point_function(LatticeModel::atom_chain(8, 1.0, 1.0, 1.0), 0, 0, 1, 0), ZeroMode);
  CHECK_NOTHROW(two_point_function(LatticeModel::atom_chain(8, 1.0, 1.0, 1.0), 0, 0, 1, 0, {true, 0.0}));
}

TEST_CASE("two-point function matches the brute-force eigenbasis") {
  const auto model = LatticeModel::scalar_field(2, 1.0, 1.0);
  SiteGridOptions opt;
  opt.points_per_site = 32;
  const auto sys = brute_force_field_eigensystem(model, 1024, true, opt);
  for (double dt : {0.0, 0.7, 2.3}) {
    for (std::size_t x = 0; x < 2; ++x) {
      for (std::size_t y = 0; y < 2; ++y) {
        const auto bf = brute_force_two_point(model, sys, x, y, dt);
        const auto w = two_point_function(model, model.spacing * static_cast<double>(x), dt,
                                          model.spacing * static_cast<double>(y), 0.0);
        CHECK(std::abs(bf - w) < 1e-6);
      }
    }
  }
}
