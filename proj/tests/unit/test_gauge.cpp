#include <doctest.h>

#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "pilot/error.hpp"
#include "pilot/gauge/gauge.hpp"

using namespace pilot;
using namespace pilot::gauge;

namespace {

const GaugeGrid kGrid(16, 0.5);

ScalarField zeros(const GaugeGrid& g) { return ScalarField(g.size(), 0.0); }

GaugeConfiguration random_configuration(const GaugeGrid& g, std::uint64_t seed) {
  GaugeConfiguration cfg;
  cfg.grid = g;
  for (std::size_t s = 0; s < 2; ++s) {
    GaugeSnapshot snap;
    snap.time = 0.2 * static_cast<double>(s);
    snap.rho = laplacian(g, random_smooth_field(g, seed + s));
    for (double& v : snap.rho) v = -v;
    snap.phi = solve_scalar_potential(g, snap.rho);
    snap.a = coulomb_project(g, random_smooth_vector_field(g, seed + 10 + s));
    cfg.snapshots.push_back(snap);
  }
  return cfg;
}

}  // namespace

TEST_CASE("grid limits") {
  CHECK_THROWS_AS(GaugeGrid(33, 1.0), SizeLimitExceeded);
  CHECK_THROWS_AS(GaugeGrid(8, 0.0), InvalidInput);
  CHECK_NOTHROW(GaugeGrid(32, 1.0));
}

TEST_CASE("transverse field is unchanged by projection") {
  // A = curl(W) is divergence-free.
  const auto a = curl(kGrid, random_smooth_vector_field(kGrid, 3));
  const auto at = coulomb_project(kGrid, a);
  CHECK(max_abs_difference(a, at) < 1e-12);
}

TEST_CASE("pure gradient is annihilated by projection") {
  const auto a = gradient(kGrid, random_smooth_field(kGrid, 5));
  CHECK(max_abs(a) > 0.1);
  CHECK(max_abs(coulomb_project(kGrid, a)) < 1e-10);
}

TEST_CASE("projection is idempotent, divergence-free, and removes only a gradient") {
  VectorField a = random_smooth_vector_field(kGrid, 7, 12);
  const auto once = coulomb_project(kGrid, a);
  const auto twice = coulomb_project(kGrid, once);
  CHECK(max_abs_difference(once, twice) < 1e-12);
  CHECK(max_abs(divergence(kGrid, once)) < 1e-10);
  VectorField diff;
  for (std::size_t c = 0; c < 3; ++c) {
    diff[c].resize(kGrid.size());
    for (std::size_t p = 0; p < kGrid.size(); ++p) diff[c][p] = a[c][p] - once[c][p];
  }
  CHECK(max_abs(curl(kGrid, diff)) < 1e-10);
}

TEST_CASE("zero source gives zero potential") {
  CHECK(max_abs(solve_scalar_potential(kGrid, zeros(kGrid))) == 0.0);
  CHECK(max_abs(solve_scalar_potential(kGrid, zeros(kGrid), BoundaryMode::isolated)) == 0.0);
}

TEST_CASE("periodic Poisson solve has a small residual and rejects net charge") {
  auto rho = laplacian(kGrid, random_smooth_field(kGrid, 9));
  for (double& v : rho) v = -v;
  const auto phi = solve_scalar_potential(kGrid, rho);
  CHECK(poisson_residual(kGrid, phi, rho) < 1e-8);
  rho[0] += 1.0;
  CHECK_THROWS_AS(solve_scalar_potential(kGrid, rho), Solvability);
}

TEST_CASE("isolated dipole potential matches the direct kernel sum") {
  const GaugeGrid g(24, 0.5);
  auto rho = zeros(g);
  const double q = 1.0 / g.cell_volume();
  rho[g.index(12, 12, 10)] = q;
  rho[g.index(12, 12, 14)] = -q;
  const auto phi = solve_scalar_potential(g, rho, BoundaryMode::isolated);
  for (auto [i, j, k] : {std::array<std::size_t, 3>{12, 12, 12}, {3, 20, 7}, {12, 15, 11}, {0, 0, 0}, {23, 23, 23}}) {
    const std::size_t p = g.index(i, j, k);
    CHECK(std::abs(phi[p] - coulomb_kernel_sum(g, rho, g.position(p))) < 1e-8);
  }
}

TEST_CASE("isolated point charge follows the Coulomb law") {
  const GaugeGrid g(32, 1.0);
  auto rho = zeros(g);
  rho[g.index(16, 16, 16)] = 1.0;
  const auto phi = solve_scalar_potential(g, rho, BoundaryMode::isolated);
  for (std::size_t d = 4; d < 16; ++d) {
    const double r = static_cast<double>(d);
    CHECK(std::abs(phi[g.index(16 + d, 16, 16)] * 4.0 * std::numbers::pi * r - 1.0) < 0.01);
    CHECK(std::abs(phi[g.index(16, 16 - d, 16 - d)] * 4.0 * std::numbers::pi * r * std::sqrt(2.0) - 1.0) < 0.01);
  }
}

TEST_CASE("constant gauge function leaves the configuration unchanged") {
  const auto cfg = random_configuration(kGrid, 1);
  const ScalarField c(kGrid.size(), 3.5);
  const auto out = gauge_transform(cfg, {c, c});
  for (std::size_t s = 0; s < 2; ++s) {
    CHECK(max_abs_difference(out.snapshots[s].a, cfg.snapshots[s].a) < 1e-12);
    for (std::size_t p = 0; p < kGrid.size(); ++p) CHECK(out.snapshots[s].phi[p] == cfg.snapshots[s].phi[p]);
  }
}

TEST_CASE("static gauge transform changes A but not E and B") {
  const auto cfg = random_configuration(kGrid, 2);
  const auto lambda = random_smooth_field(kGrid, 77, 6, 2.0);
  const auto out = gauge_transform_static(cfg, lambda);
  CHECK(max_abs_difference(out.snapshots[0].a, cfg.snapshots[0].a) > 0.1);
  const auto f0 = field_strength(cfg);
  const auto f1 = field_strength(out);
  CHECK(max_abs_difference(f0.e, f1.e) < 1e-10);
  CHECK(max_abs_difference(f0.b, f1.b) < 1e-10);
}

TEST_CASE("gauge transforms compose additively") {
  const auto cfg = random_configuration(kGrid, 3);
  const std::vector<ScalarField> l1{random_smooth_field(kGrid, 31), random_smooth_field(kGrid, 32)};
  const std::vector<ScalarField> l2{random_smooth_field(kGrid, 33), random_smooth_field(kGrid, 34)};
  std::vector<ScalarField> sum = l1;
  for (std::size_t s = 0; s < 2; ++s) {
    for (std::size_t p = 0; p < kGrid.size(); ++p) sum[s][p] += l2[s][p];
  }
  const auto seq = gauge_transform(gauge_transform(cfg, l1), l2);
  const auto once = gauge_transform(cfg, sum);
  for (std::size_t s = 0; s < 2; ++s) {
    CHECK(max_abs_difference(seq.snapshots[s].a, once.snapshots[s].a) < 1e-12);
    double worst = 0.0;
    for (std::size_t p = 0; p < kGrid.size(); ++p) {
      worst = std::max(worst, std::abs(seq.snapshots[s].phi[p] - once.snapshots[s].phi[p]));
    }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("time-dependent gauge function needs two snapshots") {
  auto cfg = random_configuration(kGrid, 4);
  cfg.snapshots.pop_back();
  CHECK_THROWS_AS(gauge_transform(cfg, {random_smooth_field(kGrid, 1)}), NeedsHistory);
  CHECK_THROWS_AS(field_strength(cfg), NeedsHistory);
}

TEST_CASE("static point charge has zero B and a radial E") {
  const GaugeGrid g(32, 1.0);
  GaugeSnapshot s;
  s.rho = zeros(g);
  s.rho[g.index(16, 16, 16)] = 1.0;
  s.phi = solve_scalar_potential(g, s.rho, BoundaryMode::isolated);
  s.a = {zeros(g), zeros(g), zeros(g)};
  const auto f = static_field_strength(g, s, Stencil::central);
  CHECK(max_abs(f.b) == 0.0);
  for (auto [i, j, k] : {std::array<std::size_t, 3>{20, 16, 16}, {16, 11, 16}, {19, 19, 13}, {12, 18, 20}}) {
    const std::size_t p = g.index(i, j, k);
    const std::array<double, 3> r{static_cast<double>(i) - 16.0, static_cast<double>(j) - 16.0,
                                  static_cast<double>(k) - 16.0};
    const std::array<double, 3> e{f.e[0][p], f.e[1][p], f.e[2][p]};
    const double rn = std::hypot(r[0], r[1], r[2]);
    const double en = std::hypot(e[0], e[1], e[2]);
    const double cosine = (r[0] * e[0] + r[1] * e[1] + r[2] * e[2]) / (rn * en);
    CHECK(cosine > 0.999);
  }
}

TEST_CASE("pure-gauge configuration has vanishing field strength") {
  const double dt = 0.1;
  const std::vector<ScalarField> lambda{random_smooth_field(kGrid, 50, 6, 2.0), random_smooth_field(kGrid, 51, 6, 2.0)};
  GaugeConfiguration cfg;
  cfg.grid = kGrid;
  for (std::size_t s = 0; s < 2; ++s) {
    GaugeSnapshot snap;
    snap.time = static_cast<double>(s) * dt;
    snap.a = gradient(kGrid, lambda[s]);
    snap.phi.resize(kGrid.size());
    for (std::size_t p = 0; p < kGrid.size(); ++p) snap.phi[p] = -(lambda[1][p] - lambda[0][p]) / dt;
    snap.rho = zeros(kGrid);
    cfg.snapshots.push_back(snap);
  }
  const auto f = field_strength(cfg);
  CHECK(max_abs(f.e) < 1e-9);
  CHECK(max_abs(f.b) < 1e-9);
}

TEST_CASE("field strength is invariant under random gauge transforms") {
  const auto start = std::chrono::steady_clock::now();
  const auto rep = gauge_invariance_check(kGrid, 100, 2024);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  MESSAGE("100 transforms in " << secs << " s");
  CHECK(rep.max_field_difference < 1e-9);
  CHECK(rep.max_projected_divergence < 1e-10);
  CHECK(rep.max_poisson_residual < 1e-8);
  CHECK(rep.max_div_b < 1e-10);
}

TEST_CASE("scalar potential responds to a distant source step in the same slice") {
  const GaugeGrid g(16, 1.0);
  std::vector<ScalarField> rho(6, zeros(g));
  std::vector<double> times;
  for (std::size_t s = 0; s < 6; ++s) {
    times.push_back(0.5 * static_cast<double>(s));
    rho[s][g.index(2, 2, 2)] = 1.0;
    if (s >= 3) rho[s][g.index(2, 2, 2)] = 2.0;
  }
  const std::array<double, 3> probe{g.coordinate(15), g.coordinate(15), g.coordinate(15)};
  const auto rep = instantaneity_demo(g, rho, times, probe);
  CHECK(rep.step_time == doctest::Approx(1.5));
  CHECK(rep.change_time == doctest::Approx(1.5));
  CHECK(std::abs(rep.delta_phi) > 0.0);
  CHECK(std::abs(rep.delta_phi - rep.predicted_delta_phi) < 1e-8);
  CHECK(rep.probe_distance == doctest::Approx(13.0 * std::sqrt(3.0)));
  CHECK(rep.to_json().contains("note"));

  std::vector<ScalarField> still(4, rho[0]);
  const auto flat = instantaneity_demo(g, still, {0.0, 1.0, 2.0, 3.0}, probe);
  CHECK(flat.delta_phi == 0.0);
  CHECK(std::isnan(flat.change_time));
}

TEST_CASE("snapshot CSV round trip") {
  const auto cfg = random_configuration(GaugeGrid(4, 0.5), 8);
  std::stringstream ss;
  write_snapshot_csv(ss, cfg.grid, cfg.snapshots[0]);
  CHECK(ss.str().find("\r\n") != std::string::npos);
  const auto back = read_snapshot_csv(ss, cfg.grid);
  CHECK(back.phi == cfg.snapshots[0].phi);
  CHECK(back.rho == cfg.snapshots[0].rho);
  CHECK(max_abs_difference(back.a, cfg.snapshots[0].a) == 0.0);
  std::stringstream bad("i,j,k\r\n1,2\r\n");
  CHECK_THROWS_AS(read_snapshot_csv(bad, cfg.grid), InvalidInput);
}
