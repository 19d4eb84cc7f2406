#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pilot/error.hpp"
#include "pilot/relativity/relativity.hpp"

using namespace pilot;
using namespace pilot::relativity;
using lattice::LatticeModel;

TEST_CASE("sound boost basics") {
  const SoundBoost b(0.6, 1.0);
  CHECK(b.gamma() == doctest::Approx(1.25));
  const auto e = b.apply({3.0, 2.0});
  const auto back = b.inverse(e);
  CHECK(back.x == doctest::Approx(3.0));
  CHECK(back.t == doctest::Approx(2.0));
  // Interval preserved.
  CHECK(e.t * e.t - e.x * e.x == doctest::Approx(4.0 - 9.0));
  CHECK_THROWS_AS(SoundBoost(1.0, 1.0), InvalidInput);
  CHECK_THROWS_AS(SoundBoost(0.1, 0.0), InvalidInput);
}

TEST_CASE("boost composition follows velocity addition and is associative") {
  const double cs = 2.0;
  const SoundBoost a(0.5, cs), b(-1.1, cs), c(1.3, cs);
  const auto ab = a.then(b);
  CHECK(std::abs(ab.velocity() - (0.5 - 1.1) / (1.0 - 0.5 * 1.1 / 4.0)) < 1e-12);
  CHECK(std::abs(a.then(b).then(c).velocity() - a.then(b.then(c)).velocity()) < 1e-12);
  const SoundBoost::Event e{1.7, -0.4};
  const auto seq = b.apply(a.apply(e));
  const auto once = ab.apply(e);
  CHECK(std::abs(seq.x - once.x) < 1e-12);
  CHECK(std::abs(seq.t - once.t) < 1e-12);
}

TEST_CASE("dispersion is linear at long wavelength") {
  const auto chain = LatticeModel::atom_chain(256, 1.0, 1.0, 1.0);
  const auto scan = dispersion_linearity_scan(chain, 0.2);
  CHECK(scan.max_deviation < 0.01);
  CHECK(scan.monotone);
  const auto field = LatticeModel::scalar_field(64, 0.5, 0.0);
  CHECK(dispersion_linearity_scan(field, 0.2 / 0.5).max_deviation < 0.01);
}

TEST_CASE("zone-edge dispersion deviation is 1 - 2/pi") {
  const auto chain = LatticeModel::atom_chain(64, 1.0, 2.0, 3.0);
  const auto scan = dispersion_linearity_scan(chain, std::numbers::pi);
  CHECK(scan.max_deviation == doctest::Approx(1.0 - 2.0 / std::numbers::pi).epsilon(1e-9));
  CHECK(scan.monotone);
}

TEST_CASE("refining the lattice lowers the deviation at fixed physical k") {
  double last = 1.0;
  for (double a : {1.0, 0.5, 0.25, 0.125}) {
    const auto chain = LatticeModel::atom_chain(64, a, 1.0, 1.0 / (a * a));
    const double dev = dispersion_linearity_scan(chain, 1.0).max_deviation;
    CHECK(dev < last);
    last = dev;
  }
}

TEST_CASE("gapped models are rejected by the linearity scan") {
  CHECK_THROWS_AS(dispersion_linearity_scan(LatticeModel::scalar_field(16, 1.0, 0.3), 0.2), InvalidInput);
  CHECK_THROWS_AS(dispersion_linearity_scan(LatticeModel::atom_chain(16, 1.0, 1.0, 1.0, 0.1), 0.2), InvalidInput);
}

TEST_CASE("identity boost leaves the two-point function unchanged") {
  const auto model = LatticeModel::scalar_field(256, 1.0, 0.05);
  const auto rep = boost_invariance_correlator(model, {equal_time_pair(32.0), equal_time_pair(20.0, 3.0)},
                                               SoundBoost(0.0, 1.0), {false, 2.0});
  CHECK(rep.max_relative_deviation == 0.0);
}

TEST_CASE("boosted equal-time pair: deviation below 5% and falling under refinement") {
  const SoundBoost boost(0.3, 1.0);
  const auto coarse = boost_invariance_correlator(LatticeModel::scalar_field(256, 1.0, 0.05), {equal_time_pair(32.0)},
                                                  boost, {false, 2.0});
  const auto fine = boost_invariance_correlator(LatticeModel::scalar_field(512, 0.5, 0.05), {equal_time_pair(32.0)},
                                                boost, {false, 1.0});
  MESSAGE("deviation N=256 " << coarse.max_relative_deviation << ", N=512 " << fine.max_relative_deviation);
  CHECK(coarse.max_relative_deviation < 0.05);
  CHECK(fine.max_relative_deviation < coarse.max_relative_deviation);
  CHECK(coarse.rows.front().boosted.first.t != 0.0);
}

TEST_CASE("validity window is enforced") {
  const auto model = LatticeModel::scalar_field(256, 1.0, 0.05);
  CHECK_THROWS_AS(boost_invariance_correlator(model, {equal_time_pair(2.0)}, SoundBoost(0.3, 1.0)), OutOfRange);
  CHECK_THROWS_AS(boost_invariance_correlator(model, {equal_time_pair(100.0)}, SoundBoost(0.3, 1.0)), OutOfRange);
  CHECK_THROWS_AS(boost_invariance_correlator(model, {equal_time_pair(32.0)}, SoundBoost(0.6, 1.0)), OutOfRange);
}

TEST_CASE("frame report passes by default and names the culprit under sabotage") {
  FrameReportConfig c;
  c.members = 8000;
  const auto ok = frame_prediction_report(c);
  CHECK(ok.pass);
  CHECK(ok.refinement_pass);
  CHECK(ok.to_json()["result"] == "PASS");
  for (const auto& t : ok.thresholds) CHECK((t.provenance == "derived" || t.provenance == "paper" || t.provenance == "trivial"));

  c.guidance_sign = -1.0;
  const auto bad = frame_prediction_report(c);
  CHECK_FALSE(bad.pass);
  CHECK_FALSE(bad.equivariance_pass);
  CHECK(bad.correlator_pass);
  REQUIRE(bad.culprits.size() == 1);
  CHECK(bad.culprits.front().find("equivariance") != std::string::npos);

  c.guidance_sign = 1.0;
  c.boost_velocity = 0.0;
  const auto still = frame_prediction_report(c);
  CHECK(still.pass);
  CHECK(still.correlator.max_relative_deviation == 0.0);
}

TEST_CASE("ontic trajectories are frame dependent while predictions agree") {
  const auto rep = trajectory_noncovariance_demo({});
  MESSAGE("trajectory " << rep.trajectory_mismatch << ", prediction " << rep.prediction_mismatch);
  CHECK_FALSE(rep.stationary);
  CHECK(rep.trajectory_mismatch > 0.0);
  CHECK(rep.trajectory_mismatch > 10.0 * rep.prediction_mismatch);
  CHECK(rep.warnings.empty());
}

TEST_CASE("identity boost gives zero mismatch in both") {
  NoncovarianceConfig c;
  c.boost_velocity = 0.0;
  c.sites = 128;
  const auto rep = trajectory_noncovariance_demo(c);
  CHECK(rep.trajectory_mismatch < 1e-12);
  CHECK(rep.prediction_mismatch < 1e-12);
}

TEST_CASE("ground state demo is degenerate and warned") {
  NoncovarianceConfig c;
  c.pulse_amplitude = 0.0;
  c.offset_amplitude = 0.0;
  c.sites = 128;
  const auto rep = trajectory_noncovariance_demo(c);
  CHECK(rep.stationary);
  CHECK(rep.trajectory_mismatch == 0.0);
  CHECK_FALSE(rep.warnings.empty());
}
