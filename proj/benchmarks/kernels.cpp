#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>

#include "pilot/bohm/guidance.hpp"
#include "pilot/bohm/sampling.hpp"
#include "pilot/field/guidance.hpp"
#include "pilot/gauge/gauge.hpp"
#include "pilot/lattice/brute_force.hpp"
#include "pilot/lattice/correlator.hpp"
#include "pilot/lattice/gaussian.hpp"
#include "pilot/qm/evolution.hpp"

using namespace pilot;

namespace {

qm::WaveFunction packet(const qm::SpatialGrid& g) {
  auto psi = qm::WaveFunction::from_function(g, [](double x, double y) {
    return std::exp(-(x * x + y * y) / 4.0) * std::polar(1.0, 1.5 * x);
  });
  psi.normalize();
  return psi;
}

void split_step_2d(benchmark::State& state) {
  const qm::SpatialGrid g(2, static_cast<std::size_t>(state.range(0)), 0.2);
  const qm::HamiltonianSpec h;
  const qm::SplitStepPropagator prop(g, 1, h, 0.01);
  auto psi = packet(g);
  for (auto _ : state) {
    prop.step(psi);
    benchmark::DoNotOptimize(psi.amplitudes().data());
  }
}
BENCHMARK(split_step_2d)->Arg(128)->Arg(256);

void guidance_lookup(benchmark::State& state) {
  const qm::SpatialGrid g(2, 128, 0.2);
  const qm::HamiltonianSpec h;
  const bohm::GuidanceField field(packet(g), h);
  const auto e = bohm::sample_born(packet(g), 1024, 1);
  for (auto _ : state) {
    for (std::size_t i = 0; i < e.size(); ++i) benchmark::DoNotOptimize(field.velocity(e.position(i)));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * e.size()));
}
BENCHMARK(guidance_lookup);

void born_sampling(benchmark::State& state) {
  const qm::SpatialGrid g(2, 128, 0.2);
  const auto psi = packet(g);
  for (auto _ : state) benchmark::DoNotOptimize(bohm::sample_born(psi, 10000, 3));
}
BENCHMARK(born_sampling);

void brute_force_two_sites(benchmark::State& state) {
  const auto model = lattice::LatticeModel::atom_chain(2, 1.0, 1.0, 1.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(lattice::brute_force_field_eigens(model, 10));
}
BENCHMARK(brute_force_two_sites)->Unit(benchmark::kMillisecond);

void gaussian_field_velocity(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto model = lattice::LatticeModel::scalar_field(n, 1.0, 0.05);
  const auto psi = lattice::GaussianWavefunctional::coherent(model, std::vector<lattice::Complex>(n, {0.5, -0.2}));
  field::FieldConfiguration phi;
  phi.values = Eigen::VectorXd::LinSpaced(static_cast<Eigen::Index>(n), -1.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(field::field_guidance_velocity(psi, phi));
}
BENCHMARK(gaussian_field_velocity)->Arg(64)->Arg(256);

void coulomb_projection(benchmark::State& state) {
  const gauge::GaugeGrid g(static_cast<std::size_t>(state.range(0)), 1.0);
  const auto a = gauge::random_smooth_vector_field(g, 4);
  for (auto _ : state) benchmark::DoNotOptimize(gauge::coulomb_project(g, a));
}
BENCHMARK(coulomb_projection)->Arg(16)->Arg(32);

void two_point_function(benchmark::State& state) {
  const auto model = lattice::LatticeModel::scalar_field(512, 0.5, 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(lattice::two_point_function(model, 0.0, 0.0, 32.0, 3.0, {false, 1.0}));
}
BENCHMARK(two_point_function);

}  // namespace
BENCHMARK_MAIN();
