#include "pilot/bohm/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "pilot/error.hpp"
#include "pilot/parallel.hpp"
#include "pilot/rng.hpp"

namespace pilot::bohm {

TrajectoryEnsemble sample_born(const qm::WaveFunction& psi, std::size_t count, std::uint64_t seed) {
  if (count == 0) throw InvalidInput("sample count must be positive");
  const auto& grid = psi.grid();
  const auto rho = psi.density();
  std::vector<double> cdf(rho.size());
  double acc = 0.0;
  for (std::size_t p = 0; p < rho.size(); ++p) {
    acc += rho[p];
    cdf[p] = acc;
  }
  const double total = acc * grid.measure();
  if (!std::isfinite(total) || std::abs(total - 1.0) > 1e-6) {
    throw InvalidInput("wavefunction must be normalized before Born sampling");
  }

  const int dim = grid.dimension();
  const auto d = static_cast<std::size_t>(dim);
  const double dx = grid.spacing();
  std::vector<double> positions(count * d);
  parallel_for(count, [&](std::size_t i) {
    RandomStream rng(seed, i);
    const double u = rng.uniform() * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) it = std::prev(cdf.end());
    const auto cell = static_cast<std::size_t>(it - cdf.begin());
    const auto centre = grid.point(cell);
    for (std::size_t a = 0; a < d; ++a) {
      double x = centre[a] + (rng.uniform() - 0.5) * dx;
      x = grid.wrap(x);
      positions[i * d + a] = x;
    }
  });
  return TrajectoryEnsemble(dim, std::move(positions), psi.time(), seed);
}

}  // namespace pilot::bohm
