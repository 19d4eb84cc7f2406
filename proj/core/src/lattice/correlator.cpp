#include "pilot/lattice/correlator.hpp"

#include <cmath>
#include <numbers>

#include "pilot/error.hpp"

namespace pilot::lattice {

std::complex<double> two_point_function(const LatticeModel& model, double x1, double t1, double x2,
                                        double t2, const CorrelatorOptions& options) {
  model.validate();
  if (model.has_zero_mode() && !options.exclude_zero_mode) {
    throw ZeroMode("the zero mode makes the two-point function diverge; exclude it explicitly");
  }
  if (!(options.resolution >= 0.0)) throw InvalidInput("resolution width must be non-negative");
  const std::size_t n = model.sites;
  const double dx = x1 - x2, dt = t1 - t2;
  const double norm = model.hbar / (2.0 * static_cast<double>(n) * model.site_mass());
  const double zone = 2.0 * std::numbers::pi / model.spacing;
  std::complex<double> w{};
  for (std::size_t j = 0; j < n; ++j) {
    double k = model.wavenumber(j);
    const bool edge = 2 * j == n;
    if (2 * j > n) k -= zone;
    const double omega = model.omega(k);
    if (!(omega > 0.0)) continue;
    double weight = norm / omega;
    if (options.resolution > 0.0) weight *= std::exp(-0.5 * k * k * options.resolution * options.resolution);
    const std::complex<double> spatial = edge ? std::complex<double>(std::cos(k * dx), 0.0)
                                              : std::polar(1.0, k * dx);
    w += weight * spatial * std::polar(1.0, -omega * dt);
  }
  return w;
}

}  // namespace pilot::lattice
