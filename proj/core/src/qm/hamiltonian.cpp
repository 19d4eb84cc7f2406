#include "pilot/qm/hamiltonian.hpp"

#include <cmath>

#include "pilot/error.hpp"

namespace pilot::qm {

void HamiltonianSpec::validate(const SpatialGrid& grid, int components) const {
  if (!(hbar > 0.0) || !std::isfinite(hbar)) throw InvalidInput("hbar must be positive");
  if (masses.empty()) throw InvalidInput("at least one mass is required");
  if (masses.size() != 1 && masses.size() != static_cast<std::size_t>(grid.dimension())) {
    throw ShapeMismatch("masses must have one entry or one per axis");
  }
  for (double m : masses) {
    if (!(m > 0.0) || !std::isfinite(m)) throw InvalidInput("masses must be positive");
  }
  if (!potential.empty()) {
    if (potential.size() != grid.size()) throw ShapeMismatch("potential size differs from grid");
    for (double v : potential) {
      if (!std::isfinite(v)) throw InvalidInput("potential must be finite");
    }
  }
  if (!absorption.empty()) {
    if (absorption.size() != grid.size()) throw ShapeMismatch("absorption size differs from grid");
    for (double w : absorption) {
      if (!(w >= 0.0) || !std::isfinite(w)) throw InvalidInput("absorption must be finite and >= 0");
    }
  }
  if (internal_coupling) {
    const auto& c = *internal_coupling;
    if (c.rows() != components || c.cols() != components) {
      throw ShapeMismatch("internal coupling must be components x components");
    }
    if ((c - c.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
      throw InvalidInput("internal coupling must be Hermitian");
    }
  }
  if (momentum_coupling) {
    const auto& mc = *momentum_coupling;
    if (grid.dimension() != 2 || mc.source_axis == mc.target_axis || mc.source_axis < 0 ||
        mc.source_axis > 1 || mc.target_axis < 0 || mc.target_axis > 1) {
      throw InvalidInput("momentum coupling needs two distinct axes of a 2D grid");
    }
    if (!std::isfinite(mc.strength)) throw InvalidInput("momentum coupling must be finite");
  }
}

std::vector<double> sample_potential(const SpatialGrid& grid,
                                     const std::function<double(double, double)>& v) {
  std::vector<double> out(grid.size());
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const auto x = grid.point(p);
    out[p] = v(x[0], x[1]);
  }
  return out;
}

std::vector<double> harmonic_potential(const SpatialGrid& grid, double mass, double omega,
                                       double center) {
  const int dim = grid.dimension();
  return sample_potential(grid, [=](double x0, double x1) {
    double r2 = (x0 - center) * (x0 - center);
    if (dim == 2) r2 += (x1 - center) * (x1 - center);
    return 0.5 * mass * omega * omega * r2;
  });
}

}  // namespace pilot::qm
