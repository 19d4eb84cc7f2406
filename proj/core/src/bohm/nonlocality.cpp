#include "pilot/bohm/nonlocality.hpp"

#include <array>
#include <cmath>

#include "pilot/bohm/guidance.hpp"
#include "pilot/error.hpp"

namespace pilot::bohm {

double nonlocality_probe(const qm::WaveFunction& psi, const qm::HamiltonianSpec& h, double x1,
                         double x2, double delta) {
  if (psi.grid().dimension() != 2) throw InvalidInput("nonlocality probe needs a two-particle state");
  if (!(delta != 0.0) || !std::isfinite(delta)) throw InvalidInput("delta must be nonzero and finite");
  const GuidanceField f(psi, h);
  const std::array<double, 2> a{x1, x2};
  const std::array<double, 2> b{x1, psi.grid().wrap(x2 + delta)};
  const double va = f.velocity(a)[0];
  const double vb = f.velocity(b)[0];
  return std::abs(vb - va) / std::abs(delta);
}

}  // namespace pilot::bohm
