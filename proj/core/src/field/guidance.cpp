#include "pilot/field/guidance.hpp"

#include <cmath>

#include "pilot/error.hpp"

namespace pilot::field {

bool GaussianDynamics::mode_velocity(const Eigen::VectorXd& q, double t, Eigen::VectorXd& v,
                                     double& density) const {
  const auto psi = at(t);
  v = psi.velocity(q);
  density = std::norm(psi.amplitude(q));
  return true;
}

FieldDynamics::Velocity GaussianDynamics::at_time(double t) const {
  auto psi = std::make_shared<const lattice::GaussianWavefunctional>(at(t));
  return [psi](const Eigen::VectorXd& q, Eigen::VectorXd& v, double& density) {
    v = psi->velocity(q);
    density = std::norm(psi->amplitude(q));
    return true;
  };
}

lattice::GaussianWavefunctional GaussianDynamics::at(double t) const {
  auto psi = psi0_;
  if (t != psi0_.time()) psi.advance(t - psi0_.time(), false);
  return psi;
}

bool GaussianDynamics::stationary() const noexcept {
  for (std::size_t m = 0; m < psi0_.modes(); ++m) {
    if (!psi0_.active(m)) continue;
    if (std::abs(psi0_.alpha()[m]) != 0.0 || psi0_.width()[m] != psi0_.frequencies()[m]) return false;
  }
  return true;
}

bool FockDynamics::mode_velocity(const Eigen::VectorXd& q, double t, Eigen::VectorXd& v,
                                 double& density) const {
  Eigen::VectorXcd grad;
  const Complex a = psi_.amplitude(q, t, &grad);
  density = std::norm(a);
  if (!(density > threshold_)) return false;
  v = psi_.model().hbar * (grad * std::conj(a)).imag() / density;
  return v.allFinite();
}

bool FockDynamics::stationary() const noexcept {
  const auto& terms = psi_.terms();
  const double e0 = lattice::fock_energy(psi_.model(), terms.front().state);
  for (const auto& t : terms) {
    if (std::abs(lattice::fock_energy(psi_.model(), t.state) - e0) > 1e-12 * std::max(1.0, e0)) return false;
  }
  return true;
}

TracedDynamics::TracedDynamics(MultiComponentWavefunctional psi0, double relative_node_threshold)
    : psi0_(std::move(psi0)) {
  double ref = 1.0;
  const auto& w = psi0_.model().dispersion();
  for (double v : w) {
    if (v > 0.0) ref *= std::sqrt(v / (3.141592653589793 * psi0_.model().hbar));
  }
  threshold_ = relative_node_threshold * ref;
}

namespace {

bool traced_velocity(const MultiComponentWavefunctional& psi, const Eigen::VectorXd& q,
                     Eigen::VectorXd& v, double& density) {
  Eigen::VectorXcd numer = Eigen::VectorXcd::Zero(q.size());
  density = 0.0;
  Eigen::VectorXcd grad;
  for (std::size_t c = 0; c < psi.components(); ++c) {
    const Complex a = psi.amplitude(c, q, &grad);
    density += std::norm(a);
    numer += std::conj(a) * grad;
  }
  if (!(density > 0.0)) return false;
  v = psi.model().hbar * numer.imag() / density;
  return v.allFinite();
}

Eigen::VectorXd modes_of(const lattice::LatticeModel& model, const FieldConfiguration& phi) {
  phi.validate(model);
  return lattice::to_mode_coordinates(model, lattice::ModeBasis(model.sites), phi.values);
}

Eigen::VectorXd sites_of(const lattice::LatticeModel& model, const Eigen::VectorXd& v) {
  return lattice::to_site_values(model, lattice::ModeBasis(model.sites), v);
}

}  // namespace

bool TracedDynamics::mode_velocity(const Eigen::VectorXd& q, double t, Eigen::VectorXd& v,
                                   double& density) const {
  auto psi = psi0_;
  const double t0 = start_time();
  if (t != t0) psi.advance(t - t0);
  const bool ok = traced_velocity(psi, q, v, density);
  return ok && density > threshold_;
}

Eigen::VectorXd field_mode_velocity(const FieldDynamics& dynamics, const Eigen::VectorXd& q, double t) {
  Eigen::VectorXd v;
  double density = 0.0;
  if (!dynamics.mode_velocity(q, t, v, density)) throw NodeProximity(density, 0.0);
  return v;
}

Eigen::VectorXd field_guidance_velocity(const lattice::GaussianWavefunctional& psi,
                                        const FieldConfiguration& phi) {
  return sites_of(psi.model(), psi.velocity(modes_of(psi.model(), phi)));
}

Eigen::VectorXd field_guidance_velocity(const FockSuperposition& psi, const FieldConfiguration& phi) {
  const FockDynamics d(psi);
  const Eigen::VectorXd q = modes_of(psi.model(), phi);
  Eigen::VectorXd v;
  double density = 0.0;
  if (!d.mode_velocity(q, phi.time, v, density)) {
    throw NodeProximity(density, bohm::kDefaultNodeThreshold * psi.reference_density());
  }
  return sites_of(psi.model(), v);
}

Eigen::VectorXd field_guidance_velocity(const lattice::LatticeModel& model, const qm::WaveFunction& site_psi,
                                        const FieldConfiguration& phi) {
  phi.validate(model);
  if (site_psi.grid().dimension() != static_cast<int>(model.sites)) {
    throw ShapeMismatch("gridded wavefunctional dimension must equal the number of sites");
  }
  qm::HamiltonianSpec h;
  h.masses = std::vector<double>(model.sites, model.site_mass());
  h.hbar = model.hbar;
  const bohm::GuidanceField f(site_psi, h);
  std::vector<double> x(phi.values.data(), phi.values.data() + phi.values.size());
  const auto v = f.velocity(x);
  Eigen::VectorXd out(phi.values.size());
  for (Eigen::Index i = 0; i < out.size(); ++i) out(i) = v[static_cast<std::size_t>(i)];
  return out;
}

Eigen::VectorXd traced_nonontic_demo(const MultiComponentWavefunctional& psi, const FieldConfiguration& phi) {
  const Eigen::VectorXd q = modes_of(psi.model(), phi);
  Eigen::VectorXd v;
  double density = 0.0;
  if (!traced_velocity(psi, q, v, density)) throw NodeProximity(density, 0.0);
  return sites_of(psi.model(), v);
}

qm::WaveFunction site_grid_wavefunction(const FockSuperposition& psi, const qm::SpatialGrid& grid, double t) {
  const auto& model = psi.model();
  if (grid.dimension() != static_cast<int>(model.sites)) {
    throw ShapeMismatch("grid dimension must equal the number of sites");
  }
  const lattice::ModeBasis basis(model.sites);
  // Jacobian of q = sqrt(M) U phi keeps the grid state normalized.
  const double jac = std::pow(model.site_mass(), 0.25 * static_cast<double>(model.sites));
  return qm::WaveFunction::from_function(
      grid,
      [&](double x0, double x1) {
        Eigen::VectorXd phi(static_cast<Eigen::Index>(model.sites));
        phi(0) = x0;
        if (model.sites == 2) phi(1) = x1;
        return jac * psi.amplitude(lattice::to_mode_coordinates(model, basis, phi), t);
      },
      t);
}

}  // namespace pilot::field
