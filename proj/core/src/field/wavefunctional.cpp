#include "pilot/field/wavefunctional.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pilot/error.hpp"

namespace pilot::field {

void FieldConfiguration::validate(const lattice::LatticeModel& model) const {
  if (static_cast<std::size_t>(values.size()) != model.sites) {
    throw ShapeMismatch("field configuration length differs from the lattice size");
  }
  if (!values.allFinite() || !std::isfinite(time)) throw InvalidInput("field configuration is not finite");
}

void hermite_functions(unsigned n_max, double omega, double hbar, double q, std::vector<double>& h,
                       std::vector<double>& dh) {
  const double s = std::sqrt(omega / hbar);
  const double xi = s * q;
  h.assign(n_max + 2, 0.0);
  dh.assign(n_max + 1, 0.0);
  h[0] = std::pow(omega / (std::numbers::pi * hbar), 0.25) * std::exp(-0.5 * xi * xi);
  h[1] = std::sqrt(2.0) * xi * h[0];
  for (unsigned n = 1; n + 1 <= n_max + 1; ++n) {
    h[n + 1] = std::sqrt(2.0 / (n + 1.0)) * xi * h[n] - std::sqrt(n / (n + 1.0)) * h[n - 1];
  }
  for (unsigned n = 0; n <= n_max; ++n) {
    const double down = n > 0 ? std::sqrt(0.5 * n) * h[n - 1] : 0.0;
    dh[n] = s * (down - std::sqrt(0.5 * (n + 1.0)) * h[n + 1]);
  }
  h.resize(n_max + 1);
}

FockSuperposition::FockSuperposition(const lattice::LatticeModel& model, std::vector<Term> terms,
                                     double time)
    : model_(model), terms_(std::move(terms)), time_(time) {
  model_.validate();
  const lattice::ModeBasis basis(model_.sites);
  omega_ = lattice::mode_frequencies(model_, basis);
  for (double w : omega_) {
    if (!(w > 0.0)) throw ZeroMode("Fock superposition needs every mode frequency positive");
  }
  if (terms_.empty()) throw InvalidInput("Fock superposition needs at least one term");
  double norm = 0.0;
  for (const auto& t : terms_) {
    if (t.state.occupations.size() != omega_.size()) {
      throw ShapeMismatch("occupation list length differs from the mode count");
    }
    norm += std::norm(t.coefficient);
    for (unsigned n : t.state.occupations) n_max_ = std::max(n_max_, n);
    energy_.push_back(lattice::fock_energy(model_, t.state));
  }
  if (!(norm > 0.0)) throw InvalidInput("Fock superposition has zero norm");
  for (auto& t : terms_) t.coefficient /= std::sqrt(norm);
  reference_density_ = 1.0;
  for (double w : omega_) reference_density_ *= std::sqrt(w / (std::numbers::pi * model_.hbar));
}

Complex FockSuperposition::amplitude(const Eigen::VectorXd& q, double t,
                                     Eigen::VectorXcd* gradient) const {
  const std::size_t modes = omega_.size();
  if (static_cast<std::size_t>(q.size()) != modes) throw ShapeMismatch("mode vector length mismatch");
  std::vector<std::vector<double>> h(modes), dh(modes);
  for (std::size_t m = 0; m < modes; ++m) {
    hermite_functions(n_max_, omega_[m], model_.hbar, q(static_cast<Eigen::Index>(m)), h[m], dh[m]);
  }
  Complex psi{};
  if (gradient) gradient->setZero(static_cast<Eigen::Index>(modes));
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& occ = terms_[i].state.occupations;
    const Complex c = terms_[i].coefficient * std::polar(1.0, -energy_[i] * (t - time_) / model_.hbar);
    double prod = 1.0;
    for (std::size_t m = 0; m < modes; ++m) prod *= h[m][occ[m]];
    psi += c * prod;
    if (!gradient) continue;
    for (std::size_t m = 0; m < modes; ++m) {
      double p = dh[m][occ[m]];
      for (std::size_t o = 0; o < modes; ++o) {
        if (o != m) p *= h[o][occ[o]];
      }
      (*gradient)(static_cast<Eigen::Index>(m)) += c * p;
    }
  }
  return psi;
}

MultiComponentWavefunctional::MultiComponentWavefunctional(
    std::vector<lattice::GaussianWavefunctional> branches, Eigen::MatrixXcd coefficients)
    : branches_(std::move(branches)), coefficients_(std::move(coefficients)) {
  if (branches_.empty()) throw InvalidInput("multi-component wavefunctional needs a branch");
  if (coefficients_.cols() != static_cast<Eigen::Index>(branches_.size()) || coefficients_.rows() < 1) {
    throw ShapeMismatch("coefficient matrix must be components x branches");
  }
  for (const auto& b : branches_) {
    if (b.modes() != branches_.front().modes() || b.time() != branches_.front().time()) {
      throw ShapeMismatch("branches must share the lattice and the time");
    }
  }
}

MultiComponentWavefunctional MultiComponentWavefunctional::rotated(const Eigen::MatrixXcd& u) const {
  if (u.rows() != coefficients_.rows() || u.cols() != coefficients_.rows()) {
    throw ShapeMismatch("rotation must be square over the components");
  }
  if (!(u.adjoint() * u).isIdentity(1e-12)) throw InvalidInput("component rotation must be unitary");
  return MultiComponentWavefunctional(branches_, u * coefficients_);
}

Complex MultiComponentWavefunctional::amplitude(std::size_t component, const Eigen::VectorXd& q,
                                                Eigen::VectorXcd* gradient) const {
  if (component >= components()) throw OutOfRange("component index out of range");
  Complex psi{};
  if (gradient) gradient->setZero(q.size());
  for (std::size_t j = 0; j < branches_.size(); ++j) {
    const Complex c = coefficients_(static_cast<Eigen::Index>(component), static_cast<Eigen::Index>(j));
    if (c == Complex{}) continue;
    const Complex g = branches_[j].amplitude(q);
    psi += c * g;
    if (gradient) *gradient += c * g * branches_[j].log_gradient(q);
  }
  return psi;
}

void MultiComponentWavefunctional::advance(double dt) {
  for (auto& b : branches_) b.advance(dt);
}

}  // namespace pilot::field
