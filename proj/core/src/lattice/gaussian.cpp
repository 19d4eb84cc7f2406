#include "pilot/lattice/gaussian.hpp"

#include <cmath>
#include <numbers>

#include "pilot/error.hpp"

namespace pilot::lattice {
namespace {

void check_width(const Complex& w) {
  if (!(w.real() > 0.0) || !std::isfinite(w.real()) || !std::isfinite(w.imag())) {
    throw NonNormalizable("Gaussian width must have a positive real part");
  }
}

// arg of D(t) = omega cos(omega t) + i Omega0 sin(omega t), continuous from D(0) = omega.
double unwrapped_arg(double omega, Complex w0, double t) {
  const double total = omega * t;
  const auto pieces = static_cast<long>(std::ceil(std::abs(total) / (0.25 * std::numbers::pi)));
  auto d = [&](double s) { return omega * std::cos(omega * s) + Complex(0.0, 1.0) * w0 * std::sin(omega * s); };
  double arg = 0.0;
  Complex prev = d(0.0);
  for (long i = 1; i <= pieces; ++i) {
    const Complex next = d(t * static_cast<double>(i) / static_cast<double>(pieces));
    arg += std::arg(next / prev);
    prev = next;
  }
  return arg;
}

}  // namespace

GaussianWavefunctional::GaussianWavefunctional(const LatticeModel& model, std::vector<Complex> width,
                                               std::vector<Complex> alpha, double time)
    : model_(model),
      basis_(model.sites),
      omega_(mode_frequencies(model, basis_)),
      width_(std::move(width)),
      alpha_(std::move(alpha)),
      time_(time) {
  model_.validate();
  if (width_.size() != omega_.size() || alpha_.size() != omega_.size()) {
    throw ShapeMismatch("width and shift lists must have one entry per mode");
  }
  double log_norm = 0.0;
  for (std::size_t m = 0; m < omega_.size(); ++m) {
    if (!active(m)) {
      width_[m] = 0.0;
      alpha_[m] = 0.0;
      continue;
    }
    check_width(width_[m]);
    log_norm += 0.25 * std::log(width_[m].real() / (std::numbers::pi * model_.hbar));
  }
  log_prefactor_ = log_norm;
}

GaussianWavefunctional GaussianWavefunctional::ground(const LatticeModel& model) {
  const auto w = mode_frequencies(model, ModeBasis(model.sites));
  std::vector<Complex> width(w.begin(), w.end());
  return GaussianWavefunctional(model, std::move(width), std::vector<Complex>(w.size()));
}

GaussianWavefunctional GaussianWavefunctional::coherent(const LatticeModel& model,
                                                        std::vector<Complex> alpha) {
  const auto w = mode_frequencies(model, ModeBasis(model.sites));
  std::vector<Complex> width(w.begin(), w.end());
  return GaussianWavefunctional(model, std::move(width), std::move(alpha));
}

double GaussianWavefunctional::centre_q(std::size_t m) const noexcept {
  if (!active(m)) return 0.0;
  return std::sqrt(2.0 * model_.hbar / omega_[m]) * alpha_[m].real();
}

double GaussianWavefunctional::centre_p(std::size_t m) const noexcept {
  if (!active(m)) return 0.0;
  return std::sqrt(2.0 * model_.hbar * omega_[m]) * alpha_[m].imag();
}

double GaussianWavefunctional::variance(std::size_t m) const noexcept {
  if (!active(m)) return 0.0;
  return model_.hbar / (2.0 * width_[m].real());
}

Complex GaussianWavefunctional::amplitude(const Eigen::VectorXd& q) const {
  if (static_cast<std::size_t>(q.size()) != modes()) throw ShapeMismatch("mode vector length mismatch");
  Complex e = log_prefactor_;
  const double hb = model_.hbar;
  for (std::size_t m = 0; m < modes(); ++m) {
    if (!active(m)) continue;
    const double y = q(static_cast<Eigen::Index>(m)) - centre_q(m);
    e += -width_[m] * y * y / (2.0 * hb) + Complex(0.0, centre_p(m) * y / hb);
  }
  return std::exp(e);
}

Eigen::VectorXcd GaussianWavefunctional::log_gradient(const Eigen::VectorXd& q) const {
  if (static_cast<std::size_t>(q.size()) != modes()) throw ShapeMismatch("mode vector length mismatch");
  Eigen::VectorXcd g(q.size());
  const double hb = model_.hbar;
  for (std::size_t m = 0; m < modes(); ++m) {
    const auto i = static_cast<Eigen::Index>(m);
    if (!active(m)) {
      g(i) = 0.0;
      continue;
    }
    const double y = q(i) - centre_q(m);
    g(i) = -width_[m] * y / hb + Complex(0.0, centre_p(m) / hb);
  }
  return g;
}

Eigen::VectorXd GaussianWavefunctional::velocity(const Eigen::VectorXd& q) const {
  return model_.hbar * log_gradient(q).imag();
}

void GaussianWavefunctional::advance(double dt, bool track_phase) {
  const double hb = model_.hbar;
  const Complex i(0.0, 1.0);
  for (std::size_t m = 0; m < modes(); ++m) {
    if (!active(m)) continue;
    const double w = omega_[m];
    const double c = std::cos(w * dt), s = std::sin(w * dt);
    const Complex w0 = width_[m];
    const Complex d = w * c + i * w0 * s;
    const Complex w1 = w * (w0 * c + i * w * s) / d;
    check_width(w1);

    const double q0 = centre_q(m), p0 = centre_p(m);
    const double action = 0.5 * ((p0 * p0 - w * w * q0 * q0) * std::sin(2.0 * w * dt) / (2.0 * w) +
                                 q0 * p0 * (std::cos(2.0 * w * dt) - 1.0));
    const Complex log_d(std::log(std::abs(d) / w), track_phase ? unwrapped_arg(w, w0, dt) : 0.0);
    log_prefactor_ += -0.5 * log_d + (track_phase ? i * action / hb : Complex{});
    width_[m] = w1;
    alpha_[m] *= std::polar(1.0, -w * dt);
  }
  time_ += dt;
}

GaussianWavefunctional evolve_gaussian(GaussianWavefunctional psi, double t) {
  psi.advance(t);
  return psi;
}

}  // namespace pilot::lattice
