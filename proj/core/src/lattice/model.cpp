#include "pilot/lattice/model.hpp"

#include <cmath>
#include <numbers>

#include "pilot/error.hpp"

namespace pilot::lattice {

LatticeModel LatticeModel::atom_chain(std::size_t sites, double spacing, double atom_mass,
                                      double spring, double pinning, double hbar) {
  LatticeModel m;
  m.kind = LatticeKind::atom_chain;
  m.sites = sites;
  m.spacing = spacing;
  m.atom_mass = atom_mass;
  m.spring = spring;
  m.pinning = pinning;
  m.hbar = hbar;
  m.validate();
  return m;
}

LatticeModel LatticeModel::scalar_field(std::size_t sites, double spacing, double field_mass,
                                        double hbar) {
  LatticeModel m;
  m.kind = LatticeKind::scalar_field;
  m.sites = sites;
  m.spacing = spacing;
  m.field_mass = field_mass;
  m.hbar = hbar;
  m.validate();
  return m;
}

void LatticeModel::validate() const {
  if (sites == 0) throw InvalidInput("lattice needs at least one site");
  if (!(spacing > 0.0) || !std::isfinite(spacing)) throw InvalidInput("lattice spacing must be positive");
  if (!(hbar > 0.0) || !std::isfinite(hbar)) throw InvalidInput("hbar must be positive");
  if (kind == LatticeKind::atom_chain) {
    if (!(atom_mass > 0.0) || !std::isfinite(atom_mass)) throw InvalidInput("atom mass must be positive");
    if (!(spring >= 0.0) || !std::isfinite(spring)) throw InvalidInput("spring constant must be non-negative");
    if (!(pinning >= 0.0) || !std::isfinite(pinning)) throw InvalidInput("pinning must be non-negative");
  } else if (!(field_mass >= 0.0) || !std::isfinite(field_mass)) {
    throw InvalidInput("field mass must be non-negative");
  }
}

double LatticeModel::site_mass() const noexcept {
  return kind == LatticeKind::atom_chain ? atom_mass : spacing;
}

Eigen::MatrixXd LatticeModel::stiffness() const {
  const auto n = static_cast<Eigen::Index>(sites);
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n, n);
  const double bond = kind == LatticeKind::atom_chain ? spring : 1.0 / spacing;
  const double onsite = kind == LatticeKind::atom_chain ? pinning : spacing * field_mass * field_mass;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index j = (i + 1) % n;
    k(i, i) += bond;
    k(j, j) += bond;
    k(i, j) -= bond;
    k(j, i) -= bond;
    k(i, i) += onsite;
  }
  return k;
}

double LatticeModel::sound_speed() const noexcept {
  return kind == LatticeKind::atom_chain ? spacing * std::sqrt(spring / atom_mass) : 1.0;
}

double LatticeModel::wavenumber(std::size_t j) const noexcept {
  return 2.0 * std::numbers::pi * static_cast<double>(j) /
         (static_cast<double>(sites) * spacing);
}

double LatticeModel::omega(double k) const noexcept {
  const double s = std::sin(0.5 * k * spacing);
  if (kind == LatticeKind::atom_chain) return std::sqrt((pinning + 4.0 * spring * s * s) / atom_mass);
  return std::sqrt(field_mass * field_mass + 4.0 * s * s / (spacing * spacing));
}

std::vector<double> LatticeModel::dispersion() const {
  std::vector<double> w(sites);
  for (std::size_t j = 0; j < sites; ++j) w[j] = omega(wavenumber(j));
  return w;
}

bool LatticeModel::has_zero_mode() const noexcept {
  return kind == LatticeKind::atom_chain ? pinning == 0.0 : field_mass == 0.0;
}

ModeBasis::ModeBasis(std::size_t sites) {
  if (sites == 0) throw InvalidInput("mode basis needs at least one site");
  const auto n = static_cast<Eigen::Index>(sites);
  u_.resize(n, n);
  const double nn = static_cast<double>(sites);
  Eigen::Index row = 0;
  auto push = [&](std::size_t j, bool sine, auto f) {
    for (Eigen::Index x = 0; x < n; ++x) u_(row, x) = f(static_cast<double>(x));
    index_.push_back(j);
    sine_.push_back(sine);
    ++row;
  };
  push(0, false, [&](double) { return 1.0 / std::sqrt(nn); });
  for (std::size_t j = 1; 2 * j < sites; ++j) {
    const double th = 2.0 * std::numbers::pi * static_cast<double>(j) / nn;
    push(j, false, [&](double x) { return std::sqrt(2.0 / nn) * std::cos(th * x); });
    push(j, true, [&](double x) { return std::sqrt(2.0 / nn) * std::sin(th * x); });
  }
  if (sites % 2 == 0 && sites > 1) {
    push(sites / 2, false, [&](double x) {
      return (static_cast<long>(x) % 2 == 0 ? 1.0 : -1.0) / std::sqrt(nn);
    });
  }
}

double ModeBasis::value_at(std::size_t mode, double s) const {
  const auto n = static_cast<double>(index_.size());
  const std::size_t j = index_.at(mode);
  const double th = 2.0 * std::numbers::pi * static_cast<double>(j) / n;
  if (j == 0) return 1.0 / std::sqrt(n);
  if (2 * j == index_.size()) return std::cos(th * s) / std::sqrt(n);
  return std::sqrt(2.0 / n) * (sine_[mode] ? std::sin(th * s) : std::cos(th * s));
}

std::size_t ModeBasis::mode_of(std::size_t j) const {
  for (std::size_t m = 0; m < index_.size(); ++m) {
    if (index_[m] == j && !sine_[m]) return m;
  }
  throw OutOfRange("no mode carries wavenumber index " + std::to_string(j));
}

std::vector<double> mode_frequencies(const LatticeModel& model, const ModeBasis& basis) {
  std::vector<double> w(basis.size());
  for (std::size_t m = 0; m < basis.size(); ++m) {
    w[m] = model.omega(model.wavenumber(basis.wavenumber_index(m)));
  }
  return w;
}

Eigen::VectorXd to_mode_coordinates(const LatticeModel& model, const ModeBasis& basis,
                                    const Eigen::VectorXd& sites) {
  if (static_cast<std::size_t>(sites.size()) != basis.size()) {
    throw ShapeMismatch("site vector length differs from the lattice size");
  }
  return std::sqrt(model.site_mass()) * basis.to_modes(sites);
}

Eigen::VectorXd to_site_values(const LatticeModel& model, const ModeBasis& basis,
                               const Eigen::VectorXd& modes) {
  if (static_cast<std::size_t>(modes.size()) != basis.size()) {
    throw ShapeMismatch("mode vector length differs from the lattice size");
  }
  return basis.to_sites(modes) / std::sqrt(model.site_mass());
}

}  // namespace pilot::lattice
