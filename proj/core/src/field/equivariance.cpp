#include "pilot/field/equivariance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "pilot/bohm/integrator.hpp"
#include "pilot/error.hpp"
#include "pilot/rng.hpp"

namespace pilot::field {

double FieldEquivarianceStats::max_mean_z() const noexcept {
  double m = 0.0;
  for (const auto& s : modes) m = std::max(m, std::abs(s.mean_z));
  return m;
}

double FieldEquivarianceStats::max_variance_mismatch() const noexcept {
  double m = 0.0;
  for (const auto& s : modes) m = std::max(m, s.variance_mismatch);
  return m;
}

double FieldEquivarianceStats::max_l1() const noexcept {
  double m = 0.0;
  for (const auto& s : modes) m = std::max(m, s.l1);
  return m;
}

double FieldEquivarianceStats::variance_bound() const noexcept {
  return members == 0 ? 0.0 : 3.0 * std::sqrt(2.0 / static_cast<double>(members));
}

bool FieldEquivarianceStats::within_noise() const noexcept {
  return !modes.empty() && max_mean_z() < 3.0 && max_variance_mismatch() < variance_bound();
}

FieldEnsemble sample_field_ensemble(const lattice::GaussianWavefunctional& psi, std::size_t count,
                                    std::uint64_t seed) {
  if (count == 0) throw InvalidInput("ensemble size must be positive");
  const auto n = static_cast<Eigen::Index>(psi.modes());
  FieldEnsemble e;
  e.modes = Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(count));
  e.time = psi.time();
  e.flagged.assign(count, false);
  for (std::size_t i = 0; i < count; ++i) {
    RandomStream rng(seed, i);
    for (Eigen::Index m = 0; m < n; ++m) {
      const auto mode = static_cast<std::size_t>(m);
      if (!psi.active(mode)) continue;
      e.modes(m, static_cast<Eigen::Index>(i)) = psi.centre_q(mode) + std::sqrt(psi.variance(mode)) * rng.normal();
    }
  }
  return e;
}

FieldEquivarianceStats field_moments(const FieldEnsemble& ensemble, const lattice::GaussianWavefunctional& psi,
                                     std::size_t bins) {
  if (static_cast<std::size_t>(ensemble.modes.rows()) != psi.modes()) {
    throw ShapeMismatch("ensemble mode count differs from the wavefunctional");
  }
  if (std::abs(ensemble.time - psi.time()) > 1e-9 * std::max(1.0, std::abs(psi.time()))) {
    throw StaleEnsemble("ensemble time differs from the wavefunctional time");
  }
  if (bins == 0) throw InvalidInput("bin count must be positive");
  FieldEquivarianceStats out;
  out.time = psi.time();
  out.flagged = ensemble.flagged_count();
  std::vector<Eigen::Index> used;
  for (Eigen::Index i = 0; i < ensemble.modes.cols(); ++i) {
    if (ensemble.flagged.empty() || !ensemble.flagged[static_cast<std::size_t>(i)]) used.push_back(i);
  }
  out.members = used.size();
  if (used.empty()) throw InvalidInput("no unflagged members to compare");
  const double mcount = static_cast<double>(used.size());
  for (std::size_t m = 0; m < psi.modes(); ++m) {
    if (!psi.active(m)) continue;
    ModeMoments s;
    s.mode = m;
    s.expected_mean = psi.centre_q(m);
    s.expected_variance = psi.variance(m);
    const auto row = static_cast<Eigen::Index>(m);
    double sum = 0.0;
    for (auto i : used) sum += ensemble.modes(row, i);
    s.mean = sum / mcount;
    double ss = 0.0;
    for (auto i : used) ss += (ensemble.modes(row, i) - s.mean) * (ensemble.modes(row, i) - s.mean);
    s.variance = ss / std::max(1.0, mcount - 1.0);
    const double sigma = std::sqrt(s.expected_variance);
    s.mean_z = (s.mean - s.expected_mean) / (sigma / std::sqrt(mcount));
    s.variance_mismatch = std::abs(s.variance - s.expected_variance) / s.expected_variance;
    const double lo = s.expected_mean - 4.0 * sigma;
    const double width = 8.0 * sigma / static_cast<double>(bins);
    std::vector<double> counts(bins, 0.0);
    double outside = 0.0;
    for (auto i : used) {
      const double b = std::floor((ensemble.modes(row, i) - lo) / width);
      if (b >= 0.0 && b < static_cast<double>(bins)) {
        counts[static_cast<std::size_t>(b)] += 1.0;
      } else {
        outside += 1.0;
      }
    }
    double l1 = outside / mcount;
    double inside_born = 0.0;
    for (std::size_t b = 0; b < bins; ++b) {
      const double z0 = (lo + static_cast<double>(b) * width - s.expected_mean) / (sigma * std::numbers::sqrt2);
      const double z1 = (lo + static_cast<double>(b + 1) * width - s.expected_mean) / (sigma * std::numbers::sqrt2);
      const double p = 0.5 * (std::erf(z1) - std::erf(z0));
      inside_born += p;
      l1 += std::abs(counts[b] / mcount - p);
    }
    s.l1 = l1 + std::max(0.0, 1.0 - inside_born);
    out.modes.push_back(s);
  }
  const double frac = static_cast<double>(out.flagged) / static_cast<double>(ensemble.size());
  if (frac > bohm::kFlaggedWarningFraction) {
    std::ostringstream msg;
    msg << "flagged fraction " << frac << " exceeds " << bohm::kFlaggedWarningFraction;
    out.warnings.push_back(msg.str());
  }
  if (!out.within_noise()) out.warnings.push_back("moment mismatch exceeds the sampling-noise bound");
  return out;
}

FieldEquivarianceStats field_equivariance(const lattice::GaussianWavefunctional& psi0, std::size_t members,
                                          std::uint64_t seed, double t, double dt,
                                          const FieldTrajectoryOptions& options) {
  return field_equivariance(psi0, sample_field_ensemble(psi0, members, seed), t, dt, options);
}

FieldEquivarianceStats field_equivariance(const lattice::GaussianWavefunctional& psi0, FieldEnsemble ensemble,
                                          double t, double dt, const FieldTrajectoryOptions& options) {
  if (!(t >= 0.0) || !(dt > 0.0)) throw InvalidInput("time and step must be non-negative and positive");
  if (std::abs(ensemble.time - psi0.time()) > 1e-12 * std::max(1.0, std::abs(psi0.time()))) {
    throw StaleEnsemble("ensemble time differs from the wavefunctional time");
  }
  const auto steps = static_cast<std::size_t>(std::ceil(t / dt - 1e-9));
  const GaussianDynamics dyn(psi0);
  if (steps > 0) {
    advance_field_ensemble(dyn, ensemble, t / static_cast<double>(steps), steps, options);
    ensemble.time = psi0.time() + t;
  }
  return field_moments(ensemble, dyn.at(psi0.time() + t));
}

}  // namespace pilot::field
