#include "pilot/relativity/relativity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "pilot/error.hpp"
#include "pilot/field/guidance.hpp"
#include "pilot/field/trajectory.hpp"
#include "pilot/lattice/gaussian.hpp"

namespace pilot::relativity {

SoundBoost::SoundBoost(double velocity, double sound_speed) : v_(velocity), cs_(sound_speed) {
  if (!(sound_speed > 0.0) || !std::isfinite(sound_speed)) throw InvalidInput("sound speed must be positive");
  if (!std::isfinite(velocity) || !(std::abs(velocity) < sound_speed)) {
    throw InvalidInput("boost velocity must satisfy |v| < c_s");
  }
  const double b = v_ / cs_;
  gamma_ = 1.0 / std::sqrt(1.0 - b * b);
}

SoundBoost::Event SoundBoost::apply(const Event& e) const noexcept {
  return {gamma_ * (e.x - v_ * e.t), gamma_ * (e.t - v_ * e.x / (cs_ * cs_))};
}

SoundBoost::Event SoundBoost::inverse(const Event& e) const noexcept {
  return {gamma_ * (e.x + v_ * e.t), gamma_ * (e.t + v_ * e.x / (cs_ * cs_))};
}

SoundBoost SoundBoost::then(const SoundBoost& next) const {
  if (next.cs_ != cs_) throw InvalidInput("composed boosts must share the sound speed");
  return SoundBoost((v_ + next.v_) / (1.0 + v_ * next.v_ / (cs_ * cs_)), cs_);
}

DispersionScan dispersion_linearity_scan(const lattice::LatticeModel& model, double k_cut, std::size_t samples) {
  model.validate();
  if (model.kind == lattice::LatticeKind::atom_chain ? model.pinning != 0.0 : model.field_mass != 0.0) {
    throw InvalidInput("dispersion linearity needs a gapless model");
  }
  if (!(k_cut > 0.0) || samples == 0) throw InvalidInput("cutoff and sample count must be positive");
  const double cs = model.sound_speed();
  DispersionScan out;
  for (std::size_t i = 1; i <= samples; ++i) {
    const double k = k_cut * static_cast<double>(i) / static_cast<double>(samples);
    const double dev = std::abs(model.omega(k) / (cs * k) - 1.0);
    if (!out.deviation.empty() && !(dev > out.deviation.back())) out.monotone = false;
    out.ka.push_back(k * model.spacing);
    out.deviation.push_back(dev);
    out.max_deviation = std::max(out.max_deviation, dev);
  }
  return out;
}

namespace {

void check_window(const lattice::LatticeModel& model, const EventPair& p, double cs) {
  const double dx = std::abs(p.first.x - p.second.x);
  const double dt = std::abs(p.first.t - p.second.t);
  const double ring = static_cast<double>(model.sites) * model.spacing;
  if (dx < kMinSeparationSpacings * model.spacing || dx + cs * dt > kMaxRingFraction * ring) {
    throw OutOfRange("event pair outside the validity window (separation >> a, light-cone extent << N a)");
  }
}

io::Json pair_json(const EventPair& p) {
  return io::Json::array({p.first.x, p.first.t, p.second.x, p.second.t});
}

}  // namespace

EventPair equal_time_pair(double separation, double time) {
  return {{-0.5 * separation, time}, {0.5 * separation, time}};
}

BoostInvarianceReport boost_invariance_correlator(const lattice::LatticeModel& model, const std::vector<EventPair>& pairs,
                                                  const SoundBoost& boost, const lattice::CorrelatorOptions& options) {
  model.validate();
  const double cs = model.sound_speed();
  if (std::abs(boost.sound_speed() - cs) > 1e-12 * cs) throw InvalidInput("boost sound speed differs from the model");
  if (std::abs(boost.velocity()) > kMaxBoostFraction * cs) throw OutOfRange("boost velocity exceeds c_s / 2");
  BoostInvarianceReport rep;
  for (const auto& p : pairs) {
    CorrelatorRow row;
    row.original = p;
    row.boosted = {boost.apply(p.first), boost.apply(p.second)};
    check_window(model, row.original, cs);
    check_window(model, row.boosted, cs);
    row.w_original = lattice::two_point_function(model, p.first.x, p.first.t, p.second.x, p.second.t, options);
    row.w_boosted = lattice::two_point_function(model, row.boosted.first.x, row.boosted.first.t,
                                                row.boosted.second.x, row.boosted.second.t, options);
    row.relative_deviation = std::abs(row.w_boosted - row.w_original) / std::abs(row.w_original);
    rep.max_relative_deviation = std::max(rep.max_relative_deviation, row.relative_deviation);
    rep.rows.push_back(row);
  }
  return rep;
}

io::Json BoostInvarianceReport::to_json() const {
  io::Json rows_json = io::Json::array();
  for (const auto& r : rows) {
    rows_json.push_back({{"original", pair_json(r.original)},
                         {"boosted", pair_json(r.boosted)},
                         {"w_original", {r.w_original.real(), r.w_original.imag()}},
                         {"w_boosted", {r.w_boosted.real(), r.w_boosted.imag()}},
                         {"relative_deviation", r.relative_deviation}});
  }
  return {{"max_relative_deviation", max_relative_deviation}, {"pairs", rows_json}};
}

namespace {

double correlator_deviation(std::size_t sites, double spacing, double mass, const FrameReportConfig& c,
                            BoostInvarianceReport* out) {
  const auto model = lattice::LatticeModel::scalar_field(sites, spacing, mass);
  lattice::CorrelatorOptions opts;
  opts.resolution = c.resolution_spacings * spacing;
  const SoundBoost boost(c.boost_velocity, model.sound_speed());
  auto rep = boost_invariance_correlator(model, {equal_time_pair(c.separation)}, boost, opts);
  const double d = rep.max_relative_deviation;
  if (out != nullptr) *out = std::move(rep);
  return d;
}

}  // namespace

FrameReport frame_prediction_report(const FrameReportConfig& c) {
  FrameReport r;
  const auto model = lattice::LatticeModel::scalar_field(c.field_sites, c.field_spacing, c.field_mass);
  const auto psi = lattice::GaussianWavefunctional::coherent(model, std::vector<std::complex<double>>(c.field_sites, c.coherent_shift));
  field::FieldTrajectoryOptions opts;
  opts.guidance_sign = c.guidance_sign;
  r.equivariance = field::field_equivariance(psi, c.members, c.seed, c.time, c.dt, opts);
  r.equivariance_pass = r.equivariance.within_noise();
  correlator_deviation(c.correlator_sites, c.correlator_spacing, c.correlator_mass, c, &r.correlator);
  r.correlator_pass = r.correlator.max_relative_deviation < c.correlator_bound;
  if (c.refine && c.boost_velocity != 0.0) {
    r.refined_deviation =
        correlator_deviation(2 * c.correlator_sites, 0.5 * c.correlator_spacing, c.correlator_mass, c, nullptr);
    r.refinement_pass = r.refined_deviation < r.correlator.max_relative_deviation;
  }
  if (!r.equivariance_pass) r.culprits.push_back("equivariance: Bohmian field statistics depart from |Psi|^2 in S0");
  if (!r.correlator_pass) r.culprits.push_back("boost invariance: two-point function deviation above bound");
  if (!r.refinement_pass) r.culprits.push_back("boost invariance: deviation does not decrease under refinement");
  r.pass = r.culprits.empty();
  r.thresholds = {
      {"equivariance_mean_z", 3.0, "derived"},
      {"equivariance_variance_mismatch", r.equivariance.variance_bound(), "derived"},
      {"correlator_relative_deviation", c.correlator_bound, "derived"},
      {"refined_deviation_below_reference", r.correlator.max_relative_deviation, "derived"},
  };
  return r;
}

io::Json FrameReport::to_json() const {
  io::Json modes = io::Json::array();
  for (const auto& m : equivariance.modes) {
    modes.push_back({{"mode", m.mode},
                     {"mean", m.mean},
                     {"expected_mean", m.expected_mean},
                     {"mean_z", m.mean_z},
                     {"variance", m.variance},
                     {"expected_variance", m.expected_variance},
                     {"variance_mismatch", m.variance_mismatch},
                     {"l1", m.l1}});
  }
  io::Json th = io::Json::array();
  for (const auto& t : thresholds) th.push_back({{"name", t.name}, {"value", t.value}, {"provenance", t.provenance}});
  return {{"result", pass ? "PASS" : "FAIL"},
          {"culprits", culprits},
          {"measurable_predictions",
           "field-configuration statistics at fixed preferred-frame time, and vacuum two-point functions at "
           "spacetime events"},
          {"equivariance",
           {{"pass", equivariance_pass},
            {"members", equivariance.members},
            {"time", equivariance.time},
            {"max_mean_z", equivariance.max_mean_z()},
            {"max_variance_mismatch", equivariance.max_variance_mismatch()},
            {"variance_bound", equivariance.variance_bound()},
            {"max_l1", equivariance.max_l1()},
            {"modes", modes},
            {"warnings", equivariance.warnings}}},
          {"boost_invariance",
           {{"pass", correlator_pass},
            {"refinement_pass", refinement_pass},
            {"refined_deviation", refined_deviation},
            {"reference", correlator.to_json()}}},
          {"thresholds", th}};
}

namespace {

/// Coherent-state classical field and Bohmian trajectory in one frame, evaluated at any event.
class FrameField {
 public:
  FrameField(const lattice::LatticeModel& model, lattice::GaussianWavefunctional psi)
      : model_(model), basis_(model.sites), psi_(std::move(psi)), w_(psi_.frequencies()) {}

  const lattice::GaussianWavefunctional& state() const { return psi_; }
  const lattice::ModeBasis& basis() const { return basis_; }

  double site_index(double x) const {
    return x / model_.spacing + static_cast<double>(model_.sites / 2);
  }

  /// Mean field and its time derivative at (x, t).
  std::pair<double, double> mean(double x, double t) const {
    const double s = site_index(x);
    double f = 0.0;
    double p = 0.0;
    for (std::size_t m = 0; m < w_.size(); ++m) {
      if (!psi_.active(m)) continue;
      const auto a = psi_.alpha()[m] * std::exp(std::complex<double>(0.0, -w_[m] * t));
      const double u = basis_.value_at(m, s);
      f += std::sqrt(2.0 * model_.hbar / w_[m]) * a.real() * u;
      p += std::sqrt(2.0 * model_.hbar * w_[m]) * a.imag() * u;
    }
    const double scale = 1.0 / std::sqrt(model_.site_mass());
    return {scale * f, scale * p};
  }

  /// Field at fractional site position from mode coordinates.
  double field(const Eigen::VectorXd& q, double x) const {
    const double s = site_index(x);
    double f = 0.0;
    for (std::size_t m = 0; m < basis_.size(); ++m) f += q(static_cast<Eigen::Index>(m)) * basis_.value_at(m, s);
    return f / std::sqrt(model_.site_mass());
  }

 private:
  lattice::LatticeModel model_;
  lattice::ModeBasis basis_;
  lattice::GaussianWavefunctional psi_;
  std::vector<double> w_;
};

/// Uniformly sampled mode trajectory with cubic Hermite interpolation in time.
class ModeHistory {
 public:
  ModeHistory(const field::FieldDynamics& dyn, const lattice::LatticeModel& model, const Eigen::VectorXd& q0,
              double t0, double t_min, double t_max, double dt, double sign)
      : dt_(dt) {
    const lattice::ModeBasis basis(model.sites);
    const auto back = static_cast<std::size_t>(std::ceil((t0 - t_min) / dt));
    const auto fwd = static_cast<std::size_t>(std::ceil((t_max - t0) / dt));
    start_ = t0 - static_cast<double>(back) * dt;
    field::FieldConfiguration phi0{lattice::to_site_values(model, basis, q0), t0};
    field::FieldTrajectoryOptions opts{sign, 1};
    std::vector<Eigen::VectorXd> backward;
    if (back > 0) {
      const auto b = field::integrate_field_trajectory(dyn, phi0, -dt, back, opts);
      flagged_ = flagged_ || b.flagged;
      for (auto it = b.history.rbegin(); it != b.history.rend(); ++it) {
        backward.push_back(lattice::to_mode_coordinates(model, basis, it->values));
      }
      backward.pop_back();
    }
    q_ = backward;
    if (fwd > 0) {
      const auto f = field::integrate_field_trajectory(dyn, phi0, dt, fwd, opts);
      flagged_ = flagged_ || f.flagged;
      for (const auto& c : f.history) q_.push_back(lattice::to_mode_coordinates(model, basis, c.values));
    } else {
      q_.push_back(q0);
    }
    for (std::size_t i = 0; i < q_.size(); ++i) {
      Eigen::VectorXd v;
      double d = 0.0;
      dyn.mode_velocity(q_[i], start_ + static_cast<double>(i) * dt, v, d);
      v_.push_back(sign * v);
    }
  }

  Eigen::VectorXd at(double t) const {
    const double u = (t - start_) / dt_;
    auto i = static_cast<std::ptrdiff_t>(std::floor(u));
    i = std::clamp<std::ptrdiff_t>(i, 0, static_cast<std::ptrdiff_t>(q_.size()) - 2);
    const auto k = static_cast<std::size_t>(i);
    const double s = u - static_cast<double>(i);
    if (q_.size() == 1) return q_[0];
    const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
    const double h10 = s * (1 - s) * (1 - s);
    const double h01 = s * s * (3 - 2 * s);
    const double h11 = s * s * (s - 1);
    return h00 * q_[k] + h10 * dt_ * v_[k] + h01 * q_[k + 1] + h11 * dt_ * v_[k + 1];
  }

  bool flagged() const { return flagged_; }

 private:
  double dt_;
  double start_ = 0.0;
  std::vector<Eigen::VectorXd> q_;
  std::vector<Eigen::VectorXd> v_;
  bool flagged_ = false;
};

lattice::GaussianWavefunctional coherent_from_sites(const lattice::LatticeModel& model, const Eigen::VectorXd& phi,
                                                    const Eigen::VectorXd& pi) {
  const lattice::ModeBasis basis(model.sites);
  const Eigen::VectorXd q = lattice::to_mode_coordinates(model, basis, phi);
  const Eigen::VectorXd p = lattice::to_mode_coordinates(model, basis, pi);
  const auto w = lattice::mode_frequencies(model, basis);
  std::vector<std::complex<double>> alpha(w.size());
  for (std::size_t m = 0; m < w.size(); ++m) {
    if (w[m] <= 0.0) continue;
    const auto k = static_cast<Eigen::Index>(m);
    alpha[m] = std::sqrt(w[m] / (2.0 * model.hbar)) * std::complex<double>(q(k), p(k) / w[m]);
  }
  return lattice::GaussianWavefunctional::coherent(model, alpha);
}

}  // namespace

NoncovarianceReport trajectory_noncovariance_demo(const NoncovarianceConfig& c) {
  if (c.samples < 2 || !(c.duration > 0.0) || !(c.dt > 0.0)) throw InvalidInput("demo needs samples >= 2, duration > 0, dt > 0");
  if (!(c.pulse_width > 0.0) || !(c.offset_width > 0.0)) throw InvalidInput("pulse and offset widths must be positive");
  const auto model = lattice::LatticeModel::scalar_field(c.sites, c.spacing, c.field_mass);
  const SoundBoost boost(c.boost_velocity, model.sound_speed());
  const auto n = static_cast<Eigen::Index>(c.sites);
  const lattice::ModeBasis basis(c.sites);
  std::vector<double> x(c.sites);
  for (std::size_t i = 0; i < c.sites; ++i) x[i] = (static_cast<double>(i) - static_cast<double>(c.sites / 2)) * c.spacing;

  // Preferred frame S0: coherent pulse at rest plus a localized Bohmian offset.
  Eigen::VectorXd phi0(n), pi0 = Eigen::VectorXd::Zero(n), offset(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double xi = x[static_cast<std::size_t>(i)];
    phi0(i) = c.pulse_amplitude * std::exp(-0.5 * std::pow((xi - c.pulse_centre) / c.pulse_width, 2));
    offset(i) = c.offset_amplitude * std::exp(-0.5 * std::pow((xi - c.offset_centre) / c.offset_width, 2));
  }
  const FrameField s0(model, coherent_from_sites(model, phi0, pi0));
  const field::GaussianDynamics dyn0(s0.state());

  NoncovarianceReport rep;
  rep.sites = x;
  rep.stationary = dyn0.stationary();
  if (rep.stationary) rep.warnings.push_back("stationary state: both trajectories are static, the demo is degenerate");

  for (std::size_t k = 0; k < c.samples; ++k) {
    rep.sample_times.push_back(c.duration * static_cast<double>(k) / static_cast<double>(c.samples - 1));
  }
  double t_min = 0.0;
  double t_max = 0.0;
  for (double xp : x) {
    for (double tp : {0.0, c.duration}) {
      const auto e = boost.inverse({xp, tp});
      t_min = std::min(t_min, e.t);
      t_max = std::max(t_max, e.t);
    }
  }
  const Eigen::VectorXd q0 = lattice::to_mode_coordinates(model, basis, phi0 + offset);
  const ModeHistory h0(dyn0, model, q0, 0.0, t_min, t_max, c.dt, c.guidance_sign);

  // Frame S: coherent state from the boosted classical data on its t' = 0 slice, Bohmian
  // configuration taken from the S0 Bohmian field on that slice.
  Eigen::VectorXd phi_s(n), pi_s(n), bohm_s(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto e = boost.inverse({x[static_cast<std::size_t>(i)], 0.0});
    const auto [f, ft] = s0.mean(e.x, e.t);
    // d/dt' = gamma (d/dt + v d/dx); d/dx from the band-limited mode expansion.
    const double hstep = 1e-5 * c.spacing;
    const double fx = (s0.mean(e.x + hstep, e.t).first - s0.mean(e.x - hstep, e.t).first) / (2.0 * hstep);
    phi_s(i) = f;
    pi_s(i) = boost.gamma() * (ft + boost.velocity() * fx);
    bohm_s(i) = s0.field(h0.at(e.t), e.x);
  }
  const FrameField s1(model, coherent_from_sites(model, phi_s, pi_s));
  const field::GaussianDynamics dyn1(s1.state());
  const Eigen::VectorXd q1 = lattice::to_mode_coordinates(model, basis, bohm_s);
  const ModeHistory h1(dyn1, model, q1, 0.0, 0.0, c.duration, c.dt, c.guidance_sign);
  if (h0.flagged() || h1.flagged()) rep.warnings.push_back("a field trajectory met a node and was frozen");

  for (double tp : rep.sample_times) {
    std::vector<double> b0(c.sites), b1(c.sites);
    const Eigen::VectorXd q1t = h1.at(tp);
    for (std::size_t i = 0; i < c.sites; ++i) {
      const auto e = boost.inverse({x[i], tp});
      b0[i] = s0.field(h0.at(e.t), e.x);
      b1[i] = s1.field(q1t, x[i]);
      rep.trajectory_mismatch = std::max(rep.trajectory_mismatch, std::abs(b1[i] - b0[i]));
      const double m0 = s0.mean(e.x, e.t).first;
      const double m1 = s1.mean(x[i], tp).first;
      rep.prediction_mismatch = std::max(rep.prediction_mismatch, std::abs(m1 - m0));
    }
    rep.bohm_boosted_s0.push_back(std::move(b0));
    rep.bohm_frame_s.push_back(std::move(b1));
  }
  rep.ratio = rep.prediction_mismatch > 0.0 ? rep.trajectory_mismatch / rep.prediction_mismatch
                                            : (rep.trajectory_mismatch > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
  return rep;
}

io::Json NoncovarianceReport::to_json() const {
  return {{"trajectory_mismatch", trajectory_mismatch},
          {"prediction_mismatch", prediction_mismatch},
          {"ratio", std::isfinite(ratio) ? io::Json(ratio) : io::Json(nullptr)},
          {"stationary", stationary},
          {"sample_times", sample_times},
          {"warnings", warnings}};
}

}  // namespace pilot::relativity
