#include "pilot/gauge/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "pilot/error.hpp"
#include "pilot/fft.hpp"
#include "pilot/rng.hpp"

namespace pilot::gauge {

namespace {

using Complex = std::complex<double>;
using Spectrum = std::vector<Complex>;

double wavenumber(const GaugeGrid& g, std::size_t i) noexcept {
  const auto n = static_cast<long long>(g.points);
  auto m = static_cast<long long>(i);
  if (m >= (n + 1) / 2) m -= n;
  return 2.0 * std::numbers::pi * static_cast<double>(m) / (static_cast<double>(n) * g.spacing);
}

/// First-derivative symbol: Nyquist dropped so real fields stay real.
double derivative_wavenumber(const GaugeGrid& g, std::size_t i) noexcept {
  if (g.points % 2 == 0 && i == g.points / 2) return 0.0;
  return wavenumber(g, i);
}

class Spectral {
 public:
  explicit Spectral(const GaugeGrid& g) : g_(g), plan_({g.points, g.points, g.points}) {
    kd_.resize(g.points);
    k_.resize(g.points);
    for (std::size_t i = 0; i < g.points; ++i) {
      kd_[i] = derivative_wavenumber(g, i);
      k_[i] = wavenumber(g, i);
    }
  }

  Spectrum forward(const ScalarField& f) const {
    Spectrum s(f.begin(), f.end());
    plan_.forward(s);
    return s;
  }
  ScalarField inverse(Spectrum s) const {
    plan_.inverse(s);
    ScalarField out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) out[i] = s[i].real();
    return out;
  }

  template <typename F>
  void for_each(F&& f) const {
    const std::size_t n = g_.points;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) f(g_.index(i, j, k), std::array<double, 3>{kd_[i], kd_[j], kd_[k]},
                                              std::array<double, 3>{k_[i], k_[j], k_[k]});
      }
    }
  }

 private:
  GaugeGrid g_;
  FftPlan plan_;
  std::vector<double> kd_;
  std::vector<double> k_;
};

void check_field(const GaugeGrid& g, const ScalarField& f, const char* name) {
  if (f.size() != g.size()) throw ShapeMismatch(std::string(name) + " size differs from the grid");
}

void check_field(const GaugeGrid& g, const VectorField& f, const char* name) {
  for (const auto& c : f) check_field(g, c, name);
}

bool finite(const ScalarField& f) {
  return std::all_of(f.begin(), f.end(), [](double v) { return std::isfinite(v); });
}

constexpr Complex kI{0.0, 1.0};

}  // namespace

GaugeGrid::GaugeGrid(std::size_t n, double dx) : points(n), spacing(dx) {
  if (n < 2 || !(dx > 0.0) || !std::isfinite(dx)) throw InvalidInput("grid needs at least 2 points and a positive spacing");
  if (n > kMaxGaugePoints) throw SizeLimitExceeded(n, kMaxGaugePoints);
}

std::array<double, 3> GaugeGrid::position(std::size_t flat) const noexcept {
  const std::size_t k = flat % points;
  const std::size_t j = (flat / points) % points;
  const std::size_t i = flat / (points * points);
  return {coordinate(i), coordinate(j), coordinate(k)};
}

void GaugeConfiguration::validate() const {
  const GaugeGrid checked(grid.points, grid.spacing);
  if (snapshots.empty() || snapshots.size() > 2) throw InvalidInput("configuration holds one or two snapshots");
  for (const auto& s : snapshots) {
    check_field(grid, s.phi, "phi");
    check_field(grid, s.a, "A");
    check_field(grid, s.rho, "rho");
    if (!finite(s.phi) || !finite(s.rho) || !finite(s.a[0]) || !finite(s.a[1]) || !finite(s.a[2]) ||
        !std::isfinite(s.time)) {
      throw InvalidInput("gauge configuration contains non-finite values");
    }
  }
  if (snapshots.size() == 2 && !(snapshots[1].time > snapshots[0].time)) {
    throw InvalidInput("snapshot times must increase");
  }
}

ScalarField divergence(const GaugeGrid& grid, const VectorField& a) {
  check_field(grid, a, "A");
  const Spectral sp(grid);
  std::array<Spectrum, 3> s{sp.forward(a[0]), sp.forward(a[1]), sp.forward(a[2])};
  Spectrum out(grid.size());
  sp.for_each([&](std::size_t p, const auto& kd, const auto&) {
    out[p] = kI * (kd[0] * s[0][p] + kd[1] * s[1][p] + kd[2] * s[2][p]);
  });
  return sp.inverse(std::move(out));
}

VectorField gradient(const GaugeGrid& grid, const ScalarField& f) {
  check_field(grid, f, "field");
  const Spectral sp(grid);
  const Spectrum s = sp.forward(f);
  VectorField out;
  for (int axis = 0; axis < 3; ++axis) {
    Spectrum d(grid.size());
    sp.for_each([&](std::size_t p, const auto& kd, const auto&) { d[p] = kI * kd[static_cast<std::size_t>(axis)] * s[p]; });
    out[static_cast<std::size_t>(axis)] = sp.inverse(std::move(d));
  }
  return out;
}

VectorField central_gradient(const GaugeGrid& grid, const ScalarField& f) {
  check_field(grid, f, "field");
  const std::size_t n = grid.points;
  VectorField out;
  for (auto& c : out) c.resize(grid.size());
  const double h = 0.5 / grid.spacing;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const std::size_t p = grid.index(i, j, k);
        out[0][p] = h * (f[grid.index((i + 1) % n, j, k)] - f[grid.index((i + n - 1) % n, j, k)]);
        out[1][p] = h * (f[grid.index(i, (j + 1) % n, k)] - f[grid.index(i, (j + n - 1) % n, k)]);
        out[2][p] = h * (f[grid.index(i, j, (k + 1) % n)] - f[grid.index(i, j, (k + n - 1) % n)]);
      }
    }
  }
  return out;
}

VectorField curl(const GaugeGrid& grid, const VectorField& a) {
  check_field(grid, a, "A");
  const Spectral sp(grid);
  std::array<Spectrum, 3> s{sp.forward(a[0]), sp.forward(a[1]), sp.forward(a[2])};
  VectorField out;
  for (std::size_t c = 0; c < 3; ++c) {
    const std::size_t u = (c + 1) % 3;
    const std::size_t w = (c + 2) % 3;
    Spectrum d(grid.size());
    sp.for_each([&](std::size_t p, const auto& kd, const auto&) { d[p] = kI * (kd[u] * s[w][p] - kd[w] * s[u][p]); });
    out[c] = sp.inverse(std::move(d));
  }
  return out;
}

ScalarField laplacian(const GaugeGrid& grid, const ScalarField& f) {
  check_field(grid, f, "field");
  const Spectral sp(grid);
  Spectrum s = sp.forward(f);
  sp.for_each([&](std::size_t p, const auto&, const auto& k) { s[p] *= -(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]); });
  return sp.inverse(std::move(s));
}

VectorField coulomb_project(const GaugeGrid& grid, const VectorField& a) {
  check_field(grid, a, "A");
  const Spectral sp(grid);
  std::array<Spectrum, 3> s{sp.forward(a[0]), sp.forward(a[1]), sp.forward(a[2])};
  sp.for_each([&](std::size_t p, const auto& kd, const auto&) {
    const double k2 = kd[0] * kd[0] + kd[1] * kd[1] + kd[2] * kd[2];
    if (k2 == 0.0) return;
    const Complex dot = (kd[0] * s[0][p] + kd[1] * s[1][p] + kd[2] * s[2][p]) / k2;
    for (std::size_t c = 0; c < 3; ++c) s[c][p] -= kd[c] * dot;
  });
  return {sp.inverse(std::move(s[0])), sp.inverse(std::move(s[1])), sp.inverse(std::move(s[2]))};
}

ScalarField solve_scalar_potential(const GaugeGrid& grid, const ScalarField& rho, BoundaryMode mode) {
  check_field(grid, rho, "rho");
  if (!finite(rho)) throw InvalidInput("charge density contains non-finite values");
  if (mode == BoundaryMode::periodic) {
    double total = 0.0;
    double scale = 0.0;
    for (double r : rho) {
      total += r;
      scale += std::abs(r);
    }
    if (std::abs(total) > 1e-9 * scale) {
      std::ostringstream msg;
      msg << "periodic source has net charge " << total * grid.cell_volume();
      throw Solvability(msg.str());
    }
    const Spectral sp(grid);
    Spectrum s = sp.forward(rho);
    sp.for_each([&](std::size_t p, const auto&, const auto& k) {
      const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
      s[p] = k2 == 0.0 ? Complex{} : s[p] / k2;
    });
    return sp.inverse(std::move(s));
  }
  const std::size_t n = grid.points;
  const std::size_t m = 2 * n;
  const FftPlan plan({m, m, m});
  auto at = [m](std::size_t i, std::size_t j, std::size_t k) { return (i * m + j) * m + k; };
  Spectrum kernel(m * m * m);
  Spectrum source(m * m * m);
  for (std::size_t i = 0; i < m; ++i) {
    const double di = static_cast<double>(i < n ? i : m - i);
    for (std::size_t j = 0; j < m; ++j) {
      const double dj = static_cast<double>(j < n ? j : m - j);
      for (std::size_t k = 0; k < m; ++k) {
        const double dk = static_cast<double>(k < n ? k : m - k);
        const double r = grid.spacing * std::sqrt(di * di + dj * dj + dk * dk);
        kernel[at(i, j, k)] = r == 0.0 ? kCubeSelfPotential / (4.0 * std::numbers::pi * grid.spacing)
                                       : 1.0 / (4.0 * std::numbers::pi * r);
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) source[at(i, j, k)] = rho[grid.index(i, j, k)] * grid.cell_volume();
    }
  }
  plan.forward(kernel);
  plan.forward(source);
  for (std::size_t p = 0; p < source.size(); ++p) source[p] *= kernel[p];
  plan.inverse(source);
  ScalarField phi(grid.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) phi[grid.index(i, j, k)] = source[at(i, j, k)].real();
    }
  }
  return phi;
}

double coulomb_kernel_sum(const GaugeGrid& grid, const ScalarField& rho, const std::array<double, 3>& x) {
  check_field(grid, rho, "rho");
  double sum = 0.0;
  for (std::size_t p = 0; p < rho.size(); ++p) {
    if (rho[p] == 0.0) continue;
    const auto y = grid.position(p);
    const double r = std::hypot(x[0] - y[0], x[1] - y[1], x[2] - y[2]);
    if (r == 0.0) continue;
    sum += rho[p] * grid.cell_volume() / (4.0 * std::numbers::pi * r);
  }
  return sum;
}

double poisson_residual(const GaugeGrid& grid, const ScalarField& phi, const ScalarField& rho) {
  check_field(grid, rho, "rho");
  const auto lap = laplacian(grid, phi);
  double worst = 0.0;
  for (std::size_t p = 0; p < lap.size(); ++p) worst = std::max(worst, std::abs(lap[p] + rho[p]));
  return worst;
}

GaugeConfiguration gauge_transform(const GaugeConfiguration& config, const std::vector<ScalarField>& lambda) {
  config.validate();
  if (lambda.size() != config.snapshots.size() || config.snapshots.size() < 2) {
    throw NeedsHistory("time-dependent gauge function needs lambda at two adjacent snapshots");
  }
  for (const auto& l : lambda) {
    check_field(config.grid, l, "lambda");
    if (!finite(l)) throw InvalidInput("gauge function contains non-finite values");
  }
  GaugeConfiguration out = config;
  const double dt = config.snapshots[1].time - config.snapshots[0].time;
  for (std::size_t s = 0; s < lambda.size(); ++s) {
    const auto g = gradient(config.grid, lambda[s]);
    auto& snap = out.snapshots[s];
    for (std::size_t c = 0; c < 3; ++c) {
      for (std::size_t p = 0; p < g[c].size(); ++p) snap.a[c][p] += g[c][p];
    }
    for (std::size_t p = 0; p < snap.phi.size(); ++p) snap.phi[p] -= (lambda[1][p] - lambda[0][p]) / dt;
  }
  return out;
}

GaugeConfiguration gauge_transform_static(const GaugeConfiguration& config, const ScalarField& lambda) {
  config.validate();
  check_field(config.grid, lambda, "lambda");
  if (!finite(lambda)) throw InvalidInput("gauge function contains non-finite values");
  GaugeConfiguration out = config;
  const auto g = gradient(config.grid, lambda);
  for (auto& snap : out.snapshots) {
    for (std::size_t c = 0; c < 3; ++c) {
      for (std::size_t p = 0; p < g[c].size(); ++p) snap.a[c][p] += g[c][p];
    }
  }
  return out;
}

FieldStrength field_strength(const GaugeConfiguration& config) {
  config.validate();
  if (config.snapshots.size() < 2) throw NeedsHistory("field strength needs two snapshots for dA/dt");
  const auto& s0 = config.snapshots[0];
  const auto& s1 = config.snapshots[1];
  const double dt = s1.time - s0.time;
  const std::size_t size = config.grid.size();
  ScalarField phi_mid(size);
  VectorField a_mid;
  for (std::size_t p = 0; p < size; ++p) phi_mid[p] = 0.5 * (s0.phi[p] + s1.phi[p]);
  for (std::size_t c = 0; c < 3; ++c) {
    a_mid[c].resize(size);
    for (std::size_t p = 0; p < size; ++p) a_mid[c][p] = 0.5 * (s0.a[c][p] + s1.a[c][p]);
  }
  FieldStrength f;
  f.time = 0.5 * (s0.time + s1.time);
  f.e = gradient(config.grid, phi_mid);
  for (std::size_t c = 0; c < 3; ++c) {
    for (std::size_t p = 0; p < size; ++p) f.e[c][p] = -f.e[c][p] - (s1.a[c][p] - s0.a[c][p]) / dt;
  }
  f.b = curl(config.grid, a_mid);
  return f;
}

FieldStrength static_field_strength(const GaugeGrid& grid, const GaugeSnapshot& snapshot, Stencil stencil) {
  check_field(grid, snapshot.phi, "phi");
  check_field(grid, snapshot.a, "A");
  FieldStrength f;
  f.time = snapshot.time;
  f.e = stencil == Stencil::central ? central_gradient(grid, snapshot.phi) : gradient(grid, snapshot.phi);
  for (auto& c : f.e) {
    for (double& v : c) v = -v;
  }
  f.b = curl(grid, snapshot.a);
  return f;
}

double max_abs(const ScalarField& f) noexcept {
  double m = 0.0;
  for (double v : f) m = std::max(m, std::abs(v));
  return m;
}

double max_abs(const VectorField& f) noexcept {
  return std::max({max_abs(f[0]), max_abs(f[1]), max_abs(f[2])});
}

double max_abs_difference(const VectorField& x, const VectorField& y) {
  double m = 0.0;
  for (std::size_t c = 0; c < 3; ++c) {
    if (x[c].size() != y[c].size()) throw ShapeMismatch("vector fields differ in size");
    for (std::size_t p = 0; p < x[c].size(); ++p) m = std::max(m, std::abs(x[c][p] - y[c][p]));
  }
  return m;
}

ScalarField random_smooth_field(const GaugeGrid& grid, std::uint64_t seed, std::size_t modes, double amplitude) {
  RandomStream rng(seed, 0);
  ScalarField f(grid.size(), 0.0);
  const double base = 2.0 * std::numbers::pi / (static_cast<double>(grid.points) * grid.spacing);
  const int kmax = static_cast<int>(std::min<std::size_t>(2, grid.points / 2 - 1));
  for (std::size_t m = 0; m < modes; ++m) {
    std::array<double, 3> k{};
    for (auto& c : k) {
      const int v = static_cast<int>(std::floor(rng.uniform() * (2 * kmax + 1))) - kmax;
      c = base * v;
    }
    const double amp = amplitude * rng.normal();
    const double phase = 2.0 * std::numbers::pi * rng.uniform();
    for (std::size_t p = 0; p < f.size(); ++p) {
      const auto x = grid.position(p);
      f[p] += amp * std::cos(k[0] * x[0] + k[1] * x[1] + k[2] * x[2] + phase);
    }
  }
  return f;
}

VectorField random_smooth_vector_field(const GaugeGrid& grid, std::uint64_t seed, std::size_t modes) {
  return {random_smooth_field(grid, seed * 3 + 0, modes), random_smooth_field(grid, seed * 3 + 1, modes),
          random_smooth_field(grid, seed * 3 + 2, modes)};
}

io::Json InstantaneityReport::to_json() const {
  return io::Json{{"times", times},
                  {"probe_phi", probe_phi},
                  {"step_time", step_time},
                  {"change_time", std::isnan(change_time) ? io::Json(nullptr) : io::Json(change_time)},
                  {"delta_phi", delta_phi},
                  {"predicted_delta_phi", predicted_delta_phi},
                  {"probe_distance", probe_distance},
                  {"note", note}};
}

InstantaneityReport instantaneity_demo(const GaugeGrid& grid, const std::vector<ScalarField>& rho,
                                       const std::vector<double>& times, const std::array<double, 3>& probe) {
  if (rho.empty() || rho.size() != times.size()) throw ShapeMismatch("one charge density per time is required");
  for (std::size_t s = 1; s < times.size(); ++s) {
    if (!(times[s] > times[s - 1])) throw InvalidInput("times must increase");
  }
  std::size_t probe_index = 0;
  {
    std::array<std::size_t, 3> idx{};
    for (std::size_t c = 0; c < 3; ++c) {
      const double u = probe[c] / grid.spacing + static_cast<double>(grid.points / 2);
      const double r = std::round(u);
      if (r < 0.0 || r >= static_cast<double>(grid.points)) throw OutOfRange("probe lies outside the grid");
      idx[c] = static_cast<std::size_t>(r);
    }
    probe_index = grid.index(idx[0], idx[1], idx[2]);
  }
  const auto x = grid.position(probe_index);
  InstantaneityReport r;
  r.times = times;
  r.step_time = std::numeric_limits<double>::quiet_NaN();
  r.change_time = std::numeric_limits<double>::quiet_NaN();
  std::size_t step = rho.size();
  for (std::size_t s = 0; s < rho.size(); ++s) {
    r.probe_phi.push_back(solve_scalar_potential(grid, rho[s], BoundaryMode::isolated)[probe_index]);
    if (step == rho.size() && rho[s] != rho[0]) step = s;
    if (std::isnan(r.change_time) && r.probe_phi[s] != r.probe_phi[0]) r.change_time = times[s];
  }
  const std::size_t last = rho.size() - 1;
  if (step < rho.size()) r.step_time = times[step];
  r.delta_phi = r.probe_phi[last] - r.probe_phi[0];
  r.predicted_delta_phi = coulomb_kernel_sum(grid, rho[last], x) - coulomb_kernel_sum(grid, rho[0], x);
  double nearest = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < rho.size(); ++s) {
    for (std::size_t p = 0; p < rho[s].size(); ++p) {
      if (rho[s][p] == 0.0) continue;
      const auto y = grid.position(p);
      nearest = std::min(nearest, std::hypot(x[0] - y[0], x[1] - y[1], x[2] - y[2]));
    }
  }
  r.probe_distance = std::isfinite(nearest) ? nearest : 0.0;
  r.note =
      "the Coulomb-gauge scalar potential responds in the same time slice as the source; "
      "this concerns the potential, not the propagation of measurable field strengths";
  return r;
}

io::Json GaugeInvarianceReport::to_json() const {
  return io::Json{{"transforms", transforms},
                  {"max_field_difference", max_field_difference},
                  {"max_projected_divergence", max_projected_divergence},
                  {"max_poisson_residual", max_poisson_residual},
                  {"max_div_b", max_div_b}};
}

GaugeInvarianceReport gauge_invariance_check(const GaugeGrid& grid, std::size_t transforms, std::uint64_t seed,
                                             double dt) {
  if (transforms == 0) throw InvalidInput("transform count must be positive");
  if (!(dt > 0.0)) throw InvalidInput("snapshot spacing must be positive");
  GaugeInvarianceReport rep;
  rep.transforms = transforms;
  for (std::size_t t = 0; t < transforms; ++t) {
    const std::uint64_t base = seed * 1000003ULL + 16 * t;
    GaugeConfiguration cfg;
    cfg.grid = grid;
    for (std::size_t s = 0; s < 2; ++s) {
      GaugeSnapshot snap;
      snap.time = static_cast<double>(s) * dt;
      snap.rho = laplacian(grid, random_smooth_field(grid, base + s));
      for (double& v : snap.rho) v = -v;
      snap.phi = solve_scalar_potential(grid, snap.rho);
      rep.max_poisson_residual = std::max(rep.max_poisson_residual, poisson_residual(grid, snap.phi, snap.rho));
      snap.a = coulomb_project(grid, random_smooth_vector_field(grid, base + 2 + s));
      rep.max_projected_divergence = std::max(rep.max_projected_divergence, max_abs(divergence(grid, snap.a)));
      cfg.snapshots.push_back(std::move(snap));
    }
    const auto before = field_strength(cfg);
    const std::vector<ScalarField> lambda{random_smooth_field(grid, base + 8, 6, 2.0),
                                          random_smooth_field(grid, base + 9, 6, 2.0)};
    const auto after = field_strength(gauge_transform(cfg, lambda));
    rep.max_field_difference = std::max({rep.max_field_difference, max_abs_difference(before.e, after.e),
                                         max_abs_difference(before.b, after.b)});
    rep.max_div_b = std::max({rep.max_div_b, max_abs(divergence(grid, before.b)), max_abs(divergence(grid, after.b))});
  }
  return rep;
}

void write_snapshot_csv(std::ostream& out, const GaugeGrid& grid, const GaugeSnapshot& s) {
  check_field(grid, s.phi, "phi");
  check_field(grid, s.a, "A");
  check_field(grid, s.rho, "rho");
  io::CsvWriter w(out, {"i", "j", "k", "x", "y", "z", "phi", "ax", "ay", "az", "rho"});
  const std::size_t n = grid.points;
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const auto x = grid.position(p);
    w.cell(p / (n * n)).cell((p / n) % n).cell(p % n).cell(x[0]).cell(x[1]).cell(x[2]);
    w.cell(s.phi[p]).cell(s.a[0][p]).cell(s.a[1][p]).cell(s.a[2][p]).cell(s.rho[p]);
    w.end_row();
  }
}

GaugeSnapshot read_snapshot_csv(std::istream& in, const GaugeGrid& grid) {
  GaugeSnapshot s;
  s.phi.assign(grid.size(), 0.0);
  s.rho.assign(grid.size(), 0.0);
  for (auto& c : s.a) c.assign(grid.size(), 0.0);
  std::vector<bool> seen(grid.size(), false);
  std::string line;
  if (!std::getline(in, line)) throw InvalidInput("empty gauge CSV");
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> v;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      char* end = nullptr;
      const double d = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() || *end != '\0') throw InvalidInput("malformed gauge CSV cell '" + cell + "'");
      v.push_back(d);
    }
    if (v.size() != 11) throw InvalidInput("gauge CSV rows have 11 columns");
    for (int c = 0; c < 3; ++c) {
      if (v[static_cast<std::size_t>(c)] < 0 || v[static_cast<std::size_t>(c)] >= static_cast<double>(grid.points)) {
        throw OutOfRange("site index outside the grid");
      }
    }
    const std::size_t p = grid.index(static_cast<std::size_t>(v[0]), static_cast<std::size_t>(v[1]),
                                     static_cast<std::size_t>(v[2]));
    s.phi[p] = v[6];
    s.a[0][p] = v[7];
    s.a[1][p] = v[8];
    s.a[2][p] = v[9];
    s.rho[p] = v[10];
    seen[p] = true;
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) throw ShapeMismatch("gauge CSV misses sites");
  return s;
}

void write_field_strength_csv(std::ostream& out, const GaugeGrid& grid, const FieldStrength& f) {
  check_field(grid, f.e, "E");
  check_field(grid, f.b, "B");
  io::CsvWriter w(out, {"i", "j", "k", "ex", "ey", "ez", "bx", "by", "bz"});
  const std::size_t n = grid.points;
  for (std::size_t p = 0; p < grid.size(); ++p) {
    w.cell(p / (n * n)).cell((p / n) % n).cell(p % n);
    for (const auto* v : {&f.e, &f.b}) {
      for (std::size_t c = 0; c < 3; ++c) w.cell((*v)[c][p]);
    }
    w.end_row();
  }
}

}  // namespace pilot::gauge
