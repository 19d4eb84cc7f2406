#include "pilot/bohm/two_slit.hpp"

#include <algorithm>
#include <cmath>

#include "pilot/bohm/integrator.hpp"
#include "pilot/bohm/sampling.hpp"
#include "pilot/error.hpp"

namespace pilot::bohm {
namespace {

void check(const TwoSlitConfig& c) {
  if (c.points < 16 || !(c.spacing > 0.0)) throw InvalidInput("two-slit grid too small");
  if (!(c.mass > 0.0) || !(c.hbar > 0.0) || !(c.dt > 0.0) || !(c.max_time > 0.0)) {
    throw InvalidInput("two-slit mass, hbar, dt and max_time must be positive");
  }
  if (!(c.packet_width_x > 0.0) || !(c.packet_width_y > 0.0) || !(c.slit_width > 0.0)) {
    throw InvalidInput("two-slit widths must be positive");
  }
  if (!c.left_open && !c.right_open) throw InvalidInput("at least one slit must be open");
  const double half = 0.5 * c.spacing * static_cast<double>(c.points);
  if (!(c.absorber_start < half) || !(c.screen_y < c.absorber_start) ||
      !(c.screen_half_width <= c.absorber_start) || !(c.packet_start_y > -c.absorber_start) ||
      !(c.screen_y > 0.5 * c.barrier_thickness)) {
    throw InvalidInput("two-slit geometry does not fit inside the absorber");
  }
  if (c.bins == 0 || c.members == 0) throw InvalidInput("two-slit bins and members must be positive");
}

double ramp(double u, double start, double half, double strength) {
  const double a = std::abs(u);
  if (a <= start) return 0.0;
  const double s = (a - start) / (half - start);
  return strength * s * s;
}

}  // namespace

std::vector<FringeMinimum> fringe_minima(const std::vector<std::size_t>& counts) {
  std::vector<FringeMinimum> out;
  const std::size_t n = counts.size();
  if (n < 3) return out;
  std::vector<std::size_t> candidates;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (counts[i] < counts[i - 1] && counts[i] <= counts[i + 1]) candidates.push_back(i);
  }
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const std::size_t i = candidates[c];
    const std::size_t lo = c == 0 ? 0 : candidates[c - 1];
    const std::size_t hi = c + 1 == candidates.size() ? n - 1 : candidates[c + 1];
    const auto left = *std::max_element(counts.begin() + static_cast<std::ptrdiff_t>(lo),
                                        counts.begin() + static_cast<std::ptrdiff_t>(i));
    const auto right = *std::max_element(counts.begin() + static_cast<std::ptrdiff_t>(i),
                                         counts.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
    const double peak = static_cast<double>(std::min(left, right));
    const double h = static_cast<double>(counts[i]);
    if (peak - h <= 3.0 * std::sqrt(peak + h)) continue;
    out.push_back({i, (peak - h) / (peak + h)});
  }
  return out;
}

std::size_t count_minima(const std::vector<FringeMinimum>& minima, double contrast) {
  return static_cast<std::size_t>(
      std::count_if(minima.begin(), minima.end(), [&](const FringeMinimum& m) { return m.contrast > contrast; }));
}

TwoSlitResult two_slit_experiment(const TwoSlitConfig& c) {
  check(c);
  const qm::SpatialGrid grid(2, c.points, c.spacing);
  const double half = 0.5 * c.spacing * static_cast<double>(c.points);

  qm::HamiltonianSpec h;
  h.masses = {c.mass, c.mass};
  h.hbar = c.hbar;
  h.potential.resize(grid.size());
  h.absorption.resize(grid.size());
  const double xl = -0.5 * c.slit_separation, xr = 0.5 * c.slit_separation;
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const auto [x, y] = grid.point(p);
    double v = 0.0;
    if (std::abs(y) < 0.5 * c.barrier_thickness) {
      const bool in_left = c.left_open && std::abs(x - xl) < 0.5 * c.slit_width;
      const bool in_right = c.right_open && std::abs(x - xr) < 0.5 * c.slit_width;
      if (!in_left && !in_right) v = c.barrier_height;
    }
    h.potential[p] = v;
    h.absorption[p] = ramp(x, c.absorber_start, half, c.absorber_strength) +
                      ramp(y, c.absorber_start, half, c.absorber_strength);
  }

  auto psi = qm::WaveFunction::from_function(grid, [&](double x, double y) {
    const double dy = y - c.packet_start_y;
    return std::exp(-x * x / (4.0 * c.packet_width_x * c.packet_width_x) -
                    dy * dy / (4.0 * c.packet_width_y * c.packet_width_y)) *
           std::polar(1.0, c.wavenumber * y);
  });
  psi.normalize();

  TwoSlitResult out;
  out.members = c.members;
  out.antithetic = c.left_open && c.right_open && c.members % 2 == 0;
  TrajectoryEnsemble ens;
  if (out.antithetic) {
    auto halfset = sample_born(psi, c.members / 2, c.seed);
    std::vector<double> pos = halfset.positions;
    for (std::size_t i = 0; i < halfset.size(); ++i) {
      const auto p = halfset.position(i);
      pos.push_back(grid.wrap(-p[0]));
      pos.push_back(p[1]);
    }
    ens = TrajectoryEnsemble(2, std::move(pos), psi.time(), c.seed);
  } else {
    ens = sample_born(psi, c.members, c.seed);
  }

  IntegrationOptions opt;
  opt.substeps = c.substeps;
  BohmIntegrator integ(psi, h, c.dt, opt);

  const std::size_t bundle = std::min(c.bundle_size, ens.size());
  out.bundle.dimension = 2;
  for (std::size_t i = 0; i < bundle; ++i) {
    // Mirrored partners sit at i and size / 2 + i.
    const std::size_t idx = out.antithetic ? (i % 2 == 0 ? i / 2 : ens.size() / 2 + i / 2) : i;
    out.bundle.members.push_back(idx);
  }
  out.bundle_slit.assign(bundle, 0);
  out.bundle.append(ens);

  std::vector<double> sign0(ens.size());
  for (std::size_t i = 0; i < ens.size(); ++i) sign0[i] = ens.position(i)[0];
  std::vector<std::uint8_t> crossed(ens.size(), 0);
  std::vector<double> prev = ens.positions;
  out.bin_lower = -c.screen_half_width;
  out.bin_upper = c.screen_half_width;
  out.counts.assign(c.bins, 0);

  const auto max_steps = static_cast<std::size_t>(std::ceil(c.max_time / c.dt - 1e-9));
  std::size_t step = 0;
  while (step < max_steps && ens.count(MemberStatus::active) > 0) {
    prev = ens.positions;
    integ.step(ens);
    ++step;
    for (std::size_t i = 0; i < ens.size(); ++i) {
      if (ens.status[i] != MemberStatus::active) continue;
      const auto p = ens.position(i);
      if (p[0] * sign0[i] < 0.0) crossed[i] = 1;
      const double y0 = prev[2 * i + 1];
      if (p[1] >= c.screen_y && y0 < c.screen_y) {
        const double f = (c.screen_y - y0) / (p[1] - y0);
        const double xa = prev[2 * i] + f * (p[0] - prev[2 * i]);
        out.arrival_x.push_back(xa);
        ++out.arrivals;
        ens.status[i] = MemberStatus::stopped;
        const double u = (xa - out.bin_lower) / (out.bin_upper - out.bin_lower);
        if (u >= 0.0 && u < 1.0) {
          ++out.counts[std::min(c.bins - 1, static_cast<std::size_t>(u * static_cast<double>(c.bins)))];
        }
      } else if (std::abs(p[0]) > c.absorber_start || std::abs(p[1]) > c.absorber_start) {
        ens.status[i] = MemberStatus::stopped;
        ++out.absorbed;
      }
    }
    for (std::size_t b = 0; b < bundle; ++b) {
      const std::size_t m = out.bundle.members[b];
      if (out.bundle_slit[b] == 0 && prev[2 * m + 1] < 0.0 && ens.position(m)[1] >= 0.0) {
        out.bundle_slit[b] = ens.position(m)[0] < 0.0 ? -1 : 1;
      }
    }
    if (c.record_every > 0 && step % c.record_every == 0) out.bundle.append(ens);
  }
  if (c.record_every == 0 || step % c.record_every != 0) out.bundle.append(ens);

  out.final_time = ens.time;
  out.flagged = ens.count(MemberStatus::flagged);
  out.axis_crossings = static_cast<std::size_t>(std::count(crossed.begin(), crossed.end(), 1));
  if (static_cast<double>(out.flagged) > kFlaggedWarningFraction * static_cast<double>(ens.size())) {
    out.warnings.push_back(std::to_string(out.flagged) + " members stayed unresolved near nodes");
  }
  if (static_cast<double>(out.arrivals) < c.min_arrival_fraction * static_cast<double>(c.members)) {
    throw Timeout("only " + std::to_string(out.arrivals) + " of " + std::to_string(c.members) +
                  " members reached the screen by t = " + std::to_string(out.final_time));
  }

  double total = 0.0, asym = 0.0;
  for (std::size_t b = 0; b < c.bins; ++b) {
    total += static_cast<double>(out.counts[b]);
    asym += std::abs(static_cast<double>(out.counts[b]) - static_cast<double>(out.counts[c.bins - 1 - b]));
  }
  out.symmetry_l1 = total > 0.0 ? asym / total : 0.0;
  out.minima = fringe_minima(out.counts);
  return out;
}

}  // namespace pilot::bohm
