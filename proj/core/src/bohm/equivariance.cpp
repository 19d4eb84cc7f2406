#include "pilot/bohm/equivariance.hpp"

#include <algorithm>
#include <cmath>

#include "pilot/error.hpp"

namespace pilot::bohm {
namespace {

struct Range {
  double lo;
  double hi;
};

Range cell_range(const qm::SpatialGrid& g) {
  const double h = 0.5 * g.spacing();
  return {g.coordinate(0) - h, g.coordinate(g.points_per_axis() - 1) + h};
}

// For each grid cell along one axis: (bin, fraction of the cell inside that bin).
std::vector<std::vector<std::pair<std::size_t, double>>> overlaps(const qm::SpatialGrid& g,
                                                                   std::size_t bins) {
  const Range r = cell_range(g);
  const double bw = (r.hi - r.lo) / static_cast<double>(bins);
  const double dx = g.spacing();
  std::vector<std::vector<std::pair<std::size_t, double>>> out(g.points_per_axis());
  for (std::size_t c = 0; c < g.points_per_axis(); ++c) {
    const double a = r.lo + static_cast<double>(c) * dx;
    const double b = a + dx;
    const auto first = static_cast<std::size_t>(std::max(0.0, std::floor((a - r.lo) / bw)));
    for (std::size_t k = first; k < bins; ++k) {
      const double lo = r.lo + static_cast<double>(k) * bw;
      const double hi = lo + bw;
      if (lo >= b) break;
      const double ov = std::min(b, hi) - std::max(a, lo);
      if (ov > 0.0) out[c].emplace_back(k, ov / dx);
    }
  }
  return out;
}

std::size_t bin_of(double x, const Range& r, std::size_t bins, const qm::SpatialGrid& g) {
  double u = x;
  if (g.periodic()) {
    const double len = r.hi - r.lo;
    u = r.lo + std::fmod(std::fmod(x - r.lo, len) + len, len);
  }
  const double f = (u - r.lo) / (r.hi - r.lo) * static_cast<double>(bins);
  const double cl = std::clamp(std::floor(f), 0.0, static_cast<double>(bins - 1));
  return static_cast<std::size_t>(cl);
}

std::vector<double> axis_marginal(const qm::WaveFunction& psi, int axis) {
  const auto& g = psi.grid();
  const auto rho = psi.density();
  std::vector<double> m(g.points_per_axis(), 0.0);
  for (std::size_t p = 0; p < rho.size(); ++p) {
    m[g.unflatten(p)[static_cast<std::size_t>(axis)]] += rho[p] * g.measure();
  }
  return m;
}

double ks_marginal(const TrajectoryEnsemble& e, const qm::WaveFunction& psi, int axis) {
  const auto& g = psi.grid();
  const Range r = cell_range(g);
  const auto mass = axis_marginal(psi, axis);
  double total = 0.0;
  for (double v : mass) total += v;
  std::vector<double> cum(mass.size() + 1, 0.0);
  for (std::size_t c = 0; c < mass.size(); ++c) cum[c + 1] = cum[c] + mass[c] / total;
  auto model_cdf = [&](double x) {
    const double u = (x - r.lo) / g.spacing();
    if (u <= 0.0) return 0.0;
    const auto c = static_cast<std::size_t>(std::floor(u));
    if (c >= mass.size()) return 1.0;
    return cum[c] + (u - static_cast<double>(c)) * (cum[c + 1] - cum[c]);
  };
  std::vector<double> xs(e.size());
  const double len = r.hi - r.lo;
  for (std::size_t i = 0; i < e.size(); ++i) {
    double x = e.position(i)[static_cast<std::size_t>(axis)];
    if (g.periodic()) x = r.lo + std::fmod(std::fmod(x - r.lo, len) + len, len);
    xs[i] = x;
  }
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = model_cdf(xs[i]);
    d = std::max({d, std::abs(static_cast<double>(i + 1) / n - f), std::abs(f - static_cast<double>(i) / n)});
  }
  return d;
}

}  // namespace

Histogram1D marginal_histogram(const TrajectoryEnsemble& e, const qm::WaveFunction& psi, int axis,
                               std::size_t bins) {
  if (bins == 0) throw InvalidInput("histogram needs at least one bin");
  const auto& g = psi.grid();
  const Range r = cell_range(g);
  Histogram1D h{r.lo, r.hi, std::vector<double>(bins, 0.0), std::vector<double>(bins, 0.0)};
  const auto mass = axis_marginal(psi, axis);
  const auto ov = overlaps(g, bins);
  for (std::size_t c = 0; c < mass.size(); ++c) {
    for (auto [k, w] : ov[c]) h.born[k] += w * mass[c];
  }
  const double inv = 1.0 / static_cast<double>(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    h.empirical[bin_of(e.position(i)[static_cast<std::size_t>(axis)], r, bins, g)] += inv;
  }
  return h;
}

EquivarianceStats equivariance_statistic(const TrajectoryEnsemble& e, const qm::WaveFunction& psi,
                                         std::size_t bins) {
  const auto& g = psi.grid();
  if (e.dimension != g.dimension()) throw ShapeMismatch("ensemble and grid dimensions differ");
  if (e.size() == 0) throw InvalidInput("ensemble is empty");
  if (bins == 0) throw InvalidInput("histogram needs at least one bin");
  if (std::abs(e.time - psi.time()) > 1e-9 * std::max(1.0, std::abs(psi.time()))) {
    throw StaleEnsemble("ensemble time differs from wavefunction time");
  }
  EquivarianceStats s;
  s.members = e.size();
  if (g.dimension() == 1) {
    const auto h = marginal_histogram(e, psi, 0, bins);
    for (std::size_t k = 0; k < bins; ++k) s.l1 += std::abs(h.empirical[k] - h.born[k]);
  } else {
    const auto per = static_cast<std::size_t>(std::max(1.0, std::round(std::sqrt(static_cast<double>(bins)))));
    const Range r = cell_range(g);
    const auto ov = overlaps(g, per);
    const auto rho = psi.density();
    std::vector<double> born(per * per, 0.0), emp(per * per, 0.0);
    for (std::size_t p = 0; p < rho.size(); ++p) {
      const auto idx = g.unflatten(p);
      const double m = rho[p] * g.measure();
      for (auto [k0, w0] : ov[idx[0]]) {
        for (auto [k1, w1] : ov[idx[1]]) born[k0 * per + k1] += w0 * w1 * m;
      }
    }
    const double inv = 1.0 / static_cast<double>(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      const auto x = e.position(i);
      emp[bin_of(x[0], r, per, g) * per + bin_of(x[1], r, per, g)] += inv;
    }
    for (std::size_t k = 0; k < born.size(); ++k) s.l1 += std::abs(emp[k] - born[k]);
  }
  for (int a = 0; a < g.dimension(); ++a) {
    s.ks_per_axis.push_back(ks_marginal(e, psi, a));
    s.ks = std::max(s.ks, s.ks_per_axis.back());
  }
  return s;
}

}  // namespace pilot::bohm
