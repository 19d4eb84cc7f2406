#include "pilot/bohm/guidance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pilot/error.hpp"
#include "pilot/fft.hpp"
#include "pilot/qm/interpolation.hpp"
#include "pilot/qm/operators.hpp"

namespace pilot::bohm {

std::vector<Complex> grid_derivative(const qm::SpatialGrid& grid, std::span<const Complex> field,
                                     int axis) {
  const std::size_t n = grid.points_per_axis();
  std::vector<Complex> out(field.begin(), field.end());
  if (grid.periodic()) {
    std::vector<std::size_t> shape(static_cast<std::size_t>(grid.dimension()), n);
    FftPlan plan(shape, grid.dimension() == 1 ? -1 : axis);
    auto k = grid.wavenumbers();
    if (n % 2 == 0) k[n / 2] = 0.0;
    plan.forward(out);
    for (std::size_t p = 0; p < out.size(); ++p) {
      const auto idx = grid.unflatten(p);
      out[p] *= Complex(0.0, k[idx[static_cast<std::size_t>(axis)]]);
    }
    plan.inverse(out);
    return out;
  }
  const Eigen::MatrixXd d = qm::derivative_matrix_1d(grid);
  std::fill(out.begin(), out.end(), Complex{});
  if (grid.dimension() == 1) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        out[i] += d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * field[j];
      }
    }
    return out;
  }
  for (std::size_t i0 = 0; i0 < n; ++i0) {
    for (std::size_t i1 = 0; i1 < n; ++i1) {
      Complex s{};
      for (std::size_t j = 0; j < n; ++j) {
        if (axis == 0) {
          s += d(static_cast<Eigen::Index>(i0), static_cast<Eigen::Index>(j)) * field[grid.flatten(j, i1)];
        } else {
          s += d(static_cast<Eigen::Index>(i1), static_cast<Eigen::Index>(j)) * field[grid.flatten(i0, j)];
        }
      }
      out[grid.flatten(i0, i1)] = s;
    }
  }
  return out;
}

GuidanceField::GuidanceField(const qm::WaveFunction& psi, const qm::HamiltonianSpec& h,
                             double relative_node_threshold)
    : grid_(psi.grid()),
      components_(psi.components()),
      dim_(psi.grid().dimension()),
      hbar_(h.hbar),
      coupling_(h.momentum_coupling),
      time_(psi.time()) {
  h.validate(grid_, components_);
  for (int a = 0; a < dim_; ++a) masses_[static_cast<std::size_t>(a)] = h.mass(a);
  const auto amps = psi.amplitudes();
  table_.assign(amps.size(), {});
  for (std::size_t i = 0; i < amps.size(); ++i) table_[i][0] = amps[i];
  const std::size_t npts = grid_.size();
  for (int a = 0; a < dim_; ++a) {
    for (int c = 0; c < components_; ++c) {
      const auto d = grid_derivative(grid_, psi.component(c), a);
      const std::size_t base = static_cast<std::size_t>(c) * npts;
      for (std::size_t p = 0; p < npts; ++p) table_[base + p][static_cast<std::size_t>(a) + 1] = d[p];
    }
  }
  const auto rho = psi.density();
  const double peak = rho.empty() ? 0.0 : *std::max_element(rho.begin(), rho.end());
  threshold_ = relative_node_threshold * peak;
}

Velocity GuidanceField::combine(const std::array<Complex, 2>* numerators, double density,
                                std::span<const double> position) const noexcept {
  Velocity v{};
  for (int a = 0; a < dim_; ++a) {
    const auto ua = static_cast<std::size_t>(a);
    v[ua] = hbar_ / masses_[ua] * numerators->at(ua).imag() / density;
  }
  if (coupling_ && dim_ == 2) {
    v[static_cast<std::size_t>(coupling_->target_axis)] +=
        coupling_->strength * position[static_cast<std::size_t>(coupling_->source_axis)];
  }
  return v;
}

GuidanceField::Sample GuidanceField::sample(std::span<const double> position) const noexcept {
  Sample out;
  const std::size_t npts = grid_.size();
  const auto s0 = qm::cubic_stencil(grid_, position[0]);
  const std::size_t n = grid_.points_per_axis();
  std::array<Complex, 2> numer{};
  double density = 0.0;

  // Gather the stencil once: flat offsets and weights.
  std::array<std::size_t, 16> offsets{};
  std::array<double, 16> weights{};
  std::size_t count = 0;
  if (dim_ == 1) {
    for (std::size_t a = 0; a < 4; ++a) {
      if (s0.index[a] < 0) continue;
      offsets[count] = static_cast<std::size_t>(s0.index[a]);
      weights[count++] = s0.weight[a];
    }
  } else {
    const auto s1 = qm::cubic_stencil(grid_, position[1]);
    for (std::size_t a = 0; a < 4; ++a) {
      if (s0.index[a] < 0) continue;
      for (std::size_t b = 0; b < 4; ++b) {
        if (s1.index[b] < 0) continue;
        offsets[count] = static_cast<std::size_t>(s0.index[a]) * n + static_cast<std::size_t>(s1.index[b]);
        weights[count++] = s0.weight[a] * s1.weight[b];
      }
    }
  }

  for (int c = 0; c < components_; ++c) {
    const std::size_t base = static_cast<std::size_t>(c) * npts;
    Complex value{};
    std::array<Complex, 2> grad{};
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t idx = base + offsets[i];
      const auto& e = table_[idx];
      value += weights[i] * e[0];
      grad[0] += weights[i] * e[1];
      grad[1] += weights[i] * e[2];
    }
    density += std::norm(value);
    numer[0] += std::conj(value) * grad[0];
    numer[1] += std::conj(value) * grad[1];
  }
  out.density = density;
  if (!(density > threshold_) || !(density > 0.0)) return out;
  out.velocity = combine(&numer, density, position);
  out.resolved = std::isfinite(out.velocity[0]) && std::isfinite(out.velocity[1]);
  return out;
}

Velocity GuidanceField::velocity(std::span<const double> position) const {
  if (position.size() != static_cast<std::size_t>(dim_)) {
    throw ShapeMismatch("position dimension differs from grid dimension");
  }
  const auto s = sample(position);
  if (!s.resolved) throw NodeProximity(s.density, threshold_);
  return s.velocity;
}

std::vector<double> GuidanceField::grid_velocities() const {
  const std::size_t npts = grid_.size();
  const auto dim = static_cast<std::size_t>(dim_);
  std::vector<double> out(npts * dim, std::numeric_limits<double>::quiet_NaN());
  for (std::size_t p = 0; p < npts; ++p) {
    std::array<Complex, 2> numer{};
    double density = 0.0;
    for (int c = 0; c < components_; ++c) {
      const std::size_t idx = static_cast<std::size_t>(c) * npts + p;
      const auto& e = table_[idx];
      density += std::norm(e[0]);
      for (std::size_t a = 0; a < dim; ++a) numer[a] += std::conj(e[0]) * e[a + 1];
    }
    if (!(density > threshold_) || !(density > 0.0)) continue;
    const auto x = grid_.point(p);
    const auto v = combine(&numer, density, std::span<const double>(x.data(), dim));
    for (std::size_t a = 0; a < dim; ++a) out[p * dim + a] = v[a];
  }
  return out;
}

Velocity guidance_velocity(const qm::WaveFunction& psi, const qm::HamiltonianSpec& h,
                           std::span<const double> position, double relative_node_threshold) {
  return GuidanceField(psi, h, relative_node_threshold).velocity(position);
}

}  // namespace pilot::bohm
