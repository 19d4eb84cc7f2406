#include "pilot/qm/grid.hpp"

#include <cmath>
#include <numbers>

#include "pilot/error.hpp"

namespace pilot::qm {

SpatialGrid::SpatialGrid(int dimension, std::size_t points_per_axis, double spacing,
                         Boundary boundary, std::size_t point_cap)
    : dimension_(dimension), n_(points_per_axis), spacing_(spacing), boundary_(boundary) {
  if (dimension != 1 && dimension != 2) {
    throw InvalidInput("grid dimension must be 1 or 2");
  }
  if (points_per_axis == 0) {
    throw InvalidInput("grid needs at least one point per axis");
  }
  if (!(spacing > 0.0) || !std::isfinite(spacing)) {
    throw InvalidInput("grid spacing must be positive and finite");
  }
  total_ = dimension == 1 ? n_ : n_ * n_;
  if (total_ > point_cap) {
    throw SizeLimitExceeded(total_, point_cap);
  }
  measure_ = dimension == 1 ? spacing_ : spacing_ * spacing_;
}

double SpatialGrid::coordinate(std::size_t i) const noexcept {
  const double n = static_cast<double>(n_);
  if (periodic()) {
    return (static_cast<double>(i) - std::floor(n / 2.0)) * spacing_;
  }
  return (static_cast<double>(i) - 0.5 * (n - 1.0)) * spacing_;
}

std::vector<double> SpatialGrid::axis() const {
  std::vector<double> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = coordinate(i);
  return out;
}

double SpatialGrid::lower() const noexcept {
  if (periodic()) return coordinate(0);
  return coordinate(0) - spacing_;
}

double SpatialGrid::upper() const noexcept {
  if (periodic()) return coordinate(0) + static_cast<double>(n_) * spacing_;
  return coordinate(n_ - 1) + spacing_;
}

std::array<std::size_t, 2> SpatialGrid::unflatten(std::size_t flat) const noexcept {
  if (dimension_ == 1) return {flat, 0};
  return {flat / n_, flat % n_};
}

std::size_t SpatialGrid::flatten(std::size_t i0, std::size_t i1) const noexcept {
  return dimension_ == 1 ? i0 : i0 * n_ + i1;
}

std::array<double, 2> SpatialGrid::point(std::size_t flat) const noexcept {
  const auto idx = unflatten(flat);
  return {coordinate(idx[0]), dimension_ == 2 ? coordinate(idx[1]) : 0.0};
}

std::vector<double> SpatialGrid::wavenumbers() const {
  std::vector<double> k(n_);
  const double base = 2.0 * std::numbers::pi / (static_cast<double>(n_) * spacing_);
  const auto half = static_cast<long long>(n_ / 2);
  for (std::size_t i = 0; i < n_; ++i) {
    long long j = static_cast<long long>(i);
    if (j > half || (j == half && n_ % 2 == 0)) j -= static_cast<long long>(n_);
    k[i] = base * static_cast<double>(j);
  }
  return k;
}

double SpatialGrid::wrap(double x) const noexcept {
  if (!periodic()) return x;
  const double lo = lower();
  const double len = length();
  double r = std::fmod(x - lo, len);
  if (r < 0.0) r += len;
  if (r >= len) r = 0.0;
  return lo + r;
}

bool SpatialGrid::contains(std::span<const double> position) const noexcept {
  if (position.size() != static_cast<std::size_t>(dimension_)) return false;
  for (double x : position) {
    if (!std::isfinite(x)) return false;
    if (periodic()) {
      if (x < lower() || x >= upper()) return false;
    } else if (x <= lower() || x >= upper()) {
      return false;
    }
  }
  return true;
}

bool SpatialGrid::operator==(const SpatialGrid& other) const noexcept {
  return dimension_ == other.dimension_ && n_ == other.n_ && spacing_ == other.spacing_ &&
         boundary_ == other.boundary_;
}

}  // namespace pilot::qm
