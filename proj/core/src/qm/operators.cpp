#include "pilot/qm/operators.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "pilot/error.hpp"

namespace pilot::qm {

namespace {

// Circulant first row c[m] = (1/n) sum_k f(k) cos(k m dx) for an even symbol f.
std::vector<double> circulant_even(const SpatialGrid& grid, const std::vector<double>& symbol) {
  const std::size_t n = grid.points_per_axis();
  const auto k = grid.wavenumbers();
  std::vector<double> row(n, 0.0);
  for (std::size_t m = 0; m < n; ++m) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += symbol[j] * std::cos(k[j] * grid.spacing() * static_cast<double>(m));
    row[m] = s / static_cast<double>(n);
  }
  return row;
}

// Sine-series helpers: interior points i = 1..n, L = (n+1) dx, modes q = 1..n.
double sine_mode_wavenumber(std::size_t q, const SpatialGrid& grid) {
  const double len = static_cast<double>(grid.points_per_axis() + 1) * grid.spacing();
  return std::numbers::pi * static_cast<double>(q) / len;
}

}  // namespace

Eigen::MatrixXd kinetic_matrix_1d(const SpatialGrid& grid, double mass, double hbar) {
  const std::size_t n = grid.points_per_axis();
  Eigen::MatrixXd t(n, n);
  const double pref = hbar * hbar / (2.0 * mass);
  if (grid.periodic()) {
    auto k = grid.wavenumbers();
    std::vector<double> symbol(n);
    for (std::size_t j = 0; j < n; ++j) symbol[j] = pref * k[j] * k[j];
    const auto row = circulant_even(grid, symbol);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const std::size_t m = i >= j ? i - j : n + i - j;
        t(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row[m];
      }
    }
    return t;
  }
  // T_ij = (1/(n+1)) sum_q e_q [cos(q pi (i-j)/(n+1)) - cos(q pi (i+j+2)/(n+1))]
  const double np1 = static_cast<double>(n + 1);
  std::vector<double> c(2 * n + 3, 0.0);
  for (std::size_t m = 0; m < c.size(); ++m) {
    double s = 0.0;
    for (std::size_t q = 1; q <= n; ++q) {
      const double kq = sine_mode_wavenumber(q, grid);
      s += pref * kq * kq * std::cos(std::numbers::pi * static_cast<double>(q * m) / np1);
    }
    c[m] = s / np1;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t diff = i >= j ? i - j : j - i;
      t(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = c[diff] - c[i + j + 2];
    }
  }
  return t;
}

Eigen::MatrixXd derivative_matrix_1d(const SpatialGrid& grid) {
  const std::size_t n = grid.points_per_axis();
  Eigen::MatrixXd d(n, n);
  if (grid.periodic()) {
    // c[m] = (1/n) sum_k i k e^{i k m dx} = -(1/n) sum_k k sin(k m dx), Nyquist excluded.
    const auto k = grid.wavenumbers();
    std::vector<double> row(n, 0.0);
    for (std::size_t m = 0; m < n; ++m) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (n % 2 == 0 && j == n / 2) continue;
        s -= k[j] * std::sin(k[j] * grid.spacing() * static_cast<double>(m));
      }
      row[m] = s / static_cast<double>(n);
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const std::size_t m = i >= j ? i - j : n + i - j;
        d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row[m];
      }
    }
    return d;
  }
  const double np1 = static_cast<double>(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t q = 1; q <= n; ++q) {
        const double a = std::numbers::pi * static_cast<double>(q) / np1;
        s += sine_mode_wavenumber(q, grid) * std::cos(a * static_cast<double>(i + 1)) *
             std::sin(a * static_cast<double>(j + 1));
      }
      d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 2.0 * s / np1;
    }
  }
  return d;
}

bool hamiltonian_is_real(const HamiltonianSpec& h) {
  if (h.momentum_coupling && h.momentum_coupling->strength != 0.0) return false;
  if (h.internal_coupling && h.internal_coupling->imag().cwiseAbs().maxCoeff() != 0.0) return false;
  return true;
}

namespace {

template <typename Matrix>
Matrix build_hamiltonian(const SpatialGrid& grid, int components, const HamiltonianSpec& h,
                         std::size_t cap) {
  h.validate(grid, components);
  if (!h.absorption.empty()) {
    throw UnsupportedConfiguration("dense Hamiltonians must be Hermitian; drop the absorbing layer");
  }
  const std::size_t npts = grid.size();
  const std::size_t dim = npts * static_cast<std::size_t>(components);
  if (dim > cap) throw SizeLimitExceeded(dim, cap);
  const auto n = static_cast<Eigen::Index>(grid.points_per_axis());
  using Scalar = typename Matrix::Scalar;

  Matrix spatial = Matrix::Zero(static_cast<Eigen::Index>(npts), static_cast<Eigen::Index>(npts));
  if (grid.dimension() == 1) {
    spatial += kinetic_matrix_1d(grid, h.mass(0), h.hbar).template cast<Scalar>();
  } else {
    const Eigen::MatrixXd t0 = kinetic_matrix_1d(grid, h.mass(0), h.hbar);
    const Eigen::MatrixXd t1 = kinetic_matrix_1d(grid, h.mass(1), h.hbar);
    for (Eigen::Index i0 = 0; i0 < n; ++i0) {
      for (Eigen::Index j0 = 0; j0 < n; ++j0) {
        for (Eigen::Index i1 = 0; i1 < n; ++i1) {
          for (Eigen::Index j1 = 0; j1 < n; ++j1) {
            double v = 0.0;
            if (i1 == j1) v += t0(i0, j0);
            if (i0 == j0) v += t1(i1, j1);
            if (v != 0.0) spatial(i0 * n + i1, j0 * n + j1) += Scalar(v);
          }
        }
      }
    }
    if constexpr (std::is_same_v<Scalar, std::complex<double>>) {
      if (h.momentum_coupling && h.momentum_coupling->strength != 0.0) {
        if (!grid.periodic()) {
          throw UnsupportedConfiguration("momentum coupling requires a periodic grid");
        }
        const auto& mc = *h.momentum_coupling;
        const Eigen::MatrixXd dmat = derivative_matrix_1d(grid);
        const std::complex<double> pref(0.0, -h.hbar * mc.strength);
        for (Eigen::Index i0 = 0; i0 < n; ++i0) {
          for (Eigen::Index i1 = 0; i1 < n; ++i1) {
            const Eigen::Index row = i0 * n + i1;
            const double xs = grid.coordinate(static_cast<std::size_t>(mc.source_axis == 0 ? i0 : i1));
            for (Eigen::Index j = 0; j < n; ++j) {
              // Derivative along the target axis keeps the source index fixed.
              const Eigen::Index col = mc.target_axis == 1 ? i0 * n + j : j * n + i1;
              const double dij = mc.target_axis == 1 ? dmat(i1, j) : dmat(i0, j);
              spatial(row, col) += pref * xs * dij;
            }
          }
        }
      }
    }
  }
  for (std::size_t p = 0; p < npts; ++p) {
    spatial(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p)) += Scalar(h.potential_at(p));
  }

  Matrix full = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  const auto np = static_cast<Eigen::Index>(npts);
  for (int c = 0; c < components; ++c) {
    full.block(c * np, c * np, np, np) = spatial;
  }
  if (h.internal_coupling) {
    const auto& cm = *h.internal_coupling;
    for (int a = 0; a < components; ++a) {
      for (int b = 0; b < components; ++b) {
        Scalar v;
        if constexpr (std::is_same_v<Scalar, double>) {
          v = cm(a, b).real();
        } else {
          v = cm(a, b);
        }
        if (v == Scalar(0)) continue;
        for (Eigen::Index p = 0; p < np; ++p) full(a * np + p, b * np + p) += v;
      }
    }
  }
  return full;
}

}  // namespace

Eigen::MatrixXcd dense_hamiltonian(const SpatialGrid& grid, int components,
                                   const HamiltonianSpec& h, std::size_t cap) {
  return build_hamiltonian<Eigen::MatrixXcd>(grid, components, h, cap);
}

Eigen::MatrixXd dense_hamiltonian_real(const SpatialGrid& grid, int components,
                                       const HamiltonianSpec& h, std::size_t cap) {
  if (!hamiltonian_is_real(h)) throw InvalidInput("Hamiltonian has complex couplings");
  return build_hamiltonian<Eigen::MatrixXd>(grid, components, h, cap);
}

}  // namespace pilot::qm
