#include "pilot/qm/eigensolver.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "pilot/error.hpp"

namespace pilot::qm {

std::vector<EigenPair> brute_force_eigens(const SpatialGrid& grid, int components,
                                          const HamiltonianSpec& h, std::size_t count,
                                          std::size_t cap) {
  if (count == 0) throw InvalidInput("eigenpair count must be positive");
  const std::size_t dim = grid.size() * static_cast<std::size_t>(components);
  if (dim > cap) throw SizeLimitExceeded(dim, cap);
  count = std::min(count, dim);
  const double scale = 1.0 / std::sqrt(grid.measure());

  std::vector<EigenPair> out;
  out.reserve(count);
  if (hamiltonian_is_real(h)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_hamiltonian_real(grid, components, h, cap));
    if (es.info() != Eigen::Success) throw DivergedEvolution("eigensolver failed to converge");
    for (std::size_t i = 0; i < count; ++i) {
      std::vector<Complex> amps(dim);
      const auto col = es.eigenvectors().col(static_cast<Eigen::Index>(i));
      for (std::size_t j = 0; j < dim; ++j) amps[j] = col(static_cast<Eigen::Index>(j)) * scale;
      out.push_back({es.eigenvalues()(static_cast<Eigen::Index>(i)),
                     WaveFunction(grid, components, std::move(amps))});
    }
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense_hamiltonian(grid, components, h, cap));
    if (es.info() != Eigen::Success) throw DivergedEvolution("eigensolver failed to converge");
    for (std::size_t i = 0; i < count; ++i) {
      std::vector<Complex> amps(dim);
      const auto col = es.eigenvectors().col(static_cast<Eigen::Index>(i));
      for (std::size_t j = 0; j < dim; ++j) amps[j] = col(static_cast<Eigen::Index>(j)) * scale;
      out.push_back({es.eigenvalues()(static_cast<Eigen::Index>(i)),
                     WaveFunction(grid, components, std::move(amps))});
    }
  }
  return out;
}

std::vector<double> lowest_eigenvalues(const Eigen::MatrixXd& m, std::size_t count) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw DivergedEvolution("eigensolver failed to converge");
  count = std::min<std::size_t>(count, static_cast<std::size_t>(es.eigenvalues().size()));
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = es.eigenvalues()(static_cast<Eigen::Index>(i));
  return out;
}

}  // namespace pilot::qm
