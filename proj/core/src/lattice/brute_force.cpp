#include "pilot/lattice/brute_force.hpp"

#include <cmath>
#include <numbers>

#include "pilot/error.hpp"
#include "pilot/qm/eigensolver.hpp"

namespace pilot::lattice {
namespace {

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

FieldEigensystem brute_force_field_eigensystem(const LatticeModel& model, std::size_t count,
                                               bool vectors, const SiteGridOptions& options) {
  model.validate();
  const std::size_t sites = model.sites;
  if (sites > 3) throw UnsupportedConfiguration("brute-force field oracle supports at most 3 sites");
  if (count == 0) throw InvalidInput("eigenvalue count must be positive");
  const std::size_t n = options.points_per_site != 0 ? options.points_per_site
                        : sites == 1                ? 64
                        : sites == 2                ? 32
                                                    : 16;
  if (n < 4) throw InvalidInput("per-site grid needs at least 4 points");
  const std::size_t dim = ipow(n, sites);
  if (dim > options.cap) throw SizeLimitExceeded(dim, options.cap);
  if (count > dim) throw InvalidInput("requested more eigenvalues than the grid supports");

  const double mass = model.site_mass();
  double dx = options.spacing;
  if (dx == 0.0) {
    const auto w = mode_frequencies(model, ModeBasis(sites));
    double log_sum = 0.0;
    for (double v : w) {
      if (!(v > 0.0)) throw ZeroMode("brute-force oracle needs every mode frequency positive");
      log_sum += std::log(v);
    }
    const double w_geo = std::exp(log_sum / static_cast<double>(sites));
    dx = std::sqrt(2.0 * std::numbers::pi * model.hbar / (static_cast<double>(n) * mass * w_geo));
  }
  if (!(dx > 0.0) || !std::isfinite(dx)) throw InvalidInput("per-site spacing must be positive");

  const qm::SpatialGrid site_grid(1, n, dx);
  const Eigen::MatrixXd t = qm::kinetic_matrix_1d(site_grid, mass, model.hbar);
  const Eigen::MatrixXd k = model.stiffness();
  const auto axis = site_grid.axis();

  const auto d = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
  std::vector<std::size_t> idx(sites);
  for (std::size_t row = 0; row < dim; ++row) {
    std::size_t r = row;
    for (std::size_t s = sites; s-- > 0;) {
      idx[s] = r % n;
      r /= n;
    }
    double v = 0.0;
    for (std::size_t a = 0; a < sites; ++a) {
      for (std::size_t b = 0; b < sites; ++b) {
        v += 0.5 * k(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) * axis[idx[a]] * axis[idx[b]];
      }
    }
    const auto ri = static_cast<Eigen::Index>(row);
    h(ri, ri) += v;
    for (std::size_t s = 0; s < sites; ++s) {
      const std::size_t stride = ipow(n, sites - 1 - s);
      const std::size_t base = row - idx[s] * stride;
      for (std::size_t j = 0; j < n; ++j) {
        h(ri, static_cast<Eigen::Index>(base + j * stride)) +=
            t(static_cast<Eigen::Index>(idx[s]), static_cast<Eigen::Index>(j));
      }
    }
  }

  FieldEigensystem out;
  out.points_per_site = n;
  out.spacing = dx;
  out.axis = axis;
  if (!vectors) {
    out.energies = qm::lowest_eigenvalues(h, count);
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success) throw DivergedEvolution("field Hamiltonian diagonalization failed");
  const auto c = static_cast<Eigen::Index>(count);
  out.energies.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + c);
  out.states = solver.eigenvectors().leftCols(c);
  return out;
}

std::vector<double> brute_force_field_eigens(const LatticeModel& model, std::size_t count,
                                             const SiteGridOptions& options) {
  return brute_force_field_eigensystem(model, count, false, options).energies;
}

std::complex<double> brute_force_two_point(const LatticeModel& model, const FieldEigensystem& system,
                                           std::size_t x, std::size_t y, double dt) {
  const std::size_t sites = model.sites;
  if (x >= sites || y >= sites) throw OutOfRange("site index outside the lattice");
  if (system.states.cols() == 0) throw InvalidInput("eigensystem was computed without vectors");
  const std::size_t n = system.points_per_site;
  const auto dim = static_cast<std::size_t>(system.states.rows());
  Eigen::VectorXd ux(system.states.rows()), uy(system.states.rows());
  for (std::size_t row = 0; row < dim; ++row) {
    ux(static_cast<Eigen::Index>(row)) = system.axis[(row / ipow(n, sites - 1 - x)) % n];
    uy(static_cast<Eigen::Index>(row)) = system.axis[(row / ipow(n, sites - 1 - y)) % n];
  }
  const Eigen::VectorXd g = system.states.col(0);
  const Eigen::VectorXd left = system.states.transpose() * ux.cwiseProduct(g);
  const Eigen::VectorXd right = system.states.transpose() * uy.cwiseProduct(g);
  std::complex<double> w{};
  for (Eigen::Index m = 0; m < system.states.cols(); ++m) {
    const double de = system.energies[static_cast<std::size_t>(m)] - system.energies[0];
    w += left(m) * right(m) * std::polar(1.0, -de * dt / model.hbar);
  }
  return w;
}

}  // namespace pilot::lattice
