#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

namespace pilot::lattice {

enum class LatticeKind { atom_chain, scalar_field };

/// Periodic 1D lattice of N coupled oscillators.
///
/// Atom chain: H = sum p_i^2 / 2m_a + kappa/2 (u_{i+1} - u_i)^2 + pinning/2 u_i^2.
/// Scalar field: H = sum a [pi_x^2 / 2 + (phi_{x+1} - phi_x)^2 / 2a^2 + m^2 phi_x^2 / 2] with
/// pi_x = -i hbar (1/a) d/dphi_x, i.e. site mass a (c_s = 1 units).
/// Bonds run i -> i+1 mod N, so N = 2 counts the single neighbour pair twice.
struct LatticeModel {
  LatticeKind kind = LatticeKind::scalar_field;
  std::size_t sites = 2;
  double spacing = 1.0;
  double atom_mass = 1.0;
  double spring = 1.0;
  /// On-site spring of the chain; 0 leaves the translation zero mode.
  double pinning = 0.0;
  double field_mass = 1.0;
  double hbar = 1.0;

  static LatticeModel atom_chain(std::size_t sites, double spacing, double atom_mass, double spring,
                                 double pinning = 0.0, double hbar = 1.0);
  static LatticeModel scalar_field(std::size_t sites, double spacing, double field_mass,
                                   double hbar = 1.0);

  /// Throws InvalidInput on non-positive sizes or negative stiffness.
  void validate() const;

  /// Inertia of a site coordinate: m_a (chain) or a (scalar field).
  double site_mass() const noexcept;
  /// Potential energy matrix: V = u^T K u / 2.
  Eigen::MatrixXd stiffness() const;
  /// a sqrt(kappa / m_a) for the chain, 1 for the scalar field.
  double sound_speed() const noexcept;
  /// k_j = 2 pi j / (N a).
  double wavenumber(std::size_t j) const noexcept;
  /// Lattice dispersion at any k.
  double omega(double k) const noexcept;
  /// omega(k_j) for j = 0..N-1.
  std::vector<double> dispersion() const;
  bool has_zero_mode() const noexcept;
};

/// Orthonormal real DFT. Mode order: j = 0 (uniform), then cos/sin pairs for
/// 0 < j < N/2, then the alternating mode j = N/2 for even N.
class ModeBasis {
 public:
  explicit ModeBasis(std::size_t sites);

  std::size_t size() const noexcept { return index_.size(); }
  /// Rows are modes, columns sites.
  const Eigen::MatrixXd& matrix() const noexcept { return u_; }
  /// Wavenumber index j of a mode.
  std::size_t wavenumber_index(std::size_t mode) const noexcept { return index_[mode]; }
  bool is_sine(std::size_t mode) const noexcept { return sine_[mode]; }
  /// Mode carrying index j (cosine member for pairs).
  std::size_t mode_of(std::size_t j) const;

  /// Band-limited continuation of row `mode` to a fractional site index s.
  double value_at(std::size_t mode, double s) const;

  Eigen::VectorXd to_modes(const Eigen::VectorXd& sites) const { return u_ * sites; }
  Eigen::VectorXd to_sites(const Eigen::VectorXd& modes) const { return u_.transpose() * modes; }

 private:
  Eigen::MatrixXd u_;
  std::vector<std::size_t> index_;
  std::vector<bool> sine_;
};

/// Frequencies in mode order.
std::vector<double> mode_frequencies(const LatticeModel& model, const ModeBasis& basis);

/// Mass-weighted mode coordinates q = sqrt(M) U phi, in which every mode has unit mass.
Eigen::VectorXd to_mode_coordinates(const LatticeModel& model, const ModeBasis& basis,
                                    const Eigen::VectorXd& sites);
Eigen::VectorXd to_site_values(const LatticeModel& model, const ModeBasis& basis,
                               const Eigen::VectorXd& modes);

}  // namespace pilot::lattice
