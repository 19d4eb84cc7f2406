#pragma once

#include <cstddef>
#include <vector>

#include "pilot/lattice/model.hpp"

namespace pilot::lattice {

/// Phonon occupations per mode, in ModeBasis order.
struct FockState {
  std::vector<unsigned> occupations;

  static FockState vacuum(std::size_t modes) { return {std::vector<unsigned>(modes, 0)}; }
  static FockState single(std::size_t modes, std::size_t mode, unsigned n = 1) {
    auto s = vacuum(modes);
    s.occupations.at(mode) = n;
    return s;
  }
  bool operator==(const FockState&) const = default;
  auto operator<=>(const FockState&) const = default;
};

/// sum_k hbar omega_k (n_k + 1/2).
double fock_energy(const LatticeModel& model, const FockState& state);

struct FockLevel {
  double energy;
  FockState state;
};

/// Lowest `count` Fock levels, one entry per state (degeneracies repeated), ascending.
/// Throws ZeroMode when a mode has zero frequency.
std::vector<FockLevel> fock_levels(const LatticeModel& model, std::size_t count);

}  // namespace pilot::lattice
