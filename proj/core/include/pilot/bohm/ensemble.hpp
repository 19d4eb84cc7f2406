#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pilot/qm/grid.hpp"

namespace pilot::bohm {

enum class MemberStatus : std::uint8_t {
  active = 0,
  /// Stayed below the node threshold after dt refinement; frozen.
  flagged = 1,
  /// Stopped by the caller (e.g. arrived at a screen); frozen.
  stopped = 2,
};

/// Ensemble of Bohmian configurations sharing one time. Positions are member-major:
/// member i occupies positions[i * dimension, (i + 1) * dimension).
struct TrajectoryEnsemble {
  int dimension = 1;
  std::vector<double> positions;
  double time = 0.0;
  std::uint64_t seed = 0;
  std::vector<MemberStatus> status;

  TrajectoryEnsemble() = default;
  TrajectoryEnsemble(int dimension, std::vector<double> positions, double time = 0.0,
                     std::uint64_t seed = 0);

  std::size_t size() const noexcept {
    return positions.size() / static_cast<std::size_t>(dimension);
  }
  std::span<double> position(std::size_t i) noexcept {
    return {positions.data() + i * static_cast<std::size_t>(dimension),
            static_cast<std::size_t>(dimension)};
  }
  std::span<const double> position(std::size_t i) const noexcept {
    return {positions.data() + i * static_cast<std::size_t>(dimension),
            static_cast<std::size_t>(dimension)};
  }
  std::size_t count(MemberStatus s) const noexcept;

  /// Throws InvalidInput when empty, mis-shaped, or any member lies outside the grid.
  void validate(const qm::SpatialGrid& grid) const;
};

/// Recorded positions of selected members at selected times.
struct TrajectoryRecord {
  int dimension = 1;
  std::vector<std::size_t> members;
  std::vector<double> times;
  /// Per time: members.size() * dimension values.
  std::vector<double> positions;

  void append(const TrajectoryEnsemble& e);
  std::span<const double> at(std::size_t time_index, std::size_t member_slot) const noexcept {
    const std::size_t d = static_cast<std::size_t>(dimension);
    return {positions.data() + (time_index * members.size() + member_slot) * d, d};
  }
};

}  // namespace pilot::bohm
