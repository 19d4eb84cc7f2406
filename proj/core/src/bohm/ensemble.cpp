#include "pilot/bohm/ensemble.hpp"

#include <algorithm>
#include <string>

#include "pilot/error.hpp"

namespace pilot::bohm {

TrajectoryEnsemble::TrajectoryEnsemble(int dim, std::vector<double> pos, double t,
                                       std::uint64_t s)
    : dimension(dim), positions(std::move(pos)), time(t), seed(s) {
  if (dimension != 1 && dimension != 2) throw InvalidInput("ensemble dimension must be 1 or 2");
  if (positions.empty() || positions.size() % static_cast<std::size_t>(dimension) != 0) {
    throw InvalidInput("ensemble needs at least one member with a full coordinate tuple");
  }
  status.assign(size(), MemberStatus::active);
}

std::size_t TrajectoryEnsemble::count(MemberStatus s) const noexcept {
  return static_cast<std::size_t>(std::count(status.begin(), status.end(), s));
}

void TrajectoryEnsemble::validate(const qm::SpatialGrid& grid) const {
  if (dimension != grid.dimension()) throw ShapeMismatch("ensemble and grid dimensions differ");
  if (size() == 0) throw InvalidInput("ensemble is empty");
  if (status.size() != size()) throw InvalidInput("ensemble status length differs from member count");
  for (std::size_t i = 0; i < size(); ++i) {
    if (!grid.contains(position(i))) {
      throw InvalidInput("ensemble member " + std::to_string(i) + " lies outside the grid");
    }
  }
}

void TrajectoryRecord::append(const TrajectoryEnsemble& e) {
  times.push_back(e.time);
  for (std::size_t m : members) {
    const auto p = e.position(m);
    positions.insert(positions.end(), p.begin(), p.end());
  }
}

}  // namespace pilot::bohm
