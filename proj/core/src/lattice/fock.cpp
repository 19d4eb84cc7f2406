#include "pilot/lattice/fock.hpp"

#include <queue>
#include <set>

#include "pilot/error.hpp"

namespace pilot::lattice {

double fock_energy(const LatticeModel& model, const FockState& state) {
  model.validate();
  const ModeBasis basis(model.sites);
  if (state.occupations.size() != basis.size()) {
    throw ShapeMismatch("occupation list length differs from the mode count");
  }
  const auto w = mode_frequencies(model, basis);
  double e = 0.0;
  for (std::size_t m = 0; m < w.size(); ++m) {
    e += model.hbar * w[m] * (static_cast<double>(state.occupations[m]) + 0.5);
  }
  return e;
}

std::vector<FockLevel> fock_levels(const LatticeModel& model, std::size_t count) {
  model.validate();
  const ModeBasis basis(model.sites);
  const auto w = mode_frequencies(model, basis);
  for (double v : w) {
    if (!(v > 0.0)) throw ZeroMode("Fock tower is continuous with a zero-frequency mode");
  }
  using Entry = std::pair<double, FockState>;
  auto greater = [](const Entry& a, const Entry& b) {
    return a.first != b.first ? a.first > b.first : a.second > b.second;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(greater)> heap(greater);
  std::set<FockState> seen;
  const auto vac = FockState::vacuum(w.size());
  heap.emplace(fock_energy(model, vac), vac);
  seen.insert(vac);
  std::vector<FockLevel> out;
  while (out.size() < count && !heap.empty()) {
    auto [e, s] = heap.top();
    heap.pop();
    out.push_back({e, s});
    for (std::size_t m = 0; m < w.size(); ++m) {
      FockState next = s;
      ++next.occupations[m];
      if (seen.insert(next).second) heap.emplace(fock_energy(model, next), next);
    }
  }
  return out;
}

}  // namespace pilot::lattice
