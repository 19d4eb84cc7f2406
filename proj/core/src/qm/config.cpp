#include "pilot/qm/config.hpp"

#include "pilot/error.hpp"

namespace pilot::qm {

SpatialGrid grid_from_json(const io::Json& j) {
  io::reject_unknown_keys(j, {"dimension", "points_per_axis", "spacing", "boundary", "point_cap"},
                          "grid");
  try {
    const int dim = j.value("dimension", 1);
    const auto n = j.at("points_per_axis").get<std::size_t>();
    const double dx = j.at("spacing").get<double>();
    const std::string b = j.value("boundary", std::string("periodic"));
    Boundary boundary;
    if (b == "periodic") {
      boundary = Boundary::periodic;
    } else if (b == "hard-wall" || b == "hard_wall") {
      boundary = Boundary::hard_wall;
    } else {
      throw InvalidInput("unknown boundary '" + b + "'");
    }
    return SpatialGrid(dim, n, dx, boundary, j.value("point_cap", kDefaultPointCap));
  } catch (const io::Json::exception& e) {
    throw InvalidInput(std::string("grid: ") + e.what());
  }
}

HamiltonianSpec hamiltonian_from_json(const io::Json& j, const SpatialGrid& grid, int components) {
  io::reject_unknown_keys(j, {"masses", "hbar", "potential", "internal_coupling", "momentum_coupling"},
                          "hamiltonian");
  HamiltonianSpec h;
  try {
    if (j.contains("masses")) h.masses = j.at("masses").get<std::vector<double>>();
    h.hbar = j.value("hbar", 1.0);
    if (j.contains("potential")) {
      const auto& p = j.at("potential");
      io::reject_unknown_keys(p, {"type", "omega", "center", "values"}, "potential");
      const std::string type = p.at("type").get<std::string>();
      if (type == "harmonic") {
        h.potential = harmonic_potential(grid, h.mass(0), p.at("omega").get<double>(),
                                         p.value("center", 0.0));
      } else if (type == "values") {
        h.potential = p.at("values").get<std::vector<double>>();
      } else if (type != "zero") {
        throw InvalidInput("unknown potential type '" + type + "'");
      }
    }
    if (j.contains("internal_coupling")) {
      const auto& rows = j.at("internal_coupling");
      Eigen::MatrixXcd c(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.size()));
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != rows.size()) throw InvalidInput("internal_coupling must be square");
        for (std::size_t col = 0; col < rows.size(); ++col) {
          const auto& e = rows[r][col];
          const Complex v = e.is_array() ? Complex(e.at(0).get<double>(), e.at(1).get<double>())
                                         : Complex(e.get<double>(), 0.0);
          c(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(col)) = v;
        }
      }
      h.internal_coupling = c;
    }
    if (j.contains("momentum_coupling")) {
      const auto& m = j.at("momentum_coupling");
      io::reject_unknown_keys(m, {"source_axis", "target_axis", "strength"}, "momentum_coupling");
      h.momentum_coupling = MomentumCoupling{m.value("source_axis", 0), m.value("target_axis", 1),
                                             m.at("strength").get<double>()};
    }
  } catch (const io::Json::exception& e) {
    throw InvalidInput(std::string("hamiltonian: ") + e.what());
  }
  h.validate(grid, components);
  return h;
}

void write_wavefunction_csv(std::ostream& out, const WaveFunction& psi) {
  const auto& grid = psi.grid();
  std::vector<std::string> header{"x"};
  if (grid.dimension() == 2) header.emplace_back("y");
  header.insert(header.end(), {"component", "re", "im"});
  io::CsvWriter csv(out, header);
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const auto x = grid.point(p);
    for (int c = 0; c < psi.components(); ++c) {
      csv.cell(x[0]);
      if (grid.dimension() == 2) csv.cell(x[1]);
      csv.cell(c).cell(psi(c, p).real()).cell(psi(c, p).imag());
      csv.end_row();
    }
  }
}

}  // namespace pilot::qm
