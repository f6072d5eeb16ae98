#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "json.hpp"
#include "kelvin/evolution.hpp"
#include "kelvin/grid.hpp"
#include "kelvin/spectral.hpp"

namespace kelvin {

/// Shortest decimal text that parses back to exactly `v`.
std::string format_number(double v);

/// CSV with header `x,value` and rows in increasing x. Row j must carry
/// x = j / n_cells to 1e-12, where n_cells is the row count minus one.
/// Throws InvalidArgument naming the line of the first problem.
GridFunction read_grid_csv(std::istream& in);
GridFunction read_grid_csv(const std::filesystem::path& path);

void write_csv(std::ostream& out, const GridFunction& f);
void write_csv(std::ostream& out, const LineFunction& f);

nlohmann::json to_json(const GridFunction& f);
nlohmann::json to_json(const LineFunction& f);
nlohmann::json to_json(const EvolutionResult& r);
nlohmann::json to_json(const MomentReport& r);
nlohmann::json to_json(const ResolventSolution& r);

}  // namespace kelvin
