#include "kelvin/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <system_error>
#include <vector>

namespace kelvin {

std::string format_number(double v) {
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_field(std::string_view text, std::size_t line, const char* column) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double v = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || end != text.data() + text.size() || text.empty()) {
        throw InvalidArgument("line " + std::to_string(line) + ": cannot parse " + column + " '" +
                              std::string(text) + "'");
    }
    return v;
}

}  // namespace

GridFunction read_grid_csv(std::istream& in) {
    std::string row;
    std::size_t line = 0;
    bool have_header = false;
    std::vector<double> xs;
    std::vector<double> values;
    while (std::getline(in, row)) {
        ++line;
        const std::string_view text = trim(row);
        if (text.empty()) continue;
        if (!have_header) {
            if (text != "x,value") {
                throw InvalidArgument("line " + std::to_string(line) + ": expected header 'x,value'");
            }
            have_header = true;
            continue;
        }
        const auto comma = text.find(',');
        if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos) {
            throw InvalidArgument("line " + std::to_string(line) + ": expected two comma-separated fields");
        }
        xs.push_back(parse_field(text.substr(0, comma), line, "x"));
        values.push_back(parse_field(text.substr(comma + 1), line, "value"));
    }
    if (!have_header) throw InvalidArgument("empty CSV input: expected header 'x,value'");
    if (values.size() < 3) throw InvalidArgument("CSV holds " + std::to_string(values.size()) + " rows, need at least 3");

    const int n_cells = static_cast<int>(values.size()) - 1;
    check_grid_size(n_cells);
    for (int j = 0; j <= n_cells; ++j) {
        const double expected = static_cast<double>(j) / n_cells;
        if (std::abs(xs[j] - expected) > 1e-12) {
            throw InvalidArgument("row " + std::to_string(j) + ": x = " + format_number(xs[j]) +
                                  " is not the grid node " + format_number(expected));
        }
    }
    return GridFunction(Eigen::Map<const Eigen::VectorXd>(values.data(), n_cells + 1));
}

GridFunction read_grid_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open '" + path.string() + "'");
    return read_grid_csv(in);
}

void write_csv(std::ostream& out, const GridFunction& f) {
    out << "x,value\n";
    for (int j = 0; j <= f.n_cells(); ++j) out << format_number(f.node(j)) << ',' << format_number(f[j]) << '\n';
}

void write_csv(std::ostream& out, const LineFunction& f) {
    out << "x,value\n";
    for (Eigen::Index k = 0; k < f.values.size(); ++k) {
        out << format_number(f.node(k)) << ',' << format_number(f.values[k]) << '\n';
    }
}

nlohmann::json to_json(const GridFunction& f) {
    nlohmann::json xs = nlohmann::json::array();
    nlohmann::json vs = nlohmann::json::array();
    for (int j = 0; j <= f.n_cells(); ++j) {
        xs.push_back(f.node(j));
        vs.push_back(f[j]);
    }
    return {{"n_cells", f.n_cells()}, {"x", std::move(xs)}, {"values", std::move(vs)}};
}

nlohmann::json to_json(const LineFunction& f) {
    nlohmann::json xs = nlohmann::json::array();
    nlohmann::json vs = nlohmann::json::array();
    for (Eigen::Index k = 0; k < f.values.size(); ++k) {
        xs.push_back(f.node(k));
        vs.push_back(f.values[k]);
    }
    return {{"x_min", f.x_min}, {"x_max", f.x_max()}, {"cells_per_unit", f.cells_per_unit},
            {"x", std::move(xs)}, {"values", std::move(vs)}};
}

nlohmann::json to_json(const EvolutionResult& r) {
    return {{"method", std::string(to_string(r.method))},
            {"time", r.time},
            {"moment_drift", {r.moment_drift[0], r.moment_drift[1]}},
            {"quadrature_tail_bound", r.quadrature_tail_bound},
            {"state", to_json(r.state)}};
}

nlohmann::json to_json(const MomentReport& r) {
    nlohmann::json out{{"orders", r.orders}, {"values", r.values}, {"about", r.about}};
    bool has0 = false;
    bool has1 = false;
    for (int i : r.orders) {
        has0 = has0 || i == 0;
        has1 = has1 || i == 1;
    }
    if (has0 && has1) out["moment_about"] = r.moment_about();
    return out;
}

nlohmann::json to_json(const ResolventSolution& r) {
    return {{"lambda", r.lambda},
            {"c1", r.c1},
            {"c2", r.c2},
            {"determinant", r.determinant},
            {"solution", to_json(r.solution)}};
}

}  // namespace kelvin
