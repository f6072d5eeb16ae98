#include "kelvin/grid.hpp"

#include <algorithm>

#include "kelvin/quadrature.hpp"

namespace kelvin {

void check_grid_size(int n_cells) {
    if (n_cells < 2 || n_cells % 2 != 0) {
        throw InvalidArgument("n_cells must be even and >= 2, got " + std::to_string(n_cells));
    }
}

GridFunction::GridFunction(Eigen::VectorXd values) : values_(std::move(values)) {
    check_grid_size(static_cast<int>(values_.size()) - 1);
    for (Eigen::Index j = 0; j < values_.size(); ++j) {
        if (!std::isfinite(values_[j])) {
            throw NumericError("non-finite sample at node " + std::to_string(j));
        }
    }
}

GridFunction GridFunction::zeros(int n_cells) { return constant(n_cells, 0.0); }

GridFunction GridFunction::constant(int n_cells, double value) {
    check_grid_size(n_cells);
    return GridFunction(Eigen::VectorXd::Constant(n_cells + 1, value));
}

static void require_same_grid(const GridFunction& a, const GridFunction& b) {
    if (a.n_cells() != b.n_cells()) {
        throw InvalidArgument("grid mismatch: " + std::to_string(a.n_cells()) + " vs " +
                              std::to_string(b.n_cells()) + " cells");
    }
}

GridFunction& GridFunction::operator+=(const GridFunction& other) {
    require_same_grid(*this, other);
    values_ += other.values_;
    return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& other) {
    require_same_grid(*this, other);
    values_ -= other.values_;
    return *this;
}

GridFunction& GridFunction::operator*=(double scale) {
    values_ *= scale;
    return *this;
}

GridFunction operator+(GridFunction lhs, const GridFunction& rhs) { return lhs += rhs; }
GridFunction operator-(GridFunction lhs, const GridFunction& rhs) { return lhs -= rhs; }
GridFunction operator*(double scale, GridFunction f) { return f *= scale; }
GridFunction operator*(GridFunction f, double scale) { return f *= scale; }

GridFunction equilibrium_f0(int n_cells) { return GridFunction::constant(n_cells, 1.0); }

GridFunction equilibrium_f1(int n_cells) {
    return sample([](double x) { return 12.0 * x - 6.0; }, n_cells);
}

double moment(const GridFunction& f, int order) {
    if (order < 0) throw InvalidArgument("moment order must be non-negative");
    if (order == 0) return simpson(f.values(), f.step());
    Eigen::VectorXd weighted(f.size());
    for (Eigen::Index j = 0; j < f.size(); ++j) {
        weighted[j] = std::pow(f.node(static_cast<int>(j)), order) * f[j];
    }
    return simpson(weighted, f.step());
}

double moment_about(const GridFunction& f, double a) { return a * moment(f, 0) - moment(f, 1); }

double MomentReport::moment_about() const {
    double f0 = 0.0;
    double f1 = 0.0;
    bool have0 = false;
    bool have1 = false;
    for (std::size_t k = 0; k < orders.size(); ++k) {
        if (orders[k] == 0) { f0 = values[k]; have0 = true; }
        if (orders[k] == 1) { f1 = values[k]; have1 = true; }
    }
    if (!have0 || !have1) throw InvalidArgument("moment_about needs orders 0 and 1");
    return about * f0 - f1;
}

MomentReport moments(const GridFunction& f, std::vector<int> orders, double about) {
    MomentReport report{std::move(orders), {}, about};
    report.values.reserve(report.orders.size());
    for (int i : report.orders) report.values.push_back(moment(f, i));
    return report;
}

GridFunction reflect(const GridFunction& f) { return GridFunction(f.values().reverse()); }

EvenOddParts split_even_odd(const GridFunction& f) {
    const Eigen::VectorXd mirrored = f.values().reverse();
    return {GridFunction(0.5 * (f.values() + mirrored)), GridFunction(0.5 * (f.values() - mirrored))};
}

double sup_norm(const GridFunction& f) { return f.values().cwiseAbs().maxCoeff(); }

double sup_distance(const GridFunction& f, const GridFunction& g) {
    require_same_grid(f, g);
    return (f.values() - g.values()).cwiseAbs().maxCoeff();
}

double even_defect(const GridFunction& f) { return (f.values() - f.values().reverse()).cwiseAbs().maxCoeff(); }

double odd_defect(const GridFunction& f) { return (f.values() + f.values().reverse()).cwiseAbs().maxCoeff(); }

}  // namespace kelvin
