#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "kelvin/error.hpp"

namespace kelvin {

/// Real function sampled at the nodes x_j = j / n_cells of a uniform grid on [0, 1].
///
/// n_cells is even and at least 2 so that composite Simpson applies, and every
/// sample is finite. The grid spacing is derived from the sample count and
/// never stored separately.
class GridFunction {
public:
    /// Takes ownership of n_cells + 1 samples. Throws InvalidArgument for a bad
    /// sample count and NumericError naming the first non-finite node.
    explicit GridFunction(Eigen::VectorXd values);

    static GridFunction zeros(int n_cells);
    static GridFunction constant(int n_cells, double value);

    int n_cells() const noexcept { return static_cast<int>(values_.size()) - 1; }
    double step() const noexcept { return 1.0 / n_cells(); }
    double node(int j) const noexcept { return static_cast<double>(j) / n_cells(); }
    Eigen::Index size() const noexcept { return values_.size(); }

    const Eigen::VectorXd& values() const noexcept { return values_; }
    double operator[](Eigen::Index j) const { return values_[j]; }

    GridFunction& operator+=(const GridFunction& other);
    GridFunction& operator-=(const GridFunction& other);
    GridFunction& operator*=(double scale);

private:
    Eigen::VectorXd values_;
};

GridFunction operator+(GridFunction lhs, const GridFunction& rhs);
GridFunction operator-(GridFunction lhs, const GridFunction& rhs);
GridFunction operator*(double scale, GridFunction f);
GridFunction operator*(GridFunction f, double scale);

/// Samples on a uniform grid over [x_min, x_max] with `cells_per_unit` cells per
/// unit length. Used for extensions that live outside [0, 1].
struct LineFunction {
    double x_min = 0.0;
    int cells_per_unit = 0;
    Eigen::VectorXd values;

    double step() const noexcept { return 1.0 / cells_per_unit; }
    double x_max() const noexcept { return x_min + static_cast<double>(values.size() - 1) / cells_per_unit; }
    double node(Eigen::Index k) const noexcept { return x_min + static_cast<double>(k) / cells_per_unit; }
};

void check_grid_size(int n_cells);

/// Samples `fn` at every node. The callable must return finite values on [0, 1].
template <typename Fn>
GridFunction sample(Fn&& fn, int n_cells) {
    check_grid_size(n_cells);
    Eigen::VectorXd v(n_cells + 1);
    for (int j = 0; j <= n_cells; ++j) {
        const double x = static_cast<double>(j) / n_cells;
        v[j] = fn(x);
        if (!std::isfinite(v[j])) {
            throw NumericError("function is not finite at node " + std::to_string(j) + " (x = " +
                               std::to_string(x) + ")");
        }
    }
    return GridFunction(std::move(v));
}

/// The constant equilibrium f0 = 1.
GridFunction equilibrium_f0(int n_cells);
/// The odd equilibrium f1(x) = 12x - 6, normalized so that F1 f1 = 1.
GridFunction equilibrium_f1(int n_cells);

/// Composite-Simpson approximation of F_i f = int_0^1 x^i f(x) dx.
double moment(const GridFunction& f, int order);

/// G_a f = int_0^1 (a - x) f(x) dx = a F0 f - F1 f.
double moment_about(const GridFunction& f, double a);

struct MomentReport {
    std::vector<int> orders;
    std::vector<double> values;
    double about = 0.0;

    /// G_about, derived from the stored F0 and F1. Throws if either order is missing.
    double moment_about() const;
};

MomentReport moments(const GridFunction& f, std::vector<int> orders, double about = 0.0);

/// f(1 - x), by node mirroring j -> n_cells - j (exact on the grid).
GridFunction reflect(const GridFunction& f);

struct EvenOddParts {
    GridFunction even;
    GridFunction odd;
};

/// even(x) = (f(x) + f(1-x)) / 2, odd(x) = (f(x) - f(1-x)) / 2.
EvenOddParts split_even_odd(const GridFunction& f);

double sup_norm(const GridFunction& f);
double sup_distance(const GridFunction& f, const GridFunction& g);

/// max_j |f(x_j) - f(1 - x_j)|, zero for functions even about 1/2.
double even_defect(const GridFunction& f);
/// max_j |f(x_j) + f(1 - x_j)|, zero for functions odd about 1/2.
double odd_defect(const GridFunction& f);

}  // namespace kelvin
