#pragma once

#include <Eigen/Core>

#include "kelvin/error.hpp"

namespace kelvin {

/// Composite Simpson over equally spaced samples; the sample count must be odd.
template <typename Derived>
double simpson(const Eigen::DenseBase<Derived>& v, double h) {
    const Eigen::Index n = v.size() - 1;
    if (n < 2 || n % 2 != 0) {
        throw InvalidArgument("simpson: need an even number of intervals");
    }
    double odd = 0.0;
    double even = 0.0;
    for (Eigen::Index j = 1; j < n; j += 2) odd += v[j];
    for (Eigen::Index j = 2; j < n; j += 2) even += v[j];
    return h / 3.0 * (v[0] + v[n] + 4.0 * odd + 2.0 * even);
}

/// Values at the cell midpoints (x_j + x_{j+1}) / 2 by 4-point cubic
/// interpolation. Edge cells use the one-sided 4-point stencil; grids with
/// fewer than 3 cells fall back to the quadratic through all nodes.
Eigen::VectorXd midpoint_values(const Eigen::VectorXd& v);

/// J(x_j) = int_0^{x_j} exp(rate (x_j - y)) g(y) dy for every node.
///
/// Incremental: J(x + h) = e^{rate h} J(x) + panel integral, the panel by
/// Simpson on the half step with the midpoint sample from midpoint_values.
/// rate = 0 gives the plain cumulative integral. Fourth order for smooth g.
Eigen::VectorXd cumulative_exp_integral(const Eigen::VectorXd& g, double h, double rate);

/// Cubic interpolation at local coordinate s in [0, n] of equally spaced
/// samples v[0..n] (unit spacing). The 4-point stencil is shifted so that it
/// never leaves [0, n].
double cubic_interpolate(const Eigen::Ref<const Eigen::VectorXd>& v, double s);

}  // namespace kelvin
