#pragma once

#include <vector>

#include "kelvin/grid.hpp"

namespace kelvin {

// Solvers for f(x) - 2 int_0^x f(y) dy = g(x) on [0, 1].

/// f(x) = g(x) + 2 int_0^x e^{2(x-y)} g(y) dy, cumulative integral by
/// cumulative_exp_integral (fourth order).
GridFunction solve_closed_form(const GridFunction& g);

/// Weight of the Bielecki norm sup_x |e^{-lambda x} f(x)|; any lambda > 2 makes
/// the Picard map a contraction with factor below 2 / lambda.
inline constexpr double kBieleckiLambda = 4.0;

double bielecki_norm(const GridFunction& f, double lambda = kBieleckiLambda);

struct FixedPointSolution {
    GridFunction f;
    int iterations = 0;
    /// Bielecki norm of the last iterate difference.
    double last_difference = 0.0;
    /// ||f_{k+1} - f_k|| / ||f_k - f_{k-1}|| in the Bielecki norm, one per iteration after the first.
    std::vector<double> contraction_ratios;
};

/// Picard iteration f <- g + 2 int_0^x f from f = 0 until successive iterates
/// differ by less than `tol` in the Bielecki norm. Throws ConvergenceError
/// carrying the last difference when max_iter is exhausted.
FixedPointSolution solve_fixed_point(const GridFunction& g, double tol, int max_iter = 200);

/// sup_x |f(x) - 2 int_0^x f - g(x)| with the same cumulative quadrature.
double volterra_residual(const GridFunction& f, const GridFunction& g);

}  // namespace kelvin
