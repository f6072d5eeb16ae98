#include "kelvin/volterra.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "kelvin/quadrature.hpp"

namespace kelvin {

GridFunction solve_closed_form(const GridFunction& g) {
    const Eigen::VectorXd j = cumulative_exp_integral(g.values(), g.step(), 2.0);
    return GridFunction(g.values() + 2.0 * j);
}

double bielecki_norm(const GridFunction& f, double lambda) {
    double best = 0.0;
    for (Eigen::Index j = 0; j < f.size(); ++j) {
        best = std::max(best, std::abs(std::exp(-lambda * f.node(static_cast<int>(j))) * f[j]));
    }
    return best;
}

static Eigen::VectorXd picard(const GridFunction& g, const Eigen::VectorXd& f) {
    return g.values() + 2.0 * cumulative_exp_integral(f, g.step(), 0.0);
}

FixedPointSolution solve_fixed_point(const GridFunction& g, double tol, int max_iter) {
    if (!(tol > 0.0)) throw InvalidArgument("fixed point tolerance must be positive");
    FixedPointSolution out{GridFunction::zeros(g.n_cells()), 0, 0.0, {}};
    Eigen::VectorXd current = Eigen::VectorXd::Zero(g.size());
    double previous_diff = std::numeric_limits<double>::quiet_NaN();
    for (int k = 1; k <= max_iter; ++k) {
        Eigen::VectorXd next = picard(g, current);
        const double diff = bielecki_norm(GridFunction(next - current));
        if (k > 1 && previous_diff > 0.0) out.contraction_ratios.push_back(diff / previous_diff);
        current = std::move(next);
        out.iterations = k;
        out.last_difference = diff;
        if (diff < tol) {
            out.f = GridFunction(std::move(current));
            return out;
        }
        previous_diff = diff;
    }
    throw ConvergenceError("Picard iteration did not reach tolerance after " + std::to_string(max_iter) +
                               " iterations (last difference " + std::to_string(out.last_difference) + ")",
                           out.last_difference);
}

double volterra_residual(const GridFunction& f, const GridFunction& g) {
    const Eigen::VectorXd r = f.values() - 2.0 * cumulative_exp_integral(f.values(), f.step(), 0.0) - g.values();
    return r.cwiseAbs().maxCoeff();
}

}  // namespace kelvin
