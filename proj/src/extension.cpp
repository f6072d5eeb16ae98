#include "kelvin/extension.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kelvin/quadrature.hpp"

namespace kelvin {

ExtendedFunction::ExtendedFunction(std::vector<GridFunction> g, std::vector<GridFunction> h)
    : g_(std::move(g)), h_(std::move(h)) {
    if (g_.empty() || g_.size() != h_.size()) {
        throw InvalidArgument("extension needs matching, non-empty g and h segment lists");
    }
    for (std::size_t n = 0; n < g_.size(); ++n) {
        if (g_[n].n_cells() != g_[0].n_cells() || h_[n].n_cells() != g_[0].n_cells()) {
            throw InvalidArgument("extension segments must share the base grid");
        }
    }
}

double ExtendedFunction::at_node(long k) const {
    const long cells = n_cells();
    if (k >= 0 && k <= cells) return base()[k];
    if (k > cells) {
        const long n = (k - 1) / cells;
        if (n > n_max()) throw NumericError("node beyond the extension range; increase n_max");
        return g_[static_cast<std::size_t>(n)][k - n * cells];
    }
    const long m = -k;
    const long n = (m - 1) / cells + 1;
    if (n > n_max()) throw NumericError("node beyond the extension range; increase n_max");
    return h_[static_cast<std::size_t>(n)][cells + m - n * cells];
}

LineFunction ExtendedFunction::line() const {
    const long cells = n_cells();
    const long lo = -static_cast<long>(n_max()) * cells;
    const long hi = (1 + static_cast<long>(n_max())) * cells;
    LineFunction out{-static_cast<double>(n_max()), n_cells(), Eigen::VectorXd(hi - lo + 1)};
    for (long k = lo; k <= hi; ++k) out.values[k - lo] = at_node(k);
    return out;
}

ExtendedFunction integral_extension(const GridFunction& f, int n_max, const ExtensionOptions& options) {
    if (n_max < 1 || n_max > kMaxExtension) {
        throw InvalidArgument("n_max must lie in [1, " + std::to_string(kMaxExtension) + "], got " +
                              std::to_string(n_max));
    }
    const double step = f.step();
    Eigen::VectorXd growth(f.size());
    for (Eigen::Index j = 0; j < f.size(); ++j) growth[j] = std::exp(2.0 * f.node(static_cast<int>(j)));

    std::vector<GridFunction> g{f};
    std::vector<GridFunction> h{reflect(f)};
    g.reserve(static_cast<std::size_t>(n_max) + 1);
    h.reserve(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n < n_max; ++n) {
        const Eigen::VectorXd d = h[n].values() - g[n].values();
        const double mass = simpson(d, step);
        const Eigen::VectorXd psi = -mass * growth + 2.0 * cumulative_exp_integral(d, step, 2.0);
        GridFunction h_next(g[n].values() - psi);
        GridFunction g_next(h[n].values() + psi);
        h.push_back(std::move(h_next));
        g.push_back(std::move(g_next));
    }
    ExtendedFunction ef(std::move(g), std::move(h));
    if (options.validate) {
        for (const auto& check : check_identities(ef, options.tolerances)) {
            if (!check.passed()) {
                std::ostringstream msg;
                msg << "integral extension breaches the " << check.identity << " identity at segment "
                    << check.worst_segment << " (deviation " << check.max_deviation << ", scaled "
                    << check.max_scaled_deviation << " > " << check.tolerance << ")";
                throw InvariantError(msg.str(), check.identity, check.worst_segment, check.max_deviation);
            }
        }
    }
    return ef;
}

std::vector<IdentityCheck> check_identities(const ExtendedFunction& ef, const IdentityTolerances& tol) {
    const int n_max = ef.n_max();
    const Eigen::Index last = ef.n_cells();
    std::vector<double> scale(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) scale[n] = 1.0 + sup_norm(ef.g(n)) + sup_norm(ef.h(n));

    IdentityCheck reflection{"reflection", 0.0, 0.0, 0, tol.compatibility};
    IdentityCheck compat{"compatibility", 0.0, 0.0, 0, tol.compatibility};
    IdentityCheck symmetry{"symmetry", 0.0, 0.0, 0, tol.symmetry};
    IdentityCheck claim{"claim", 0.0, 0.0, 0, tol.claim};

    auto record = [](IdentityCheck& c, double deviation, double s, int n) {
        c.max_deviation = std::max(c.max_deviation, deviation);
        if (deviation / s > c.max_scaled_deviation) {
            c.max_scaled_deviation = deviation / s;
            c.worst_segment = n;
        }
    };

    record(reflection, sup_distance(ef.h(0), reflect(ef.base())), scale[0], 0);
    for (int n = 0; n < n_max; ++n) {
        const double s = std::max(scale[n], scale[n + 1]);
        record(compat, std::abs(ef.h(n + 1)[0] - ef.h(n)[last]), s, n + 1);
        record(compat, std::abs(ef.g(n + 1)[0] - ef.g(n)[last]), s, n + 1);
        const Eigen::VectorXd lhs = ef.g(n + 1).values() + ef.h(n + 1).values();
        const Eigen::VectorXd rhs = ef.g(n).values() + ef.h(n).values();
        record(symmetry, (lhs - rhs).cwiseAbs().maxCoeff(), s, n + 1);
    }
    for (int n = 0; n <= n_max; ++n) {
        const double mass = simpson(ef.h(n).values() - ef.g(n).values(), ef.base().step());
        record(claim, std::abs(ef.h(n)[last] - ef.g(n)[0] - mass), scale[n], n);
        record(claim, std::abs(ef.h(n)[0] - ef.g(n)[last] - mass), scale[n], n);
    }
    return {reflection, compat, symmetry, claim};
}

double eval_extension(const ExtendedFunction& ef, double x) {
    const double n_max = ef.n_max();
    const int cells = ef.n_cells();
    constexpr double kSlack = 1e-12;
    if (!(x >= -n_max - kSlack && x <= 1.0 + n_max + kSlack)) {
        std::ostringstream msg;
        msg << "x = " << x << " is outside the extension range [" << -n_max << ", " << 1.0 + n_max
            << "]; increase n_max";
        throw NumericError(msg.str());
    }
    const double s = x * cells;
    const double nearest = std::round(s);
    if (std::abs(s - nearest) <= 1e-9 * std::max(1.0, std::abs(s))) {
        return ef.at_node(static_cast<long>(nearest));
    }
    if (x >= 0.0 && x <= 1.0) return cubic_interpolate(ef.base().values(), s);
    if (x > 1.0) {
        const int n = static_cast<int>(std::ceil(x)) - 1;
        return cubic_interpolate(ef.g(n).values(), (x - n) * cells);
    }
    const int n = static_cast<int>(std::ceil(-x));
    return cubic_interpolate(ef.h(n).values(), (1.0 - x - n) * cells);
}

std::vector<double> segment_growth(const ExtendedFunction& ef) {
    std::vector<double> out;
    for (int n = 0; n <= ef.n_max(); ++n) out.push_back(std::max(sup_norm(ef.g(n)), sup_norm(ef.h(n))));
    return out;
}

LineFunction robin_extension(const GridFunction& f) {
    const int cells = f.n_cells();
    const double step = f.step();
    const Eigen::VectorXd forward = cumulative_exp_integral(f.values(), step, 2.0);
    const Eigen::VectorXd mirrored = f.values().reverse();
    const Eigen::VectorXd backward = cumulative_exp_integral(mirrored, step, 2.0);

    LineFunction out{-1.0, cells, Eigen::VectorXd(3 * cells + 1)};
    for (int k = 0; k < cells; ++k) {
        const int u = cells - k;  // x = -u / cells
        out.values[k] = f[u] + 4.0 * forward[u];
    }
    out.values.segment(cells, cells + 1) = f.values();
    for (int k = 2 * cells + 1; k <= 3 * cells; ++k) {
        const int u = k - 2 * cells;  // x = 1 + u / cells
        out.values[k] = mirrored[u] + 4.0 * backward[u];
    }
    return out;
}

double JunctionReport::max() const noexcept {
    return std::max({first_at_0, second_at_0, first_at_1, second_at_1});
}

JunctionReport smoothness_check(const GridFunction& f) {
    if (f.n_cells() < 4) throw InvalidArgument("smoothness_check needs at least 4 cells");
    const ExtendedFunction ef = integral_extension(f, 1, {.validate = false});
    const Eigen::VectorXd u = ef.line().values;
    const double h = f.step();
    const int cells = f.n_cells();

    auto right_d1 = [&](Eigen::Index p) { return (-3.0 * u[p] + 4.0 * u[p + 1] - u[p + 2]) / (2.0 * h); };
    auto left_d1 = [&](Eigen::Index p) { return (3.0 * u[p] - 4.0 * u[p - 1] + u[p - 2]) / (2.0 * h); };
    auto right_d2 = [&](Eigen::Index p) {
        return (2.0 * u[p] - 5.0 * u[p + 1] + 4.0 * u[p + 2] - u[p + 3]) / (h * h);
    };
    auto left_d2 = [&](Eigen::Index p) {
        return (2.0 * u[p] - 5.0 * u[p - 1] + 4.0 * u[p - 2] - u[p - 3]) / (h * h);
    };

    const Eigen::Index zero = cells;
    const Eigen::Index one = 2 * cells;
    return {std::abs(left_d1(zero) - right_d1(zero)), std::abs(left_d2(zero) - right_d2(zero)),
            std::abs(left_d1(one) - right_d1(one)), std::abs(left_d2(one) - right_d2(one))};
}

}  // namespace kelvin
