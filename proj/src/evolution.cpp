#include "kelvin/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "kelvin/quadrature.hpp"

namespace kelvin {

std::string_view to_string(Method m) noexcept {
    switch (m) {
        case Method::DalembertCosine: return "dalembert-cosine";
        case Method::Weierstrass: return "weierstrass";
        case Method::FdExpmOracle: return "fd-expm-oracle";
    }
    return "unknown";
}

Method method_from_string(std::string_view name) {
    for (Method m : {Method::DalembertCosine, Method::Weierstrass, Method::FdExpmOracle}) {
        if (name == to_string(m)) return m;
    }
    throw InvalidArgument("unknown method '" + std::string(name) + "'");
}

std::array<double, 2> moment_drift(const GridFunction& initial, const GridFunction& state) {
    return {std::abs(moment(state, 0) - moment(initial, 0)), std::abs(moment(state, 1) - moment(initial, 1))};
}

namespace {

// Number of grid steps in t; empty when t is off-grid and must be interpolated.
std::optional<long> grid_steps(double t, int cells, bool snap) {
    const double s = t * cells;
    const double nearest = std::round(s);
    if (snap || std::abs(s - nearest) <= 1e-9 * std::max(1.0, std::abs(s))) return static_cast<long>(nearest);
    return std::nullopt;
}

int extension_for(double reach, int n_max) {
    if (reach > n_max + 1e-12) {
        std::ostringstream msg;
        msg << "time " << reach << " exceeds the extension budget n_max = " << n_max << "; raise n_max";
        throw NumericError(msg.str());
    }
    return std::max(1, static_cast<int>(std::ceil(reach - 1e-12)));
}

}  // namespace

EvolutionResult cosine_apply(const ExtendedFunction& ef, double t, const CosineOptions& options) {
    const int cells = ef.n_cells();
    const std::optional<long> steps = grid_steps(t, cells, options.snap_time);
    Eigen::VectorXd out(cells + 1);
    double applied = t;
    if (steps) {
        const long k = std::abs(*steps);
        applied = static_cast<double>(*steps) / cells;
        if (std::abs(applied) > ef.n_max() + 1e-12) {
            throw NumericError("time beyond the extension range; raise n_max");
        }
        for (long j = 0; j <= cells; ++j) out[j] = 0.5 * (ef.at_node(j + k) + ef.at_node(j - k));
    } else {
        if (std::abs(t) > ef.n_max()) throw NumericError("time beyond the extension range; raise n_max");
        for (int j = 0; j <= cells; ++j) {
            const double x = static_cast<double>(j) / cells;
            out[j] = 0.5 * (eval_extension(ef, x + t) + eval_extension(ef, x - t));
        }
    }
    EvolutionResult result{GridFunction(std::move(out)), applied, Method::DalembertCosine};
    result.moment_drift = moment_drift(ef.base(), result.state);
    return result;
}

EvolutionResult cosine_apply(const GridFunction& f, double t, int n_max, const CosineOptions& options) {
    const int n = extension_for(std::abs(t), n_max);
    return cosine_apply(integral_extension(f, n), t, options);
}

double cosine_equation_check(const GridFunction& f, double t, double s, int n_max) {
    const double step = f.step();
    t = std::round(t / step) * step;
    s = std::round(s / step) * step;
    if (std::abs(t) + std::abs(s) > n_max + 1e-12) {
        throw NumericError("|t| + |s| exceeds the extension budget n_max; raise n_max");
    }
    const GridFunction inner = cosine_apply(f, s, n_max).state;
    const GridFunction outer = cosine_apply(inner, t, n_max).state;
    const GridFunction sum = cosine_apply(f, t + s, n_max).state;
    const GridFunction diff = cosine_apply(f, t - s, n_max).state;
    return (2.0 * outer.values() - sum.values() - diff.values()).cwiseAbs().maxCoeff();
}

double weierstrass_cutoff(double t, double delta) { return 2.0 * std::sqrt(t * std::log(1.0 / delta)); }

EvolutionResult semigroup_apply(const GridFunction& f, double t, int n_max, const WeierstrassOptions& options) {
    if (t < 0.0) throw InvalidArgument("semigroup time must be non-negative");
    if (!(options.delta > 0.0 && options.delta < 1.0)) throw InvalidArgument("delta must lie in (0, 1)");
    if (t == 0.0) return {f, 0.0, Method::Weierstrass};
    if (n_max < 1 || n_max > kMaxExtension) {
        throw InvalidArgument("n_max must lie in [1, " + std::to_string(kMaxExtension) + "]");
    }

    const int cells = f.n_cells();
    const double cut = std::min(weierstrass_cutoff(t, options.delta), static_cast<double>(n_max));
    long steps = static_cast<long>(std::floor(cut * cells + 1e-9));
    steps -= steps % 2;
    const double tau_cut = static_cast<double>(steps) / cells;
    const double tail = std::erfc(tau_cut / (2.0 * std::sqrt(t)));
    if (tail >= options.max_tail) {
        std::ostringstream msg;
        msg << "Weierstrass integral truncated at tau = " << tau_cut << " discards kernel mass " << tail
            << " >= " << options.max_tail << "; raise n_max or reduce t";
        throw NumericError(msg.str());
    }
    if (steps < 16) {
        throw NumericError("t is too small to resolve the Gaussian kernel on this grid; refine the grid");
    }

    const int n_ext = extension_for(tau_cut, n_max);
    const Eigen::VectorXd line = integral_extension(f, n_ext).line().values;
    const Eigen::Index origin = static_cast<Eigen::Index>(n_ext) * cells;
    const Eigen::Index count = cells + 1;

    // Simpson weights times the normalized Gaussian; the two D'Alembert shifts
    // share a weight, hence the factor 1/2 away from tau = 0.
    const double norm = 1.0 / std::sqrt(std::numbers::pi * t);
    const double h = f.step();
    auto weight = [&](long m) {
        const double simpson_w = (m == 0 || m == steps) ? 1.0 : (m % 2 == 1 ? 4.0 : 2.0);
        const double tau = static_cast<double>(m) * h;
        return h / 3.0 * simpson_w * norm * std::exp(-tau * tau / (4.0 * t));
    };

    Eigen::VectorXd out = weight(0) * line.segment(origin, count);
    for (long m = 1; m <= steps; ++m) {
        const double w = 0.5 * weight(m);
        if (w == 0.0) continue;
        out.noalias() += w * (line.segment(origin + m, count) + line.segment(origin - m, count));
    }

    EvolutionResult result{GridFunction(std::move(out)), t, Method::Weierstrass};
    result.moment_drift = moment_drift(f, result.state);
    result.quadrature_tail_bound = tail;
    return result;
}

GridFunction projection_P(const GridFunction& f) {
    const EvenOddParts parts = split_even_odd(f);
    const double mass = moment(parts.even, 0);
    const double first = moment(parts.odd, 1);
    return mass * equilibrium_f0(f.n_cells()) + first * equilibrium_f1(f.n_cells());
}

GridFunction odd_isomorphism(const GridFunction& f_odd) {
    const int cells = f_odd.n_cells();
    if (cells % 4 != 0) throw InvalidArgument("odd_isomorphism needs n_cells divisible by 4");
    const double asym = odd_defect(f_odd);
    if (asym > 1e-8 * std::max(1.0, sup_norm(f_odd))) {
        std::ostringstream msg;
        msg << "input is not odd about 1/2: max |f(x) + f(1-x)| = " << asym;
        throw InvalidArgument(msg.str());
    }
    const int half = cells / 2;
    Eigen::VectorXd out(half + 1);
    for (int k = 0; k <= half; ++k) out[k] = f_odd[half - k];
    return GridFunction(std::move(out));
}

GridFunction odd_isomorphism_inverse(const GridFunction& g) {
    const int half = g.n_cells();
    Eigen::VectorXd out(2 * half + 1);
    for (int j = 0; j < half; ++j) out[j] = g[half - j];
    for (int j = half; j <= 2 * half; ++j) out[j] = -g[j - half];
    return GridFunction(std::move(out));
}

EndpointDerivatives estimate_endpoint_derivatives(const GridFunction& f) {
    if (f.n_cells() < 4) throw InvalidArgument("derivative estimate needs at least 4 cells");
    const auto& v = f.values();
    const Eigen::Index n = f.n_cells();
    const double scale = 12.0 * f.step();
    return {(-25.0 * v[0] + 48.0 * v[1] - 36.0 * v[2] + 16.0 * v[3] - 3.0 * v[4]) / scale,
            (25.0 * v[n] - 48.0 * v[n - 1] + 36.0 * v[n - 2] - 16.0 * v[n - 3] + 3.0 * v[n - 4]) / scale};
}

BoundaryCheck bc_checker(const GridFunction& f, int order, std::optional<EndpointDerivatives> derivatives,
                         double tolerance) {
    if (order < 0) throw InvalidArgument("moment order must be non-negative");
    const EndpointDerivatives d = derivatives ? *derivatives : estimate_endpoint_derivatives(f);
    const double f0 = f[0];
    const double f1 = f[f.n_cells()];
    double residual = 0.0;
    if (order == 0) {
        residual = d.at_1 - d.at_0;
    } else if (order == 1) {
        residual = d.at_1 - f1 + f0;
    } else {
        const double i = order;
        residual = d.at_1 - i * f1 + i * (i - 1.0) * moment(f, order - 2);
    }
    return {order, residual, tolerance, std::abs(residual) <= tolerance};
}

bool in_generator_domain(const GridFunction& f, std::optional<EndpointDerivatives> derivatives, double tolerance) {
    return bc_checker(f, 0, derivatives, tolerance).passed && bc_checker(f, 1, derivatives, tolerance).passed;
}

}  // namespace kelvin
