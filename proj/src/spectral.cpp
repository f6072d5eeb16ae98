#include "kelvin/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "kelvin/quadrature.hpp"

namespace kelvin {

Eigen::MatrixXd generator_matrix(int n_cells) {
    check_grid_size(n_cells);
    const Eigen::Index n = n_cells;
    const double h = 1.0 / n_cells;
    const double inv_h2 = 1.0 / (h * h);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n + 1, n + 1);
    for (Eigen::Index j = 1; j < n; ++j) {
        m(j, j - 1) = inv_h2;
        m(j, j) = -2.0 * inv_h2;
        m(j, j + 1) = inv_h2;
    }
    // Ghost points eliminated into the end rows.
    m(0, 0) = -2.0 * inv_h2 + 2.0 / h;
    m(0, 1) = 2.0 * inv_h2;
    m(0, n) = -2.0 / h;
    m(n, n) = -2.0 * inv_h2 + 2.0 / h;
    m(n, n - 1) = 2.0 * inv_h2;
    m(n, 0) = -2.0 / h;
    return m;
}

Eigen::VectorXd trapezoid_weights(int n_cells) {
    Eigen::VectorXd w = Eigen::VectorXd::Constant(n_cells + 1, 1.0 / n_cells);
    w[0] *= 0.5;
    w[n_cells] *= 0.5;
    return w;
}

GridFunction SpectralModel::eigenvector(int k) const {
    if (!has_eigenvectors()) throw InvalidArgument("model was built without eigenvectors");
    return GridFunction(eigenvectors.col(k));
}

SpectralModel build_model(int n_cells, bool with_eigenvectors) {
    if (n_cells < 32) throw InvalidArgument("spectral model needs n_cells >= 32");
    check_grid_size(n_cells);
    SpectralModel model;
    model.n_cells = n_cells;
    model.matrix = generator_matrix(n_cells);
    model.weights = trapezoid_weights(n_cells);

    const Eigen::VectorXd root = model.weights.cwiseSqrt();
    Eigen::MatrixXd sym = root.asDiagonal() * model.matrix * root.cwiseInverse().asDiagonal();
    sym = 0.5 * (sym + sym.transpose()).eval();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        sym, with_eigenvectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericError("dense eigen-solver failed to converge");

    model.eigenvalues = solver.eigenvalues().reverse();
    if (with_eigenvectors) {
        model.eigenvectors = root.cwiseInverse().asDiagonal() * solver.eigenvectors().rowwise().reverse();
    }
    model.gap = -model.eigenvalues[2];
    return model;
}

double kernel_tolerance(int n_cells) { return 1e3 / (static_cast<double>(n_cells) * n_cells); }

int kernel_dimension(const SpectralModel& model) {
    const double tol = kernel_tolerance(model.n_cells);
    return static_cast<int>((model.eigenvalues.array().abs() <= tol).count());
}

int count_in_window(const SpectralModel& model, double radius) {
    const double tol = kernel_tolerance(model.n_cells);
    return static_cast<int>(
        ((model.eigenvalues.array() >= -radius) && (model.eigenvalues.array() <= tol)).count());
}

double spectral_gap(const SpectralModel& model) { return model.gap; }

double spectral_gap(const SpectralModel& coarse, const SpectralModel& fine) {
    if (fine.n_cells <= coarse.n_cells) throw InvalidArgument("Richardson extrapolation needs a finer second model");
    const double r = static_cast<double>(fine.n_cells) / coarse.n_cells;
    return (r * r * fine.gap - coarse.gap) / (r * r - 1.0);
}

namespace {

Eigen::VectorXd modal_coefficients(const SpectralModel& model, const GridFunction& f) {
    if (!model.has_eigenvectors()) throw InvalidArgument("model was built without eigenvectors");
    if (f.n_cells() != model.n_cells) throw InvalidArgument("function grid does not match the spectral model");
    return model.eigenvectors.transpose() * model.weights.cwiseProduct(f.values());
}

}  // namespace

GridFunction discrete_projection(const SpectralModel& model, const GridFunction& f) {
    const Eigen::VectorXd c = modal_coefficients(model, f);
    return GridFunction(model.eigenvectors.leftCols(2) * c.head(2));
}

KernelResiduals kernel_residuals(const SpectralModel& model) {
    auto residual = [&](const GridFunction& f) {
        return sup_distance(f, discrete_projection(model, f)) / sup_norm(f);
    };
    return {residual(equilibrium_f0(model.n_cells)), residual(equilibrium_f1(model.n_cells))};
}

GridFunction expm_oracle(const SpectralModel& model, const GridFunction& f, double t) {
    if (t < 0.0) throw NumericError("expm_oracle needs t >= 0");
    const Eigen::VectorXd c = modal_coefficients(model, f);
    const Eigen::VectorXd decay = (t * model.eigenvalues.array()).exp().matrix();
    if (!decay.allFinite()) throw NumericError("matrix exponential overflowed");
    return GridFunction(model.eigenvectors * decay.cwiseProduct(c));
}

EvolutionResult semigroup_expm(const SpectralModel& model, const GridFunction& f, double t) {
    EvolutionResult result{expm_oracle(model, f, t), t, Method::FdExpmOracle};
    result.moment_drift = moment_drift(f, result.state);
    return result;
}

GridFunction equilibrium_deviation(const SpectralModel& model, const GridFunction& f, double t) {
    if (t < 0.0) throw NumericError("equilibrium_deviation needs t >= 0");
    Eigen::VectorXd c = modal_coefficients(model, f);
    const Eigen::Index rest = c.size() - 2;
    const Eigen::VectorXd decay = (t * model.eigenvalues.tail(rest).array()).exp().matrix();
    return GridFunction(model.eigenvectors.rightCols(rest) * decay.cwiseProduct(c.tail(rest)));
}

double eigen_condition(double mu) { return mu * std::sin(mu) - 2.0 + 2.0 * std::cos(mu); }

std::vector<double> continuum_eigenvalues(int count) {
    std::vector<double> out;
    constexpr double kStep = 1e-2;
    double lo = kStep;
    double f_lo = eigen_condition(lo);
    while (static_cast<int>(out.size()) < count) {
        const double hi = lo + kStep;
        const double f_hi = eigen_condition(hi);
        if (f_lo == 0.0 || f_lo * f_hi < 0.0) {
            double a = lo;
            double b = hi;
            double fa = f_lo;
            for (int it = 0; it < 200 && b - a > 1e-15 * b; ++it) {
                const double m = 0.5 * (a + b);
                const double fm = eigen_condition(m);
                if (fa * fm <= 0.0) {
                    b = m;
                } else {
                    a = m;
                    fa = fm;
                }
            }
            const double mu = 0.5 * (a + b);
            out.push_back(-mu * mu);
        }
        lo = hi;
        f_lo = f_hi;
    }
    return out;
}

double resolvent_determinant(double lambda) {
    const double s = std::sqrt(lambda);
    return 4.0 * s + 2.0 * lambda * std::sinh(s) - 4.0 * s * std::cosh(s);
}

ResolventSolution resolve(const GridFunction& g, double lambda) {
    if (!(lambda > 0.0)) throw InvalidArgument("resolve needs lambda > 0");
    const double s = std::sqrt(lambda);
    const double up = std::exp(s);
    const double down = std::exp(-s);
    const double h = g.step();

    Eigen::VectorXd sinh_w(g.size());
    Eigen::VectorXd cosh_w(g.size());
    for (Eigen::Index j = 0; j < g.size(); ++j) {
        const double arg = s * (1.0 - g.node(static_cast<int>(j)));
        sinh_w[j] = std::sinh(arg) * g[j];
        cosh_w[j] = std::cosh(arg) * g[j];
    }
    const double sinh_int = simpson(sinh_w, h);
    const double cosh_int = simpson(cosh_w, h);

    Eigen::Matrix2d a;
    a << s - up + 1.0, 1.0 - s - down,
         1.0 + s * up - up, 1.0 - s * down - down;
    const Eigen::Vector2d rhs(-sinh_int / s, cosh_int - sinh_int / s);
    const double det = a.determinant();
    // Entries cancel as lambda -> 0, so scale by the size of their terms.
    const double scale = 1.0 + s * up;
    if (std::abs(det) < 1e-12 * scale * scale) {
        std::ostringstream msg;
        msg << "resolvent system is singular at lambda = " << lambda << " (determinant " << det << ")";
        throw NumericError(msg.str());
    }
    const Eigen::Vector2d c = a.partialPivLu().solve(rhs);

    // (1/s) int_0^x sinh(s(x-y)) g(y) dy = (J_{+s} - J_{-s}) / 2s
    const Eigen::VectorXd grow = cumulative_exp_integral(g.values(), h, s);
    const Eigen::VectorXd shrink = cumulative_exp_integral(g.values(), h, -s);
    Eigen::VectorXd f(g.size());
    for (Eigen::Index j = 0; j < g.size(); ++j) {
        const double x = g.node(static_cast<int>(j));
        f[j] = c[0] * std::exp(s * x) + c[1] * std::exp(-s * x) - (grow[j] - shrink[j]) / (2.0 * s);
    }
    return {lambda, c[0], c[1], GridFunction(std::move(f)), det};
}

double resolvent_residual(const ResolventSolution& sol, const GridFunction& g) {
    const auto& f = sol.solution.values();
    const double inv_h2 = 1.0 / (sol.solution.step() * sol.solution.step());
    double worst = 0.0;
    for (Eigen::Index j = 1; j + 1 < f.size(); ++j) {
        const double second = (f[j - 1] - 2.0 * f[j] + f[j + 1]) * inv_h2;
        worst = std::max(worst, std::abs(sol.lambda * f[j] - second - g[j]));
    }
    return worst;
}

BoundaryResiduals boundary_residuals(const GridFunction& f) {
    const EndpointDerivatives d = estimate_endpoint_derivatives(f);
    const double jump = f[f.n_cells()] - f[0];
    return {std::abs(d.at_0 - jump), std::abs(d.at_1 - jump)};
}

}  // namespace kelvin
