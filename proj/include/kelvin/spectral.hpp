#pragma once

#include <vector>

#include <Eigen/Core>

#include "kelvin/evolution.hpp"
#include "kelvin/grid.hpp"

namespace kelvin {

/// Three-point Laplacian on the nodes of [0, 1] whose end rows impose
/// f'(0) = f(1) - f(0) = f'(1) through ghost points:
///   u_{-1}  = u_1     - 2h (u_N - u_0)
///   u_{N+1} = u_{N-1} + 2h (u_N - u_0)
/// The result is self-adjoint for the trapezoid inner product.
Eigen::MatrixXd generator_matrix(int n_cells);

/// Trapezoid weights (h/2, h, ..., h, h/2); W * generator_matrix is symmetric.
Eigen::VectorXd trapezoid_weights(int n_cells);

/// Dense eigen-decomposition of the finite-difference generator.
struct SpectralModel {
    int n_cells = 0;
    Eigen::MatrixXd matrix;
    Eigen::VectorXd weights;
    /// Sorted in descending order.
    Eigen::VectorXd eigenvalues;
    /// Column k is the eigenvector of `eigenvalues[k]`, orthonormal in the
    /// trapezoid inner product. Empty when the model was built without vectors.
    Eigen::MatrixXd eigenvectors;
    /// -eigenvalues[2]: the first eigenvalue below the double zero.
    double gap = 0.0;

    bool has_eigenvectors() const noexcept { return eigenvectors.cols() > 0; }
    GridFunction eigenvector(int k) const;
};

/// Needs n_cells >= 32 (even). The decomposition runs on the similarity
/// transform W^{1/2} M W^{-1/2}, which is symmetric.
SpectralModel build_model(int n_cells, bool with_eigenvectors = true);

/// Width 1e3 h^2 of the window that counts as a numerical zero eigenvalue.
double kernel_tolerance(int n_cells);

/// Number of eigenvalues inside [-kernel_tolerance, kernel_tolerance].
int kernel_dimension(const SpectralModel& model);

/// Eigenvalues in [-R, 0] (plus the numerical zeros).
int count_in_window(const SpectralModel& model, double radius);

double spectral_gap(const SpectralModel& model);
/// Richardson extrapolation assuming O(h^2) eigenvalue error; `fine` must be finer than `coarse`.
double spectral_gap(const SpectralModel& coarse, const SpectralModel& fine);

struct KernelResiduals {
    /// ||f_i - Pi f_i|| / ||f_i|| in the sup norm, Pi the projection onto the
    /// two eigenvectors of the near-zero eigenvalues.
    double f0 = 0.0;
    double f1 = 0.0;
};

KernelResiduals kernel_residuals(const SpectralModel& model);

/// e^{t M} f through the eigen-decomposition. Throws NumericError for t < 0 or overflow.
GridFunction expm_oracle(const SpectralModel& model, const GridFunction& f, double t);

/// expm_oracle packaged as an EvolutionResult (method fd-expm-oracle).
EvolutionResult semigroup_expm(const SpectralModel& model, const GridFunction& f, double t);

/// Discrete equilibrium: the component of f along the two near-zero eigenvectors.
GridFunction discrete_projection(const SpectralModel& model, const GridFunction& f);

/// e^{t M} f minus its equilibrium, summed mode by mode over the decaying
/// eigenvectors so that values far below the rounding level of f stay accurate.
GridFunction equilibrium_deviation(const SpectralModel& model, const GridFunction& f, double t);

/// Eigenvalue condition for f'' = -mu^2 f with f'(0) = f(1) - f(0) = f'(1),
/// from C1 cos(mu x) + C2 sin(mu x): mu sin(mu) - 2 + 2 cos(mu) = 0 (mu > 0).
double eigen_condition(double mu);

/// The first `count` nonzero eigenvalues -mu^2 of the continuous operator,
/// by sign-change scanning and bisection of eigen_condition. Descending order.
std::vector<double> continuum_eigenvalues(int count);

struct ResolventSolution {
    double lambda = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    GridFunction solution;
    double determinant = 0.0;
};

/// Solves lambda f - f'' = g with f'(0) = f(1) - f(0) = f'(1) from
///   f = C1 e^{sx} + C2 e^{-sx} - (1/s) int_0^x sinh(s(x-y)) g(y) dy,   s = sqrt(lambda),
/// with C1, C2 from the 2x2 system the boundary conditions impose. Throws
/// InvalidArgument for lambda <= 0 and NumericError when the system is singular.
ResolventSolution resolve(const GridFunction& g, double lambda);

/// Determinant of that 2x2 system in closed form: 4s + 2 lambda sinh(s) - 4s cosh(s).
double resolvent_determinant(double lambda);

/// max over interior nodes of |lambda f - f'' - g|, f'' by central differences.
double resolvent_residual(const ResolventSolution& sol, const GridFunction& g);

struct BoundaryResiduals {
    double at_0 = 0.0;  // |f'(0) - (f(1) - f(0))|
    double at_1 = 0.0;  // |f'(1) - (f(1) - f(0))|
};

/// Residuals of f'(0) = f(1) - f(0) = f'(1) with fourth-order one-sided derivatives.
BoundaryResiduals boundary_residuals(const GridFunction& f);

}  // namespace kelvin
