#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "kelvin/extension.hpp"
#include "kelvin/grid.hpp"

namespace kelvin {

enum class Method { DalembertCosine, Weierstrass, FdExpmOracle };

std::string_view to_string(Method m) noexcept;
/// Accepts "dalembert-cosine", "weierstrass", "fd-expm-oracle".
Method method_from_string(std::string_view name);

struct EvolutionResult {
    GridFunction state;
    /// Time actually applied (after snapping to the grid, when requested).
    double time = 0.0;
    Method method = Method::DalembertCosine;
    /// |F0 state - F0 f| and |F1 state - F1 f|.
    std::array<double, 2> moment_drift{0.0, 0.0};
    /// Kernel mass discarded by truncating the Weierstrass integral; 0 for other methods.
    double quadrature_tail_bound = 0.0;
};

std::array<double, 2> moment_drift(const GridFunction& initial, const GridFunction& state);

struct CosineOptions {
    /// Round t to the nearest multiple of the grid step so every shift is node
    /// aligned. When false, off-grid t is served by cubic interpolation (O(h^3)).
    bool snap_time = true;
};

/// (C(t) f)(x) = (ext(x + t) + ext(x - t)) / 2 on the nodes of [0, 1].
/// Throws NumericError when |t| > n_max.
EvolutionResult cosine_apply(const GridFunction& f, double t, int n_max, const CosineOptions& options = {});
EvolutionResult cosine_apply(const ExtendedFunction& ef, double t, const CosineOptions& options = {});

/// sup |2 C(t) C(s) f - C(t+s) f - C(t-s) f| with t and s snapped to the grid.
/// The outer C(t) re-extends the intermediate state C(s) f from [0, 1].
double cosine_equation_check(const GridFunction& f, double t, double s, int n_max);

struct WeierstrassOptions {
    /// Kernel truncation: the integral runs to tau_max = 2 sqrt(t ln(1/delta)).
    double delta = 1e-14;
    /// Largest admissible discarded kernel mass when tau_max is clipped to n_max.
    double max_tail = 1e-10;
};

/// Truncation point 2 sqrt(t ln(1/delta)) of the Gaussian kernel.
double weierstrass_cutoff(double t, double delta);

/// S(t) f = (pi t)^{-1/2} int_0^inf e^{-tau^2 / 4t} C(tau) f dtau by composite
/// Simpson in tau with the spatial step, so every shift is node aligned.
///
/// The integral is truncated at min(weierstrass_cutoff(t, delta), n_max); the
/// discarded mass erfc(tau_cut / 2 sqrt t) is recorded as quadrature_tail_bound
/// and must stay below options.max_tail, otherwise NumericError asks for a
/// larger n_max or a smaller t. t = 0 returns f.
EvolutionResult semigroup_apply(const GridFunction& f, double t, int n_max, const WeierstrassOptions& options = {});

/// Pf = (F0 f_even) f0 + (F1 f_odd) f1, the rank-2 equilibrium projection.
GridFunction projection_P(const GridFunction& f);

/// (I f)(x) = f((1 - x) / 2) for f odd about 1/2. The image lands exactly on
/// the grid with n_cells / 2 cells, so n_cells must be divisible by 4.
/// Throws InvalidArgument when f is not odd (asymmetry above 1e-8 relative).
GridFunction odd_isomorphism(const GridFunction& f_odd);

/// (I^{-1} g)(x) = g(1 - 2x) on [0, 1/2), -g(2x - 1) on [1/2, 1]; doubles the cell count.
GridFunction odd_isomorphism_inverse(const GridFunction& g);

struct EndpointDerivatives {
    double at_0 = 0.0;
    double at_1 = 0.0;
};

/// One-sided fourth-order estimates of f'(0) and f'(1); needs n_cells >= 4.
EndpointDerivatives estimate_endpoint_derivatives(const GridFunction& f);

struct BoundaryCheck {
    int order = 0;
    /// F_order(f'') expressed through boundary data; vanishes iff the condition holds.
    double residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

/// Boundary condition that makes F_i(f'') vanish:
///   i = 0:  f'(1) - f'(0)
///   i = 1:  f'(1) - f(1) + f(0)
///   i >= 2: f'(1) - i f(1) + i (i-1) F_{i-2} f
/// Endpoint derivatives are estimated when not supplied.
BoundaryCheck bc_checker(const GridFunction& f, int order, std::optional<EndpointDerivatives> derivatives = {},
                         double tolerance = 1e-6);

/// True when both the i = 0 and i = 1 conditions hold, i.e. f'(0) = f(1) - f(0) = f'(1).
bool in_generator_domain(const GridFunction& f, std::optional<EndpointDerivatives> derivatives = {},
                         double tolerance = 1e-6);

}  // namespace kelvin
