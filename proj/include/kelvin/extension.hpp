#pragma once

#include <string>
#include <vector>

#include "kelvin/grid.hpp"

namespace kelvin {

/// Largest supported extension half-width. The recurrence amplifies rounding
/// errors by roughly e^2 per unit of extension, so 20 units exhaust double precision.
inline constexpr int kMaxExtension = 20;

/// The moments-preserving (integral) extension of f to [-n_max, 1 + n_max].
///
/// Segment n >= 0 is stored as the pair
///   g_n(x) = ext(x + n),   h_n(x) = ext(1 - x - n),   x in [0, 1],
/// on the grid of the base function, so g_0 = f and h_0 = f(1 - .).
class ExtendedFunction {
public:
    /// g[0] is the base function; both vectors hold n_max + 1 segments.
    ExtendedFunction(std::vector<GridFunction> g, std::vector<GridFunction> h);

    const GridFunction& base() const noexcept { return g_.front(); }
    int n_max() const noexcept { return static_cast<int>(g_.size()) - 1; }
    int n_cells() const noexcept { return base().n_cells(); }

    const GridFunction& g(int n) const { return g_.at(static_cast<std::size_t>(n)); }
    const GridFunction& h(int n) const { return h_.at(static_cast<std::size_t>(n)); }

    /// ext(k / n_cells) for an integer node index k in [-n_max n_cells, (1 + n_max) n_cells].
    double at_node(long k) const;

    /// All nodes of [-n_max, 1 + n_max] in increasing x.
    LineFunction line() const;

private:
    std::vector<GridFunction> g_;
    std::vector<GridFunction> h_;
};

/// Tolerances for the structural identities, each scaled by 1 + ||g_n|| + ||h_n||.
struct IdentityTolerances {
    double compatibility = 1e-9;
    double symmetry = 1e-8;
    double claim = 1e-8;
};

struct IdentityCheck {
    std::string identity;
    double max_scaled_deviation = 0.0;  // deviation / (1 + ||g_n|| + ||h_n||)
    double max_deviation = 0.0;
    int worst_segment = 0;
    double tolerance = 0.0;
    bool passed() const noexcept { return max_scaled_deviation <= tolerance; }
};

/// Evaluates h_0 = f(1 - .), the junction compatibility, the symmetry identity
/// g_{n+1} + h_{n+1} = g_n + h_n and the claim h_n(1) - g_n(0) = int d_n = h_n(0) - g_n(1).
std::vector<IdentityCheck> check_identities(const ExtendedFunction& ef, const IdentityTolerances& tol = {});

struct ExtensionOptions {
    bool validate = true;
    IdentityTolerances tolerances{};
};

/// Builds g_n, h_n for n = 0..n_max from d_n = h_n - g_n,
///   psi_n(x) = -e^{2x} int_0^1 d_n + 2 int_0^x e^{2(x-y)} d_n(y) dy,
///   h_{n+1} = g_n - psi_n,   g_{n+1} = h_n + psi_n.
/// With validation on, throws InvariantError naming the first identity whose
/// scaled deviation exceeds tolerance.
ExtendedFunction integral_extension(const GridFunction& f, int n_max, const ExtensionOptions& options = {});

/// ext(x); exact lookup on grid nodes, local cubic interpolation inside a segment otherwise.
/// Throws NumericError outside [-n_max, 1 + n_max].
double eval_extension(const ExtendedFunction& ef, double x);

/// Sup norms max(||g_n||, ||h_n||) per segment; observed growth, no bound asserted.
std::vector<double> segment_growth(const ExtendedFunction& ef);

/// Closed-form extension for the Robin realization f'(0) = -2 f(0), f'(1) = 2 f(1):
///   f(-x) + 4 e^{-2x} int_0^{-x} e^{-2y} f(y) dy        on [-1, 0),
///   f(x)                                                on [0, 1],
///   f(2-x) + 4 e^{2(x-1)} int_0^{x-1} e^{-2y} f(1-y) dy on (1, 2].
/// Agrees with the integral extension on functions odd about 1/2.
LineFunction robin_extension(const GridFunction& f);

/// One-sided second-order estimates of ext' and ext'' on both sides of x = 0 and x = 1.
struct JunctionReport {
    double first_at_0 = 0.0;   // |ext'(0-) - ext'(0+)|
    double second_at_0 = 0.0;  // |ext''(0-) - ext''(0+)|
    double first_at_1 = 0.0;
    double second_at_1 = 0.0;
    double max() const noexcept;
};

JunctionReport smoothness_check(const GridFunction& f);

}  // namespace kelvin
