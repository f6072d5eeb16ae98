#include <cmath>
#include <numbers>

#include "doctest.h"
#include "kelvin/volterra.hpp"

using namespace kelvin;
using std::numbers::pi;

TEST_CASE("zero data gives the zero solution") {
    const GridFunction zero = GridFunction::zeros(32);
    CHECK(sup_norm(solve_closed_form(zero)) == 0.0);
    const FixedPointSolution fp = solve_fixed_point(zero, 1e-12);
    CHECK(fp.iterations == 1);
    CHECK(sup_norm(fp.f) == 0.0);
}

TEST_CASE("closed form for g = 1 is e^{2x}") {
    const GridFunction f = solve_closed_form(GridFunction::constant(1024, 1.0));
    CHECK(sup_distance(f, sample([](double x) { return std::exp(2.0 * x); }, 1024)) <= 1e-10);
}

TEST_CASE("closed form for g = -cos(pi x)") {
    // f = g + 2 int_0^x e^{2(x-y)} g(y) dy, integrated by hand.
    const int n = 1024;
    const GridFunction g = sample([](double x) { return -std::cos(pi * x); }, n);
    const GridFunction expected = sample(
        [](double x) {
            return -std::cos(pi * x) +
                   2.0 / (pi * pi + 4.0) * (2.0 * std::cos(pi * x) - pi * std::sin(pi * x) - 2.0 * std::exp(2.0 * x));
        },
        n);
    CHECK(sup_distance(solve_closed_form(g), expected) <= 1e-10);
}

TEST_CASE("fixed point matches the closed form and contracts by at most 1/2") {
    const GridFunction g = GridFunction::constant(512, 1.0);
    const FixedPointSolution fp = solve_fixed_point(g, 1e-12);
    CHECK(sup_distance(fp.f, solve_closed_form(g)) <= 1e-10);
    REQUIRE_FALSE(fp.contraction_ratios.empty());
    for (double r : fp.contraction_ratios) CHECK(r <= 0.5 + 1e-6);
    CHECK(fp.last_difference < 1e-12);
}

TEST_CASE("residuals of both solvers") {
    const double tol = 1e-12;
    const int n = 512;
    for (auto fn : {+[](double x) { return std::exp(x); }, +[](double x) { return std::sin(4.0 * x) - x; },
                    +[](double x) { return 1.0 / (1.0 + x * x); }, +[](double x) { return std::cos(pi * x); },
                    +[](double x) { return x * x * x; }}) {
        const GridFunction g = sample(fn, n);
        const FixedPointSolution fp = solve_fixed_point(g, tol);
        const GridFunction cf = solve_closed_form(g);
        CHECK(volterra_residual(fp.f, g) <= 10.0 * tol);
        // The closed form solves the continuous equation; its residual in the
        // discrete operator is the O(h^4) gap between the two quadratures.
        CHECK(volterra_residual(cf, g) <= 1e-10);
        CHECK(sup_distance(fp.f, cf) <= 5e-10);
    }
}

TEST_CASE("non-convergence is reported with the final difference") {
    const GridFunction g = sample([](double x) { return std::exp(x); }, 64);
    try {
        solve_fixed_point(g, 1e-14, 3);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(e.residual() > 1e-14);
    }
    CHECK_THROWS_AS(solve_fixed_point(g, 0.0), InvalidArgument);
}

TEST_CASE("Bielecki norm weights by e^{-lambda x}") {
    const GridFunction f = sample([](double x) { return std::exp(4.0 * x); }, 16);
    CHECK(bielecki_norm(f) == doctest::Approx(1.0));
    CHECK(bielecki_norm(f, 0.0) == doctest::Approx(std::exp(4.0)));
}
