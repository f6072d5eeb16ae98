#include <cmath>
#include <numbers>

#include "doctest.h"
#include "kelvin/extension.hpp"
#include "kelvin/quadrature.hpp"

using namespace kelvin;
using std::numbers::e;
using std::numbers::pi;

namespace {

double half_cos(double x) { return 0.5 * std::cos(pi * x); }

double g1_closed(double x) {
    return 2.0 / (pi * pi + 4.0) * (2.0 * std::cos(pi * x) - pi * std::sin(pi * x) - 2.0 * std::exp(2.0 * x)) -
           0.5 * std::cos(pi * x);
}

}  // namespace

TEST_CASE("affine data extends affinely") {
    const GridFunction f = sample([](double x) { return 2.0 * x - 1.0; }, 256);
    const ExtendedFunction ef = integral_extension(f, 3);
    CHECK(sup_distance(ef.g(1), sample([](double x) { return 2.0 * x + 1.0; }, 256)) <= 1e-9);
    CHECK(sup_distance(ef.h(1), sample([](double x) { return -2.0 * x - 1.0; }, 256)) <= 1e-9);
    const LineFunction line = ef.line();
    CHECK(line.x_min == -3.0);
    CHECK(line.x_max() == 4.0);
    for (Eigen::Index k = 0; k < line.values.size(); ++k) {
        CHECK(std::abs(line.values[k] - (2.0 * line.node(k) - 1.0)) <= 1e-9);
    }
    CHECK(std::abs(eval_extension(ef, -1.5) + 4.0) <= 1e-9);
    CHECK(std::abs(eval_extension(ef, 2.3337) - (2.0 * 2.3337 - 1.0)) <= 1e-9);
}

TEST_CASE("even data extends periodically") {
    const GridFunction f = sample([](double x) { return std::cos(2.0 * pi * x); }, 128);
    const ExtendedFunction ef = integral_extension(f, 2);
    for (int n = 0; n <= 2; ++n) {
        CHECK(sup_distance(ef.g(n), f) <= 1e-10);
        CHECK(sup_distance(ef.h(n), f) <= 1e-10);
    }
    CHECK(ef.line().values.cwiseAbs().maxCoeff() == doctest::Approx(sup_norm(f)).epsilon(1e-12));
}

TEST_CASE("g_1 of cos(pi x)/2 matches the closed form") {
    const int n = 2048;
    const ExtendedFunction ef = integral_extension(sample(half_cos, n), 1);
    CHECK(sup_distance(ef.g(1), sample(g1_closed, n)) <= 1e-6);
    const double expected = -(2.0 * pi + 4.0 * e) / (pi * pi + 4.0);
    CHECK(eval_extension(ef, 1.5) == doctest::Approx(expected).epsilon(1e-10));
    CHECK(eval_extension(ef, 1.5) == doctest::Approx(g1_closed(0.5)).epsilon(1e-10));
    // Off-grid evaluation goes through cubic interpolation.
    CHECK(std::abs(eval_extension(ef, 1.0 + 1.0 / 3.0) - g1_closed(1.0 / 3.0)) <= 1e-9);
}

TEST_CASE("eval_extension on constants and out of range") {
    const ExtendedFunction ef = integral_extension(GridFunction::constant(64, 1.0), 20);
    CHECK(eval_extension(ef, 17.25) == doctest::Approx(1.0));
    CHECK(eval_extension(ef, -19.9) == doctest::Approx(1.0));
    try {
        eval_extension(ef, 21.5);
        FAIL("expected NumericError");
    } catch (const NumericError& err) {
        CHECK(std::string(err.what()).find("n_max") != std::string::npos);
    }
    CHECK_THROWS_AS(eval_extension(ef, -20.01), NumericError);
}

TEST_CASE("n_max must lie in [1, 20]") {
    const GridFunction f = GridFunction::constant(8, 1.0);
    CHECK_THROWS_AS(integral_extension(f, 0), InvalidArgument);
    CHECK_THROWS_AS(integral_extension(f, 21), InvalidArgument);
}

TEST_CASE("structural identities hold and breaches are named") {
    const GridFunction f = sample([](double x) { return std::exp(x); }, 512);
    const ExtendedFunction ef = integral_extension(f, 3);
    for (const IdentityCheck& c : check_identities(ef)) CHECK_MESSAGE(c.passed(), c.identity);

    try {
        integral_extension(f, 3, {.validate = true, .tolerances = {1e-30, 1e-30, 1e-30}});
        FAIL("expected InvariantError");
    } catch (const InvariantError& err) {
        CHECK_FALSE(err.identity().empty());
        CHECK(err.segment() >= 0);
        CHECK(err.deviation() > 0.0);
    }
}

TEST_CASE("odd data: g_n + h_n = 0, and int d_0 = 0 for any f") {
    const GridFunction odd = split_even_odd(sample([](double x) { return std::exp(x); }, 256)).odd;
    const ExtendedFunction ef = integral_extension(odd, 4);
    for (int n = 0; n <= 4; ++n) CHECK(sup_norm(ef.g(n) + ef.h(n)) <= 1e-8);

    for (auto fn : {+[](double x) { return x * x; }, +[](double x) { return std::sin(9.0 * x); }}) {
        const ExtendedFunction any = integral_extension(sample(fn, 256), 1);
        CHECK(std::abs(simpson(any.h(0).values() - any.g(0).values(), 1.0 / 256)) <= 1e-14);
    }
}

TEST_CASE("extension is linear") {
    const GridFunction f = sample([](double x) { return x * x; }, 256);
    const GridFunction g = sample([](double x) { return std::sin(3.0 * x); }, 256);
    const ExtendedFunction a = integral_extension(f, 3);
    const ExtendedFunction b = integral_extension(g, 3);
    const ExtendedFunction c = integral_extension(1.5 * f - 2.0 * g, 3);
    for (int n = 0; n <= 3; ++n) {
        const double scale = 1.0 + sup_norm(c.g(n)) + sup_norm(c.h(n));
        CHECK(sup_distance(c.g(n), 1.5 * a.g(n) - 2.0 * b.g(n)) <= 1e-8 * scale);
        CHECK(sup_distance(c.h(n), 1.5 * a.h(n) - 2.0 * b.h(n)) <= 1e-8 * scale);
    }
}

TEST_CASE("Robin extension closed forms") {
    const int n = 1024;
    const LineFunction zero = robin_extension(GridFunction::zeros(n));
    CHECK(zero.values.cwiseAbs().maxCoeff() == 0.0);

    // f = 1: both outer pieces equal 2 e^{2u} - 1 with u the distance from [0, 1].
    const LineFunction one = robin_extension(GridFunction::constant(n, 1.0));
    for (Eigen::Index k = 0; k < one.values.size(); ++k) {
        const double x = one.node(k);
        const double u = x < 0.0 ? -x : (x > 1.0 ? x - 1.0 : 0.0);
        CHECK(one.values[k] == doctest::Approx(2.0 * std::exp(2.0 * u) - 1.0).epsilon(1e-11));
    }

    const GridFunction odd = sample(half_cos, n);
    const LineFunction robin = robin_extension(odd);
    const LineFunction integral = integral_extension(odd, 1).line();
    CHECK((robin.values - integral.values).cwiseAbs().maxCoeff() <= 1e-7);
}

TEST_CASE("smoothness at the junctions") {
    // x^2 (1-x)^2 + 0.3 x satisfies f'(0) = f(1) - f(0) = f'(1); mismatches shrink like h^2.
    auto member = [](double x) { return x * x * (1.0 - x) * (1.0 - x) + 0.3 * x; };
    const JunctionReport coarse = smoothness_check(sample(member, 128));
    const JunctionReport fine = smoothness_check(sample(member, 256));
    CHECK(fine.max() <= 1e-3);
    CHECK(coarse.max() / fine.max() >= 3.0);

    CHECK(smoothness_check(sample([](double x) { return 2.0 * x - 1.0; }, 256)).max() <= 1e-7);

    // x^2 has f'(0) = 0 but f(1) - f(0) = 1: a kink that refinement does not remove.
    for (int cells : {128, 512}) {
        CHECK(smoothness_check(sample([](double x) { return x * x; }, cells)).first_at_0 >= 0.5);
    }
}

TEST_CASE("segment growth is reported per segment") {
    const ExtendedFunction ef = integral_extension(sample(half_cos, 256), 5);
    const std::vector<double> growth = segment_growth(ef);
    REQUIRE(growth.size() == 6);
    CHECK(growth[0] == doctest::Approx(0.5));
    for (double g : growth) CHECK(std::isfinite(g));
}
