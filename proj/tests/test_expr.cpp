#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "doctest.h"
#include "kelvin/expr.hpp"
#include "kelvin/grid.hpp"

using namespace kelvin;
using std::numbers::pi;

namespace {

std::size_t offset_of(const std::string& src) {
    try {
        parse_expr(src);
    } catch (const ParseError& e) {
        return e.offset();
    }
    FAIL("expected ParseError for '" << src << "'");
    return 0;
}

// Random source text drawn from the grammar, with redundant parentheses.
std::string random_source(std::mt19937& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, 9);
    const int k = depth <= 0 ? pick(rng) % 4 : pick(rng);
    switch (k) {
        case 0: return "x";
        case 1: return "pi";
        case 2: return std::to_string(pick(rng)) + ".25";
        case 3: return "e";
        case 4: return random_source(rng, depth - 1) + " + " + random_source(rng, depth - 1);
        case 5: return random_source(rng, depth - 1) + " - (" + random_source(rng, depth - 1) + ")";
        case 6: return "(" + random_source(rng, depth - 1) + ")*" + random_source(rng, depth - 1);
        case 7: return "(" + random_source(rng, depth - 1) + ")^(" + random_source(rng, depth - 1) + ")";
        case 8: return "-(" + random_source(rng, depth - 1) + ")";
        default: {
            static const char* names[] = {"sin", "cos", "exp", "abs"};
            return std::string(names[pick(rng) % 4]) + "(" + random_source(rng, depth - 1) + ")";
        }
    }
}

}  // namespace

TEST_CASE("expression examples") {
    CHECK(parse_expr("0.5*cos(pi*x)")(0.0) == 0.5);
    CHECK(parse_expr("12*x-6")(0.5) == 0.0);
    CHECK(parse_expr("2*x-1")(0.75) == 0.5);
    CHECK(parse_expr("exp(x)")(1.0) == doctest::Approx(std::numbers::e));
    CHECK(parse_expr("sqrt(abs(-4))")(0.0) == 2.0);
    CHECK(parse_expr("log(e)")(0.0) == doctest::Approx(1.0));
    CHECK(parse_expr(" 1.5e2 / 3 ")(0.0) == 50.0);
    CHECK(parse_expr("sin(pi/2)")(0.3) == doctest::Approx(1.0));
}

TEST_CASE("precedence and associativity") {
    CHECK(parse_expr("2^3^2")(0.0) == 512.0);
    CHECK(parse_expr("-x^2")(3.0) == 9.0);
    CHECK(parse_expr("-(x^2)")(3.0) == -9.0);
    CHECK(parse_expr("1-2-3")(0.0) == -4.0);
    CHECK(parse_expr("8/4/2")(0.0) == 1.0);
    CHECK(parse_expr("1+2*3^2")(0.0) == 19.0);
    CHECK(parse_expr("2*-x")(1.5) == -3.0);
    CHECK(parse_expr("x^-1")(4.0) == 0.25);
}

TEST_CASE("errors carry byte offsets") {
    CHECK(offset_of("") == 0);
    CHECK(offset_of("2*+x") == 2);
    CHECK(offset_of("foo(x)") == 0);
    CHECK(offset_of("x + y") == 4);
    CHECK(offset_of("(x") == 2);
    CHECK(offset_of("sin x") == 4);
    CHECK(offset_of("sin(x, 2)") == 5);
    CHECK(offset_of("cos()") == 4);
    CHECK(offset_of("pi(2)") == 2);
    CHECK(offset_of("--x") == 1);
    CHECK(offset_of("x)") == 1);
    CHECK(offset_of("1e999") == 0);
    CHECK(offset_of("3 $") == 2);
    CHECK(offset_of("2e") == 1);
    try {
        parse_expr("tan(x)");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("unknown identifier 'tan'") != std::string::npos);
        CHECK(std::string(e.what()).find("offset 0") != std::string::npos);
    }
}

TEST_CASE("canonical printing") {
    CHECK(parse_expr("((x))").to_string() == "x");
    CHECK(parse_expr("0.5*cos(pi*x)").to_string() == "0.5*cos(pi*x)");
    CHECK(parse_expr("(1+x)*(2-x)").to_string() == "(1 + x)*(2 - x)");
    CHECK(parse_expr("1-(2-3)").to_string() == "1 - (2 - 3)");
    CHECK(parse_expr("(1-2)-3").to_string() == "1 - 2 - 3");
    CHECK(parse_expr("(2^3)^2").to_string() == "(2^3)^2");
    CHECK(parse_expr("2^(3^2)").to_string() == "2^3^2");
    CHECK(parse_expr("-(x^2)").to_string() == "-(x^2)");
    CHECK(parse_expr("(-x)^2").to_string() == "-x^2");
    CHECK(parse_expr("0.1").to_string() == "0.1");
    CHECK(parse_expr("1e-7").to_string() == "1e-07");
    CHECK(parse_expr("x").source() == "x");
}

TEST_CASE("printing is a fixed point and preserves values") {
    std::mt19937 rng(12345);
    for (int k = 0; k < 300; ++k) {
        const std::string src = random_source(rng, 4);
        const FunctionExpr a = parse_expr(src);
        const std::string once = a.to_string();
        const FunctionExpr b = parse_expr(once);
        CHECK_MESSAGE(b.to_string() == once, src);
        for (double x : {0.0, 0.3, 1.0}) {
            const double va = a(x);
            const double vb = b(x);
            if (std::isfinite(va)) CHECK(vb == va);
        }
    }
}

TEST_CASE("sampling an expression rejects non-finite nodes") {
    CHECK_THROWS_AS(sample(parse_expr("log(x)"), 8), NumericError);
    CHECK_THROWS_AS(sample(parse_expr("1/(x-0.5)"), 8), NumericError);
    const GridFunction f = sample(parse_expr("0.5*cos(pi*x)"), 4);
    CHECK(f[4] == doctest::Approx(-0.5));
}
