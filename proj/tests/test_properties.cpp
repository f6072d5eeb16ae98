// Randomized properties over a fixed-seed corpus of smooth functions.

#include <cmath>
#include <random>

#include "doctest.h"
#include "kelvin/evolution.hpp"
#include "kelvin/extension.hpp"
#include "kelvin/spectral.hpp"

using namespace kelvin;

namespace {

constexpr int kCells = 512;
constexpr int kSamples = 8;

struct Corpus {
    std::mt19937 rng{987654321};

    GridFunction next() {
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        const double a = u(rng), b = u(rng), c = u(rng), d = u(rng), k = 2.0 + 6.0 * std::abs(u(rng));
        return sample([=](double x) { return a + b * x + c * std::exp(x) + d * std::cos(k * x); }, kCells);
    }

    double scalar() { return std::uniform_real_distribution<double>(-3.0, 3.0)(rng); }
};

}  // namespace

TEST_CASE("cosine family is linear") {
    Corpus c;
    for (int k = 0; k < kSamples; ++k) {
        const GridFunction f = c.next();
        const GridFunction g = c.next();
        const double a = c.scalar();
        const double b = c.scalar();
        const double t = 0.25 * (k + 1);
        const GridFunction lhs = cosine_apply(a * f + b * g, t, 3).state;
        const GridFunction rhs = a * cosine_apply(f, t, 3).state + b * cosine_apply(g, t, 3).state;
        CHECK(sup_distance(lhs, rhs) <= 1e-9 * (1.0 + sup_norm(lhs)));
    }
}

TEST_CASE("cosine family conserves both moments for random data") {
    // Drift is the O(h^4) quadrature error of the extension, about 1e-6 here.
    Corpus c;
    for (int k = 0; k < kSamples; ++k) {
        const GridFunction f = c.next();
        const EvolutionResult r = cosine_apply(f, -1.5 + 0.4 * k, 3);
        CHECK(r.moment_drift[0] <= 5e-6);
        CHECK(r.moment_drift[1] <= 5e-6);
    }
}

TEST_CASE("C(0) and S(0) are the identity, C is even in t") {
    Corpus c;
    for (int k = 0; k < kSamples; ++k) {
        const GridFunction f = c.next();
        CHECK(sup_distance(cosine_apply(f, 0.0, 1).state, f) == 0.0);
        CHECK(sup_distance(semigroup_apply(f, 0.0, 1).state, f) == 0.0);
        CHECK(sup_distance(cosine_apply(f, 0.75, 1).state, cosine_apply(f, -0.75, 1).state) <= 1e-12);
    }
}

TEST_CASE("projection is idempotent and kills the range of the generator") {
    Corpus c;
    for (int k = 0; k < kSamples; ++k) {
        const GridFunction f = c.next();
        const GridFunction p = projection_P(f);
        CHECK(sup_distance(projection_P(p), p) <= 1e-10);
        CHECK(sup_distance(projection_P(f - p), GridFunction::zeros(kCells)) <= 1e-10);
    }
}

TEST_CASE("parity is preserved by the cosine family and the semigroup") {
    Corpus c;
    for (int k = 0; k < kSamples; ++k) {
        const EvenOddParts p = split_even_odd(c.next());
        const double t = 0.1 * (k + 1);
        CHECK(even_defect(cosine_apply(p.even, t, 2).state) <= 1e-8);
        CHECK(odd_defect(cosine_apply(p.odd, t, 2).state) <= 1e-8);
        CHECK(even_defect(semigroup_apply(p.even, 0.01 * (k + 1), 20).state) <= 1e-8);
        CHECK(odd_defect(semigroup_apply(p.odd, 0.01 * (k + 1), 20).state) <= 1e-8);
    }
}

TEST_CASE("even part of the cosine family is a contraction") {
    Corpus c;
    for (int k = 0; k < kSamples; ++k) {
        const GridFunction even = split_even_odd(c.next()).even;
        for (double t : {0.3, 1.7, 4.2}) CHECK(sup_norm(cosine_apply(even, t, 5).state) <= sup_norm(even) + 1e-8);
    }
}

TEST_CASE("odd isomorphism is an isometry with an exact inverse") {
    Corpus c;
    for (int k = 0; k < kSamples; ++k) {
        const GridFunction odd = split_even_odd(c.next()).odd;
        const GridFunction image = odd_isomorphism(odd);
        CHECK(sup_norm(image) == sup_norm(odd));
        CHECK(odd_isomorphism_inverse(image).values() == odd.values());
    }
}

TEST_CASE("structural identities hold for random data") {
    Corpus c;
    for (int k = 0; k < kSamples; ++k) {
        const ExtendedFunction ef = integral_extension(c.next(), 4, {.validate = false});
        for (const IdentityCheck& check : check_identities(ef)) CHECK_MESSAGE(check.passed(), check.identity);
    }
}

TEST_CASE("semigroup is positivity preserving on the even part") {
    // The even realization is the Neumann heat flow, which maps nonnegative data to nonnegative data.
    Corpus c;
    for (int k = 0; k < kSamples; ++k) {
        const GridFunction even = split_even_odd(c.next()).even;
        const double shift = -even.values().minCoeff();
        const GridFunction lifted = even + GridFunction::constant(kCells, shift);
        CHECK(semigroup_apply(lifted, 0.05, 20).state.values().minCoeff() >= -1e-10);
    }
}
