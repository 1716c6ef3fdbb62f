#include <catch2/catch_amalgamated.hpp>

#include <bpde/borel_function.hpp>
#include <bpde/grid.hpp>
#include <bpde/transforms.hpp>

#include <cmath>

using namespace bpde;

TEST_CASE("Laplace round trip recovers power laws", "[transforms]") {
    // L[p^{a-1}/Gamma(a)](y) = y^{-a}; transform forward on the ray and
    // integrate back at real y.
    RayGrid g = make_grid(0.0, 6.0, 256);
    for (double a : {1.0, 4.0 / 3.0, 2.0, 3.0}) {
        BorelFunction F = ilt_power_law(a, 1.0, g);
        for (double y : {4.0, 8.0, 16.0}) {
            LaplaceValue v = laplace_back(F, y, 0);
            double expect = std::pow(y, -a);
            CHECK(std::abs(v.value - expect) + v.tail_bound <= 1e-5 * expect);
        }
    }
}

TEST_CASE("round trip on a rotated ray", "[transforms]") {
    RayGrid g = make_grid(0.2, 6.0, 256);
    BorelFunction F = ilt_power_law(2.0, 1.0, g);
    for (double y : {4.0, 10.0}) {
        LaplaceValue v = laplace_back(F, y, 0, 0.0, 96);
        CHECK(std::abs(v.value - std::pow(y, -2.0)) <= 1e-6 * std::pow(y, -2.0));
    }
}

TEST_CASE("contour inversion matches closed forms", "[transforms]") {
    RayGrid g = make_grid(0.05, 5.0, 96);
    SECTION("1/y^2 inverts to p") {
        auto vals = ilt_contour([](cplx y) { return 1.0 / (y * y); }, g, ContourSpec{});
        for (int i = 8; i <= 96; i += 8) {
            cplx p = g.p(i);
            CHECK(std::abs(vals[i] - p) <= 1e-6 * std::abs(p));
        }
    }
    SECTION("1/(y+1) inverts to exp(-p)") {
        auto vals = ilt_contour([](cplx y) { return 1.0 / (y + 1.0); }, g, ContourSpec{});
        for (int i = 8; i <= 96; i += 8) {
            cplx expect = std::exp(-g.p(i));
            CHECK(std::abs(vals[i] - expect) <= 1e-6 * std::abs(expect));
        }
    }
    SECTION("fractional power") {
        double a = 4.0 / 3.0;
        auto vals =
            ilt_contour([&](cplx y) { return std::pow(y, -a); }, g, ContourSpec{});
        for (int i = 8; i <= 96; i += 8) {
            cplx p = g.p(i);
            cplx expect = std::pow(p, a - 1.0) / std::tgamma(a);
            CHECK(std::abs(vals[i] - expect) <= 1e-6 * std::abs(expect));
        }
    }
}

TEST_CASE("contour legs must clear the ray", "[transforms]") {
    RayGrid g = make_grid(0.4, 2.0, 32);
    ContourSpec spec;
    spec.phi = 0.41; // too close to theta
    CHECK_THROWS_AS(
        ilt_contour([](cplx y) { return 1.0 / (y * y); }, g, spec),
        std::domain_error);
}

TEST_CASE("scaled transform at t = 0 is a pure power", "[transforms]") {
    // the t = 0 limit of the self-similar family x^{-beta} y^{-delta},
    // x = t + (3y/2)^{2/3}, transforms to a single power of p
    RayGrid g = make_grid(0.0, 4.0, 128);
    TimeGrid tg = make_time_grid(0.05, 4);
    ScaledILTSpec spec;
    spec.beta = 5.0 / 2.0;
    spec.delta = 1.0 / 3.0;
    spec.prefactor = 2.0;
    ScaledTransform out = ilt_scaled_ex2(spec, g, tg);
    CHECK(out.dirac_weight == 0.0);
    double sigma = (2.0 / 3.0) * spec.beta + spec.delta - 1.0;
    CHECK(out.value.sigma == Catch::Approx(sigma));
    double h0 = std::pow(1.5, -2.0 * spec.beta / 3.0);
    double expect0 = 2.0 * h0 / std::tgamma(sigma + 1.0);
    // row 0 is t = 0
    CHECK(std::abs(out.value.value_node(0, 32) -
                   expect0 * std::pow(g.s[32], sigma)) <=
          1e-8 * expect0 * std::pow(g.s[32], sigma));
}

TEST_CASE("scaled transform is apex independent", "[transforms]") {
    RayGrid g = make_grid(0.1, 4.0, 96);
    TimeGrid tg = make_time_grid(0.05, 4);
    ScaledILTSpec spec;
    spec.beta = 7.0 / 2.0;
    spec.delta = -1.0 / 3.0;
    spec.prefactor = -1.5;
    ScaledTransform a = ilt_scaled_ex2(spec, g, tg);
    spec.apex = 2.0;
    ScaledTransform b = ilt_scaled_ex2(spec, g, tg);
    double scale = 0.0;
    for (int i = 0; i <= 96; ++i)
        scale = std::max(scale, std::abs(a.value.value_node(4, i)));
    CHECK(max_value_diff(a.value, b.value) <= 1e-8 * scale);
}

TEST_CASE("marginal scaled transform produces a point mass", "[transforms]") {
    // (2/3) beta + delta = 0 makes the t = 0 part a Dirac mass at the
    // origin with weight prefactor * (3/2)^{-2 beta/3}
    RayGrid g = make_grid(0.0, 4.0, 96);
    TimeGrid tg = make_time_grid(0.05, 4);
    ScaledILTSpec spec;
    spec.beta = 3.0 / 2.0;
    spec.delta = -1.0;
    spec.prefactor = 3.0 / 2.0;
    ScaledTransform out = ilt_scaled_ex2(spec, g, tg);
    CHECK(std::abs(out.dirac_weight - 1.0) <= 1e-12);
    // remaining smooth part behaves like t p^{-1/3} (sigma + 2/3)
    CHECK(out.value.sigma == Catch::Approx(-1.0 / 3.0).margin(1e-12));
}

TEST_CASE("tail bound is honest for truncated transforms", "[transforms]") {
    // cutting the Borel integral at s_max must be covered by tail_bound
    RayGrid g_small = make_grid(0.0, 2.0, 128);
    BorelFunction F = ilt_power_law(2.0, 1.0, g_small);
    double y = 4.0;
    LaplaceValue v = laplace_back(F, y, 0);
    double truth = std::pow(y, -2.0);
    CHECK(std::abs(v.value - truth) <= v.tail_bound * 1.05 + 1e-12);
}
