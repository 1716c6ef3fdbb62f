#include <catch2/catch_amalgamated.hpp>

#include <bpde/oracles.hpp>

#include <cmath>

using namespace bpde;

TEST_CASE("far-field series satisfies the profile equation", "[oracle]") {
    // h = eta^g (1 + c1 w + c2 w^2), w = eta^{-3(1-g)}, solves
    // h''' = (A h - B eta h') / h^3 up to O(w^3) corrections; the residual
    // must fall by ~eta^{-mu} per doubling.
    double gamma = 0.3;
    FarField ff = ex1_far_field(gamma);
    double B = 1.0 / (3.0 * (1.0 - gamma));
    double A = gamma * B;
    auto resid = [&](double eta) {
        double h = far_field_value(ff, eta, 0).real();
        double h1 = far_field_value(ff, eta, 1).real();
        double h3 = far_field_value(ff, eta, 3).real();
        double rhs = (A * h - B * eta * h1) / (h * h * h);
        return std::abs(h3 - rhs) / (std::abs(h3) + std::abs(rhs) + 1e-300);
    };
    double r40 = resid(40.0), r80 = resid(80.0);
    CHECK(r40 < 1e-4);
    CHECK(r80 < r40 * 0.3);
}

TEST_CASE("inward integration is consistent across starting points", "[oracle]") {
    double gamma = 0.5;
    std::vector<double> q = {6.0, 10.0, 20.0};
    SimilarityProfile a = similarity_ode_ex1(gamma, 0.0, q, 150.0);
    SimilarityProfile b = similarity_ode_ex1(gamma, 0.0, q, 250.0);
    for (std::size_t i = 0; i < q.size(); ++i) {
        CHECK(std::abs(a.h[i] - b.h[i]) <= 1e-8 * std::abs(b.h[i]));
        // profile approaches eta^gamma growth from the far field
        CHECK(std::abs(a.h[i]) > 0.5 * std::pow(q[i], gamma));
        CHECK(std::abs(a.h[i]) < 2.0 * std::pow(q[i], gamma));
    }
}

TEST_CASE("far-field pins the literal profile value", "[oracle]") {
    // frozen check: at gamma = 0.3 the two-term series at eta = 60 matches
    // the integrated profile to the series truncation error
    double gamma = 0.3;
    FarField ff = ex1_far_field(gamma);
    std::vector<double> q = {60.0};
    SimilarityProfile p = similarity_ode_ex1(gamma, 0.0, q, 200.0);
    double series = far_field_value(ff, 60.0, 0).real();
    CHECK(std::abs(p.h[0] - series) <= 1e-4 * std::abs(series));
}

TEST_CASE("decaying profile family integrates stably", "[oracle]") {
    double delta = 1.0;
    std::vector<double> q = {4.0, 6.0, 10.0};
    SimilarityProfile a = similarity_ode_ex3(delta, 0.0, q, 25.0);
    SimilarityProfile b = similarity_ode_ex3(delta, 0.0, q, 32.0);
    for (std::size_t i = 0; i < q.size(); ++i) {
        CHECK(std::abs(a.h[i] - b.h[i]) <= 1e-6 * std::abs(b.h[i]));
        // h ~ eta^{-9 delta} decay
        double ratio = std::abs(a.h[i]) / std::pow(q[i], -9.0 * delta);
        CHECK(ratio > 0.3);
        CHECK(ratio < 3.0);
    }
}

TEST_CASE("third-family far-field series coefficients", "[oracle]") {
    // d1 = P(-9 delta) with P(x) = x (x-1)(x-2); frozen at delta = 1
    FarField ff = ex3_far_field(1.0);
    CHECK(ff.c1 == Catch::Approx(-990.0));
    CHECK(ff.c2 == Catch::Approx(2182950.0));
    CHECK(ff.mu == Catch::Approx(6.0));
}

TEST_CASE("log slope fits exact power laws", "[oracle]") {
    std::vector<double> s = {2.0, 3.0, 5.0, 8.0, 13.0};
    std::vector<double> v;
    for (double x : s) v.push_back(4.2 * std::pow(x, -1.75));
    CHECK(log_slope(s, v) == Catch::Approx(-1.75).margin(1e-12));
}

TEST_CASE("derivative Laplace transform", "[oracle]") {
    // d/dy of y^{-2} is -2 y^{-3}: transform p against weight (-s e^{i theta})
    RayGrid g = make_grid(0.0, 6.0, 192);
    BorelFunction F = ilt_power_law(2.0, 1.0, g);
    double y = 6.0;
    cplx d1 = laplace_back_deriv(F, y, 0, 1);
    CHECK(std::abs(d1 - cplx(-2.0 * std::pow(y, -3.0))) <= 1e-7);
    cplx d3 = laplace_back_deriv(F, y, 0, 3);
    CHECK(std::abs(d3 - cplx(-24.0 * std::pow(y, -5.0))) <= 1e-7);
}
