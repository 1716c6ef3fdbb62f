#include <catch2/catch_amalgamated.hpp>

#include <bpde/certificates.hpp>

#include <cmath>

using namespace bpde;

TEST_CASE("memory kernel decay constants", "[cert]") {
    // K_j = sup_{g>0} (1 - e^{-g^3}) / g^{3-j}
    CHECK(decay_sup_K(0) == Catch::Approx(1.0));
    CHECK(decay_sup_K(3) == Catch::Approx(1.0));
    CHECK(decay_sup_K(1) == Catch::Approx(0.639208).margin(2e-5));
    CHECK(decay_sup_K(2) == Catch::Approx(0.686628).margin(2e-5));
}

TEST_CASE("convolution tail bound dominates its asymptote", "[cert]") {
    for (double a : {1.0, 4.0 / 3.0, 2.0, 3.0})
        for (double nu : {2.0, 4.0, 8.0, 16.0}) {
            double floor = std::tgamma(a) * std::pow(nu, -a);
            double phi = phi_bound(a, nu);
            CHECK(phi >= floor);
            // decreasing in nu
            CHECK(phi_bound(a, 2.0 * nu) < phi);
        }
    // large nu: the weight correction disappears and the bound approaches
    // Gamma(a) nu^{-a}
    CHECK(phi_bound(1.0, 40.0) <= 1.1 * std::tgamma(1.0) / 40.0);
}

TEST_CASE("tail bound against a dense independent scan", "[cert]") {
    // independent evaluation of sup_s int_0^s u^{a-1} e^{-nu u}
    // (1+s^2)/(1+(s-u)^2) du by brute trapezoid refinement
    double a = 2.0, nu = 6.0;
    double best = 0.0;
    for (double s = 0.05; s < 12.0; s *= 1.02) {
        int n = 4000;
        double acc = 0.0, h = s / n;
        for (int i = 0; i < n; ++i) {
            double u0 = h * i, u1 = h * (i + 1), um = 0.5 * (u0 + u1);
            auto f = [&](double u) {
                return (u > 0 ? std::pow(u, a - 1.0) : 0.0) * std::exp(-nu * u) *
                       (1.0 + s * s) / (1.0 + (s - u) * (s - u));
            };
            acc += h / 6.0 * (f(u0) + 4.0 * f(um) + f(u1));
        }
        best = std::max(best, acc);
    }
    double phi = phi_bound(a, nu);
    CHECK(phi >= best * (1.0 - 1e-6));   // never below the true sup
    CHECK(phi <= best * 1.01);           // and within the inflation budget
}

TEST_CASE("reference configuration is certified", "[cert]") {
    Certificate c = ex1_certificate(0.5, 0.05, 8.0, 2.0);
    CHECK(c.satisfied);
    CHECK(c.ball_condition_lhs > 0.5);  // contains the 1/b floor
    CHECK(c.ball_condition_lhs < 1.0);
    CHECK(c.contraction_lhs < 1.0);
    CHECK(c.F0_norm > 0.0);
    CHECK(c.margin > 0.0);
}

TEST_CASE("certificates degrade as T grows and nu shrinks", "[cert]") {
    Certificate good = ex1_certificate(0.5, 0.05, 8.0, 2.0);
    Certificate worseT = ex1_certificate(0.5, 0.8, 8.0, 2.0);
    Certificate worseNu = ex1_certificate(0.5, 0.05, 2.0, 2.0);
    CHECK(worseT.ball_condition_lhs > good.ball_condition_lhs);
    CHECK(worseNu.ball_condition_lhs > good.ball_condition_lhs);
    Certificate bad = ex1_certificate(0.5, 5.0, 2.0, 2.0);
    CHECK_FALSE(bad.satisfied);
    CHECK(!bad.reason.empty());
}

TEST_CASE("certified boundary is found by bisection", "[cert]") {
    double T = 0.05;
    auto nustar = min_certified_nu(1, 0.5, T, 2.0, 0.5, 24.0);
    REQUIRE(nustar.has_value());
    CHECK(*nustar > 0.5);
    CHECK(*nustar < 24.0);
    CHECK(ex1_certificate(0.5, T, *nustar * 1.02, 2.0).satisfied);
    CHECK_FALSE(ex1_certificate(0.5, T, *nustar * 0.98, 2.0).satisfied);
}

TEST_CASE("all three families produce certificates", "[cert]") {
    Certificate c2 = ex2_certificate(0.05, 8.0, 2.0);
    CHECK(std::isfinite(c2.ball_condition_lhs));
    CHECK(c2.F0_norm > 0.0);
    Certificate c3 = ex3_certificate(1.0, 0.01, 12.0, 2.0);
    CHECK(std::isfinite(c3.ball_condition_lhs));
    // the third family carries large coefficients; small T compensates
    CHECK(c3.satisfied);
}

TEST_CASE("certificate evaluation is deterministic", "[cert]") {
    Certificate a = ex3_certificate(1.0, 0.01, 12.0, 2.0);
    Certificate b = ex3_certificate(1.0, 0.01, 12.0, 2.0);
    CHECK(a.ball_condition_lhs == b.ball_condition_lhs);
    CHECK(a.contraction_lhs == b.contraction_lhs);
    CHECK(a.F0_norm == b.F0_norm);
}

TEST_CASE("abstract certificate degenerate cases", "[cert]") {
    std::array<double, 4> alpha = {3.0, 2.0, 1.0, 1.0};
    SECTION("no nonlinear terms: ball reduces to 1/b") {
        Certificate c = general_certificate(alpha, 1.0, 0.0, 0.0, 0.05, 8.0, 2.0);
        CHECK(c.ball_condition_lhs == Catch::Approx(0.5));
        CHECK(c.contraction_lhs == 0.0);
        CHECK(c.satisfied);
    }
    SECTION("mass precondition") {
        Certificate c =
            general_certificate(alpha, 1.0, 1.0, 1e9, 10.0, 4.0, 2.0);
        CHECK_FALSE(c.satisfied);
        CHECK(c.reason.find("mass") != std::string::npos);
    }
    SECTION("monotone in nu") {
        Certificate lo = general_certificate(alpha, 1.0, 2.0, 3.0, 0.05, 4.0, 2.0);
        Certificate hi = general_certificate(alpha, 1.0, 2.0, 3.0, 0.05, 16.0, 2.0);
        CHECK(hi.ball_condition_lhs < lo.ball_condition_lhs);
        CHECK(hi.contraction_lhs < lo.contraction_lhs);
    }
}

TEST_CASE("sector widening weakens the certificate", "[cert]") {
    CertOptions opt;
    opt.phi = 0.5; // cos(3 phi) ~ 0.07: near the sector limit
    Certificate c = ex1_certificate(0.5, 0.05, 8.0, 2.0, opt);
    CHECK(std::isfinite(c.ball_condition_lhs));
    Certificate axis = ex1_certificate(0.5, 0.05, 8.0, 2.0);
    CHECK(c.ball_condition_lhs >= axis.ball_condition_lhs);

    // beyond phi = pi/6 the cos(3 phi) factor flips sign and the
    // certificate must refuse
    CertOptions wide;
    wide.phi = 0.6;
    Certificate r = ex1_certificate(0.5, 0.05, 8.0, 2.0, wide);
    CHECK_FALSE(r.satisfied);
    CHECK(r.reason.find("sector") != std::string::npos);
}
