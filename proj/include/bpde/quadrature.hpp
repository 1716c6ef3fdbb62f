#pragma once

// Quadrature building blocks used throughout:
//
//  * Gauss-Legendre panels for contour integrals (smooth integrands).
//  * Exact-moment rules for integrals of the form  int s^sigma f(s) ds
//    with f smooth but sigma possibly large or fractional.  A composite
//    cubic rule is used where the weight s^sigma is integrated exactly
//    against the Lagrange basis on each panel, so no accuracy is lost to
//    the power-law factor.
//  * Golden section search for the handful of one dimensional sups that
//    appear in the norm constants.

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace bpde {

struct QuadNode { double x; double w; };

// Gauss-Legendre rules mapped to [0,1]; n in {4, 8, 16}.
inline const std::vector<QuadNode>& gl_unit(int n) {
    static const std::vector<QuadNode> g4 = [] {
        const double x[] = {0.3399810435848563, 0.8611363115940526};
        const double w[] = {0.6521451548625461, 0.3478548451374538};
        std::vector<QuadNode> v;
        for (int i = 1; i >= 0; --i) v.push_back({0.5 * (1.0 - x[i]), 0.5 * w[i]});
        for (int i = 0; i < 2; ++i) v.push_back({0.5 * (1.0 + x[i]), 0.5 * w[i]});
        return v;
    }();
    static const std::vector<QuadNode> g8 = [] {
        const double x[] = {0.1834346424956498, 0.5255324099163290,
                            0.7966664774136267, 0.9602898564975363};
        const double w[] = {0.3626837833783620, 0.3137066458778873,
                            0.2223810344533745, 0.1012285362903763};
        std::vector<QuadNode> v;
        for (int i = 3; i >= 0; --i) v.push_back({0.5 * (1.0 - x[i]), 0.5 * w[i]});
        for (int i = 0; i < 4; ++i) v.push_back({0.5 * (1.0 + x[i]), 0.5 * w[i]});
        return v;
    }();
    static const std::vector<QuadNode> g16 = [] {
        const double x[] = {0.0950125098376374, 0.2816035507792589,
                            0.4580167776572274, 0.6178762444026438,
                            0.7554044083550030, 0.8656312023878318,
                            0.9445750230732326, 0.9894009349916499};
        const double w[] = {0.1894506104550685, 0.1826034150449236,
                            0.1691565193950025, 0.1495959888165767,
                            0.1246289712555339, 0.0951585116824928,
                            0.0622535239386479, 0.0271524594117541};
        std::vector<QuadNode> v;
        for (int i = 7; i >= 0; --i) v.push_back({0.5 * (1.0 - x[i]), 0.5 * w[i]});
        for (int i = 0; i < 8; ++i) v.push_back({0.5 * (1.0 + x[i]), 0.5 * w[i]});
        return v;
    }();
    switch (n) {
        case 4: return g4;
        case 8: return g8;
        case 16: return g16;
    }
    throw std::invalid_argument("gauss rule size must be 4, 8 or 16");
}

// Nodes and weights for int_a^b f(x) dx on a list of panel boundaries.
inline std::vector<QuadNode> panel_gauss(const std::vector<double>& bounds, int n = 8) {
    const auto& unit = gl_unit(n);
    std::vector<QuadNode> out;
    out.reserve((bounds.size() - 1) * unit.size());
    for (std::size_t k = 0; k + 1 < bounds.size(); ++k) {
        double a = bounds[k], h = bounds[k + 1] - bounds[k];
        for (const auto& q : unit) out.push_back({a + h * q.x, h * q.w});
    }
    return out;
}

// Generalized binomial coefficient C(sigma, i).
inline double binom(double sigma, int i) {
    double c = 1.0;
    for (int j = 0; j < i; ++j) c *= (sigma - j) / (j + 1);
    return c;
}

namespace detail {

// J(k, m) = int_0^c v^k (1+v)^{sigma+m} dv, via integration by parts:
//   J(k, m) = (c^k (1+c)^{sigma+m+1} - k J(k-1, m+1)) / (sigma+m+1).
inline double power_J_recur(int k, int m, double sigma, double c) {
    if (k == 0)
        return std::expm1((sigma + m + 1) * std::log1p(c)) / (sigma + m + 1);
    return (std::pow(c, k) * std::pow(1.0 + c, sigma + m + 1)
            - k * power_J_recur(k - 1, m + 1, sigma, c)) / (sigma + m + 1);
}

inline double power_J_series(int k, double sigma, double c) {
    double sum = 0.0, ci = std::pow(c, k + 1);
    for (int i = 0; i < 200; ++i) {
        double term = binom(sigma, i) * ci / (k + i + 1);
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum) && i > 3) break;
        ci *= c;
    }
    return sum;
}

} // namespace detail

// Moments m_k = int_a^{a+h} s^sigma ((s-a)/h)^k ds, k = 0..3, for sigma > -1.
inline std::array<double, 4> power_moments(double sigma, double a, double h) {
    std::array<double, 4> m{};
    if (a <= 0.0) {
        double hp = std::pow(h, sigma + 1.0);
        for (int k = 0; k < 4; ++k) m[k] = hp / (sigma + k + 1);
        return m;
    }
    double c = h / a;
    double ap = std::pow(a, sigma + 1.0);
    for (int k = 0; k < 4; ++k) {
        double J = (c < 0.35) ? detail::power_J_series(k, sigma, c)
                              : detail::power_J_recur(k, 0, sigma, c);
        m[k] = ap * std::pow(c, -k) * J;
    }
    return m;
}

// Weights w_j for int_a^{a+h} s^sigma f(s) ds ~ sum_j w_j f(a + h j/3),
// exact whenever f is a cubic.  Rows are the monomial expansions of the
// Lagrange basis on {0, 1/3, 2/3, 1}.
inline std::array<double, 4> power_panel_weights(double sigma, double a, double h) {
    static const double L[4][4] = {
        {1.0, -11.0 / 2.0, 9.0, -9.0 / 2.0},
        {0.0, 9.0, -45.0 / 2.0, 27.0 / 2.0},
        {0.0, -9.0 / 2.0, 18.0, -27.0 / 2.0},
        {0.0, 1.0, -9.0 / 2.0, 9.0 / 2.0},
    };
    auto m = power_moments(sigma, a, h);
    std::array<double, 4> w{};
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) w[j] += L[j][k] * m[k];
    return w;
}

// Maximize a scalar function on [a, b]; returns {argmax, max}.
template <class F>
std::pair<double, double> golden_section_max(F f, double a, double b,
                                             double tol = 1e-10) {
    const double gr = 0.6180339887498949;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol * (1.0 + std::abs(a) + std::abs(b))) {
        if (f1 < f2) {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + gr * (b - a); f2 = f(x2);
        } else {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - gr * (b - a); f1 = f(x1);
        }
    }
    double xm = 0.5 * (a + b), fm = f(xm);
    if (f1 > fm) { xm = x1; fm = f1; }
    if (f2 > fm) { xm = x2; fm = f2; }
    return {xm, fm};
}

} // namespace bpde
