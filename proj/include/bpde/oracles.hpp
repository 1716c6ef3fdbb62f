#pragma once

// Independent checks used by the test suite:
//
//  * self-similar profiles of H_t = H^3 H_xxx and H_t = H^{1/3} H_xxx,
//    integrated as ODEs inward from a far field two-term expansion.  With
//    H = t^A h(eta), eta = x t^{-B}, the profiles satisfy
//        A h - B eta h' = h^3 h'''        (first problem)
//        A q - B eta q' = q^{1/3} q'''    (third problem)
//    and behave like eta^g (1 + c1 eta^{-mu} + c2 eta^{-2mu} + ...) at
//    infinity, which supplies starting data with error O(eta^{-3mu});
//  * a brute force convolution quadrature built on a different variable
//    substitution than the production rule;
//  * pointwise residuals of the physical equation, with y derivatives taken
//    exactly through the transform and the time derivative by differences.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "borel_function.hpp"
#include "coefficients.hpp"
#include "solver.hpp"
#include "transforms.hpp"

namespace bpde {

// ------------------------------------------------------------- far fields

struct FarField {
    double g = 0.0;    // leading exponent
    double mu = 0.0;   // correction spacing
    double c1 = 0.0;
    double c2 = 0.0;
};

namespace detail {
inline double cubic_P(double x) { return x * (x - 1.0) * (x - 2.0); }
}

inline FarField ex1_far_field(double gamma) {
    FarField ff;
    ff.g = gamma;
    ff.mu = 3.0 * (1.0 - gamma);
    ff.c1 = detail::cubic_P(gamma);
    ff.c2 = ff.c1 * (detail::cubic_P(gamma - ff.mu) + 3.0 * ff.c1) / 2.0;
    return ff;
}

inline FarField ex3_far_field(double delta) {
    FarField ff;
    ff.g = -9.0 * delta;
    ff.mu = 3.0 * (1.0 + delta);
    ff.c1 = detail::cubic_P(-9.0 * delta);
    ff.c2 = ff.c1 * (detail::cubic_P(-9.0 * delta - ff.mu) + ff.c1 / 3.0) / 2.0;
    return ff;
}

inline cplx far_field_value(const FarField& ff, cplx eta, int deriv) {
    cplx acc = 0.0;
    const double coef[3] = {1.0, ff.c1, ff.c2};
    for (int i = 0; i < 3; ++i) {
        double e = ff.g - i * ff.mu;
        double fall = 1.0;
        for (int d = 0; d < deriv; ++d) fall *= (e - d);
        acc += coef[i] * fall * std::pow(eta, e - deriv);
    }
    return acc;
}

// ------------------------------------------------------ profile integration

struct SimilarityProfile {
    double A = 0.0;            // time exponent of H = t^A h(x t^{-B})
    double B = 0.0;
    double angle = 0.0;        // ray angle of the eta arguments
    std::vector<double> eta;   // radial query points, ascending
    std::vector<cplx> h;
};

namespace detail {

// Integrate h''' = (A h - B eta h') / g(h) inward along eta = rho e^{i psi},
// starting from the far field at rho = eta_max.  g is the nonlinear factor.
template <class Gfun>
SimilarityProfile integrate_profile(double A, double B, const FarField& ff,
                                    Gfun&& gfun, double angle,
                                    std::vector<double> eta_query,
                                    double eta_max, double tol) {
    namespace odt = boost::numeric::odeint;
    using state = std::array<double, 6>;

    std::sort(eta_query.begin(), eta_query.end());
    SimilarityProfile prof;
    prof.A = A;
    prof.B = B;
    prof.angle = angle;
    prof.eta = eta_query;
    prof.h.resize(eta_query.size());

    const cplx dir = std::polar(1.0, angle);
    auto rhs = [&](const state& y, state& dy, double rho_now) {
        cplx eta = rho_now * dir;
        cplx h(y[0], y[1]), h1(y[2], y[3]), h2(y[4], y[5]);
        cplx h3 = (A * h - B * eta * h1) / gfun(h);
        cplx d0 = dir * h1, d1 = dir * h2, d2 = dir * h3;
        dy = {d0.real(), d0.imag(), d1.real(), d1.imag(), d2.real(), d2.imag()};
    };

    double rho = eta_max;
    cplx eta0 = rho * dir;
    cplx h0 = far_field_value(ff, eta0, 0);
    cplx h1 = far_field_value(ff, eta0, 1);
    cplx h2 = far_field_value(ff, eta0, 2);
    state y = {h0.real(), h0.imag(), h1.real(), h1.imag(), h2.real(), h2.imag()};

    // relative control only: the decaying profiles sit many orders below 1,
    // where any fixed absolute tolerance would let the stepper skip the
    // whole interval (the tiny eps_abs keeps exact zeros harmless)
    auto stepper = odt::make_controlled(std::numeric_limits<double>::min(), tol,
                                        odt::runge_kutta_dopri5<state>());
    for (std::size_t q = eta_query.size(); q-- > 0;) {
        double target = eta_query[q];
        if (target > eta_max)
            throw std::invalid_argument("profile query beyond the starting point");
        if (target < rho)
            odt::integrate_adaptive(stepper, rhs, y, rho, target, -1e-3);
        rho = target;
        prof.h[q] = cplx(y[0], y[1]);
    }
    return prof;
}

} // namespace detail

inline SimilarityProfile similarity_ode_ex1(double gamma, double angle,
                                            const std::vector<double>& eta_query,
                                            double eta_max = 200.0,
                                            double tol = 1e-12) {
    double B = 1.0 / (3.0 * (1.0 - gamma)), A = gamma * B;
    auto ff = ex1_far_field(gamma);
    return detail::integrate_profile(
        A, B, ff, [](cplx h) { return h * h * h; }, angle, eta_query, eta_max,
        tol);
}

inline SimilarityProfile similarity_ode_ex3(double delta, double angle,
                                            const std::vector<double>& eta_query,
                                            double eta_max = 30.0,
                                            double tol = 1e-10) {
    double B = 1.0 / (3.0 * (1.0 + delta)), A = -9.0 * delta * B;
    auto ff = ex3_far_field(delta);
    return detail::integrate_profile(
        A, B, ff, [](cplx h) { return std::pow(h, 1.0 / 3.0); }, angle,
        eta_query, eta_max, tol);
}

// --------------------------------------------------- brute force convolve

// (F*G) at radius s via u = w^{1/(1+sigma)} substitutions on the two halves;
// deliberately unrelated to the production exact-moment rule.
inline cplx brute_convolution(const BorelFunction& F, const BorelFunction& G,
                              double s, std::size_t row,
                              std::size_t n_oracle = 200) {
    const cplx eith = std::polar(1.0, F.grid.theta);
    auto half = [&](const BorelFunction& P, const BorelFunction& Q) -> cplx {
        // int_0^{s/2} P_val(u) Q_val(s-u) du
        double qexp = 1.0 + P.sigma;
        double wmax = std::pow(0.5 * s, qexp);
        const auto& gl = gl_unit(8);
        cplx acc = 0.0;
        for (std::size_t i = 0; i < n_oracle; ++i) {
            double a = wmax * double(i) / n_oracle;
            double h = wmax / n_oracle;
            for (const auto& node : gl) {
                double w = a + h * node.x;
                double u = std::pow(w, 1.0 / qexp);
                cplx pv = P.factor_at(u, P.rows() == 1 ? 0 : row);
                cplx qv = eval_at(Q, s - u, row);
                acc += h * node.w * pv * qv;
            }
        }
        return acc / qexp;
    };
    return eith * (half(F, G) + half(G, F));
}

// ------------------------------------------------------ physical residuals

// d^j/dy^j of the recovered solution, exact through the transform.
inline cplx laplace_back_deriv(const BorelFunction& F, cplx y,
                               std::size_t t_index, int deriv,
                               std::size_t m_panels = 0) {
    const std::size_t row = (F.rows() == 1 ? 0 : t_index);
    const double smax = F.grid.p_max;
    const cplx eith = std::polar(1.0, F.grid.theta);
    if (m_panels == 0)
        m_panels = std::size_t(std::max(48.0, std::ceil(1.2 * std::abs(y) * smax)));
    cplx acc = 0.0;
    for (std::size_t i = 0; i < m_panels; ++i) {
        double a = smax * std::pow(double(i) / m_panels, 2.0);
        double b = smax * std::pow(double(i + 1) / m_panels, 2.0);
        double h = b - a;
        auto w4 = power_panel_weights(F.sigma, a, h);
        for (int j = 0; j < 4; ++j) {
            double s = a + h * j / 3.0;
            // complex pow(0, 0) is exp(0 * log 0) = NaN, so branch on deriv
            cplx mp = deriv == 0 ? cplx(1.0) : std::pow(-s * eith, double(deriv));
            acc += w4[j] * mp * F.factor_at(s, row) * std::exp(-s * eith * y) * eith;
        }
    }
    return acc;
}

struct ResidualSample {
    cplx y{};
    double t = 0.0;
    double abs_residual = 0.0;
    double rel_residual = 0.0;
};

// Residual of f_t - f_yyy - sum_j b_j(y,t;f) f^(j) - r at an interior time
// node; f_t by centered differences, y derivatives exact.
inline ResidualSample pde_residual(const SolveResult& R, const CoefficientSet& S,
                                   cplx y, std::size_t m) {
    if (m == 0 || m + 1 >= R.times.size())
        throw std::invalid_argument("pde_residual: interior time node required");
    double t = R.times.t[m], dt = R.times.dt();
    cplx fp = laplace_back(R.F, y, m + 1).value;
    cplx fm = laplace_back(R.F, y, m - 1).value;
    cplx ft = (fp - fm) / (2.0 * dt);

    cplx f = laplace_back(R.F, y, m).value;
    std::array<cplx, 4> fj;
    for (int j = 0; j < 4; ++j) fj[j] = laplace_back_deriv(R.F, y, m, j);

    cplx rhs = closed_form_terms(S.r_terms, y, t);
    for (int j = 0; j < 4; ++j) {
        cplx bj = 0.0, fk = 1.0;
        for (int k = 0; k <= S.K; ++k) {
            bj += closed_form_terms(S.entry(j, k), y, t) * fk;
            fk *= f;
        }
        rhs += bj * fj[j];
    }
    cplx resid = ft - fj[3] - rhs;
    double scale = std::max({std::abs(ft), std::abs(fj[3]), std::abs(rhs), 1e-300});
    ResidualSample out;
    out.y = y;
    out.t = t;
    out.abs_residual = std::abs(resid);
    out.rel_residual = std::abs(resid) / scale;
    return out;
}

// Least squares slope of log|v| against log s.
inline double log_slope(const std::vector<double>& s,
                        const std::vector<double>& v) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] <= 0.0 || v[i] <= 0.0) continue;
        double x = std::log(s[i]), y = std::log(v[i]);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++n;
    }
    if (n < 2) throw std::invalid_argument("log_slope: need two positive points");
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace bpde
