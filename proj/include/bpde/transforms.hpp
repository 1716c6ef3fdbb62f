#pragma once

// Transforms between the physical half plane variable y and the dual ray.
//
// Forward (inversion) direction, for data analytic right of a contour C,
//
//     B[G](p) = (1/2 pi i) int_C e^{p y} G(y) dy ,
//
// with C two straight legs meeting at an apex on the positive axis and
// opening backwards at angles +-(pi/2 + phi_c); on the leg parametrized by
// y = apex + r e^{i(pi/2+phi_c)} the integrand decays like
// e^{-|p| r sin(phi_c + theta)}, so the rule needs phi_c > |theta|.
//
// Backward direction, the truncated Laplace integral along the ray,
//
//     f(y) = int_0^{p_max} e^{-p y} F(p) dp + tail ,
//
// with an explicit tail bound from |F| <= |F(p_max)| e^{nu_min (s - s_max)}.
//
// Power law pairs c y^{-alpha} <-> c p^{alpha-1}/Gamma(alpha) are exact.
//
// The scaled-contour transform used for the second worked problem evaluates
// coefficients of the form  x^{-beta} y^{-delta}  with  x = t + (3y/2)^{2/3}:
// rescaling the contour variable gives
//
//     G(p, t) = c p^{sigma} (1/2 pi i) int_C e^{s'} s'^{-(sigma+1)} h(w) ds',
//     w = t p^{2/3} s'^{-2/3},  h(w) = (3/2)^{-2 beta/3} (1 + (2/3)^{2/3} w)^{-beta},
//     sigma = 2 beta/3 + delta - 1 .
//
// The piece h(0) reduces to a pure power law (a Dirac mass at p = 0 in the
// marginal case sigma = -1); the remainder h(w) - h(0) vanishes like p^{2/3}
// at the origin and is stored with exponent sigma + 2/3.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include "borel_function.hpp"
#include "quadrature.hpp"

namespace bpde {

// ---------------------------------------------------------------- power law

inline BorelFunction ilt_power_law(double alpha, cplx c, const RayGrid& grid) {
    if (alpha <= 0.0) throw std::invalid_argument("ilt_power_law: alpha > 0 required");
    double sig = alpha - 1.0;
    cplx f = c * std::polar(1.0, sig * grid.theta) / std::tgamma(alpha);
    return from_callable(grid, 1, sig, [f](double, std::size_t) { return f; });
}

// ------------------------------------------------------------ contour rule

struct ContourSpec {
    double apex = 1.0;
    double phi = pi / 4.0;     // half-opening beyond the imaginary direction
    double r_max = 0.0;        // 0: choose per node from the decay rate
    int n_quad = 8;
};

// Values of B[g] at the ray nodes.  The s = 0 node reuses the contour of the
// first positive node; it is exact in the limit of an undecimated contour.
template <class Gfun>
std::vector<cplx> ilt_contour(Gfun&& g, const RayGrid& grid,
                              const ContourSpec& spec) {
    const double th = grid.theta;
    if (spec.phi <= std::abs(th) + 0.02)
        throw std::domain_error("ilt_contour: contour opening phi must exceed |theta|");
    const double psi = pi / 2.0 + spec.phi;
    const cplx dir_up = std::polar(1.0, psi);
    const cplx dir_dn = std::conj(dir_up);
    const double rate_unit = std::sin(spec.phi - std::abs(th));
    static const double marks[] = {0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 34.0};

    std::vector<cplx> out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double s = grid.s[i] > 0.0 ? grid.s[i] : grid.s[1];
        double scale;
        if (spec.r_max > 0.0)
            scale = spec.r_max / marks[7];
        else
            scale = 1.0 / (s * rate_unit);
        std::vector<double> bounds(std::begin(marks), std::end(marks));
        for (auto& b : bounds) b *= scale;
        // g varies on its own unit scale near the apex; when the decay
        // length 1/(s sin(phi-|theta|)) is long the scaled panels skip
        // right over that region, so pin extra panel edges there
        const double r_end = bounds.back();
        for (double b = 0.25; b < r_end * 0.999; b *= 2.0) bounds.push_back(b);
        std::sort(bounds.begin(), bounds.end());
        bounds.erase(std::unique(bounds.begin(), bounds.end(),
                                 [r_end](double a, double b) {
                                     return b - a < 1e-12 * r_end;
                                 }),
                     bounds.end());
        auto quad = panel_gauss(bounds, spec.n_quad);

        const cplx p = grid.p(i);
        cplx acc = 0.0;
        for (const auto& q : quad) {
            cplx yu = spec.apex + q.x * dir_up;
            cplx yd = spec.apex + q.x * dir_dn;
            acc += q.w * (std::exp(p * (yu - spec.apex)) * g(yu) * dir_up -
                          std::exp(p * (yd - spec.apex)) * g(yd) * dir_dn);
        }
        out[i] = std::exp(p * spec.apex) / (cplx(0.0, 2.0 * pi)) * acc;
    }
    return out;
}

// ------------------------------------------------------------ laplace back

struct LaplaceValue {
    cplx value{};
    double tail_bound = 0.0;
};

inline LaplaceValue laplace_back(const BorelFunction& F, cplx y,
                                 std::size_t t_index, double nu_min = 0.0,
                                 std::size_t m_panels = 0) {
    const std::size_t row = (F.rows() == 1 ? 0 : t_index);
    if (row >= F.rows()) throw std::out_of_range("laplace_back: time row");
    const double smax = F.grid.p_max;
    const cplx eith = std::polar(1.0, F.grid.theta);
    if (m_panels == 0) {
        double need = 1.2 * std::abs(y) * smax;
        m_panels = std::size_t(std::max(48.0, std::ceil(need)));
    }
    LaplaceValue out;
    for (std::size_t i = 0; i < m_panels; ++i) {
        double a = smax * std::pow(double(i) / m_panels, 2.0);
        double b = smax * std::pow(double(i + 1) / m_panels, 2.0);
        double h = b - a;
        auto w4 = power_panel_weights(F.sigma, a, h);
        for (int j = 0; j < 4; ++j) {
            double s = a + h * j / 3.0;
            out.value += w4[j] * F.factor_at(s, row) * std::exp(-s * eith * y) * eith;
        }
    }
    // beyond s_max take |F| <= |factor(s_max)| e^{nu_min (s - s_max)} s^sigma;
    // with (1 + u/s_max)^sigma <= e^{sigma u / s_max} the tail integral is
    // governed by the reduced decay rate below
    double decay = (eith * y).real() - nu_min - std::max(F.sigma, 0.0) / smax;
    if (decay > 0.0) {
        double tailmag = std::abs(F.factor_at(smax, row)) * std::pow(smax, F.sigma);
        out.tail_bound = tailmag * std::exp(-(eith * y).real() * smax) / decay;
    } else {
        out.tail_bound = std::numeric_limits<double>::infinity();
    }
    return out;
}

// ----------------------------------------------- scaled contour (problem 2)

struct ScaledILTSpec {
    double beta = 0.0;
    double delta = 0.0;
    double prefactor = 1.0;
    double apex = 1.0;
    int n_quad = 8;
};

struct ScaledTransform {
    BorelFunction value;       // everything except a possible Dirac mass
    cplx dirac_weight = 0.0;   // weight of delta(p), marginal case only
};

inline ScaledTransform ilt_scaled_ex2(const ScaledILTSpec& spec,
                                      const RayGrid& grid, const TimeGrid& tg) {
    const double beta = spec.beta;
    const double sigma = 2.0 * beta / 3.0 + spec.delta - 1.0;
    const double kappa = std::pow(2.0 / 3.0, 2.0 / 3.0);
    const double h0 = std::pow(1.5, -2.0 * beta / 3.0);
    const double th = grid.theta;
    const bool marginal = std::abs(sigma + 1.0) < 1e-12;

    // Contour nodes and composite weights (both legs, signs included).
    const double phic = pi / 6.0;
    const double psi = pi / 2.0 + phic;
    const cplx dir_up = std::polar(1.0, psi);
    const cplx dir_dn = std::conj(dir_up);
    static const std::vector<double> marks =
        {0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 36.0, 72.0};
    auto quad = panel_gauss(marks, spec.n_quad);
    std::vector<cplx> sp, wc;
    sp.reserve(2 * quad.size());
    wc.reserve(2 * quad.size());
    for (const auto& q : quad) {
        cplx su = spec.apex + q.x * dir_up;
        cplx sd = spec.apex + q.x * dir_dn;
        cplx common = cplx(0.0, -1.0) / (2.0 * pi) * q.w;
        sp.push_back(su);
        wc.push_back(common * std::exp(su) * std::pow(su, -(sigma + 1.0)) * dir_up);
        sp.push_back(sd);
        wc.push_back(-common * std::exp(sd) * std::pow(sd, -(sigma + 1.0)) * dir_dn);
    }

    // h(w) - h(0), stable for small arguments.
    auto hdiff = [&](cplx w) -> cplx {
        cplx x = kappa * w;
        if (std::abs(x) < 1e-4) {
            cplx acc = -beta * x;
            acc += beta * (beta + 1.0) / 2.0 * x * x;
            acc -= beta * (beta + 1.0) * (beta + 2.0) / 6.0 * x * x * x;
            acc += beta * (beta + 1.0) * (beta + 2.0) * (beta + 3.0) / 24.0 * x * x * x * x;
            return h0 * acc;
        }
        return h0 * (std::pow(1.0 + x, -beta) - 1.0);
    };

    const double hp0 = -beta * kappa * h0;           // dh/dw at 0
    const cplx phase_sig = std::polar(1.0, sigma * th);
    const cplx phase_diff = std::polar(1.0, (sigma + 2.0 / 3.0) * th);
    const cplx e2th3 = std::polar(1.0, 2.0 * th / 3.0);

    BorelFunction diff = zero_like(grid, tg.size(), sigma + 2.0 / 3.0);
    for (std::size_t m = 0; m < tg.size(); ++m) {
        double t = tg.t[m];
        for (std::size_t i = 0; i < grid.size(); ++i) {
            double s = grid.s[i];
            if (s == 0.0 || t == 0.0) {
                diff.factor[m][i] = spec.prefactor * phase_diff * t * hp0 /
                                    std::tgamma(sigma + 5.0 / 3.0);
                continue;
            }
            cplx p23 = std::pow(s, 2.0 / 3.0) * e2th3;
            cplx acc = 0.0;
            for (std::size_t k = 0; k < sp.size(); ++k)
                acc += wc[k] * hdiff(t * p23 * std::pow(sp[k], -2.0 / 3.0));
            diff.factor[m][i] =
                spec.prefactor * phase_sig * acc / std::pow(s, 2.0 / 3.0);
        }
    }

    ScaledTransform out;
    if (marginal) {
        out.dirac_weight = spec.prefactor * h0;
        out.value = std::move(diff);
    } else {
        BorelFunction mono = from_callable(
            grid, 1, sigma,
            [&](double, std::size_t) {
                return spec.prefactor * h0 * phase_sig / std::tgamma(sigma + 1.0);
            });
        out.value = add(mono, diff);
    }
    return out;
}

} // namespace bpde
