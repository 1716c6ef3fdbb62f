#pragma once

// Ray convolution  (F*G)(p) = int_0^p F(u) G(p-u) du.
//
// With u = p xi the integral becomes, in terms of the stored smooth factors
// and exponents (value = f(s) s^sigma on the ray),
//
//   (F*G)(r e^{i th}) = e^{i th} r^{sF+sG+1} *
//       int_0^1 xi^{sF} (1-xi)^{sG} fF(r xi) fG(r (1-xi)) dxi .
//
// The r power is pulled out exactly, so the result is stored with exponent
// sF+sG+1 and no underflow occurs even after long convolution chains.  The
// unit interval is split at 1/2 and the half with the endpoint singularity
// swapped into [0,1/2], giving two integrals with weights xi^{sF} and
// xi^{sG}.  Each is done on panels graded toward 0 with a cubic rule whose
// weights integrate the power law exactly; the panel weights depend only on
// the exponents, not on r, so they are computed once per convolution.

#include <array>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "borel_function.hpp"
#include "quadrature.hpp"

namespace bpde {

struct InterpStencil {
    std::size_t base = 0;
    std::array<double, 4> c{};
};

inline InterpStencil interp_stencil(const RayGrid& g, double s) {
    const auto& sv = g.s;
    const std::size_t n = sv.size();
    InterpStencil st;
    if (s <= 0.0) { st.c[0] = 1.0; return st; }
    if (s >= sv.back()) { st.base = n - 4; st.c[3] = 1.0; return st; }
    std::size_t hi = std::upper_bound(sv.begin(), sv.end(), s) - sv.begin();
    std::size_t j = (hi >= 2 ? hi - 2 : 0);
    j = std::min(j, n - 4);
    st.base = j;
    for (std::size_t a = 0; a < 4; ++a) {
        double ell = 1.0;
        for (std::size_t b = 0; b < 4; ++b)
            if (b != a) ell *= (s - sv[j + b]) / (sv[j + a] - sv[j + b]);
        st.c[a] = ell;
    }
    return st;
}

inline cplx apply_stencil(const InterpStencil& st, const std::vector<cplx>& f) {
    return st.c[0] * f[st.base] + st.c[1] * f[st.base + 1] +
           st.c[2] * f[st.base + 2] + st.c[3] * f[st.base + 3];
}

struct ConvPlan {
    std::vector<double> xi;   // nodes in [0, 1/2]
    std::vector<double> wA;   // weight xi^{sigA}, smooth part (1-xi)^{sigB}
    std::vector<double> wB;   // weight xi^{sigB}, smooth part (1-xi)^{sigA}
};

inline ConvPlan make_conv_plan(double sigA, double sigB, std::size_t m_panels) {
    ConvPlan P;
    P.xi.reserve(4 * m_panels);
    P.wA.reserve(4 * m_panels);
    P.wB.reserve(4 * m_panels);
    for (std::size_t i = 0; i < m_panels; ++i) {
        double a = 0.5 * std::pow(double(i) / m_panels, 2.0);
        double b = 0.5 * std::pow(double(i + 1) / m_panels, 2.0);
        double h = b - a;
        auto wa = power_panel_weights(sigA, a, h);
        auto wb = power_panel_weights(sigB, a, h);
        for (int j = 0; j < 4; ++j) {
            double x = a + h * j / 3.0;
            P.xi.push_back(x);
            P.wA.push_back(wa[j] * std::pow(1.0 - x, sigB));
            P.wB.push_back(wb[j] * std::pow(1.0 - x, sigA));
        }
    }
    return P;
}

inline void check_same_grid(const BorelFunction& F, const BorelFunction& G) {
    if (F.grid.size() != G.grid.size() || F.grid.theta != G.grid.theta ||
        F.grid.p_max != G.grid.p_max)
        throw std::invalid_argument("convolve: functions live on different grids");
}

inline BorelFunction convolve(const BorelFunction& F, const BorelFunction& G,
                              std::size_t m_panels = 36) {
    check_same_grid(F, G);
    const std::size_t rows = std::max(F.rows(), G.rows());
    if ((F.rows() != rows && F.rows() != 1) || (G.rows() != rows && G.rows() != 1))
        throw std::invalid_argument("convolve: incompatible row counts");
    BorelFunction R = zero_like(F.grid, rows, F.sigma + G.sigma + 1.0);
    ConvPlan plan = make_conv_plan(F.sigma, G.sigma, m_panels);
    const std::size_t nq = plan.xi.size();
    const cplx phase = std::polar(1.0, F.grid.theta);

    std::vector<InterpStencil> lo(nq), hi(nq);
    for (std::size_t i = 0; i < R.nodes(); ++i) {
        const double r = R.grid.s[i];
        for (std::size_t j = 0; j < nq; ++j) {
            lo[j] = interp_stencil(R.grid, r * plan.xi[j]);
            hi[j] = interp_stencil(R.grid, r * (1.0 - plan.xi[j]));
        }
        for (std::size_t rr = 0; rr < rows; ++rr) {
            const auto& fF = F.factor[F.rows() == 1 ? 0 : rr];
            const auto& fG = G.factor[G.rows() == 1 ? 0 : rr];
            cplx acc = 0.0;
            for (std::size_t j = 0; j < nq; ++j) {
                acc += plan.wA[j] * apply_stencil(lo[j], fF) * apply_stencil(hi[j], fG);
                acc += plan.wB[j] * apply_stencil(lo[j], fG) * apply_stencil(hi[j], fF);
            }
            R.factor[rr][i] = phase * acc;
        }
    }
    return R;
}

// k-fold convolution power: F, F*F, ... ; k counts factors, so k = 1 is F.
inline BorelFunction conv_power(const BorelFunction& F, int k,
                                std::size_t m_panels = 36) {
    if (k < 1)
        throw std::invalid_argument("conv_power: k counts factors, needs k >= 1");
    BorelFunction R = F;
    for (int i = 1; i < k; ++i) R = convolve(R, F, m_panels);
    return R;
}

} // namespace bpde
