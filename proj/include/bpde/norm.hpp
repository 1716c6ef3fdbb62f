#pragma once

// Weighted sup norm on a ray,
//
//     ||G||_nu = M0 * sup_s (1+s^2) e^{-nu s} |G(s e^{i theta})| ,
//
// where M0 makes the norm submultiplicative under convolution.  M0 is the
// sup over x > 0 of (1+x^2) * k(x) with
//
//     k(x) = int_0^x ds / ((1+s^2)(1+(x-s)^2))
//          = 2 (log(1+x^2) + x arctan x) / (x (x^2+4)) ,
//
// the closed form following from partial fractions.

#include <cmath>
#include <cstddef>
#include <vector>

#include "borel_function.hpp"
#include "quadrature.hpp"

namespace bpde {

// Closed form of the kernel integral k(x) above.
inline double norm_kernel_closed_form(double x) {
    if (x <= 0.0) return 0.0;
    if (x < 1e-4) return x * (1.0 - x * x / 6.0);   // series, avoids 0/0
    return 2.0 * (std::log1p(x * x) + x * std::atan(x)) / (x * (x * x + 4.0));
}

inline double compute_M0() {
    static const double m0 = [] {
        auto f = [](double x) { return (1.0 + x * x) * norm_kernel_closed_form(x); };
        double best = 0.0;
        for (double x = 0.05; x < 40.0; x *= 1.08) best = std::max(best, f(x));
        double lo = 0.05, hi = 40.0;
        auto r = golden_section_max(f, lo, hi, 1e-13);
        return std::max(best, r.second);
    }();
    return m0;
}

struct NormReport {
    double nu = 0.0;
    double value = 0.0;
    std::size_t sup_node = 0;
    std::size_t sup_row = 0;
};

// Norm over all stored time rows (the solver works in the sup over [0, T]).
inline NormReport nu_norm(const BorelFunction& F, double nu) {
    NormReport rep;
    rep.nu = nu;
    const double m0 = compute_M0();
    for (std::size_t r = 0; r < F.rows(); ++r)
        for (std::size_t i = 0; i < F.nodes(); ++i) {
            double s = F.grid.s[i];
            double mag = (i == 0 && F.sigma > 0.0)
                             ? 0.0
                             : std::abs(F.factor[r][i]) *
                                   (i == 0 ? 1.0 : std::pow(s, F.sigma));
            double v = m0 * (1.0 + s * s) * std::exp(-nu * s) * mag;
            if (v > rep.value) {
                rep.value = v;
                rep.sup_node = i;
                rep.sup_row = r;
            }
        }
    return rep;
}

} // namespace bpde
