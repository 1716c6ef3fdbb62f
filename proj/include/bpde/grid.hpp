#pragma once

// Discretization of a ray p = s e^{i theta} in the dual (Borel) plane and of
// the time interval [0, T].  Ray nodes are graded toward the origin,
//
//     s_i = p_max (i/n)^g ,   i = 0..n ,
//
// because every function we sample behaves like a power s^sigma near s = 0 and
// all the fine structure lives there.  The inversion integrals that produce
// the samples decay like e^{-nu s}, so p_max is chosen as a multiple of 1/nu
// by the callers; the grid itself is agnostic.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace bpde {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

struct RayGrid {
    double theta = 0.0;        // ray angle, |theta| < pi/6
    double p_max = 0.0;
    double grading = 2.0;
    std::vector<double> s;     // |p| at each node, s[0] = 0

    std::size_t size() const { return s.size(); }
    cplx p(std::size_t i) const { return s[i] * std::polar(1.0, theta); }
};

inline RayGrid make_grid(double theta, double p_max, std::size_t n,
                         double grading_exponent = 2.0) {
    if (std::abs(theta) >= pi / 6.0)
        throw std::invalid_argument("ray angle must satisfy |theta| < pi/6");
    if (n < 16)
        throw std::invalid_argument("ray grid needs at least 16 intervals");
    if (p_max <= 0.0)
        throw std::invalid_argument("p_max must be positive");
    RayGrid g;
    g.theta = theta;
    g.p_max = p_max;
    g.grading = grading_exponent;
    g.s.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        g.s[i] = p_max * std::pow(double(i) / double(n), grading_exponent);
    g.s[0] = 0.0;
    g.s[n] = p_max;
    return g;
}

struct TimeGrid {
    double T = 0.0;
    std::vector<double> t;     // uniform, t[0] = 0, t.back() = T

    std::size_t size() const { return t.size(); }
    double dt() const { return t.size() > 1 ? t[1] - t[0] : 0.0; }
};

inline TimeGrid make_time_grid(double T, std::size_t m_steps) {
    if (T < 0.0) throw std::invalid_argument("T must be nonnegative");
    if (m_steps == 0) throw std::invalid_argument("need at least one time step");
    TimeGrid tg;
    tg.T = T;
    tg.t.resize(m_steps + 1);
    for (std::size_t m = 0; m <= m_steps; ++m)
        tg.t[m] = T * double(m) / double(m_steps);
    return tg;
}

// Index of the grid time closest to a requested snapshot time.
inline std::size_t nearest_time_index(const TimeGrid& tg, double t_want) {
    std::size_t best = 0;
    double err = std::abs(tg.t[0] - t_want);
    for (std::size_t m = 1; m < tg.t.size(); ++m) {
        double e = std::abs(tg.t[m] - t_want);
        if (e < err) { err = e; best = m; }
    }
    return best;
}

} // namespace bpde
