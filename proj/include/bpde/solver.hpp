#pragma once

// Picard iteration for the dual-plane integral equation
//
//   F(p, t) = F0(p, t)
//           + int_0^t e^{-p^3 (t-tau)} sum_j (-1)^j (p^j F * G_j)(p, tau) dtau ,
//   G_j     = sum_{k=0}^{K} B_{j,k} * F^{*k} ,
//   F0      = int_0^t e^{-p^3 (t-tau)} R(p, tau) dtau ,
//
// which is the transform of  f_t - f_yyy = sum_j b_j(y,t;f) d_y^j f + r.
// The (-1)^j is the transform of d_y^j acting through e^{-p y}.
//
// The tau integral is evaluated by an exponential integrator that treats the
// integrand's stiff factor exactly: with A(tau) piecewise linear on the time
// grid and z = p^3 dt,
//
//   int_{t_{m-1}}^{t_m} e^{-p^3(t_m - tau)} A(tau) dtau
//       = A_m dt E1(z) - A'_m dt^2 E2(z),
//   E1(z) = (1 - e^{-z})/z,    E2(z) = (1 - e^{-z}(1+z))/z^2,
//
// accumulated by I_m = e^{-z} I_{m-1} + P_m, stable since Re p^3 >= 0 on
// rays with |theta| < pi/6.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "borel_function.hpp"
#include "coefficients.hpp"
#include "convolution.hpp"
#include "norm.hpp"

namespace bpde {

namespace detail {

inline cplx expE1(cplx z) {
    if (std::abs(z) < 1e-4)
        return 1.0 - z / 2.0 + z * z / 6.0 - z * z * z / 24.0;
    return (1.0 - std::exp(-z)) / z;
}

inline cplx expE2(cplx z) {
    if (std::abs(z) < 1e-4)
        return 0.5 - z / 3.0 + z * z / 8.0 - z * z * z / 30.0;
    return (1.0 - std::exp(-z) * (1.0 + z)) / (z * z);
}

} // namespace detail

struct ProblemSpec {
    int example_id = 1;
    double gamma = 0.5;        // problem 1 profile exponent
    double delta = 1.0;        // problem 3 profile exponent
    int K = 3;                 // problem 3 series truncation
    double T = 0.05;
    double theta = 0.0;
    double nu = 8.0;
    double p_max = 0.0;        // 0: use 40/nu
    std::size_t nodes = 256;
    std::size_t time_steps = 16;
    double picard_tol = 1e-9;
    std::size_t max_iter = 40;
    std::size_t conv_panels = 36;
};

struct PreparedProblem {
    ProblemSpec spec;
    CoefficientSet coeffs;
    RayGrid grid;
    TimeGrid times;
    std::vector<std::vector<Materialized>> B;   // [j][k]
    Materialized R;
};

inline PreparedProblem prepare(const ProblemSpec& ps) {
    PreparedProblem P;
    P.spec = ps;
    switch (ps.example_id) {
        case 1: P.coeffs = ex1_coefficients(ps.gamma); break;
        case 2: P.coeffs = ex2_coefficients(); break;
        case 3: P.coeffs = ex3_coefficients(ps.delta, ps.K); break;
        default: throw std::invalid_argument("example_id must be 1, 2 or 3");
    }
    double pmax = ps.p_max > 0.0 ? ps.p_max : 40.0 / ps.nu;
    P.grid = make_grid(ps.theta, pmax, ps.nodes);
    P.times = make_time_grid(ps.T, ps.time_steps);
    P.B.assign(4, {});
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k <= P.coeffs.K; ++k)
            P.B[j].push_back(eval_coefficient(P.coeffs, j, k, P.grid, P.times));
    P.R = eval_forcing(P.coeffs, P.grid, P.times);
    return P;
}

// int_0^{t_m} e^{-p^3 (t_m - tau)} W(p, tau) dtau on every time row.
inline BorelFunction tau_integrate(const BorelFunction& W, const TimeGrid& tg) {
    if (W.rows() != tg.size())
        throw std::invalid_argument("tau_integrate: need one row per time node");
    BorelFunction R = zero_like(W.grid, W.rows(), W.sigma);
    const double dt = tg.dt();
    const cplx e3th = std::polar(1.0, 3.0 * W.grid.theta);
    for (std::size_t i = 0; i < W.nodes(); ++i) {
        double s = W.grid.s[i];
        cplx z = s * s * s * e3th * dt;
        cplx ez = std::exp(-z);
        cplx e1 = detail::expE1(z), e2 = detail::expE2(z);
        cplx I = 0.0;
        for (std::size_t m = 1; m < W.rows(); ++m) {
            cplx Am = W.factor[m][i], Am1 = W.factor[m - 1][i];
            cplx slope = (Am - Am1) / dt;
            I = ez * I + Am * dt * e1 - slope * dt * dt * e2;
            R.factor[m][i] = I;
        }
    }
    return R;
}

inline BorelFunction forced_response(const Materialized& forcing,
                                     const RayGrid& grid, const TimeGrid& tg) {
    const auto& R = forcing.B;
    if (std::abs(forcing.dirac_weight) > 1e-12)
        throw std::logic_error("forcing with a Dirac mass is not supported");
    if (R.rows() == 1) {
        // Time independent forcing: closed form R(p) t E1(p^3 t).
        const cplx e3th = std::polar(1.0, 3.0 * grid.theta);
        BorelFunction F0 = zero_like(grid, tg.size(), R.sigma);
        for (std::size_t m = 0; m < tg.size(); ++m) {
            double t = tg.t[m];
            for (std::size_t i = 0; i < grid.size(); ++i) {
                double s = grid.s[i];
                cplx z = s * s * s * e3th * t;
                F0.factor[m][i] = R.factor[0][i] * t * detail::expE1(z);
            }
        }
        return F0;
    }
    return tau_integrate(R, tg);
}

inline BorelFunction build_F0(const PreparedProblem& P) {
    return forced_response(P.R, P.grid, P.times);
}

// One application of the fixed point map.
inline BorelFunction apply_N(const PreparedProblem& P, const BorelFunction& F,
                             const BorelFunction& F0) {
    const int K = P.coeffs.K;
    const std::size_t mp = P.spec.conv_panels;

    // Convolution powers S_k = F^{*k}.
    std::vector<BorelFunction> S;
    S.reserve(K + 1);
    S.push_back(F);                       // S[0] unused placeholder, S[1] = F
    S.push_back(F);
    for (int k = 2; k <= K; ++k) S.push_back(convolve(S.back(), F, mp));

    BorelFunction W;
    bool have_W = false;
    for (int j = 0; j < 4; ++j) {
        BorelFunction Gj;
        bool have_G = false;
        for (int k = 0; k <= K; ++k) {
            const Materialized& Bjk = P.B[j][k];
            bool zero_fn = true;
            for (const auto& row : Bjk.B.factor)
                for (const auto& v : row)
                    if (v != cplx(0.0)) { zero_fn = false; break; }
            BorelFunction piece;
            bool have_piece = false;
            if (!zero_fn) {
                piece = (k == 0) ? Bjk.B : convolve(Bjk.B, S[k], mp);
                have_piece = true;
            }
            if (std::abs(Bjk.dirac_weight) > 1e-12) {
                if (k == 0)
                    throw std::logic_error("net Dirac mass in an absolute term");
                BorelFunction dk = S[k];
                scale_inplace(dk, Bjk.dirac_weight);
                piece = have_piece ? add(piece, dk) : dk;
                have_piece = true;
            }
            if (!have_piece) continue;
            Gj = have_G ? add(Gj, piece) : piece;
            have_G = true;
        }
        if (!have_G) continue;
        BorelFunction termj = convolve(monomial_times(F, j), Gj, mp);
        double sign = (j % 2 == 0) ? 1.0 : -1.0;
        W = have_W ? add(W, termj, 1.0, sign) : (scale_inplace(termj, sign), termj);
        have_W = true;
    }
    if (!have_W) return F0;
    BorelFunction out = tau_integrate(W, P.times);
    return add(F0, out);
}

struct SolveResult {
    ProblemSpec spec;
    RayGrid grid;
    TimeGrid times;
    BorelFunction F;
    BorelFunction F0;
    std::size_t iterations = 0;
    bool converged = false;
    bool diverged = false;
    double final_update = 0.0;               // ||F_n - F_{n-1}||_nu
    double final_relative_update = 0.0;
    std::vector<double> nu_norm_history;     // ||F_n||_nu per iterate
    std::vector<double> contraction_ratios;  // successive update ratios
};

inline SolveResult picard_solve(const ProblemSpec& ps) {
    PreparedProblem P = prepare(ps);
    SolveResult res;
    res.spec = ps;
    res.grid = P.grid;
    res.times = P.times;
    res.F0 = build_F0(P);
    res.F = res.F0;
    res.nu_norm_history.push_back(nu_norm(res.F, ps.nu).value);

    double prev_update = 0.0;
    int rising = 0;
    for (std::size_t it = 1; it <= ps.max_iter; ++it) {
        BorelFunction Fn = apply_N(P, res.F, res.F0);
        double upd = nu_norm(add(Fn, res.F, 1.0, -1.0), ps.nu).value;
        double base = nu_norm(Fn, ps.nu).value;
        res.F = std::move(Fn);
        res.iterations = it;
        res.nu_norm_history.push_back(base);
        if (it >= 2 && prev_update > 0.0)
            res.contraction_ratios.push_back(upd / prev_update);
        res.final_update = upd;
        res.final_relative_update = upd / (base > 0.0 ? base : 1.0);
        if (res.final_relative_update < ps.picard_tol) {
            res.converged = true;
            break;
        }
        if (it >= 2 && prev_update > 0.0 && upd >= prev_update) {
            if (++rising >= 3) {
                res.diverged = true;
                break;
            }
        } else {
            rising = 0;
        }
        prev_update = upd;
    }
    return res;
}

// ------------------------------------------------------- physical recovery

struct PhysicalSample {
    double t = 0.0;
    cplx y{};
    cplx f{};
    double tail_bound = 0.0;
    cplx x{};
    cplx H{};
};

inline cplx physical_x(int example_id, cplx y, double t, double gamma,
                       double delta) {
    switch (example_id) {
        case 1: return std::pow((1.0 - gamma) * y, 1.0 / (1.0 - gamma));
        case 2: return t + std::pow(1.5 * y, 2.0 / 3.0);
        case 3: return std::pow((1.0 + delta) * y, 1.0 / (1.0 + delta));
    }
    throw std::invalid_argument("example_id");
}

inline cplx physical_H(int example_id, cplx x, cplx y, cplx f, double gamma,
                       double delta) {
    switch (example_id) {
        case 1: return std::pow(x, gamma) * (1.0 + f / y);
        case 2: return std::pow(x, -0.5) + std::pow(x, -1.5) * f / y;
        case 3: return std::pow(x, -9.0 * delta) * (1.0 + f / y);
    }
    throw std::invalid_argument("example_id");
}

inline PhysicalSample recover_physical(const SolveResult& R, cplx y,
                                       std::size_t t_index) {
    PhysicalSample ps;
    ps.t = R.times.t[t_index];
    ps.y = y;
    auto lv = laplace_back(R.F, y, t_index);
    ps.f = lv.value;
    ps.tail_bound = lv.tail_bound;
    ps.x = physical_x(R.spec.example_id, y, ps.t, R.spec.gamma, R.spec.delta);
    ps.H = physical_H(R.spec.example_id, ps.x, y, ps.f, R.spec.gamma, R.spec.delta);
    return ps;
}

} // namespace bpde
