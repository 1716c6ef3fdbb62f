#pragma once

// Functions on a dual-plane ray, stored as
//
//     G(s e^{i theta}) = g(s) * s^sigma ,
//
// with the smooth factor g sampled on the graded ray grid and the origin
// exponent sigma kept symbolically.  Any phase e^{i sigma theta} coming from
// p^sigma is folded into g, so s^sigma above is a real power.  Keeping sigma
// out of the samples matters twice over: near s = 0 it preserves relative
// accuracy of the smooth part, and inside convolutions it lets the power law
// be integrated exactly.
//
// A function carries one row of samples per time node; coefficient functions
// that do not depend on time carry a single row which broadcasts.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "grid.hpp"

namespace bpde {

struct BorelFunction {
    RayGrid grid;
    double sigma = 0.0;
    std::vector<std::vector<cplx>> factor;   // [time_row][node]

    std::size_t rows() const { return factor.size(); }
    std::size_t nodes() const { return grid.size(); }

    // Smooth factor at arbitrary radius, cubic interpolation on the ray grid.
    cplx factor_at(double s, std::size_t row) const {
        const auto& sv = grid.s;
        const auto& f = factor[row];
        const std::size_t n = sv.size();
        if (s <= 0.0) return f[0];
        if (s > sv.back() * (1.0 + 1e-9))
            throw std::domain_error("factor_at: radius beyond grid");
        if (s >= sv.back()) return f[n - 1];
        std::size_t hi = std::upper_bound(sv.begin(), sv.end(), s) - sv.begin();
        std::size_t j = (hi >= 2 ? hi - 2 : 0);
        j = std::min(j, n - 4);
        cplx acc = 0.0;
        for (std::size_t a = j; a < j + 4; ++a) {
            double ell = 1.0;
            for (std::size_t b = j; b < j + 4; ++b)
                if (b != a) ell *= (s - sv[b]) / (sv[a] - sv[b]);
            acc += ell * f[a];
        }
        return acc;
    }

    cplx value_node(std::size_t row, std::size_t i) const {
        double s = grid.s[i];
        if (i == 0) {
            if (sigma > 0.0) return 0.0;
            if (sigma == 0.0) return factor[row][0];
            throw std::domain_error("value at s = 0 with negative exponent");
        }
        return factor[row][i] * std::pow(s, sigma);
    }
};

inline cplx eval_at(const BorelFunction& F, double s, std::size_t t_index) {
    std::size_t row = (F.rows() == 1 ? 0 : t_index);
    if (row >= F.rows()) throw std::out_of_range("eval_at: time row");
    if (s <= 0.0) {
        if (F.sigma > 0.0) return 0.0;
        if (F.sigma == 0.0) return F.factor[row][0];
        throw std::domain_error("eval_at: s = 0 with negative exponent");
    }
    return F.factor_at(s, row) * std::pow(s, F.sigma);
}

template <class Fn>
BorelFunction from_callable(const RayGrid& grid, std::size_t rows, double sigma,
                            Fn&& factor_fn) {
    BorelFunction F;
    F.grid = grid;
    F.sigma = sigma;
    F.factor.assign(rows, std::vector<cplx>(grid.size()));
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t i = 0; i < grid.size(); ++i)
            F.factor[r][i] = factor_fn(grid.s[i], r);
    return F;
}

inline BorelFunction zero_like(const RayGrid& grid, std::size_t rows,
                               double sigma = 0.0) {
    BorelFunction F;
    F.grid = grid;
    F.sigma = sigma;
    F.factor.assign(rows, std::vector<cplx>(grid.size(), cplx(0.0)));
    return F;
}

inline void scale_inplace(BorelFunction& F, cplx c) {
    for (auto& row : F.factor)
        for (auto& v : row) v *= c;
}

// p^j G: bump the exponent and fold the extra ray phase into the factor.
inline BorelFunction monomial_times(const BorelFunction& G, int j) {
    if (j < 0) throw std::invalid_argument("monomial_times: negative power");
    BorelFunction F = G;
    F.sigma += j;
    cplx ph = std::polar(1.0, j * G.grid.theta);
    if (j > 0) scale_inplace(F, ph);
    return F;
}

// Sum with exponent reconciliation: the result keeps the smaller sigma and
// the other summand's factor picks up the exponent gap as s^{delta}.
inline BorelFunction add(const BorelFunction& A, const BorelFunction& B,
                         cplx cA = 1.0, cplx cB = 1.0) {
    if (A.grid.size() != B.grid.size())
        throw std::invalid_argument("add: grid mismatch");
    std::size_t rows = std::max(A.rows(), B.rows());
    if ((A.rows() != rows && A.rows() != 1) || (B.rows() != rows && B.rows() != 1))
        throw std::invalid_argument("add: incompatible row counts");
    double sig = std::min(A.sigma, B.sigma);
    double dA = A.sigma - sig, dB = B.sigma - sig;
    BorelFunction R = zero_like(A.grid, rows, sig);
    for (std::size_t r = 0; r < rows; ++r) {
        const auto& fa = A.factor[A.rows() == 1 ? 0 : r];
        const auto& fb = B.factor[B.rows() == 1 ? 0 : r];
        for (std::size_t i = 0; i < R.grid.size(); ++i) {
            double s = R.grid.s[i];
            cplx va = fa[i], vb = fb[i];
            if (dA > 1e-12) va *= (i == 0 ? 0.0 : std::pow(s, dA));
            if (dB > 1e-12) vb *= (i == 0 ? 0.0 : std::pow(s, dB));
            R.factor[r][i] = cA * va + cB * vb;
        }
    }
    return R;
}

inline void add_inplace(BorelFunction& A, const BorelFunction& B, cplx cB = 1.0) {
    A = add(A, B, 1.0, cB);
}

// Largest pointwise |difference| over shared rows and nodes, in values
// (not factors), used for fixed point stopping tests.
inline double max_value_diff(const BorelFunction& A, const BorelFunction& B) {
    if (A.rows() != B.rows() || A.nodes() != B.nodes())
        throw std::invalid_argument("max_value_diff: shape mismatch");
    double m = 0.0;
    double sig = std::min(A.sigma, B.sigma);
    for (std::size_t r = 0; r < A.rows(); ++r)
        for (std::size_t i = 0; i < A.nodes(); ++i) {
            double s = A.grid.s[i];
            cplx va = A.factor[r][i], vb = B.factor[r][i];
            double da = A.sigma - sig, db = B.sigma - sig;
            if (i == 0) {
                va = (da > 1e-12 ? cplx(0.0) : va);
                vb = (db > 1e-12 ? cplx(0.0) : vb);
            } else {
                if (da > 1e-12) va *= std::pow(s, da);
                if (db > 1e-12) vb *= std::pow(s, db);
            }
            double w = (i == 0 && sig != 0.0) ? 0.0 : 1.0;
            double scale = (i == 0 ? w : std::pow(s, sig));
            m = std::max(m, std::abs(va - vb) * std::abs(scale));
        }
    return m;
}

} // namespace bpde
