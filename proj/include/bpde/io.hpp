#pragma once

// Output files.  Every float is printed with %.17g so runs are reproducible
// byte for byte; all tables carry headers and fixed column orders.

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "certificates.hpp"
#include "solver.hpp"

namespace bpde {

inline std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

inline void write_solution_borel_csv(const std::string& path,
                                     const SolveResult& R) {
    auto out = open_out(path);
    out << "t_index,t,node_index,s,re_p,im_p,re_F,im_F\n";
    for (std::size_t m = 0; m < R.F.rows(); ++m)
        for (std::size_t i = 0; i < R.F.nodes(); ++i) {
            cplx p = R.grid.p(i);
            cplx v = R.F.value_node(m, i);
            out << m << ',' << fmt_g(R.times.t[m]) << ',' << i << ','
                << fmt_g(R.grid.s[i]) << ',' << fmt_g(p.real()) << ','
                << fmt_g(p.imag()) << ',' << fmt_g(v.real()) << ','
                << fmt_g(v.imag()) << '\n';
        }
}

inline void write_solution_physical_csv(const std::string& path,
                                        const SolveResult& R,
                                        const std::vector<cplx>& ys,
                                        const std::vector<std::size_t>& t_rows) {
    auto out = open_out(path);
    out << "t,re_y,im_y,re_f,im_f,re_x,im_x,re_H,im_H\n";
    for (std::size_t m : t_rows)
        for (cplx y : ys) {
            PhysicalSample s = recover_physical(R, y, m);
            out << fmt_g(s.t) << ',' << fmt_g(y.real()) << ',' << fmt_g(y.imag())
                << ',' << fmt_g(s.f.real()) << ',' << fmt_g(s.f.imag()) << ','
                << fmt_g(s.x.real()) << ',' << fmt_g(s.x.imag()) << ','
                << fmt_g(s.H.real()) << ',' << fmt_g(s.H.imag()) << '\n';
        }
}

inline void write_iterations_csv(const std::string& path, const SolveResult& R) {
    auto out = open_out(path);
    out << "iteration,nu_norm,contraction_ratio\n";
    for (std::size_t i = 0; i < R.nu_norm_history.size(); ++i) {
        out << i << ',' << fmt_g(R.nu_norm_history[i]) << ',';
        // ratio[r] compares updates (r+2, r+1); aligned to iterate index i.
        if (i >= 2 && i - 2 < R.contraction_ratios.size())
            out << fmt_g(R.contraction_ratios[i - 2]);
        out << '\n';
    }
}

inline void write_certificates_csv(const std::string& path,
                                   const std::vector<Certificate>& certs) {
    auto out = open_out(path);
    out << "T,nu,b,ball_lhs,contraction_lhs,satisfied\n";
    for (const auto& c : certs)
        out << fmt_g(c.T) << ',' << fmt_g(c.nu) << ',' << fmt_g(c.b) << ','
            << fmt_g(c.ball_condition_lhs) << ',' << fmt_g(c.contraction_lhs)
            << ',' << (c.satisfied ? 1 : 0) << '\n';
}

inline nlohmann::json spec_to_json(const ProblemSpec& ps) {
    return nlohmann::json{{"example", ps.example_id}, {"gamma", ps.gamma},
                          {"delta", ps.delta},        {"K", ps.K},
                          {"T", ps.T},                {"theta", ps.theta},
                          {"nu", ps.nu},              {"nodes", ps.nodes},
                          {"time_steps", ps.time_steps},
                          {"tol", ps.picard_tol},     {"max_iter", ps.max_iter}};
}

inline void write_manifest(const std::string& path, const nlohmann::json& j) {
    auto out = open_out(path);
    out << j.dump(2) << '\n';
}

} // namespace bpde
