// Command line driver for the Borel-plane solver.
//
// Subcommands:
//   solve      run the Picard iteration, write Borel and physical samples
//   certify    sweep (T, nu) and evaluate existence certificates
//   validate   compare a solve against the similarity-solution oracle
//   norms      report norm bounds and certificate quantities
//
// Exit codes: 0 success, 1 invalid configuration, 2 numerical failure,
// 3 validation failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <bpde/bpde.hpp>
#include <bpde/oracles.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliConfig {
    int example = 1;
    double gamma = 0.5;
    double delta = 1.0;
    double T = 0.05;
    double theta = 0.0;
    double phi = 0.0;
    double nu = 8.0;
    double ball_factor = 2.0;
    int nodes = 256;
    int time_steps = 16;
    int K = 3;
    double tol = 1e-9;
    int max_iter = 40;
    double p_max = 0.0;          // 0 selects the default scale
    double validate_tol = 2e-3;
    double residual_tol = 1e-3;
    std::string out = "out";
    std::string format = "csv";
    unsigned long seed = 12345;
    std::string sweep_T;
    std::string sweep_nu;
    std::string config_path;
};

// Expands "--config FILE" into "--key value" tokens placed directly after the
// subcommand, so explicit flags later on the line override the file (options
// use a take-last policy). Returns an error message or empty.
std::string expand_config_file(std::vector<std::string>& args) {
    std::size_t ci = args.size();
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            ci = i;
            path = args[i + 1];
            args.erase(args.begin() + i, args.begin() + i + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            ci = i;
            path = args[i].substr(9);
            args.erase(args.begin() + i);
            break;
        }
    }
    if (ci == args.size()) return "";
    std::ifstream in(path);
    if (!in) return "cannot read configuration file '" + path + "'";
    std::vector<std::string> toks;
    std::string line;
    while (std::getline(in, line)) {
        std::size_t h = line.find('#');
        if (h != std::string::npos) line.erase(h);
        std::size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        std::size_t b = line.find_last_not_of(" \t\r");
        line = line.substr(a, b - a + 1);
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            return "malformed configuration line '" + line + "'";
        std::string key = line.substr(0, eq), val = line.substr(eq + 1);
        while (!key.empty() && (key.back() == ' ' || key.back() == '\t'))
            key.pop_back();
        while (!val.empty() && (val.front() == ' ' || val.front() == '\t'))
            val.erase(val.begin());
        if (key.empty() || key == "config")
            return "malformed configuration line '" + line + "'";
        toks.push_back("--" + key);
        toks.push_back(val);
    }
    // Insert after the subcommand name so the tokens bind to it.
    std::size_t at = ci;
    for (std::size_t i = 0; i < args.size(); ++i)
        if (!args[i].empty() && args[i][0] != '-') {
            at = i + 1;
            break;
        }
    args.insert(args.begin() + std::min(at, args.size()), toks.begin(),
                toks.end());
    return "";
}

// Returns an error message, or empty when the configuration is consistent.
std::string check_config(const CliConfig& c) {
    if (c.example < 1 || c.example > 3) return "example must be 1, 2 or 3";
    if (std::abs(c.theta) >= bpde::pi / 6.0)
        return "invariant violated: ray angle theta must satisfy |theta| < pi/6";
    if (c.phi < 0.0 || c.phi >= bpde::pi / 6.0)
        return "invariant violated: sector half-angle phi must satisfy 0 <= phi < pi/6";
    if (c.example == 1 && c.gamma >= 1.0)
        return "invariant violated: example 1 requires gamma < 1";
    if (c.example == 3 && c.delta <= 0.0)
        return "invariant violated: example 3 requires delta > 0";
    if (c.T <= 0.0) return "T must be positive";
    if (c.nu <= 0.0) return "nu must be positive";
    if (c.ball_factor <= 1.0) return "ball factor b must exceed 1";
    if (c.nodes < 16) return "nodes must be at least 16";
    if (c.time_steps < 1) return "time-steps must be at least 1";
    if (c.K < 1 || c.K > 3) return "K must be 1, 2 or 3";
    if (c.tol <= 0.0) return "tol must be positive";
    if (c.format != "csv" && c.format != "json") return "format must be csv or json";
    return {};
}

bpde::ProblemSpec to_problem_spec(const CliConfig& c) {
    bpde::ProblemSpec ps;
    ps.example_id = c.example;
    ps.gamma = c.gamma;
    ps.delta = c.delta;
    ps.K = c.K;
    ps.T = c.T;
    ps.theta = c.theta;
    ps.nu = c.nu;
    ps.p_max = c.p_max;
    ps.nodes = c.nodes;
    ps.time_steps = c.time_steps;
    ps.picard_tol = c.tol;
    ps.max_iter = c.max_iter;
    return ps;
}

double example_param(const CliConfig& c) {
    return c.example == 1 ? c.gamma : c.delta;
}

json config_json(const CliConfig& c) {
    json j;
    j["example"] = c.example;
    j["gamma"] = c.gamma;
    j["delta"] = c.delta;
    j["T"] = c.T;
    j["theta"] = c.theta;
    j["phi"] = c.phi;
    j["nu"] = c.nu;
    j["ball_factor"] = c.ball_factor;
    j["nodes"] = c.nodes;
    j["time_steps"] = c.time_steps;
    j["K"] = c.K;
    j["tol"] = c.tol;
    j["max_iter"] = c.max_iter;
    j["p_max_requested"] = c.p_max;
    j["validate_tol"] = c.validate_tol;
    j["residual_tol"] = c.residual_tol;
    j["format"] = c.format;
    j["seed"] = c.seed;
    return j;
}

// Physical-space sample locations used by solve and validate. Chosen well
// inside the region where the y^{-2} (or y^{-4/3}) tail is resolved on the
// default grid.
std::vector<double> sample_rows() {
    return {4.0, 5.0, 6.0, 8.0, 10.0, 12.0, 16.0, 20.0};
}

// Comma list ("1,2,4") or colon range ("1:4:3", linearly spaced endpoints
// included). Returns an empty vector on malformed or empty input.
std::vector<double> parse_sweep(const std::string& text) {
    std::vector<double> vals;
    if (text.empty()) return vals;
    try {
        if (text.find(':') != std::string::npos) {
            double lo = 0, hi = 0;
            long n = 0;
            std::size_t a = text.find(':');
            std::size_t b = text.find(':', a + 1);
            if (b == std::string::npos) return vals;
            lo = std::stod(text.substr(0, a));
            hi = std::stod(text.substr(a + 1, b - a - 1));
            n = std::stol(text.substr(b + 1));
            if (n < 1 || hi < lo) return vals;
            if (n == 1) {
                vals.push_back(lo);
                return vals;
            }
            for (long i = 0; i < n; ++i)
                vals.push_back(lo + (hi - lo) * double(i) / double(n - 1));
        } else {
            std::size_t pos = 0;
            while (pos < text.size()) {
                std::size_t comma = text.find(',', pos);
                std::string tok = text.substr(pos, comma == std::string::npos
                                                       ? std::string::npos
                                                       : comma - pos);
                if (!tok.empty()) vals.push_back(std::stod(tok));
                if (comma == std::string::npos) break;
                pos = comma + 1;
            }
        }
    } catch (const std::exception&) {
        vals.clear();
    }
    for (double v : vals)
        if (!std::isfinite(v) || v <= 0.0) return {};
    return vals;
}

int write_manifest_and_report(const CliConfig& cfg, json manifest,
                              const std::string& outdir) {
    fs::create_directories(outdir);
    manifest["config"] = config_json(cfg);
    bpde::write_manifest(outdir + "/manifest.json", manifest);
    return 0;
}

int cmd_solve(const CliConfig& cfg) {
    bpde::ProblemSpec ps = to_problem_spec(cfg);
    fs::create_directories(cfg.out);

    json manifest;
    manifest["subcommand"] = "solve";

    // The certificate is advisory for a single solve: a run outside the
    // certified region proceeds, flagged in the manifest.
    bpde::CertOptions copt;
    copt.phi = cfg.phi;
    bpde::Certificate cert = bpde::make_certificate(
        cfg.example, example_param(cfg), cfg.T, cfg.nu, cfg.ball_factor, copt);
    manifest["certificate"] = {
        {"ball_condition_lhs", cert.ball_condition_lhs},
        {"contraction_lhs", cert.contraction_lhs},
        {"forcing_norm", cert.F0_norm},
        {"satisfied", cert.satisfied},
        {"b", cert.b},
    };
    if (!cert.satisfied) {
        std::fprintf(stderr,
                     "warning: (T, nu) = (%g, %g) is outside the certified "
                     "region (%s); solving anyway\n",
                     cfg.T, cfg.nu, cert.reason.c_str());
    }

    bpde::SolveResult res;
    try {
        res = bpde::picard_solve(ps);
    } catch (const std::exception& e) {
        manifest["error"] = e.what();
        write_manifest_and_report(cfg, manifest, cfg.out);
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }

    manifest["iterations"] = res.iterations;
    manifest["converged"] = res.converged;
    manifest["diverged"] = res.diverged;
    manifest["final_relative_update"] = res.final_relative_update;
    manifest["certified"] = cert.satisfied;
    manifest["p_max"] = res.grid.p_max;
    manifest["sample_rows"] = sample_rows();
    manifest["outputs"] = {"solution_borel.csv", "solution_physical.csv",
                           "iterations.csv"};

    if (!res.converged) {
        write_manifest_and_report(cfg, manifest, cfg.out);
        std::fprintf(stderr,
                     "error: Picard iteration %s after %zu iterations "
                     "(relative update %.3e)\n",
                     res.diverged ? "diverged" : "did not converge",
                     res.iterations, res.final_relative_update);
        return 2;
    }

    bpde::write_solution_borel_csv(cfg.out + "/solution_borel.csv", res);
    std::vector<std::size_t> t_rows = {0, std::size_t(cfg.time_steps) / 2,
                                       std::size_t(cfg.time_steps)};
    std::vector<bpde::cplx> sample_ys;
    for (double y : sample_rows()) sample_ys.emplace_back(y, 0.0);
    bpde::write_solution_physical_csv(cfg.out + "/solution_physical.csv", res,
                                      sample_ys, t_rows);
    bpde::write_iterations_csv(cfg.out + "/iterations.csv", res);
    write_manifest_and_report(cfg, manifest, cfg.out);

    std::printf("converged in %zu iterations, final relative update %.3e\n",
                res.iterations, res.final_relative_update);
    std::printf("certified: %s (ball %.4f, contraction %.4f)\n",
                cert.satisfied ? "yes" : "no", cert.ball_condition_lhs,
                cert.contraction_lhs);
    return 0;
}

int cmd_certify(const CliConfig& cfg) {
    std::vector<double> Ts = parse_sweep(cfg.sweep_T);
    std::vector<double> nus = parse_sweep(cfg.sweep_nu);
    if (Ts.empty() || nus.empty()) {
        std::fprintf(stderr, "error: empty or malformed sweep range "
                             "(--sweep-T '%s', --sweep-nu '%s')\n",
                     cfg.sweep_T.c_str(), cfg.sweep_nu.c_str());
        return 1;
    }

    bpde::CertOptions copt;
    copt.phi = cfg.phi;
    std::vector<bpde::Certificate> certs;
    certs.reserve(Ts.size() * nus.size());
    int satisfied = 0;
    for (double T : Ts)
        for (double nu : nus) {
            certs.push_back(bpde::make_certificate(cfg.example,
                                                   example_param(cfg), T, nu,
                                                   cfg.ball_factor, copt));
            if (certs.back().satisfied) ++satisfied;
        }

    fs::create_directories(cfg.out);
    bpde::write_certificates_csv(cfg.out + "/certificates.csv", certs);

    json manifest;
    manifest["subcommand"] = "certify";
    manifest["sweep_T"] = Ts;
    manifest["sweep_nu"] = nus;
    manifest["satisfied_count"] = satisfied;
    manifest["total_count"] = (int)certs.size();
    manifest["outputs"] = {"certificates.csv"};
    write_manifest_and_report(cfg, manifest, cfg.out);

    std::printf("%d of %zu (T, nu) cells certified\n", satisfied, certs.size());
    return 0;
}

struct ValidateRow {
    double y = 0, x = 0;
    bpde::cplx solver_H, oracle_H;
    double rel_err = 0;
};

void print_validate_rows(const CliConfig&,
                         const std::vector<ValidateRow>& rows) {
    std::printf("y,x,solver_re,solver_im,oracle_re,oracle_im,rel_err\n");
    for (const auto& r : rows)
        std::printf("%.6g,%.6g,%.12g,%.12g,%.12g,%.12g,%.3e\n", r.y, r.x,
                    r.solver_H.real(), r.solver_H.imag(), r.oracle_H.real(),
                    r.oracle_H.imag(), r.rel_err);
}

void print_residual_rows(const CliConfig&,
                         const std::vector<bpde::ResidualSample>& rows) {
    std::printf("y,t,abs_residual,rel_residual\n");
    for (const auto& r : rows)
        std::printf("%.6g,%.6g,%.3e,%.3e\n", r.y.real(), r.t, r.abs_residual,
                    r.rel_residual);
}

int cmd_validate(const CliConfig& cfg) {
    bpde::ProblemSpec ps = to_problem_spec(cfg);
    bpde::SolveResult res;
    try {
        res = bpde::picard_solve(ps);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    if (!res.converged) {
        std::fprintf(stderr, "error: solver did not converge\n");
        return 2;
    }

    bpde::CoefficientSet S = cfg.example == 1
                                 ? bpde::ex1_coefficients(cfg.gamma)
                                 : cfg.example == 2
                                       ? bpde::ex2_coefficients()
                                       : bpde::ex3_coefficients(cfg.delta, cfg.K);
    int mid = cfg.time_steps / 2;

    // PDE residual at interior times, all examples.
    std::vector<bpde::ResidualSample> residuals;
    double max_rel_residual = 0.0;
    for (double y : {6.0, 8.0, 10.0, 14.0}) {
        auto r = bpde::pde_residual(res, S, y, mid);
        residuals.push_back(r);
        max_rel_residual = std::max(max_rel_residual, r.rel_residual);
    }

    bool ok = max_rel_residual < cfg.residual_tol;
    double max_rel_err = 0.0;
    std::vector<ValidateRow> comparison;
    double decay_slope = 0.0;
    bool have_slope = false;

    if (cfg.example == 1 || cfg.example == 3) {
        // Compare against the similarity-solution profile at the final time.
        double angle = 0.0;
        std::vector<double> ys = sample_rows();
        std::vector<double> etas;
        double A, B;
        if (cfg.example == 1) {
            B = 1.0 / (3.0 * (1.0 - cfg.gamma));
            A = cfg.gamma * B;
        } else {
            B = 1.0 / (3.0 * (1.0 + cfg.delta));
            A = -9.0 * cfg.delta * B;
        }
        double tB = std::pow(cfg.T, B);
        for (double y : ys) {
            double x = std::abs(bpde::physical_x(cfg.example, y, cfg.T,
                                                 cfg.gamma, cfg.delta));
            etas.push_back(x / tB);
        }
        // Start the profile integration beyond the farthest query point.
        double eta_hi = 1.15 * *std::max_element(etas.begin(), etas.end());
        bpde::SimilarityProfile prof =
            cfg.example == 1
                ? bpde::similarity_ode_ex1(cfg.gamma, angle, etas,
                                           std::max(200.0, eta_hi))
                : bpde::similarity_ode_ex3(cfg.delta, angle, etas,
                                           std::max(30.0, eta_hi));

        int last = cfg.time_steps;
        for (std::size_t i = 0; i < ys.size(); ++i) {
            auto samp = bpde::recover_physical(res, ys[i], last);
            ValidateRow row;
            row.y = ys[i];
            row.x = std::abs(samp.x);
            row.solver_H = samp.H;
            row.oracle_H = std::pow(cfg.T, A) * prof.h[i];
            row.rel_err = std::abs(row.solver_H - row.oracle_H) /
                          std::abs(row.oracle_H);
            max_rel_err = std::max(max_rel_err, row.rel_err);
            comparison.push_back(row);
        }
        ok = ok && max_rel_err < cfg.validate_tol;
    } else {
        // Example 2 has no profile oracle here; check the decay exponent
        // of f instead: f ~ y^{-4/3} far out.
        std::vector<double> ys, vals;
        for (double y : {8.0, 12.0, 16.0, 24.0}) {
            auto samp = bpde::recover_physical(res, y, cfg.time_steps);
            ys.push_back(y);
            vals.push_back(std::abs(samp.f));
        }
        decay_slope = bpde::log_slope(ys, vals);
        have_slope = true;
        max_rel_err = std::abs(decay_slope + 4.0 / 3.0);
        ok = ok && max_rel_err < 0.05;
    }

    if (cfg.format == "json") {
        json j;
        json rarr = json::array();
        for (const auto& r : residuals)
            rarr.push_back({{"y", r.y.real()},
                            {"t", r.t},
                            {"abs_residual", r.abs_residual},
                            {"rel_residual", r.rel_residual}});
        j["residual_table"] = rarr;
        if (have_slope) {
            j["decay_exponent"] = decay_slope;
            j["decay_exponent_expected"] = -4.0 / 3.0;
        } else {
            json carr = json::array();
            for (const auto& r : comparison)
                carr.push_back({{"y", r.y},
                                {"x", r.x},
                                {"solver_re", r.solver_H.real()},
                                {"solver_im", r.solver_H.imag()},
                                {"oracle_re", r.oracle_H.real()},
                                {"oracle_im", r.oracle_H.imag()},
                                {"rel_err", r.rel_err}});
            j["comparison_table"] = carr;
        }
        j["max_rel_residual"] = max_rel_residual;
        j["max_comparison_error"] = max_rel_err;
        j["passed"] = ok;
        std::printf("%s\n", j.dump(2).c_str());
    } else {
        std::printf("# PDE residual (t = %g)\n", res.times.t[mid]);
        print_residual_rows(cfg, residuals);
        if (have_slope) {
            std::printf("# far-field decay exponent of f: %.4f (expect -4/3)\n",
                        decay_slope);
        } else {
            std::printf("# similarity comparison (t = %g)\n", cfg.T);
            print_validate_rows(cfg, comparison);
        }
        std::printf("max relative residual %.3e, max comparison error %.3e\n",
                    max_rel_residual, max_rel_err);
        if (ok) std::printf("validation passed\n");
    }
    if (!ok) {
        std::fprintf(stderr, "error: validation tolerances violated\n");
        return 3;
    }
    return 0;
}

int cmd_norms(const CliConfig& cfg) {
    bpde::ProblemSpec ps = to_problem_spec(cfg);
    ps.nodes = std::min<std::size_t>(ps.nodes, 128);
    ps.time_steps = std::min<std::size_t>(ps.time_steps, 8);
    bpde::PreparedProblem prep = bpde::prepare(ps);
    bpde::BorelFunction F0 = bpde::build_F0(prep);

    bpde::CertOptions copt;
    copt.phi = cfg.phi;
    bpde::Certificate cert = bpde::make_certificate(
        cfg.example, example_param(cfg), cfg.T, cfg.nu, cfg.ball_factor, copt);

    // Seeded spot check of the algebra inequality on random smooth pairs.
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        double a1 = U(rng), a2 = U(rng), b1 = U(rng), b2 = U(rng);
        auto mk = [&](double a, double b, double sg) {
            return bpde::from_callable(prep.grid, 1, sg, [=](double s, int) {
                return bpde::cplx(a + b * s / (1.0 + s), 0.25 * a * std::sin(s));
            });
        };
        bpde::BorelFunction F = mk(a1, b1, 0.0), G = mk(a2, b2, 0.5);
        bpde::BorelFunction C = bpde::convolve(F, G);
        double lhs = bpde::nu_norm(C, cfg.nu).value;
        double rhs = bpde::nu_norm(F, cfg.nu).value * bpde::nu_norm(G, cfg.nu).value;
        if (rhs > 0.0) worst = std::max(worst, lhs / rhs);
    }

    if (cfg.format == "json") {
        json j;
        j["M0"] = bpde::compute_M0();
        j["forcing_norm"] = bpde::nu_norm(F0, cfg.nu).value;
        j["nu"] = cfg.nu;
        j["ball_condition_lhs"] = cert.ball_condition_lhs;
        j["contraction_lhs"] = cert.contraction_lhs;
        j["satisfied"] = cert.satisfied;
        j["algebra_spot_check_max_ratio"] = worst;
        std::printf("%s\n", j.dump(2).c_str());
    } else {
        std::printf("quantity,value\n");
        std::printf("M0,%.12g\n", bpde::compute_M0());
        std::printf("forcing_norm,%.12g\n", bpde::nu_norm(F0, cfg.nu).value);
        std::printf("nu,%g\n", cfg.nu);
        std::printf("ball_condition_lhs,%.12g\n", cert.ball_condition_lhs);
        std::printf("contraction_lhs,%.12g\n", cert.contraction_lhs);
        std::printf("satisfied,%d\n", cert.satisfied ? 1 : 0);
        std::printf("algebra_spot_check_max_ratio,%.12g\n", worst);
    }
    return worst <= 1.0 + 1e-9 ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Borel-plane integral equation solver for third order "
                 "nonlinear PDEs"};
    app.require_subcommand(1);

    CliConfig cfg;
    auto add_common = [&](CLI::App* sub) {
        sub->option_defaults()->multi_option_policy(
            CLI::MultiOptionPolicy::TakeLast);
        sub->add_option("--example", cfg.example, "example problem (1, 2 or 3)");
        sub->add_option("--gamma", cfg.gamma, "example 1 exponent");
        sub->add_option("--delta", cfg.delta, "example 3 exponent");
        sub->add_option("--T", cfg.T, "time horizon");
        sub->add_option("--theta", cfg.theta, "Borel ray angle");
        sub->add_option("--phi", cfg.phi, "sector half-angle for certificates");
        sub->add_option("--nu", cfg.nu, "norm weight parameter");
        sub->add_option("--ball-factor", cfg.ball_factor,
                        "certificate ball radius factor b > 1");
        sub->add_option("--nodes", cfg.nodes, "Borel grid nodes");
        sub->add_option("--time-steps", cfg.time_steps, "time grid steps");
        sub->add_option("--K", cfg.K, "coefficient truncation order");
        sub->add_option("--tol", cfg.tol, "Picard stopping tolerance");
        sub->add_option("--max-iter", cfg.max_iter, "Picard iteration cap");
        sub->add_option("--p-max", cfg.p_max, "Borel grid radius (0 = auto)");
        sub->add_option("--validate-tol", cfg.validate_tol,
                        "similarity comparison tolerance");
        sub->add_option("--residual-tol", cfg.residual_tol,
                        "PDE residual tolerance");
        sub->add_option("--out", cfg.out, "output directory");
        sub->add_option("--format", cfg.format, "table format: csv or json");
        sub->add_option("--seed", cfg.seed, "seed for randomized spot checks");
        sub->add_option("--config", cfg.config_path,
                        "flat key=value configuration file, applied beneath "
                        "explicit flags");
    };

    CLI::App* solve = app.add_subcommand("solve", "run the Picard iteration");
    add_common(solve);
    CLI::App* certify =
        app.add_subcommand("certify", "sweep (T, nu) existence certificates");
    add_common(certify);
    certify->add_option("--sweep-T", cfg.sweep_T,
                        "T values: comma list or lo:hi:n");
    certify->add_option("--sweep-nu", cfg.sweep_nu,
                        "nu values: comma list or lo:hi:n");
    CLI::App* validate =
        app.add_subcommand("validate", "compare against the similarity oracle");
    add_common(validate);
    CLI::App* norms =
        app.add_subcommand("norms", "report norm bounds and certificates");
    add_common(norms);

    std::vector<std::string> args(argv + 1, argv + argc);
    std::string cfg_err = expand_config_file(args);
    if (!cfg_err.empty()) {
        std::fprintf(stderr, "error: %s\n", cfg_err.c_str());
        return 1;
    }
    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    std::string err = check_config(cfg);
    if (!err.empty()) {
        std::fprintf(stderr, "error: %s\n", err.c_str());
        return 1;
    }

    try {
        if (solve->parsed()) return cmd_solve(cfg);
        if (certify->parsed()) return cmd_certify(cfg);
        if (validate->parsed()) return cmd_validate(cfg);
        if (norms->parsed()) return cmd_norms(cfg);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 1;
}
