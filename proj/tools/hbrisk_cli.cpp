// hbrisk: integrated-risk comparison of hierarchical vs partial-hierarchical
// Bayes estimators in the Gaussian normal-means model.
//
// Subcommands: risk, crossover, regression, validate, bounds.
// Output is CSV with '#'-prefixed metadata lines; every numeric cell uses
// 17 significant digits so values round-trip exactly.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <set>
#include <tuple>
#include <sstream>
#include <string>
#include <vector>

#include "hbrisk/bounds.hpp"
#include "hbrisk/mc.hpp"
#include "hbrisk/ols.hpp"
#include "hbrisk/risk.hpp"

namespace {

constexpr const char* kToolVersion = "hbrisk 1.0.0";

constexpr int kExitValidation = 2;
constexpr int kExitConvergence = 3;
constexpr int kExitMcValidation = 4;

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

struct OutputSink {
    std::ofstream file;
    std::ostream* os = &std::cout;

    void open(const std::string& path) {
        if (path.empty()) return;
        file.open(path, std::ios::binary);
        if (!file) throw hbrisk::DomainError("cannot open output file: " + path);
        os = &file;
    }
    std::ostream& stream() { return *os; }
};

void emit_metadata(std::ostream& os, const std::string& cmd,
                   const std::vector<std::pair<std::string, std::string>>& kv) {
    os << "# tool=" << kToolVersion << "\n";
    os << "# cmd=" << cmd;
    for (const auto& [k, v] : kv) os << " --" << k << "=" << v;
    os << "\n";
}

// Log-spaced integer grid on [lo, hi] with `steps` strictly increasing
// values; collisions after rounding are bumped to the next free integer.
std::vector<int> log_int_grid(int lo, int hi, int steps) {
    if (steps < 1 || lo < 1 || hi < lo) {
        throw hbrisk::DomainError("grid spec requires 1 <= lo <= hi, steps >= 1");
    }
    std::vector<int> out;
    out.reserve(static_cast<size_t>(steps));
    const double llo = std::log(static_cast<double>(lo));
    const double lhi = std::log(static_cast<double>(hi));
    for (int i = 0; i < steps; ++i) {
        const double t = steps == 1 ? 0.0 : static_cast<double>(i) / (steps - 1);
        int v = static_cast<int>(std::lround(std::exp(llo + t * (lhi - llo))));
        if (!out.empty() && v <= out.back()) v = out.back() + 1;
        out.push_back(v);
    }
    if (out.back() > hi) {
        throw hbrisk::DomainError("grid spec: too many steps for the integer range");
    }
    return out;
}

int run_risk(int d, int n, double rho_min, double rho_max, int steps, double rel_tol,
             const std::string& out_path, bool rho_min_set) {
    if (!rho_min_set) rho_min = -1.0 / (d - 1) + 1e-6;
    if (!(rho_min < rho_max) || steps < 2) {
        throw hbrisk::DomainError("risk: need rho-min < rho-max and steps >= 2");
    }
    hbrisk::QuadratureSettings settings;
    settings.rel_tol = rel_tol;
    OutputSink sink;
    sink.open(out_path);
    std::ostream& os = sink.stream();
    emit_metadata(os, "risk",
                  {{"d", std::to_string(d)},
                   {"n", std::to_string(n)},
                   {"rho-min", fmt17(rho_min)},
                   {"rho-max", fmt17(rho_max)},
                   {"steps", std::to_string(steps)},
                   {"rel-tol", fmt17(rel_tol)}});
    os << "rho,R_HB,R_PHB,H,method,err\n";
    for (int i = 0; i < steps; ++i) {
        const double rho = rho_min + (rho_max - rho_min) * i / (steps - 1);
        const auto cs = hbrisk::make_compound_symmetry(d, n, rho);
        const auto hb = hbrisk::risk_hb_cs(cs);
        const auto phb = hbrisk::risk_phb_cs(cs, settings);
        const double H = hbrisk::risk_diff_H(cs, settings);
        os << fmt17(rho) << ',' << fmt17(hb.value) << ',' << fmt17(phb.value) << ','
           << fmt17(H) << ",quadrature," << fmt17(phb.err_estimate) << "\n";
    }
    return 0;
}

int run_crossover(int d, int n, double solver_tol, double rel_tol,
                  const std::string& out_path) {
    hbrisk::QuadratureSettings settings;
    settings.rel_tol = rel_tol;
    const auto bounds = hbrisk::compute_bounds({d, n}, settings);
    const auto cert = hbrisk::find_crossover({d, n}, settings, solver_tol);
    // rho_star can land above the analytic rho_U for some (d, n); the
    // solver's own bracket is the authoritative containment check.
    if (!(bounds.rho_L < cert.rho_star && cert.bracket_lo <= cert.rho_star &&
          cert.rho_star <= cert.bracket_hi && cert.rho_star < 1.0)) {
        throw hbrisk::BracketFailure("crossover: rho_star escaped its bracket");
    }
    OutputSink sink;
    sink.open(out_path);
    std::ostream& os = sink.stream();
    emit_metadata(os, "crossover",
                  {{"d", std::to_string(d)},
                   {"n", std::to_string(n)},
                   {"solver-tol", fmt17(solver_tol)},
                   {"rel-tol", fmt17(rel_tol)}});
    os << "d,n,rho_L,rho_star,rho_U,residual\n";
    os << d << ',' << n << ',' << fmt17(bounds.rho_L) << ',' << fmt17(cert.rho_star)
       << ',' << fmt17(bounds.rho_U) << ',' << fmt17(cert.residual) << "\n";
    return 0;
}

int run_bounds(int d, int n, double nu, bool nu_set, double rel_tol,
               const std::string& out_path) {
    hbrisk::QuadratureSettings settings;
    settings.rel_tol = rel_tol;
    const auto bs = hbrisk::compute_bounds({d, n}, settings);
    OutputSink sink;
    sink.open(out_path);
    std::ostream& os = sink.stream();
    std::vector<std::pair<std::string, std::string>> kv{
        {"d", std::to_string(d)}, {"n", std::to_string(n)}, {"rel-tol", fmt17(rel_tol)}};
    if (nu_set) kv.emplace_back("nu", fmt17(nu));
    emit_metadata(os, "bounds", kv);
    if (!nu_set) {
        os << "d,n,alpha_d,delta_star,rho_L,rho_U,B\n";
        os << d << ',' << n << ',' << fmt17(bs.alpha_d) << ',' << fmt17(bs.delta_star)
           << ',' << fmt17(bs.rho_L) << ',' << fmt17(bs.rho_U) << ',' << fmt17(bs.B)
           << "\n";
    } else {
        const auto pbs = hbrisk::compute_perturbed_bounds({d, n}, nu, settings);
        os << "d,n,alpha_d,delta_star,rho_L,rho_U,B,nu,beta_star,alpha_star_d,"
              "rho_tilde_L,rho_tilde_U\n";
        os << d << ',' << n << ',' << fmt17(bs.alpha_d) << ',' << fmt17(bs.delta_star)
           << ',' << fmt17(bs.rho_L) << ',' << fmt17(bs.rho_U) << ',' << fmt17(bs.B)
           << ',' << fmt17(pbs.nu) << ',' << fmt17(pbs.beta_star) << ','
           << fmt17(pbs.alpha_star_d) << ',' << fmt17(pbs.rho_tilde_L) << ','
           << fmt17(pbs.rho_tilde_U) << "\n";
    }
    return 0;
}

int run_regression(int d_min, int d_max, int d_steps, int n_min, int n_max, int n_steps,
                   bool log10_base, double solver_tol, const std::string& out_path) {
    const std::vector<int> ds = log_int_grid(d_min, d_max, d_steps);
    const std::vector<int> ns = log_int_grid(n_min, n_max, n_steps);
    if (ds.front() < 5) {
        throw hbrisk::DomainError("regression: all d must be >= 5");
    }
    if (ds.size() * ns.size() < 50) {
        throw hbrisk::DomainError("regression: need at least 50 (d, n) pairs");
    }
    if (std::set<int>(ds.begin(), ds.end()).size() < 2) {
        throw hbrisk::NumericalError("regression: single d value, design is rank-deficient");
    }
    hbrisk::QuadratureSettings settings;
    const double base = log10_base ? std::log(10.0) : 1.0;

    std::vector<std::vector<double>> X;
    std::vector<double> y;
    std::vector<std::tuple<int, int, double>> rows;
    for (int d : ds) {
        for (int n : ns) {
            const auto cert = hbrisk::find_crossover({d, n}, settings, solver_tol);
            rows.emplace_back(d, n, cert.rho_star);
            X.push_back({1.0, std::log(static_cast<double>(d)) / base,
                         std::log(static_cast<double>(n)) / base});
            y.push_back(std::log(cert.rho_star) / base);
        }
    }
    const hbrisk::OlsFit fit = hbrisk::ols_fit(X, y);

    OutputSink sink;
    sink.open(out_path);
    std::ostream& os = sink.stream();
    emit_metadata(os, "regression",
                  {{"d-min", std::to_string(d_min)},
                   {"d-max", std::to_string(d_max)},
                   {"d-steps", std::to_string(d_steps)},
                   {"n-min", std::to_string(n_min)},
                   {"n-max", std::to_string(n_max)},
                   {"n-steps", std::to_string(n_steps)},
                   {"log-base", log10_base ? "10" : "e"},
                   {"solver-tol", fmt17(solver_tol)}});
    os << "# model: log(rho_star) ~ intercept + log(d) + log(n)\n";
    os << "# intercept=" << fmt17(fit.coefficients[0])
       << " t=" << fmt17(fit.t_statistics[0]) << "\n";
    os << "# slope_log_d=" << fmt17(fit.coefficients[1])
       << " t=" << fmt17(fit.t_statistics[1]) << "\n";
    os << "# slope_log_n=" << fmt17(fit.coefficients[2])
       << " t=" << fmt17(fit.t_statistics[2]) << "\n";
    os << "# adjusted_r2=" << fmt17(fit.adjusted_r2)
       << " num_points=" << fit.num_points << "\n";
    os << "d,n,rho_star\n";
    for (const auto& [d, n, rho_star] : rows) {
        os << d << ',' << n << ',' << fmt17(rho_star) << "\n";
    }
    return 0;
}

struct ValidateRow {
    std::string label;
    double quad = 0.0;
    double mc_mean = 0.0;
    double mc_se = 0.0;
    double z = 0.0;
};

double z_score(double quad, double mean, double se) {
    const double diff = mean - quad;
    if (se == 0.0) return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return diff / se;
}

int run_validate(std::int64_t replicates, std::uint64_t seed, const std::string& mode,
                 int threads, std::int64_t block_size, const std::string& out_path) {
    hbrisk::SimPlan plan;
    plan.replicates = replicates;
    plan.seed = seed;
    plan.block_size = block_size;
    if (mode == "plain") {
        plan.mode = hbrisk::McMode::plain;
    } else if (mode == "rao_blackwell") {
        plan.mode = hbrisk::McMode::rao_blackwell;
    } else {
        throw hbrisk::DomainError("validate: mode must be plain or rao_blackwell");
    }
    hbrisk::QuadratureSettings settings;

    std::vector<ValidateRow> rows;
    auto push = [&rows](const std::string& label, double quad,
                        const hbrisk::McRiskEstimate& mc) {
        rows.push_back(
            {label, quad, mc.mean, mc.std_error, z_score(quad, mc.mean, mc.std_error)});
    };

    std::uint64_t case_index = 0;
    for (int d : {5, 10, 20}) {
        for (int n : {1, 5}) {
            for (double rho : {-0.05, 0.0, 0.3, 0.7}) {
                const auto cs = hbrisk::make_compound_symmetry(d, n, rho);
                // A distinct sub-seed per case keeps the grid reproducible
                // while avoiding stream reuse across cases.
                hbrisk::SimPlan case_plan = plan;
                case_plan.seed = seed + 0x1000 * (++case_index);
                const auto mc = hbrisk::mc_integrated_risk(cs, case_plan, threads);
                std::ostringstream tag;
                tag << "d=" << d << ";n=" << n << ";rho=" << rho;
                push(tag.str() + ";MLE", hbrisk::risk_mle(cs.config).value, mc.mle);
                push(tag.str() + ";PHB", hbrisk::risk_phb_cs(cs, settings).value, mc.phb);
                push(tag.str() + ";HB", hbrisk::risk_hb_cs(cs).value, mc.hb);
            }
        }
    }
    // Perturbed-spectrum case: HB should beat PHB here (rho above the
    // perturbed upper bound).
    {
        const int d = 10, n = 2;
        const double rho = 0.8;
        const auto bs = hbrisk::compute_bounds({d, n}, settings);
        const double nu = bs.B / 2;
        const auto spec = hbrisk::perturb_spectrum(
            {hbrisk::make_compound_symmetry(d, n, rho), nu}, bs.B);
        hbrisk::SimPlan case_plan = plan;
        case_plan.seed = seed + 0x1000 * (++case_index);
        const auto mc = hbrisk::mc_integrated_risk(spec, hbrisk::cs_eigenvectors(d),
                                                   case_plan, threads);
        std::ostringstream tag;
        tag << "perturbed;d=" << d << ";n=" << n << ";rho=" << rho << ";nu=B/2";
        push(tag.str() + ";MLE", hbrisk::risk_mle(spec.config).value, mc.mle);
        push(tag.str() + ";PHB", hbrisk::risk_phb_general(spec, settings).value, mc.phb);
        push(tag.str() + ";HB", hbrisk::risk_hb_general(spec, settings).value, mc.hb);
    }

    OutputSink sink;
    sink.open(out_path);
    std::ostream& os = sink.stream();
    emit_metadata(os, "validate",
                  {{"replicates", std::to_string(replicates)},
                   {"seed", std::to_string(seed)},
                   {"mode", mode},
                   {"block-size", std::to_string(block_size)}});
    os << "case,quadrature_value,mc_mean,mc_se,z_score\n";
    bool failed = false;
    for (const ValidateRow& r : rows) {
        os << r.label << ',' << fmt17(r.quad) << ',' << fmt17(r.mc_mean) << ','
           << fmt17(r.mc_se) << ',' << fmt17(r.z) << "\n";
        if (!(std::abs(r.z) <= 3.0)) failed = true;
    }
    if (failed) {
        std::cerr << "validate: at least one |z_score| exceeds 3\n";
        return kExitMcValidation;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Integrated-risk comparison of HB and PHB estimators"};
    app.require_subcommand(1);

    int d = 100, n = 20, steps = 101;
    double rho_min = 0.0, rho_max = 0.99, nu = 0.0;
    double rel_tol = 1e-10, solver_tol = 1e-8;
    std::string out_path, mode = "rao_blackwell";
    std::int64_t replicates = 200000, block_size = 4096;
    std::uint64_t seed = 1;
    int threads = 1;
    int d_min = 10, d_max = 500, d_steps = 25;
    int n_min = 1, n_max = 100, n_steps = 20;
    bool log10_base = false;

    auto* risk = app.add_subcommand("risk", "Risk curves over a rho grid");
    risk->add_option("--d", d)->required();
    risk->add_option("--n", n)->required();
    auto* rho_min_opt = risk->add_option("--rho-min", rho_min);
    risk->add_option("--rho-max", rho_max);
    risk->add_option("--steps", steps);
    risk->add_option("--rel-tol", rel_tol);
    risk->add_option("--out", out_path);

    auto* crossover = app.add_subcommand("crossover", "Certified crossover rho*");
    crossover->add_option("--d", d)->required();
    crossover->add_option("--n", n)->required();
    crossover->add_option("--solver-tol", solver_tol);
    crossover->add_option("--rel-tol", rel_tol);
    crossover->add_option("--out", out_path);

    auto* bounds = app.add_subcommand("bounds", "Analytic bound constants");
    bounds->add_option("--d", d)->required();
    bounds->add_option("--n", n)->required();
    auto* nu_opt = bounds->add_option("--nu", nu);
    bounds->add_option("--rel-tol", rel_tol);
    bounds->add_option("--out", out_path);

    auto* regression =
        app.add_subcommand("regression", "log(rho*) on log(d), log(n) regression");
    regression->add_option("--d-min", d_min);
    regression->add_option("--d-max", d_max);
    regression->add_option("--d-steps", d_steps);
    regression->add_option("--n-min", n_min);
    regression->add_option("--n-max", n_max);
    regression->add_option("--n-steps", n_steps);
    regression->add_flag("--log10", log10_base);
    regression->add_option("--solver-tol", solver_tol);
    regression->add_option("--out", out_path);

    auto* validate =
        app.add_subcommand("validate", "Monte Carlo vs quadrature validation grid");
    validate->add_option("--replicates", replicates);
    validate->add_option("--seed", seed);
    validate->add_option("--mode", mode);
    validate->add_option("--threads", threads);
    validate->add_option("--block-size", block_size);
    validate->add_option("--out", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        if (risk->parsed()) {
            return run_risk(d, n, rho_min, rho_max, steps, rel_tol, out_path,
                            rho_min_opt->count() > 0);
        }
        if (crossover->parsed()) {
            return run_crossover(d, n, solver_tol, rel_tol, out_path);
        }
        if (bounds->parsed()) {
            return run_bounds(d, n, nu, nu_opt->count() > 0, rel_tol, out_path);
        }
        if (regression->parsed()) {
            return run_regression(d_min, d_max, d_steps, n_min, n_max, n_steps,
                                  log10_base, solver_tol, out_path);
        }
        if (validate->parsed()) {
            return run_validate(replicates, seed, mode, threads, block_size, out_path);
        }
    } catch (const hbrisk::ConvergenceFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConvergence;
    } catch (const hbrisk::BracketFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConvergence;
    } catch (const hbrisk::NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConvergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitValidation;
}
