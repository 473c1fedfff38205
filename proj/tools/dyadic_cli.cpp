// dyadic: command-line front end for the dyadic nonlocal Schrodinger library.
//
// Exit codes: 0 pass, 1 verification failure, 2 usage or input error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dyadic/dyadic.hpp"

namespace {

using namespace dyadic;

constexpr int exit_pass = 0;
constexpr int exit_fail = 1;
constexpr int exit_usage = 2;

struct Common {
    std::uint64_t seed = 1;
    int resolution = 8;
    std::int64_t domain = 1;
    std::string out;
    unsigned threads = 1;
};

// --input if given, else a generated Besov sample at the common resolution
GridFunction load_or_generate(const std::string& input, const Common& c, double lambda_target) {
    if (!input.empty()) return read_csv(input);
    return generate_besov_sample(c.resolution, c.domain, lambda_target, c.seed, {2});
}

std::ostream& open_out(const std::string& path, std::ofstream& file) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw usage_error("cannot open '" + path + "' for writing");
    return file;
}

std::string fmt(double v) { return detail::format_double(v); }

void print_cases(const VerificationReport& r) {
    for (const auto& c : r.cases)
        std::printf("%s %-26s residual=%.3e tol=%.1e  %s\n", c.pass ? "PASS" : "FAIL", c.id.c_str(), c.residual,
                    c.tol, c.anchor.c_str());
    std::printf("%s: %zu cases, %.2f s\n", r.pass() ? "PASS" : "FAIL", r.cases.size(), r.seconds);
}

int cmd_verify(const Common& c, VerifyConfig cfg, const std::string& fault) {
    cfg.resolution = c.resolution;
    cfg.domain_length = c.domain;
    cfg.seed = c.seed;
    cfg.threads = c.threads;
    if (fault == "prefactor") cfg.fault = InjectedFault::drop_prefactor;
    const auto rep = run_verify(cfg);
    print_cases(rep);
    if (!c.out.empty()) write_report(rep, c.out);
    return rep.pass() ? exit_pass : exit_fail;
}

int cmd_besov(const Common& c, double lambda, const std::string& input) {
    const auto f = load_or_generate(input, c, std::min(lambda + 0.2, 0.95));
    auto coeffs = analyze(f);
    const double quad = seminorm_sq_quadrature(f, lambda);
    std::cout << "seminorm_sq_quadrature," << fmt(quad) << '\n';
    std::cout << "besov_norm," << fmt(besov_norm(f, lambda)) << '\n';
    if (coeffs.coarse_is_zero(1e-12)) {
        const double sum = seminorm_sq_coefficients(coeffs, lambda);
        std::cout << "seminorm_sq_coefficients," << fmt(sum) << '\n';
        std::cout << "equivalence_ratio," << fmt(equivalence_ratio(f, lambda)) << '\n';
    }
    return exit_pass;
}

int cmd_dbeta(const Common& c, double beta, const std::string& input, const std::string& output,
              const std::string& method, bool check) {
    const auto f = load_or_generate(input, c, std::min(beta + 0.3, 0.95));
    std::optional<GridFunction> spectral_d, integ;
    if (method == "spectral" || method == "both" || check) spectral_d = dbeta_spectral(f, beta);
    if (method == "integral" || method == "both" || check)
        integ = dbeta_integral(f, beta, KernelMethod::level_set, c.threads);
    const GridFunction& result = method == "integral" ? *integ : *spectral_d;
    if (!output.empty()) write_csv(result, output);
    std::cout << "l2_norm," << fmt(result.l2_norm()) << '\n';
    if (spectral_d && integ) {
        const double rel = (*spectral_d - *integ).l2_norm() / std::max(spectral_d->l2_norm(), 1e-300);
        std::cout << "relative_l2_difference," << fmt(rel) << '\n';
        if (check && rel > 1e-10) return exit_fail;
    }
    return exit_pass;
}

struct TrajectorySpec {
    double t0 = 0.0, t1 = 1.0;
    int steps = 10;
};

TrajectorySpec parse_trajectory(const std::string& s) {
    TrajectorySpec t;
    char c1 = 0, c2 = 0;
    std::istringstream in(s);
    if (!(in >> t.t0 >> c1 >> t.t1 >> c2 >> t.steps) || c1 != ':' || c2 != ':' || t.steps < 1 || !(in >> std::ws).eof())
        throw usage_error("trajectory must be t0:t1:steps with steps >= 1");
    return t;
}

int cmd_evolve(const Common& c, double beta, double lambda, double t, const std::string& input,
               const std::string& output, bool residual, double h, const std::string& trajectory) {
    const BesovParams p(lambda, beta);
    const auto f = load_or_generate(input, c, (lambda + 1.0) / 2.0);
    if (!f.mean_zero_per_unit(1e-10)) throw precondition_error("initial data must satisfy P_0 u0 = 0");
    auto c0 = analyze(f);
    for (auto& v : c0.coarse()) v = 0.0;
    if (!trajectory.empty()) {
        const auto tr = parse_trajectory(trajectory);
        std::ofstream file;
        auto& out = open_out(c.out, file);
        out << "t,l2,besov,residual\n";
        for (int i = 0; i <= tr.steps; ++i) {
            const double ti = tr.t0 + (tr.t1 - tr.t0) * i / tr.steps;
            const auto u = evolve(c0, beta, ti);
            const double res = ti > 0.0 && ti + h > 0.0 ? pde_residual(c0, p, ti, h) : NAN;
            out << fmt(ti) << ',' << fmt(std::sqrt(u.energy())) << ',' << fmt(besov_norm(u, lambda)) << ','
                << (std::isfinite(res) ? fmt(res) : std::string("nan")) << '\n';
        }
    }
    const auto u = synthesize(evolve(c0, beta, t));
    if (!output.empty()) write_csv(u, output);
    std::cout << "t," << fmt(t) << "\nl2," << fmt(u.l2_norm()) << '\n';
    if (residual) std::cout << "pde_residual," << fmt(pde_residual(c0, p, t, h)) << '\n';
    return exit_pass;
}

int cmd_maximal(const Common& c, double lambda, double beta, const std::string& input, std::size_t tpoints) {
    const BesovParams p(lambda, beta);
    const auto f = load_or_generate(input, c, (lambda + 1.0) / 2.0);
    const auto t_grid = uniform_time_grid(tpoints);
    auto coeffs = analyze(f);
    for (auto& v : coeffs.coarse()) v = 0.0;
    const auto hl = hardy_littlewood_dyadic(f);
    const auto sharp = sharp_maximal_dyadic(f, lambda);
    const auto sharp_grid = sharp_maximal_grid(f, lambda, c.threads);
    const auto star = star_maximal(coeffs, beta, t_grid, coeffs.resolution() - 1);
    const auto rate = convergence_rate_bound(f, p, t_grid);
    const auto bounds = check_maximal_bounds(f, p, t_grid);
    const double slack = 1e-12 * std::max(f.scale(), 1.0);

    std::ofstream file;
    auto& out = open_out(c.out, file);
    out << "cell,M_dy,M#_dy,M#_grid,Sstar,lhs_rate,rhs_rate,violation\n";
    for (std::size_t i = 0; i < f.size(); ++i) {
        const bool bad = star[i] > p.c_max() * sharp[i] + 2.0 * hl[i] + slack || rate.lhs[i] > rate.rhs[i] + slack;
        out << i << ',' << fmt(hl[i]) << ',' << fmt(sharp[i]) << ',' << fmt(sharp_grid[i]) << ',' << fmt(star[i])
            << ',' << fmt(rate.lhs[i]) << ',' << fmt(rate.rhs[i]) << ',' << (bad ? 1 : 0) << '\n';
    }
    const std::size_t violations = bounds.per_time.violations + bounds.overall.violations + rate.check.violations;
    std::cerr << "violations: " << violations << '\n';
    return violations == 0 ? exit_pass : exit_fail;
}

GridFunction converge_sample(const std::string& kind, const Common& c, std::uint64_t seed, double lambda) {
    if (kind == "lipschitz") return generate_lipschitz_sample(c.resolution, c.domain, 1.0, seed).function;
    if (kind == "besov") return generate_besov_sample(c.resolution, c.domain, (lambda + 1.0) / 2.0, seed, {2});
    if (kind == "zero") return GridFunction(c.resolution, c.domain);
    throw usage_error("sample must be lipschitz, besov or zero");
}

int cmd_converge(const Common& c, double lambda, double beta, const std::string& kind, int m_min, int m_max,
                 int seeds) {
    const BesovParams p(lambda, beta);
    if (m_min < 0 || m_max < m_min || m_max > 60) throw usage_error("need 0 <= m-min <= m-max <= 60");
    if (seeds < 1) throw usage_error("seeds must be >= 1");
    std::vector<GridFunction> samples;
    for (int s = 0; s < seeds; ++s) samples.push_back(converge_sample(kind, c, c.seed + static_cast<std::uint64_t>(s), lambda));
    auto c0 = analyze(samples.front());
    for (auto& v : c0.coarse()) v = 0.0;
    const double scale = samples.front().scale();

    std::ofstream file;
    auto& out = open_out(c.out, file);
    out << "t,max_deviation,relative_deviation,rate_violations\n";
    std::size_t total = 0;
    for (int m = m_min; m <= m_max; ++m) {
        const double t = pow2(-m);
        const double dev = max_deviation(c0, beta, t);
        std::size_t viol = 0;
        for (const auto& f : samples) {
            const double tg[] = {t};
            viol += convergence_rate_bound(f, p, tg).check.violations;
        }
        total += viol;
        out << fmt(t) << ',' << fmt(dev) << ',' << fmt(scale > 0.0 ? dev / scale : 0.0) << ',' << viol << '\n';
    }
    std::cerr << "rate violations: " << total << '\n';
    return total == 0 ? exit_pass : exit_fail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dyadic nonlocal Schrodinger toolkit"};
    app.set_config("--config", "", "key=value configuration file; command-line flags win");
    app.require_subcommand(1);
    app.fallthrough();

    Common common;
    app.add_option("--seed", common.seed, "random seed");
    app.add_option("--resolution", common.resolution, "grid resolution J (cells of width 2^-J)")->check(CLI::Range(0, 30));
    app.add_option("--domain", common.domain, "domain length L (power of two)");
    app.add_option("--out", common.out, "output path");
    app.add_option("--threads", common.threads, "worker threads")->check(CLI::Range(1u, 256u));

    double beta = 0.3, lambda = 0.7;
    std::string input, output;

    auto* verify = app.add_subcommand("verify", "run the identity and inequality suite");
    VerifyConfig vcfg;
    std::string fault = "none";
    verify->add_option("--beta", vcfg.beta, "beta for the evolution and maximal suites");
    verify->add_option("--lambda", vcfg.lambda, "lambda for the evolution and maximal suites");
    verify->add_option("--betas", vcfg.betas, "betas for operator identities")->delimiter(',');
    verify->add_option("--lambdas", vcfg.lambdas, "lambdas for Besov identities")->delimiter(',');
    verify->add_option("--samples", vcfg.samples, "random samples per suite");
    verify->add_option("--tpoints", vcfg.time_points, "time points in (0,1)");
    verify->add_option("--tol-scale", vcfg.tol_scale, "multiplier applied to floating-point tolerances");
    verify->add_option("--inject-fault", fault, "deliberate defect for harness testing")
        ->check(CLI::IsMember({"none", "prefactor"}));

    auto* besov = app.add_subcommand("besov", "Besov seminorm by quadrature and by Haar coefficients");
    besov->add_option("--lambda", lambda, "smoothness order in (0,1)");
    besov->add_option("--input", input, "grid function CSV");

    auto* dbeta = app.add_subcommand("dbeta", "apply the dyadic fractional derivative");
    std::string method = "both";
    bool check = false;
    dbeta->add_option("--beta", beta, "order in (0,1)");
    dbeta->add_option("--input", input, "grid function CSV");
    dbeta->add_option("--output", output, "result CSV");
    dbeta->add_option("--method", method, "spectral, integral or both")
        ->check(CLI::IsMember({"spectral", "integral", "both"}));
    dbeta->add_flag("--check", check, "fail unless both paths agree");

    auto* evolve_cmd = app.add_subcommand("evolve", "evolve i u_t = D^beta u");
    double t = 1.0, h = 1e-4;
    bool residual = false;
    std::string trajectory;
    evolve_cmd->add_option("--beta", beta, "order in (0,1)");
    evolve_cmd->add_option("--lambda", lambda, "Besov order for norms");
    evolve_cmd->add_option("--t", t, "time");
    evolve_cmd->add_option("--input", input, "initial data CSV");
    evolve_cmd->add_option("--output", output, "u(t) CSV");
    evolve_cmd->add_flag("--residual", residual, "report the difference-quotient PDE residual");
    evolve_cmd->set_help_flag("--help", "print this help message and exit");  // frees -h for the step
    evolve_cmd->add_option("--h", h, "difference-quotient step");
    evolve_cmd->add_option("--trajectory", trajectory, "t0:t1:steps; CSV to --out");

    auto* maximal = app.add_subcommand("maximal", "maximal functions and pointwise bounds");
    std::size_t tpoints = 512;
    maximal->add_option("--lambda", lambda, "lambda");
    maximal->add_option("--beta", beta, "beta");
    maximal->add_option("--input", input, "initial data CSV");
    maximal->add_option("--tpoints", tpoints, "time points in (0,1)")->check(CLI::Range(std::size_t{1}, std::size_t{100000}));

    auto* converge = app.add_subcommand("converge", "pointwise convergence as t -> 0 along 2^-m");
    std::string kind = "lipschitz";
    int m_min = 1, m_max = 30, seeds = 20;
    converge->add_option("--lambda", lambda, "lambda");
    converge->add_option("--beta", beta, "beta");
    converge->add_option("--sample", kind, "lipschitz, besov or zero")->check(CLI::IsMember({"lipschitz", "besov", "zero"}));
    converge->add_option("--m-min", m_min, "first exponent m");
    converge->add_option("--m-max", m_max, "last exponent m");
    converge->add_option("--seeds", seeds, "samples checked against the rate bound");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? exit_pass : exit_usage;
    }

    try {
        if (*verify) return cmd_verify(common, vcfg, fault);
        if (*besov) return cmd_besov(common, lambda, input);
        if (*dbeta) return cmd_dbeta(common, beta, input, output, method, check);
        if (*evolve_cmd) return cmd_evolve(common, beta, lambda, t, input, output, residual, h, trajectory);
        if (*maximal) return cmd_maximal(common, lambda, beta, input, tpoints);
        if (*converge) return cmd_converge(common, lambda, beta, kind, m_min, m_max, seeds);
    } catch (const std::exception& e) {
        // every library error is a bad parameter, bad input file or unmet precondition
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}
