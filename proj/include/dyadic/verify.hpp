#pragma once

// The identity and inequality suite behind `dyadic verify`. Every case is a
// self-contained check with a residual and a pinned tolerance.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "dyadic/besov.hpp"
#include "dyadic/core.hpp"
#include "dyadic/evolution.hpp"
#include "dyadic/grid.hpp"
#include "dyadic/haar.hpp"
#include "dyadic/maximal.hpp"
#include "dyadic/nonlocal.hpp"
#include "dyadic/report.hpp"
#include "dyadic/samples.hpp"

namespace dyadic {

enum class InjectedFault {
    none,
    /// evaluate the kernel integral without its normalising prefactor
    drop_prefactor,
};

struct VerifyConfig {
    int resolution = 8;
    std::int64_t domain_length = 1;
    std::vector<double> betas{0.25, 0.5, 0.75};
    std::vector<double> lambdas{0.3, 0.5, 0.7};
    double lambda = 0.7;  ///< (lambda, beta) pair for evolution and maximal suites
    double beta = 0.3;
    std::uint64_t seed = 1;
    int samples = 20;
    std::size_t time_points = 512;
    double tol_scale = 1.0;
    unsigned threads = 1;
    InjectedFault fault = InjectedFault::none;

    /// Throws usage_error on anything out of range.
    void validate() const {
        if (resolution < 2 || resolution > 12) throw usage_error("resolution must be in [2, 12]");
        if (!is_power_of_two(domain_length) || domain_length > 64)
            throw usage_error("domain length must be a power of two <= 64");
        BesovParams(lambda, beta);
        for (double b : betas)
            if (!(b > 0.0 && b < 1.0)) throw usage_error("every beta must lie in (0, 1)");
        for (double l : lambdas)
            if (!(l > 0.0 && l < 1.0)) throw usage_error("every lambda must lie in (0, 1)");
        if (betas.empty() || lambdas.empty()) throw usage_error("beta and lambda lists must be non-empty");
        if (samples < 1 || samples > 1000) throw usage_error("samples must be in [1, 1000]");
        if (time_points < 1 || time_points > 100000) throw usage_error("time points must be in [1, 100000]");
        if (!(tol_scale > 0.0)) throw usage_error("tolerance scale must be positive");
    }
};

namespace detail {

inline double rel(double err, double ref) { return err / std::max(ref, 1e-300); }

/// All dyadic intervals of levels 0..max_level inside [0, L).
inline std::vector<DyadicInterval> intervals_up_to(int max_level, std::int64_t domain_length) {
    std::vector<DyadicInterval> out;
    for (int j = 0; j <= max_level; ++j)
        for (std::int64_t k = 1; k <= (domain_length << j); ++k) out.emplace_back(j, k);
    return out;
}

inline double l2_distance(const GridFunction& a, const GridFunction& b) { return (a - b).l2_norm(); }

}  // namespace detail

inline VerificationReport run_verify(const VerifyConfig& cfg) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();
    const int J = cfg.resolution;
    const std::int64_t L = cfg.domain_length;
    const double ts = cfg.tol_scale;
    const BesovParams pair(cfg.lambda, cfg.beta);
    VerificationReport rep;
    rep.suite = "verify";
    auto seed_of = [&](std::uint64_t k) { return cfg.seed * 1000003ULL + k; };

    // D^beta h_I = |I|^-beta h_I through the kernel integral
    {
        double worst = 0.0;
        for (double beta : cfg.betas)
            for (const auto& I : detail::intervals_up_to(std::min(6, J - 1), L)) {
                const auto hI = haar_function(I, J, L);
                auto split = dbeta_tail_split(hI, beta, KernelMethod::level_set, cfg.threads);
                split.near += split.far;
                const double pref = cfg.fault == InjectedFault::drop_prefactor ? 1.0 : dbeta_prefactor(beta);
                const GridFunction lhs = pref * split.near;
                const GridFunction rhs = std::pow(2.0, I.level() * beta) * hI;
                worst = std::max(worst, detail::rel(max_abs_diff(lhs, rhs), rhs.scale()));
            }
        rep.add("dbeta-eigenfunction", "kernel integral of h_I equals |I|^-beta h_I", worst, 1e-12 * ts);
    }

    // quadrature seminorm == coefficient sum on span{h_I}
    {
        double worst = 0.0;
        const int Jq = std::min(J, 8);
        for (int s = 0; s < std::max(cfg.samples, 50); ++s) {
            const auto c = random_detail_coefficients(Jq, L, seed_of(100 + static_cast<std::uint64_t>(s)));
            const auto f = synthesize(c);
            for (double lambda : cfg.lambdas) {
                const double coef = seminorm_sq_coefficients(c, lambda);
                worst = std::max(worst, detail::rel(std::abs(seminorm_sq_quadrature(f, lambda) - coef), coef));
            }
        }
        rep.add("besov-haar-identity", "double-integral seminorm equals sum |<f,h_I>|^2 w(I)", worst, 1e-10 * ts);
    }

    // polarized seminorm of h_I, h_J vanishes for I != J
    {
        const int Jc = std::max(std::min(J, 6), std::min(J, 5));
        const auto ivs = detail::intervals_up_to(std::min(4, Jc - 1), 1);
        std::vector<GridFunction> hs;
        for (const auto& I : ivs) hs.push_back(haar_function(I, Jc, 1));
        double worst = 0.0;
        for (std::size_t a = 0; a < hs.size(); ++a)
            for (std::size_t b = a + 1; b < hs.size(); ++b)
                worst = std::max(worst, std::abs(polarized_quadrature(hs[a], hs[b], 0.5)));
        rep.add("cross-term-vanishing", "polarized seminorm of distinct Haar functions is zero", worst, 1e-12 * ts);
    }

    // level-by-level diagonal sum and the geometry of B(I), C(I)
    {
        const int Jg = std::min(J, 8);
        const double h = pow2(-Jg);
        double diag = 0.0, geo = 0.0;
        for (const auto& I : detail::intervals_up_to(std::min(6, Jg - 1), 1)) {
            const auto hI = haar_function(I, Jg, 1);
            std::vector<double> per_level(static_cast<std::size_t>(Jg));
            for (int j = 0; j < Jg; ++j) per_level[static_cast<std::size_t>(j)] = level_set_inner(j, hI, hI).real();
            for (double lambda : cfg.lambdas) {
                double s = 0.0;
                for (int j = 0; j < Jg; ++j) s += std::pow(2.0, j * (1.0 + 2.0 * lambda)) * per_level[static_cast<std::size_t>(j)];
                diag = std::max(diag, detail::rel(std::abs(s - besov_weight(I, lambda)), besov_weight(I, lambda)));
            }
            // measure_B against enumeration of B(I)
            std::size_t in_b = 0;
            const std::int64_t lo = (I.position() - 1) << (Jg - I.level());
            const std::int64_t hi = I.position() << (Jg - I.level());
            for_each_level_pair(I.level(), Jg, 1, [&](std::int64_t a, std::int64_t b) {
                if (a >= lo && a < hi && b >= lo && b < hi) ++in_b;
            });
            geo = std::max(geo, detail::rel(std::abs(static_cast<double>(in_b) * h * h - measure_B(I)), measure_B(I)));
            // B(J) n C(I) for every J of every coarser level
            for (int j = 0; j < I.level(); ++j) {
                std::vector<double> area(static_cast<std::size_t>(1) << j, 0.0);
                for_each_level_pair(j, Jg, 1, [&](std::int64_t a, std::int64_t b) {
                    const bool ia = a >= lo && a < hi, ib = b >= lo && b < hi;
                    if (ia != ib) area[static_cast<std::size_t>(a >> (Jg - j))] += h * h;
                });
                for (std::size_t k = 0; k < area.size(); ++k) {
                    const double expect = measure_B_cap_C(DyadicInterval(j, static_cast<std::int64_t>(k) + 1), I);
                    geo = std::max(geo, std::abs(area[k] - expect) / std::max(expect, I.length() * pow2(-j)));
                }
            }
        }
        rep.add("diagonal-level-sum", "sum_j 2^{j(1+2 lambda)} I(j,I,I) equals w(I)", diag, 1e-12 * ts);
        rep.add("level-set-geometry", "areas of B(I) and B(J) n C(I) match cell enumeration", geo, 1e-12 * ts);
    }

    // level sets partition the off-diagonal unit square; delta is an ultrametric
    {
        const int Jp = std::min(J, 6);
        const std::int64_t n = std::int64_t{1} << Jp;
        std::vector<int> hits(static_cast<std::size_t>(n * n), 0);
        double bad = 0.0;
        for (int j = 0; j <= Jp; ++j)
            for_each_level_pair(j, Jp, 1, [&](std::int64_t a, std::int64_t b) {
                ++hits[static_cast<std::size_t>(a * n + b)];
                if (dyadic_distance({Jp, a}, {Jp, b}) != pow2(-j)) bad += 1.0;
            });
        for (std::int64_t a = 0; a < n; ++a)
            for (std::int64_t b = 0; b < n; ++b)
                if (hits[static_cast<std::size_t>(a * n + b)] != (a == b ? 0 : 1)) bad += 1.0;
        rep.add("level-set-partition", "off-diagonal pairs lie in exactly one B(I)", bad, 0.0);

        double viol = 0.0;
        for (std::int64_t x = 0; x < n; ++x)
            for (std::int64_t y = 0; y < n; ++y) {
                const double dxy = dyadic_distance({Jp, x}, {Jp, y});
                if (x != y && std::abs(static_cast<double>(x - y)) * pow2(-Jp) > dxy) viol += 1.0;
                for (std::int64_t z = 0; z < n; ++z)
                    if (dyadic_distance({Jp, x}, {Jp, z}) > std::max(dxy, dyadic_distance({Jp, y}, {Jp, z})))
                        viol += 1.0;
            }
        rep.add("ultrametric", "delta(x,z) <= max(delta(x,y), delta(y,z)) and |x-y| <= delta(x,y)", viol, 0.0);
    }

    // spectral and kernel forms agree on Besov samples
    {
        double worst = 0.0;
        for (double beta : cfg.betas) {
            if (beta + 0.3 >= 1.0) continue;
            for (int s = 0; s < cfg.samples; ++s) {
                const auto f = generate_besov_sample(std::min(J, 8), L, beta + 0.3, seed_of(200 + static_cast<std::uint64_t>(s)));
                const auto spectral_d = dbeta_spectral(f, beta);
                const auto integ = dbeta_integral(f, beta, KernelMethod::level_set, cfg.threads);
                worst = std::max(worst, detail::rel(detail::l2_distance(spectral_d, integ), spectral_d.l2_norm()));
            }
        }
        rep.add("dbeta-spectral-integral", "spectral and kernel forms of D^beta agree in L2", worst, 1e-10 * ts);
    }

    // fast routes against O(n^2) brute force
    {
        double worst = 0.0;
        const int Jb = std::min(J, 8);
        for (int s = 0; s < 5; ++s) {
            const auto f = synthesize(random_detail_coefficients(Jb, L, seed_of(300 + static_cast<std::uint64_t>(s))));
            for (double lambda : cfg.lambdas) {
                const double a = seminorm_sq_quadrature(f, lambda, Quadrature::level_set);
                const double b = seminorm_sq_quadrature(f, lambda, Quadrature::brute_force);
                worst = std::max(worst, detail::rel(std::abs(a - b), b));
            }
            for (double beta : cfg.betas) {
                const auto a = dbeta_integral(f, beta, KernelMethod::level_set, cfg.threads);
                const auto b = dbeta_integral(f, beta, KernelMethod::brute_force, cfg.threads);
                worst = std::max(worst, detail::rel(max_abs_diff(a, b), b.scale()));
            }
        }
        rep.add("fast-vs-brute-quadrature", "level-set accumulation equals pairwise quadrature", worst, 1e-12 * ts);
    }

    // Haar transform round trip and Parseval
    {
        double round = 0.0, parseval = 0.0;
        for (int s = 0; s < 5; ++s) {
            const auto c = random_detail_coefficients(J, L, seed_of(400 + static_cast<std::uint64_t>(s)));
            auto f = synthesize(c);
            f += generate_besov_sample(J, L, 0.5, seed_of(450 + static_cast<std::uint64_t>(s)));
            const auto back = synthesize(analyze(f));
            round = std::max(round, detail::rel(max_abs_diff(back, f), f.scale()));
            const double e = f.l2_norm() * f.l2_norm();
            parseval = std::max(parseval, detail::rel(std::abs(analyze(f).energy() - e), e));
        }
        rep.add("haar-roundtrip", "synthesize(analyze(f)) = f", round, 1e-13 * ts);
        rep.add("haar-parseval", "sum |coefficients|^2 = ||f||^2", parseval, 1e-12 * ts);
    }

    // evolution: unitarity and group law
    {
        double worst = 0.0;
        for (int s = 0; s < 5; ++s) {
            const auto c = besov_sample_coefficients(J, L, 0.8, seed_of(500 + static_cast<std::uint64_t>(s)), {4});
            const double e0 = c.energy();
            for (double t : {0.1, 1.0, 7.5}) {
                const auto u = evolve(c, pair.beta(), t);
                worst = std::max(worst, detail::rel(std::abs(u.energy() - e0), e0));
                const auto uu = evolve(evolve(c, pair.beta(), 0.3), pair.beta(), t);
                const auto direct = evolve(c, pair.beta(), t + 0.3);
                worst = std::max(worst, detail::rel(max_abs_diff(synthesize(uu), synthesize(direct)),
                                                    synthesize(direct).scale()));
            }
        }
        rep.add("evolution-unitary-group", "||u(t)|| = ||u0|| and u(s+t) = S(s)u(t)", worst, 1e-12 * ts);
    }

    // PDE residual is first order in h
    {
        double ratio_err = 0.0, final_rel = 0.0;
        for (int s = 0; s < 5; ++s) {
            const auto c = besov_sample_coefficients(J, L, (pair.lambda() + 1.0) / 2.0,
                                                     seed_of(600 + static_cast<std::uint64_t>(s)));
            std::vector<double> res;
            for (int m = 0; m <= 6; ++m) res.push_back(pde_residual(c, pair, 1.0, 1e-2 * pow2(-m)));
            for (std::size_t m = 0; m + 1 < res.size(); ++m)
                ratio_err = std::max(ratio_err, std::abs(res[m] / res[m + 1] - 2.0));
            final_rel = std::max(final_rel, res.back() / besov_norm(c, pair.lambda() - pair.beta()));
        }
        rep.add("pde-residual-order", "residual(h)/residual(h/2) within 2 +- 0.2", ratio_err, 0.2);
        rep.add("pde-residual-small", "final residual <= 1e-4 of ||u0|| in B^{lambda-beta}", final_rel, 1e-4);
    }

    const auto t_grid = uniform_time_grid(cfg.time_points);

    // maximal inequalities and the convergence-rate bound
    {
        double per_time = 0.0, overall = 0.0, rate = 0.0;
        for (int s = 0; s < cfg.samples; ++s) {
            const auto f = generate_besov_sample(J, L, (pair.lambda() + 1.0) / 2.0,
                                                 seed_of(700 + static_cast<std::uint64_t>(s)), {2});
            const auto mb = check_maximal_bounds(f, pair, t_grid);
            per_time += static_cast<double>(mb.per_time.violations);
            overall += static_cast<double>(mb.overall.violations);
            rate += static_cast<double>(convergence_rate_bound(f, pair, t_grid).check.violations);
        }
        rep.add("maximal-bound-per-time", "S*_t f <= C t M#f + 2 M_dy f", per_time, 0.0);
        rep.add("maximal-bound-sup", "S* f <= C M#f + 2 M_dy f", overall, 0.0);
        rep.add("rate-bound", "sup_t |u(t) - u0| / t <= rate constant * M#u0", rate, 0.0);
    }

    // Cauchy bound for Lipschitz data
    {
        double viol = 0.0;
        const auto coarse_t = uniform_time_grid(std::min<std::size_t>(cfg.time_points, 64));
        for (int s = 0; s < 10; ++s) {
            const auto g = generate_lipschitz_sample(J, L, 3.0, seed_of(800 + static_cast<std::uint64_t>(s)));
            viol += static_cast<double>(check_lipschitz_cauchy(g.function, g.lipschitz, pair.beta(), coarse_t).violations);
        }
        rep.add("lipschitz-cauchy", "|S^N_t g - S^M_t g| <= ||g'|| sum_{M<j<=N} 2^-j", viol, 0.0);
    }

    // Besov-small, pointwise-large sequence
    {
        constexpr int Jce = 11;
        const double lambda = 0.3;
        double err = 0.0;
        double prev = INFINITY;
        for (int j = 0; j <= 10; ++j) {
            const auto c = counterexample_coefficients(std::int64_t{1} << j, Jce);
            const auto f = synthesize(c);
            err = std::max(err, std::abs(f.l2_norm() - std::pow(2.0, -0.5 * j)));
            err = std::max(err, std::abs(f.scale() - 1.0));
            const double haar_norm = std::sqrt(haar_besov_sum(c, lambda));
            err = std::max(err, std::abs(haar_norm - std::pow(2.0, -j * (0.5 - lambda))));
            if (!(haar_norm < prev)) err = INFINITY;
            prev = haar_norm;
        }
        rep.add("counterexample", "||f_n|| = 2^{-j/2} -> 0, Besov norm -> 0, max |f_n| = 1", err, 1e-14 * ts);
    }

    // local integrability of delta^alpha on a unit interval
    {
        double worst = 0.0;
        for (double alpha : {-0.9, -0.5, -0.25, 0.0, 0.5, 1.0}) {
            const double v = unit_delta_power_integral(alpha);
            worst = std::max(worst, std::max(0.0, v - unit_delta_power_bound(alpha)));
            double partial = 0.0;  // level scan of one cell against the unit interval
            const int Jd = 12;
            for (std::int64_t y = 1; y < (std::int64_t{1} << Jd); ++y)
                partial += std::pow(dyadic_distance({Jd, 0}, {Jd, y}), alpha) * pow2(-Jd);
            // levels k >= Jd collapse onto the cell itself: geometric tail in closed form
            const double tail = std::pow(2.0, -Jd * (1.0 + alpha) - 1.0) / (1.0 - std::pow(2.0, -(1.0 + alpha)));
            worst = std::max(worst, std::abs(partial + tail - v) / v);
        }
        rep.add("unit-delta-power", "int_unit delta^alpha = 2^alpha/(2^{1+alpha}-1) within its bound", worst, 1e-12 * ts);
    }

    // norm equivalence stays inside the bracket
    {
        double worst = 0.0;
        for (double lambda : cfg.lambdas) {
            const auto [lo, hi] = equivalence_bracket(lambda);
            for (int s = 0; s < 10; ++s) {
                const auto f = generate_besov_sample(std::min(J, 8), L, 0.9, seed_of(900 + static_cast<std::uint64_t>(s)), {3});
                const double r = equivalence_ratio(f, lambda);
                worst = std::max({worst, lo - r, r - hi});
            }
        }
        rep.add("besov-equivalence", "Haar-weighted norm over Besov norm within [1/sqrt(2+c), sqrt 2]",
                std::max(worst, 0.0), 0.0);
    }

    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

}  // namespace dyadic
