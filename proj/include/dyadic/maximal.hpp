#pragma once

// Maximal operators on grid functions: the dyadic Hardy-Littlewood function,
// the sharp maximal function of order lambda (dyadic and grid-interval
// versions), the modulated Haar partial sums S^N_t and their maximal function,
// and checks of the pointwise bounds that tie them together.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <vector>

#include "dyadic/grid.hpp"
#include "dyadic/haar.hpp"
#include "dyadic/parallel.hpp"

namespace dyadic {

/// Real per-cell values.
using CellField = std::vector<double>;

/// max over dyadic I containing x, levels 0..J, of the mean of |f| on I.
inline CellField hardy_littlewood_dyadic(const GridFunction& f) {
    const int J = f.resolution();
    CellField out(f.size());
    std::vector<double> avg(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) avg[i] = out[i] = std::abs(f[i]);
    for (int j = J - 1; j >= 0; --j) {
        const std::size_t count = static_cast<std::size_t>(f.domain_length()) << j;
        for (std::size_t p = 0; p < count; ++p) avg[p] = 0.5 * (avg[2 * p] + avg[2 * p + 1]);
        const int shift = J - j;
        for (std::size_t i = 0; i < f.size(); ++i) out[i] = std::max(out[i], avg[i >> shift]);
    }
    return out;
}

/// max over dyadic I containing x, levels 0..J, of
/// |I|^-(1+lambda) int_I |f(y) - f(x)| dy.
inline CellField sharp_maximal_dyadic(const GridFunction& f, double lambda) {
    const int J = f.resolution();
    const double h = f.cell_width();
    CellField out(f.size(), 0.0);
    for (int j = 0; j < J; ++j) {  // level J is the cell itself: integral 0
        const std::size_t len = std::size_t{1} << (J - j);
        const double norm = std::pow(2.0, j * (1.0 + lambda));
        for (std::size_t i = 0; i < f.size(); ++i) {
            const std::size_t lo = (i / len) * len;
            double s = 0.0;
            for (std::size_t y = lo; y < lo + len; ++y) s += std::abs(f[y] - f[i]);
            out[i] = std::max(out[i], norm * s * h);
        }
    }
    return out;
}

/// Same supremum over every grid-aligned interval [a h, b h) containing the
/// cell of x inside [0, L). O(n^2) intervals per cell, O(n^3) overall. A lower
/// bound for the supremum over all real intervals.
inline CellField sharp_maximal_grid(const GridFunction& f, double lambda, unsigned threads = 1) {
    const std::size_t n = f.size();
    const double h = f.cell_width();
    CellField out(n, 0.0);
    parallel_for(n, threads, [&](std::size_t x) {
        std::vector<double> prefix(n + 1, 0.0);
        for (std::size_t y = 0; y < n; ++y) prefix[y + 1] = prefix[y] + std::abs(f[y] - f[x]);
        double best = 0.0;
        for (std::size_t a = 0; a <= x; ++a)
            for (std::size_t b = x + 1; b <= n; ++b) {
                const double len = static_cast<double>(b - a) * h;
                best = std::max(best, (prefix[b] - prefix[a]) * h / std::pow(len, 1.0 + lambda));
            }
        out[x] = best;
    });
    return out;
}

namespace detail {

/// Adds the level-j terms of the synthesis (coefficients times phase) into s.
inline void add_level(const HaarCoefficients& c, int j, complex phase, std::vector<complex>& s) {
    const int J = c.resolution();
    const auto lv = c.level(j);
    const double amp = std::pow(2.0, 0.5 * j);
    const int shift = J - j;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const std::size_t p = i >> shift;
        const bool left = ((i >> (shift - 1)) & 1U) == 0;
        s[i] += (left ? amp : -amp) * phase * lv[p];
    }
}

inline void require_no_coarse(const HaarCoefficients& c) {
    if (!c.coarse_is_zero(1e-12)) throw precondition_error("modulated sums need P_0 f = 0");
}

}  // namespace detail

/// S^N_t f = sum_{j <= N} sum_k e^{i t 2^{j beta}} <f, h^j_k> h^j_k. Zero for N < 0.
inline GridFunction oscillatory_partial_sum(const HaarCoefficients& c, double beta, double t, int max_level) {
    detail::require_no_coarse(c);
    std::vector<complex> s(static_cast<std::size_t>(c.domain_length()) << c.resolution());
    const int top = std::min(max_level, c.resolution() - 1);
    for (int j = 0; j <= top; ++j) detail::add_level(c, j, std::polar(1.0, t * std::pow(2.0, j * beta)), s);
    return {c.resolution(), c.domain_length(), std::move(s)};
}

/// fn(t_index, N, partial sum) for N = 0..min(N_max, J-1), for each t.
template <class Fn>
void for_each_partial_sum(const HaarCoefficients& c, double beta, std::span<const double> t_grid, int max_level,
                          Fn&& fn) {
    detail::require_no_coarse(c);
    const std::size_t n = static_cast<std::size_t>(c.domain_length()) << c.resolution();
    const int top = std::min(max_level, c.resolution() - 1);
    std::vector<complex> s(n);
    for (std::size_t ti = 0; ti < t_grid.size(); ++ti) {
        std::fill(s.begin(), s.end(), complex{});
        for (int j = 0; j <= top; ++j) {
            detail::add_level(c, j, std::polar(1.0, t_grid[ti] * std::pow(2.0, j * beta)), s);
            fn(ti, j, std::as_const(s));
        }
    }
}

/// t_i = i / (count + 1), i = 1..count.
inline std::vector<double> uniform_time_grid(std::size_t count) {
    std::vector<double> t(count);
    for (std::size_t i = 0; i < count; ++i) t[i] = static_cast<double>(i + 1) / static_cast<double>(count + 1);
    return t;
}

/// max over N <= N_max and t in the grid of |S^N_t f(x)|.
inline CellField star_maximal(const HaarCoefficients& c, double beta, std::span<const double> t_grid, int max_level) {
    if (t_grid.empty()) throw usage_error("star_maximal needs a non-empty time grid");
    CellField out(static_cast<std::size_t>(c.domain_length()) << c.resolution(), 0.0);
    for_each_partial_sum(c, beta, t_grid, max_level, [&](std::size_t, int, const std::vector<complex>& s) {
        for (std::size_t i = 0; i < s.size(); ++i) out[i] = std::max(out[i], std::abs(s[i]));
    });
    return out;
}

/// Outcome of a pointwise inequality lhs <= rhs checked on every cell.
struct InequalityCheck {
    std::size_t checked = 0;
    std::size_t violations = 0;
    /// max of lhs - rhs (negative when every cell has room to spare)
    double max_excess = -std::numeric_limits<double>::infinity();

    void record(double lhs, double rhs, double slack) {
        ++checked;
        max_excess = std::max(max_excess, lhs - rhs);
        if (lhs > rhs + slack) ++violations;
    }
    bool ok() const { return violations == 0; }
};

struct MaximalBoundsCheck {
    InequalityCheck per_time;  ///< S*_t f <= C t M# f + 2 M_dy f for each t
    InequalityCheck overall;   ///< S* f <= C M# f + 2 M_dy f
};

/// Checks both bounds with the dyadic sharp maximal function and
/// C = 2^(lambda-beta+1) / (2^(lambda-beta) - 1). slack is absolute, scaled by
/// the sup norm of f.
inline MaximalBoundsCheck check_maximal_bounds(const GridFunction& f, const BesovParams& p,
                                               std::span<const double> t_grid, double slack = 1e-12) {
    const auto c = analyze(f);
    if (!c.coarse_is_zero(1e-10)) throw precondition_error("maximal bounds need P_0 f = 0");
    auto c0 = c;
    for (auto& v : c0.coarse()) v = 0.0;
    const CellField sharp = sharp_maximal_dyadic(f, p.lambda());
    const CellField hl = hardy_littlewood_dyadic(f);
    const double C = p.c_max();
    const double tol = slack * std::max(f.scale(), 1.0);
    MaximalBoundsCheck out;
    std::vector<double> star_t(f.size()), star(f.size(), 0.0);
    const int top = c.resolution() - 1;
    for_each_partial_sum(c0, p.beta(), t_grid, top, [&](std::size_t ti, int N, const std::vector<complex>& s) {
        if (N == 0) std::fill(star_t.begin(), star_t.end(), 0.0);
        for (std::size_t i = 0; i < s.size(); ++i) star_t[i] = std::max(star_t[i], std::abs(s[i]));
        if (N == top) {
            for (std::size_t i = 0; i < s.size(); ++i) {
                out.per_time.record(star_t[i], C * t_grid[ti] * sharp[i] + 2.0 * hl[i], tol);
                star[i] = std::max(star[i], star_t[i]);
            }
        }
    });
    for (std::size_t i = 0; i < f.size(); ++i) out.overall.record(star[i], C * sharp[i] + 2.0 * hl[i], tol);
    return out;
}

struct RateBound {
    CellField lhs;  ///< sup_t |u(t)(x) - u0(x)| / t over the grid
    CellField rhs;  ///< rate_constant * M#_lambda u0(x), dyadic
    InequalityCheck check;
    /// largest lhs / rhs over cells with rhs > 0
    double max_ratio = 0.0;
};

/// sup_t |S_t u0(x) - u0(x)| / t <= 2 2^(lambda-beta) / (1 - 2^-(lambda-beta)) M#u0(x).
inline RateBound convergence_rate_bound(const GridFunction& f0, const BesovParams& p, std::span<const double> t_grid,
                                        double slack = 1e-12) {
    if (t_grid.empty()) throw usage_error("convergence_rate_bound needs a non-empty time grid");
    if (!f0.mean_zero_per_unit(1e-10)) throw precondition_error("convergence_rate_bound needs P_0 u0 = 0");
    auto c = analyze(f0);
    for (auto& v : c.coarse()) v = 0.0;
    const GridFunction base = synthesize(c);
    RateBound out;
    out.lhs.assign(f0.size(), 0.0);
    for (const double t : t_grid) {
        if (!(t > 0.0)) throw usage_error("time grid must be positive");
        const GridFunction u = oscillatory_partial_sum(c, p.beta(), t, c.resolution() - 1);
        for (std::size_t i = 0; i < u.size(); ++i) out.lhs[i] = std::max(out.lhs[i], std::abs(u[i] - base[i]) / t);
    }
    const CellField sharp = sharp_maximal_dyadic(f0, p.lambda());
    out.rhs.resize(f0.size());
    const double tol = slack * std::max(f0.scale(), 1.0);
    for (std::size_t i = 0; i < f0.size(); ++i) {
        out.rhs[i] = p.rate_constant() * sharp[i];
        out.check.record(out.lhs[i], out.rhs[i], tol);
        if (out.rhs[i] > 0.0) out.max_ratio = std::max(out.max_ratio, out.lhs[i] / out.rhs[i]);
    }
    return out;
}

/// |S^N_t g(x) - S^M_t g(x)| <= lip * sum_{j=M+1}^N 2^-j for all 0 <= M <= N < J.
inline InequalityCheck check_lipschitz_cauchy(const GridFunction& g, double lipschitz, double beta,
                                              std::span<const double> t_grid, double slack = 1e-12) {
    auto c = analyze(g);
    for (auto& v : c.coarse()) v = 0.0;
    const int J = c.resolution();
    const double tol = slack * std::max(g.scale(), 1.0);
    InequalityCheck out;
    std::vector<std::vector<complex>> sums(static_cast<std::size_t>(J));
    for_each_partial_sum(c, beta, t_grid, J - 1, [&](std::size_t, int N, const std::vector<complex>& s) {
        sums[static_cast<std::size_t>(N)] = s;
        if (N != J - 1) return;
        for (int M = 0; M < J; ++M)
            for (int Nn = M; Nn < J; ++Nn) {
                const double bound = lipschitz * (pow2(-M) - pow2(-Nn));  // sum_{M+1}^{N} 2^-j
                const auto& a = sums[static_cast<std::size_t>(Nn)];
                const auto& b = sums[static_cast<std::size_t>(M)];
                double worst = 0.0;
                for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
                out.record(worst, bound, tol);
            }
    });
    return out;
}

}  // namespace dyadic
