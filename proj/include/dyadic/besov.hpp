#pragma once

// Dyadic Besov seminorm
//
//     |f|^2 = iint_Q |f(x) - f(y)|^2 / delta(x,y)^(1+2 lambda) dx dy,
//     Q = {delta < 2} = pairs in the same unit interval,
//
// computed by exact quadrature on the grid (two routes) and from Haar
// coefficients. For piecewise-constant f both are exact, and they agree term
// by term: every h_I contributes |<f,h_I>|^2 w(I) with
//
//     w(I) = (2 + c) |I|^-2 lambda - c,    c = 1 / (2^(2 lambda) - 1).
//
// The first term comes from B(I) itself (area |I|^2/2, jump 2|I|^-1/2); the
// second from the ancestors J of I, where B(J) meets C(I) in area |I||J|/2.

#include <algorithm>
#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "dyadic/core.hpp"
#include "dyadic/grid.hpp"
#include "dyadic/haar.hpp"

namespace dyadic {

inline double cross_constant(double lambda) { return 1.0 / (std::pow(2.0, 2.0 * lambda) - 1.0); }

/// w(I) for a level j >= 0 interval.
inline double besov_weight(int level, double lambda) {
    if (level < 0) throw precondition_error("Besov weight is defined for |I| <= 1 only");
    const double c = cross_constant(lambda);
    return (2.0 + c) * std::pow(2.0, 2.0 * lambda * level) - c;
}

inline double besov_weight(const DyadicInterval& I, double lambda) { return besov_weight(I.level(), lambda); }

enum class Quadrature { brute_force, level_set };

namespace detail {

/// 2^{j(1+2 lambda)} for j = 0..J-1.
inline std::vector<double> level_kernel(int resolution, double exponent) {
    std::vector<double> k(static_cast<std::size_t>(std::max(resolution, 0)));
    for (int j = 0; j < resolution; ++j) k[static_cast<std::size_t>(j)] = std::pow(2.0, j * exponent);
    return k;
}

/// Sum over cell pairs (a, b) of one unit block, a != b.
inline double seminorm_block_brute(std::span<const complex> v, int J, const std::vector<double>& kernel) {
    double total = 0.0;
    const std::size_t m = v.size();
    for (std::size_t a = 0; a < m; ++a) {
        double row = 0.0;
        for (std::size_t b = a + 1; b < m; ++b) {
            const int lvl = common_level(static_cast<std::int64_t>(a), static_cast<std::int64_t>(b), J);
            row += std::norm(v[a] - v[b]) * kernel[static_cast<std::size_t>(lvl)];
        }
        total += row;
    }
    return 2.0 * total;
}

/// Same sum organised by level sets: for I of level j with halves A, B,
///   iint_{A x B} |f(x)-f(y)|^2 = |B| V_A + |A| V_B + |A||B| |mean_A - mean_B|^2
/// where V is the within-half sum of squared deviations.
inline double seminorm_block_levels(std::span<const complex> v, int J, const std::vector<double>& kernel) {
    double total = 0.0;
    for (int j = 0; j < J; ++j) {
        const std::size_t half = std::size_t{1} << (J - j - 1);
        double level_sum = 0.0;
        for (std::size_t lo = 0; lo < v.size(); lo += 2 * half) {
            auto stats = [&](std::size_t first) {
                complex mean{};
                for (std::size_t i = first; i < first + half; ++i) mean += v[i];
                mean /= static_cast<double>(half);
                double var = 0.0;
                for (std::size_t i = first; i < first + half; ++i) var += std::norm(v[i] - mean);
                return std::pair{mean, var};
            };
            const auto [ma, va] = stats(lo);
            const auto [mb, vb] = stats(lo + half);
            const double m = static_cast<double>(half);
            level_sum += m * va + m * vb + m * m * std::norm(ma - mb);
        }
        total += 2.0 * kernel[static_cast<std::size_t>(j)] * level_sum;
    }
    return total;
}

}  // namespace detail

/// Exact quadrature of the seminorm squared.
inline double seminorm_sq_quadrature(const GridFunction& f, double lambda,
                                     Quadrature method = Quadrature::level_set) {
    const int J = f.resolution();
    const auto kernel = detail::level_kernel(J, 1.0 + 2.0 * lambda);
    const std::size_t m = f.cells_per_unit();
    const double h2 = f.cell_width() * f.cell_width();
    double total = 0.0;
    for (std::size_t u = 0; u < static_cast<std::size_t>(f.domain_length()); ++u) {
        const auto block = f.values().subspan(u * m, m);
        total += method == Quadrature::brute_force ? detail::seminorm_block_brute(block, J, kernel)
                                                   : detail::seminorm_block_levels(block, J, kernel);
    }
    return total * h2;
}

/// iint over Lambda_j of (phi(x)-phi(y)) conj(psi(x)-psi(y)), enumerated cell
/// pair by cell pair. Unweighted: delta is 2^-j throughout.
inline complex level_set_inner(int level, const GridFunction& phi, const GridFunction& psi) {
    if (!phi.same_grid(psi)) throw usage_error("grid functions live on different grids");
    complex s{};
    for_each_level_pair(level, phi.resolution(), phi.domain_length(), [&](std::int64_t a, std::int64_t b) {
        const auto ia = static_cast<std::size_t>(a);
        const auto ib = static_cast<std::size_t>(b);
        s += (phi[ia] - phi[ib]) * std::conj(psi[ia] - psi[ib]);
    });
    return s * (phi.cell_width() * phi.cell_width());
}

/// Polarized seminorm: sum_j 2^{j(1+2 lambda)} level_set_inner(j, phi, psi).
inline complex polarized_quadrature(const GridFunction& phi, const GridFunction& psi, double lambda) {
    complex s{};
    for (int j = 0; j < phi.resolution(); ++j)
        s += std::pow(2.0, j * (1.0 + 2.0 * lambda)) * level_set_inner(j, phi, psi);
    return s;
}

/// sum_I |c_I|^2 w(I). Defined on the span of {h_I : |I| <= 1}.
inline double seminorm_sq_coefficients(const HaarCoefficients& c, double lambda) {
    if (!c.coarse_is_zero(1e-12)) throw precondition_error("seminorm_sq_coefficients needs a zero P_0 part");
    double total = 0.0;
    for (int j = 0; j < c.resolution(); ++j) {
        double level_sum = 0.0;
        for (const auto& v : c.level(j)) level_sum += std::norm(v);
        total += level_sum * besov_weight(j, lambda);
    }
    return total;
}

/// sum_I |c_I|^2 |I|^-2 lambda.
inline double haar_besov_sum(const HaarCoefficients& c, double lambda) {
    double total = 0.0;
    for (int j = 0; j < c.resolution(); ++j) {
        double level_sum = 0.0;
        for (const auto& v : c.level(j)) level_sum += std::norm(v);
        total += level_sum * std::pow(2.0, 2.0 * lambda * j);
    }
    return total;
}

/// (||f||^2 + |f|^2)^1/2 with the seminorm by quadrature.
inline double besov_norm(const GridFunction& f, double lambda) {
    const double l2 = f.l2_norm();
    return std::sqrt(l2 * l2 + seminorm_sq_quadrature(f, lambda));
}

/// The same norm from coefficients: sum |c_I|^2 (1 + w(I)) plus the coarse energy.
inline double besov_norm(const HaarCoefficients& c, double lambda) {
    double total = 0.0;
    for (const auto& v : c.coarse()) total += std::norm(v);
    for (int j = 0; j < c.resolution(); ++j) {
        double level_sum = 0.0;
        for (const auto& v : c.level(j)) level_sum += std::norm(v);
        total += level_sum * (1.0 + besov_weight(j, lambda));
    }
    return std::sqrt(total);
}

/// (||f|| + (sum |c_I|^2 |I|^-2 lambda)^1/2) / ||f||_B.
inline double equivalence_ratio(const GridFunction& f, double lambda) {
    if (!f.mean_zero_per_unit()) throw precondition_error("equivalence_ratio needs P_0 f = 0");
    const double denom = besov_norm(f, lambda);
    if (!(denom > 0.0)) throw precondition_error("equivalence ratio undefined for the zero function");
    return (f.l2_norm() + std::sqrt(haar_besov_sum(analyze(f), lambda))) / denom;
}

/// Range of equivalence_ratio over all mean-zero f, from
/// 2|I|^-2 lambda <= w(I) <= (2 + c)|I|^-2 lambda and ||f|| <= the Haar sum.
inline std::pair<double, double> equivalence_bracket(double lambda) {
    return {1.0 / std::sqrt(2.0 + cross_constant(lambda)), std::sqrt(2.0)};
}

}  // namespace dyadic
