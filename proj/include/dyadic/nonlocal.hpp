#pragma once

// The dyadic fractional derivative D^beta.
//
// Spectral form: D^beta h_I = |I|^-beta h_I.
// Integral form: D^beta f(x) = kappa_beta int_{R+} (f(x) - f(y)) / delta(x,y)^(1+beta) dy.
//
// For x in I the level set {y : delta(x,y) = 2^-j} is the half of the level-j
// ancestor of x that does not contain x, of measure 2^-(j+1). Summing over
// the ancestors of I gives
//
//     int (h_I(x) - h_I(y)) / delta^(1+beta) dy = K_beta |I|^-beta h_I(x),
//     K_beta = 1 + 1 / (2 (2^beta - 1)),
//
// so kappa_beta = 1 / K_beta = 2 (2^beta - 1) / (2^(beta+1) - 1).
//
// Grid functions live on [0, L) and are extended by zero to R+. Pairs inside
// the domain are summed exactly (delta is constant on a pair of cells); the
// region y >= L contributes f(x) times a closed-form kernel mass.

#include <cmath>
#include <cstdint>
#include <vector>

#include "dyadic/core.hpp"
#include "dyadic/grid.hpp"
#include "dyadic/haar.hpp"
#include "dyadic/parallel.hpp"

namespace dyadic {

/// K_beta.
inline double kernel_eigen_constant(double beta) { return 1.0 + 1.0 / (2.0 * (std::pow(2.0, beta) - 1.0)); }

/// kappa_beta = 2 (2^beta - 1) / (2^(beta+1) - 1).
inline double dbeta_prefactor(double beta) {
    const double g = std::pow(2.0, beta);
    return 2.0 * (g - 1.0) / (2.0 * g - 1.0);
}

/// int_{y >= L} delta(x,y)^-(1+beta) dy for any x in [0, L), L = 2^m:
/// sum_{s >= m+1} 2^-s beta / 2.
inline double exterior_kernel_mass(double beta, std::int64_t domain_length) {
    const int m = log2_exact(domain_length);
    return std::pow(2.0, -(m + 1) * beta) / (2.0 * (1.0 - std::pow(2.0, -beta)));
}

/// int_{delta(x,y) >= 2} delta^-(1+beta) dy over all of R+ = 1 / (2 (2^beta - 1)).
inline double far_kernel_mass(double beta) { return 1.0 / (2.0 * (std::pow(2.0, beta) - 1.0)); }

/// Multiplies detail level j by 2^{j beta}.
inline HaarCoefficients dbeta_spectral(const HaarCoefficients& c, double beta) {
    if (!c.coarse_is_zero(1e-12)) throw precondition_error("D^beta acts on functions with P_0 f = 0");
    HaarCoefficients out = c;
    for (int j = 0; j < c.resolution(); ++j) {
        const double m = std::pow(2.0, j * beta);
        for (auto& v : out.level(j)) v *= m;
    }
    return out;
}

/// synthesize(dbeta_spectral(analyze(f))).
inline GridFunction dbeta_spectral(const GridFunction& f, double beta) {
    return synthesize(dbeta_spectral(analyze(f), beta));
}

/// Unnormalised kernel integral split at delta = 2: near holds the pairs with
/// delta <= 1, far the pairs with delta >= 2 (in-domain and exterior).
struct TailSplit {
    GridFunction near;
    GridFunction far;
};

enum class KernelMethod { brute_force, level_set };

namespace detail {

/// Sums of f over every dyadic interval inside [0, L), levels -m..J, built
/// bottom-up by pairwise addition. sums[l + m][p] is the level-l interval p.
struct DyadicPyramid {
    int min_level;
    std::vector<std::vector<complex>> sums;

    explicit DyadicPyramid(const GridFunction& f) : min_level(-log2_exact(f.domain_length())) {
        const int J = f.resolution();
        sums.resize(static_cast<std::size_t>(J - min_level + 1));
        auto& top = sums.back();
        top.resize(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) top[i] = f[i] * f.cell_width();
        for (int l = J - 1; l >= min_level; --l) {
            const auto& fine = at(l + 1);
            auto& coarse = sums[static_cast<std::size_t>(l - min_level)];
            coarse.resize(fine.size() / 2);
            for (std::size_t p = 0; p < coarse.size(); ++p) coarse[p] = fine[2 * p] + fine[2 * p + 1];
        }
    }

    const std::vector<complex>& at(int level) const { return sums[static_cast<std::size_t>(level - min_level)]; }
};

}  // namespace detail

inline TailSplit dbeta_tail_split(const GridFunction& f, double beta, KernelMethod method = KernelMethod::level_set,
                                  unsigned threads = 1) {
    if (!(beta > 0.0 && beta < 1.0)) throw usage_error("beta must lie in (0, 1)");
    const int J = f.resolution();
    const int m = log2_exact(f.domain_length());
    const double h = f.cell_width();
    const double exterior = exterior_kernel_mass(beta, f.domain_length());
    std::vector<double> kernel(static_cast<std::size_t>(J + m));  // 2^{j(1+beta)}, j = -m..J-1
    for (int j = -m; j < J; ++j) kernel[static_cast<std::size_t>(j + m)] = std::pow(2.0, j * (1.0 + beta));

    std::vector<complex> near(f.size()), far(f.size());
    if (method == KernelMethod::level_set) {
        const detail::DyadicPyramid pyr(f);
        parallel_for(f.size(), threads, [&](std::size_t i) {
            complex n{}, fa{};
            const complex fx = f[i];
            for (int j = J - 1; j >= -m; --j) {
                // sibling of x's level-(j+1) ancestor
                const std::size_t q = (i >> (J - j - 1)) ^ 1U;
                const complex term =
                    kernel[static_cast<std::size_t>(j + m)] * (fx * pow2(-(j + 1)) - pyr.at(j + 1)[q]);
                (j >= 0 ? n : fa) += term;
            }
            near[i] = n;
            far[i] = fa + fx * exterior;
        });
    } else {
        parallel_for(f.size(), threads, [&](std::size_t x) {
            complex n{}, fa{};
            const complex fx = f[x];
            for (std::size_t y = 0; y < f.size(); ++y) {
                if (y == x) continue;
                const int j = common_level(static_cast<std::int64_t>(x), static_cast<std::int64_t>(y), J);
                const complex term = (fx - f[y]) * kernel[static_cast<std::size_t>(j + m)];
                (j >= 0 ? n : fa) += term;
            }
            near[x] = n * h;
            far[x] = fa * h + fx * exterior;
        });
    }
    return {GridFunction(J, f.domain_length(), std::move(near)), GridFunction(J, f.domain_length(), std::move(far))};
}

/// kappa_beta int_{R+} (f(x) - f(y)) / delta^(1+beta) dy at every cell.
inline GridFunction dbeta_integral(const GridFunction& f, double beta, KernelMethod method = KernelMethod::level_set,
                                   unsigned threads = 1) {
    auto split = dbeta_tail_split(f, beta, method, threads);
    split.near += split.far;
    split.near *= dbeta_prefactor(beta);
    return std::move(split.near);
}

}  // namespace dyadic
