#pragma once

// Reproducible test inputs: Besov-type samples built from decaying Haar
// coefficients, sampled Lipschitz functions, and the sequence that converges
// to zero in Besov norm but not pointwise.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "dyadic/grid.hpp"
#include "dyadic/haar.hpp"

namespace dyadic {

struct BesovSampleOptions {
    /// Nonzero coefficients per level (capped by the number of intervals).
    std::size_t per_level = 1;
};

/// Coefficients c_{j,k} = s 2^-j(lambda_target + 1/2) 2^-j/2 with random
/// signs s and random positions. No P_0 part, no levels >= J.
inline HaarCoefficients besov_sample_coefficients(int resolution, std::int64_t domain_length,
                                                  double lambda_target, std::uint64_t seed,
                                                  BesovSampleOptions opts = {}) {
    if (!(lambda_target > 0.0 && lambda_target < 1.0))
        throw usage_error("lambda_target must lie in (0, 1)");
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution sign(0.5);
    HaarCoefficients c(resolution, domain_length);
    std::vector<std::int64_t> slots;
    for (int j = 0; j < resolution; ++j) {
        auto lv = c.level(j);
        slots.resize(lv.size());
        std::iota(slots.begin(), slots.end(), std::int64_t{0});
        const std::size_t count = std::min(opts.per_level, lv.size());
        // partial Fisher-Yates for distinct positions
        for (std::size_t i = 0; i < count; ++i) {
            std::uniform_int_distribution<std::size_t> pick(i, slots.size() - 1);
            std::swap(slots[i], slots[pick(rng)]);
            const double amp = std::pow(2.0, -j * (lambda_target + 0.5)) * std::pow(2.0, -0.5 * j);
            lv[static_cast<std::size_t>(slots[i])] = sign(rng) ? amp : -amp;
        }
    }
    return c;
}

inline GridFunction generate_besov_sample(int resolution, std::int64_t domain_length, double lambda_target,
                                          std::uint64_t seed, BesovSampleOptions opts = {}) {
    return synthesize(besov_sample_coefficients(resolution, domain_length, lambda_target, seed, opts));
}

/// Dense element of span{h_I : |I| <= 1}: every detail coefficient is an
/// independent standard complex normal, the P_0 part is zero.
inline HaarCoefficients random_detail_coefficients(int resolution, std::int64_t domain_length, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    HaarCoefficients c(resolution, domain_length);
    for (auto& v : c.detail()) {
        const double re = gauss(rng);
        v = complex(re, gauss(rng));
    }
    return c;
}

struct LipschitzSample {
    GridFunction function;
    /// ||g'||_inf of the underlying piecewise-linear g.
    double lipschitz = 0.0;
};

/// Random piecewise-linear g with knots every 1/8 and |g'| <= slope_bound,
/// sampled at cell left endpoints, with the unit means removed.
inline LipschitzSample generate_lipschitz_sample(int resolution, std::int64_t domain_length,
                                                 double slope_bound, std::uint64_t seed) {
    if (!(slope_bound >= 0.0)) throw usage_error("slope bound must be non-negative");
    constexpr int knots_per_unit = 8;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> slope(-slope_bound, slope_bound);
    const std::size_t segments = static_cast<std::size_t>(domain_length) * knots_per_unit;
    std::vector<double> slopes(segments), base(segments + 1, 0.0);
    double lip = 0.0;
    for (std::size_t s = 0; s < segments; ++s) {
        slopes[s] = slope_bound > 0.0 ? slope(rng) : 0.0;
        lip = std::max(lip, std::abs(slopes[s]));
        base[s + 1] = base[s] + slopes[s] / knots_per_unit;
    }
    auto g = GridFunction::sample(resolution, domain_length, [&](double x) {
        const auto s = std::min(static_cast<std::size_t>(x * knots_per_unit), segments - 1);
        return base[s] + slopes[s] * (x - static_cast<double>(s) / knots_per_unit);
    });
    return {g - project_P0(g), lip};
}

/// f_n = 2^-j/2 h^j_{n - 2^j} with 2^j <= n < 2^(j+1); the 0-based offset
/// n - 2^j is the interval of 1-based position n - 2^j + 1.
inline DyadicInterval counterexample_interval(std::int64_t n) {
    if (n < 1) throw usage_error("counterexample index must be >= 1");
    const int j = static_cast<int>(std::bit_width(static_cast<std::uint64_t>(n))) - 1;
    return {j, n - (std::int64_t{1} << j) + 1};
}

inline HaarCoefficients counterexample_coefficients(std::int64_t n, int resolution) {
    const DyadicInterval I = counterexample_interval(n);
    if (I.level() >= resolution) throw resolution_error("counterexample term finer than the grid");
    HaarCoefficients c(resolution, 1);
    c.at(I) = std::pow(2.0, -0.5 * I.level());
    return c;
}

}  // namespace dyadic
