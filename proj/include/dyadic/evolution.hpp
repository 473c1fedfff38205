#pragma once

// The semigroup solving i du/dt = D^beta u, u(0) = u0, with P_0 u0 = 0:
// the Haar coefficient of level j evolves as exp(-i t 2^{j beta}).

#include <cmath>
#include <complex>
#include <numbers>

#include "dyadic/besov.hpp"
#include "dyadic/grid.hpp"
#include "dyadic/haar.hpp"

namespace dyadic {

inline HaarCoefficients evolve(const HaarCoefficients& c0, double beta, double t) {
    if (!c0.coarse_is_zero(1e-12)) throw precondition_error("evolution needs P_0 u0 = 0");
    HaarCoefficients out = c0;
    for (int j = 0; j < c0.resolution(); ++j) {
        const complex phase = std::polar(1.0, -t * std::pow(2.0, j * beta));
        for (auto& v : out.level(j)) v *= phase;
    }
    return out;
}

/// u(t) for fixed initial data and parameters.
struct EvolutionState {
    BesovParams params;
    HaarCoefficients initial;
    double time = 0.0;

    HaarCoefficients coefficients() const { return evolve(initial, params.beta(), time); }
    GridFunction function() const { return synthesize(coefficients()); }
};

/// ||u(t) - u(s)|| in the dyadic Besov norm of order lambda.
inline double besov_continuity_modulus(const HaarCoefficients& c0, const BesovParams& p, double t, double s) {
    if (!c0.coarse_is_zero(1e-12)) throw precondition_error("evolution needs P_0 u0 = 0");
    double total = 0.0;
    for (int j = 0; j < c0.resolution(); ++j) {
        const double w = std::pow(2.0, j * p.beta());
        const double d = std::norm(std::polar(1.0, -t * w) - std::polar(1.0, -s * w));
        double level_sum = 0.0;
        for (const auto& v : c0.level(j)) level_sum += std::norm(v);
        total += d * level_sum * (1.0 + besov_weight(j, p.lambda()));
    }
    return std::sqrt(total);
}

/// (u(t+h) - u(t)) / h + i D^beta u(t) as coefficients.
inline HaarCoefficients pde_defect(const HaarCoefficients& c0, double beta, double t, double h) {
    if (h == 0.0) throw usage_error("step h must be nonzero");
    HaarCoefficients out = evolve(c0, beta, t);
    for (int j = 0; j < c0.resolution(); ++j) {
        const double w = std::pow(2.0, j * beta);
        // (e^{-i h w} - 1)/h + i w, with cos - 1 = -2 sin^2 to avoid cancellation
        const double half = std::sin(0.5 * h * w);
        const complex q(-2.0 * half * half / h, w - std::sin(h * w) / h);
        for (auto& v : out.level(j)) v *= q;
    }
    return out;
}

/// Norm of the difference-quotient defect in the Besov space of order lambda - beta.
inline double pde_residual(const HaarCoefficients& c0, const BesovParams& p, double t, double h) {
    if (!(t > 0.0) || !(t + h > 0.0)) throw usage_error("pde_residual needs t > 0 and t + h > 0");
    return besov_norm(pde_defect(c0, p.beta(), t, h), p.lambda() - p.beta());
}

inline GridFunction evolve_pointwise(const GridFunction& f0, const BesovParams& p, double t) {
    if (!f0.mean_zero_per_unit()) throw precondition_error("evolution needs P_0 u0 = 0");
    auto c = analyze(f0);
    for (auto& v : c.coarse()) v = 0.0;
    return synthesize(evolve(c, p.beta(), t));
}

/// max_x |u(t)(x) - u0(x)|.
inline double max_deviation(const HaarCoefficients& c0, double beta, double t) {
    return max_abs_diff(synthesize(evolve(c0, beta, t)), synthesize(c0));
}

}  // namespace dyadic
