#include <gtest/gtest.h>

#include "dyadic/nonlocal.hpp"
#include "dyadic/samples.hpp"
#include "oracles.hpp"

using namespace dyadic;

namespace {

oracle::Values values_of(const GridFunction& f) { return {f.values().begin(), f.values().end()}; }

}  // namespace

TEST(Constants, FrozenValues) {
    EXPECT_NEAR(dbeta_prefactor(0.25), 0.27452867343363693493, 1e-15);
    EXPECT_NEAR(dbeta_prefactor(0.5), 0.4530818393219728432, 1e-15);
    EXPECT_NEAR(dbeta_prefactor(0.75), 0.57691400125915990002, 1e-15);
    EXPECT_NEAR(kernel_eigen_constant(0.5), 2.2071067811865475244, 1e-15);
    EXPECT_NEAR(far_kernel_mass(0.25), 2.6426067539416226008, 1e-14);
    for (double b : {0.25, 0.5, 0.75}) EXPECT_NEAR(dbeta_prefactor(b) * kernel_eigen_constant(b), 1.0, 1e-15);
}

TEST(DbetaSpectral, Examples) {
    HaarCoefficients c(5, 1);
    c.at(2, 1) = 1.0;
    EXPECT_NEAR(std::abs(dbeta_spectral(c, 0.5).at(2, 1) - complex(2.0)), 0.0, 1e-15);
    const auto r = random_detail_coefficients(6, 2, 8), s = random_detail_coefficients(6, 2, 9);
    const auto lhs = synthesize(dbeta_spectral(complex(2, 1) * r + s, 0.4));
    const auto rhs = complex(2, 1) * synthesize(dbeta_spectral(r, 0.4)) + synthesize(dbeta_spectral(s, 0.4));
    EXPECT_LE(max_abs_diff(lhs, rhs), 1e-12);
    c.coarse()[0] = 1.0;
    EXPECT_THROW(dbeta_spectral(c, 0.5), precondition_error);
}

TEST(DbetaIntegral, HaarFunctionAtPoint) {
    const DyadicInterval I(1, 1);
    const auto f = haar_function(I, 8, 1);
    const auto d = dbeta_integral(f, 0.5);
    const std::size_t cell = static_cast<std::size_t>(GridPoint::from_real(0.1, 8).cell);
    EXPECT_NEAR(d[cell].real(), 2.0, 1e-13);
    // the (2^b - 1)/2^b normalisation would give 1.2929 here
    const double unnormalised = d[cell].real() / dbeta_prefactor(0.5);
    EXPECT_NEAR(unnormalised * (std::sqrt(2.0) - 1.0) / std::sqrt(2.0), 1.2928932188134524, 1e-12);
}

TEST(DbetaIntegral, MatchesKernelOracle) {
    constexpr int J = 6;
    for (std::int64_t L : {1, 2, 4}) {
        auto f = synthesize(random_detail_coefficients(J, L, 40 + static_cast<std::uint64_t>(L)));
        f += GridFunction::sample(J, L, [](double x) { return std::cos(x); });  // P_0 part included
        const auto o = oracle::kernel_integral(values_of(f), J, L, 0.6);
        const auto split = dbeta_tail_split(f, 0.6, KernelMethod::level_set);
        for (std::size_t i = 0; i < f.size(); ++i)
            EXPECT_NEAR(std::abs(split.near[i] + split.far[i] - o[i]), 0.0, 1e-11 * std::abs(o[i]) + 1e-12);
    }
}

TEST(DbetaIntegral, EigenfunctionsForAllSmallIntervals) {
    for (double beta : {0.25, 0.5, 0.75})
        for (int j = 0; j <= 5; ++j)
            for (std::int64_t k = 1; k <= (1 << j); ++k) {
                const DyadicInterval I(j, k);
                const auto h = haar_function(I, 8, 1);
                const auto d = dbeta_integral(h, beta);
                EXPECT_LE(max_abs_diff(d, std::pow(2.0, j * beta) * h), 1e-12 * h.scale() * std::pow(2.0, j * beta));
            }
}

TEST(DbetaIntegral, AgreesWithSpectralOnSamples) {
    for (std::uint64_t s = 0; s < 5; ++s)
        for (double beta : {0.25, 0.5}) {
            const auto f = generate_besov_sample(8, 2, beta + 0.3, s, {3});
            const auto a = dbeta_spectral(f, beta), b = dbeta_integral(f, beta);
            EXPECT_LE((a - b).l2_norm(), 1e-10 * a.l2_norm());
        }
    EXPECT_EQ(dbeta_integral(GridFunction(6, 1), 0.5).scale(), 0.0);
}

TEST(DbetaIntegral, FastPathMatchesBruteForce) {
    const auto f = synthesize(random_detail_coefficients(7, 4, 77));
    for (double beta : {0.25, 0.75}) {
        const auto a = dbeta_tail_split(f, beta, KernelMethod::level_set, 3);
        const auto b = dbeta_tail_split(f, beta, KernelMethod::brute_force, 2);
        EXPECT_LE(max_abs_diff(a.near, b.near), 1e-12 * b.near.scale());
        EXPECT_LE(max_abs_diff(a.far, b.far), 1e-12 * b.far.scale());
    }
}

TEST(TailSplit, FarPartOfMeanZeroData) {
    // delta >= 2 pairs see only unit means, so for P_0 f = 0 the far part is
    // f(x) times the kernel mass beyond the unit interval
    for (std::int64_t L : {1, 2, 8}) {
        const auto f = synthesize(random_detail_coefficients(6, L, 3));
        const auto split = dbeta_tail_split(f, 0.4);
        EXPECT_LE(max_abs_diff(split.far, complex(far_kernel_mass(0.4)) * f), 1e-12 * f.scale());
        const auto total = dbeta_integral(f, 0.4);
        EXPECT_LE(max_abs_diff(total, complex(dbeta_prefactor(0.4)) * (split.near + split.far)), 1e-12 * total.scale());
    }
    // support in [0,1) on L = 2: nothing near on [1,2)
    auto c = random_detail_coefficients(5, 2, 4);
    for (int j = 0; j < 5; ++j) {
        auto lv = c.level(j);
        for (std::size_t p = lv.size() / 2; p < lv.size(); ++p) lv[p] = 0.0;
    }
    const auto split = dbeta_tail_split(synthesize(c), 0.5);
    for (std::size_t i = 32; i < 64; ++i) {
        EXPECT_NEAR(std::abs(split.near[i]), 0.0, 1e-14);
        EXPECT_NEAR(std::abs(split.far[i]), 0.0, 1e-14);
    }
}

TEST(DbetaIntegral, RejectsBadOrder) {
    EXPECT_THROW(dbeta_integral(GridFunction(3, 1), 0.0), usage_error);
    EXPECT_THROW(dbeta_integral(GridFunction(3, 1), 1.0), usage_error);
}
