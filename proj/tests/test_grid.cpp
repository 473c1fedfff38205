#include <gtest/gtest.h>

#include <sstream>

#include "dyadic/grid.hpp"
#include "dyadic/samples.hpp"

using namespace dyadic;

TEST(GridFunction, ShapeValidation) {
    EXPECT_NO_THROW(GridFunction(3, 2));
    EXPECT_THROW(GridFunction(3, 3), usage_error);
    EXPECT_THROW(GridFunction(-1, 1), usage_error);
    EXPECT_THROW(GridFunction(2, 1, std::vector<complex>(3)), usage_error);
    EXPECT_EQ(GridFunction(3, 2).size(), 16u);
}

TEST(GridFunction, SamplesLeftEndpoints) {
    const auto g = GridFunction::sample(2, 1, [](double x) { return x; });
    EXPECT_EQ(g[0], complex(0.0));
    EXPECT_EQ(g[3], complex(0.75));
    EXPECT_DOUBLE_EQ(g.scale(), 0.75);
}

TEST(GridFunction, ArithmeticChecksGrids) {
    GridFunction a(2, 1), b(3, 1);
    EXPECT_THROW(a += b, usage_error);
    const auto c = complex(2.0) * GridFunction(2, 1, {1, 2, 3, 4});
    EXPECT_EQ(c[3], complex(8.0));
}

TEST(ProjectP0, Examples) {
    const auto three = GridFunction::sample(4, 1, [](double) { return 3.0; });
    EXPECT_EQ(max_abs_diff(project_P0(three), three), 0.0);
    const auto half = GridFunction::sample(4, 1, [](double x) { return x < 0.5 ? 1.0 : 0.0; });
    const auto p = project_P0(half);
    for (const auto& v : p.values()) EXPECT_DOUBLE_EQ(v.real(), 0.5);
    const auto h = GridFunction::sample(4, 2, [](double x) { return std::fmod(x, 1.0) < 0.5 ? 1.0 : -1.0; });
    EXPECT_EQ(project_P0(h).scale(), 0.0);
}

TEST(BesovParams, Validation) {
    EXPECT_NO_THROW(BesovParams(0.7, 0.3));
    EXPECT_THROW(BesovParams(0.5, 0.9), usage_error);
    EXPECT_THROW(BesovParams(1.0, 0.3), usage_error);
    EXPECT_THROW(BesovParams(0.5, 0.0), usage_error);
    const BesovParams p(0.7, 0.3);
    EXPECT_NEAR(p.c_max(), 8.259625920253339144, 1e-14);
    EXPECT_NEAR(p.rate_constant(), 10.898641741799127663, 1e-14);
    EXPECT_DOUBLE_EQ(BesovParams(0.5, 0.25).c_lambda(), 2.0);
    EXPECT_DOUBLE_EQ(BesovParams(0.5, 0.25).cross_constant(), 1.0);
}

TEST(GridCsv, RoundTripIsBitExact) {
    const auto f = generate_besov_sample(6, 2, 0.6, 17) + complex(0, 1) * generate_besov_sample(6, 2, 0.4, 18);
    std::stringstream ss;
    write_csv(f, ss);
    const auto g = read_csv(ss);
    ASSERT_TRUE(g.same_grid(f));
    for (std::size_t i = 0; i < f.size(); ++i) EXPECT_EQ(f[i], g[i]);
}

TEST(GridCsv, Errors) {
    std::stringstream empty;
    EXPECT_THROW(read_csv(empty), format_error);
    std::stringstream short_file("# gridfunction v1 J=3 L=1\n0,1,0\n1,1,0\n2,1,0\n3,1,0\n4,1,0\n5,1,0\n6,1,0\n");
    EXPECT_THROW(read_csv(short_file), format_error);
    std::stringstream bad_header("# haarcoeffs v1 J=1 L=1\n0,1,0\n1,1,0\n");
    EXPECT_THROW(read_csv(bad_header), format_error);
    std::stringstream out_of_order("# gridfunction v1 J=1 L=1\n1,1,0\n0,1,0\n");
    EXPECT_THROW(read_csv(out_of_order), format_error);
    std::stringstream not_number("# gridfunction v1 J=1 L=1\n0,x,0\n1,1,0\n");
    EXPECT_THROW(read_csv(not_number), format_error);
}

TEST(Samples, BesovSampleIsDeterministicAndMeanZero) {
    const auto a = generate_besov_sample(8, 1, 0.6, 42);
    const auto b = generate_besov_sample(8, 1, 0.6, 42);
    EXPECT_EQ(max_abs_diff(a, b), 0.0);
    EXPECT_TRUE(a.mean_zero_per_unit());
    EXPECT_GT(max_abs_diff(a, generate_besov_sample(8, 1, 0.6, 43)), 0.0);
}

TEST(Samples, BesovSampleDecay) {
    // |c_j|^2 2^(2 j lambda) = 2^(-2 j (lambda_t + 1/2) - j + 2 j lambda): geometric in j
    const double lt = 0.6, lambda = lt - 0.1;
    const auto c = besov_sample_coefficients(10, 1, lt, 5, {3});
    double sum = 0.0, bound = 0.0;
    for (int j = 0; j < 10; ++j) {
        double level = 0.0;
        for (const auto& v : c.level(j)) level += std::norm(v);
        const double expect = std::min<double>(3, 1 << j) * std::pow(2.0, -2.0 * j * (lt + 1.0));
        EXPECT_NEAR(level, expect, 1e-14 * expect);
        sum += level * std::pow(2.0, 2.0 * lambda * j);
    }
    for (int j = 0; j < 200; ++j) bound += 3.0 * std::pow(2.0, -2.0 * j * (lt + 1.0 - lambda));
    EXPECT_LE(sum, bound);
}

TEST(Samples, Lipschitz) {
    const auto flat = generate_lipschitz_sample(8, 1, 0.0, 3);
    EXPECT_EQ(flat.function.scale(), 0.0);
    const auto g = generate_lipschitz_sample(8, 2, 2.0, 3);
    EXPECT_LE(g.lipschitz, 2.0);
    EXPECT_TRUE(g.function.mean_zero_per_unit(1e-12));
    for (std::size_t i = 0; i + 1 < g.function.size(); ++i) {
        if ((i + 1) % 256 == 0) continue;  // P_0 removal jumps between units
        EXPECT_LE(std::abs(g.function[i + 1] - g.function[i]), g.lipschitz * pow2(-8) * (1 + 1e-12));
    }
}

TEST(Samples, CounterexampleIndexing) {
    EXPECT_EQ(counterexample_interval(1), DyadicInterval(0, 1));
    EXPECT_EQ(counterexample_interval(2), DyadicInterval(1, 1));
    EXPECT_EQ(counterexample_interval(3), DyadicInterval(1, 2));
    EXPECT_EQ(counterexample_interval(8), DyadicInterval(3, 1));
    EXPECT_THROW(counterexample_interval(0), usage_error);
    EXPECT_THROW(counterexample_coefficients(1024, 10), resolution_error);
}
