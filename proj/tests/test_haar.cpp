#include <gtest/gtest.h>

#include <sstream>

#include "dyadic/haar.hpp"
#include "dyadic/samples.hpp"
#include "oracles.hpp"

using namespace dyadic;

namespace {

oracle::Values values_of(const GridFunction& f) { return {f.values().begin(), f.values().end()}; }

}  // namespace

TEST(HaarEval, Definition) {
    EXPECT_DOUBLE_EQ(haar_eval(DyadicInterval(0, 1), GridPoint::from_real(0.25, 4)), 1.0);
    EXPECT_DOUBLE_EQ(haar_eval(DyadicInterval(0, 1), GridPoint::from_real(0.75, 4)), -1.0);
    EXPECT_DOUBLE_EQ(haar_eval(DyadicInterval(1, 1), GridPoint::from_real(0.75, 4)), 0.0);
    EXPECT_DOUBLE_EQ(haar_eval(DyadicInterval(2, 2), GridPoint::from_real(0.3, 4)), 2.0);
    EXPECT_THROW(haar_eval(DyadicInterval(3, 1), GridPoint::from_real(0.0, 2)), resolution_error);
    EXPECT_THROW(haar_function(DyadicInterval(4, 1), 4, 1), resolution_error);
}

TEST(Analyze, SingleHaarFunction) {
    const auto c = analyze(haar_function(DyadicInterval(2, 1), 5, 1));
    c.for_each_detail([](int j, std::int64_t k, complex v) {
        EXPECT_NEAR(std::abs(v - complex(j == 2 && k == 1 ? 1.0 : 0.0)), 0.0, 1e-15);
    });
    EXPECT_EQ(c.coarse()[0], complex(0.0));
}

TEST(Analyze, Constant) {
    const auto c = analyze(GridFunction::sample(5, 1, [](double) { return 1.0; }));
    EXPECT_EQ(c.coarse()[0], complex(1.0));
    for (const auto& v : c.detail()) EXPECT_EQ(v, complex(0.0));
}

TEST(Analyze, MatchesInnerProductOracle) {
    constexpr int J = 6;
    const auto c0 = random_detail_coefficients(J, 2, 11);
    auto f = synthesize(c0);
    f += GridFunction::sample(J, 2, [](double x) { return x * x; });
    const auto vals = values_of(f);
    const auto c = analyze(f);
    c.for_each_detail([&](int j, std::int64_t k, complex v) {
        EXPECT_NEAR(std::abs(v - oracle::inner(vals, J, j, k)), 0.0, 1e-13 * f.scale());
    });
}

TEST(Synthesize, RoundTripAndLinearity) {
    const auto c1 = random_detail_coefficients(7, 4, 1), c2 = random_detail_coefficients(7, 4, 2);
    const auto back = analyze(synthesize(c1));
    for (std::size_t i = 0; i < c1.detail().size(); ++i) EXPECT_NEAR(std::abs(back.detail()[i] - c1.detail()[i]), 0.0, 1e-13);
    const complex a(0.5, -2.0);
    EXPECT_LE(max_abs_diff(synthesize(a * c1 + c2), a * synthesize(c1) + synthesize(c2)), 1e-13);
    HaarCoefficients single(4, 1);
    single.at(0, 1) = 1.0;
    EXPECT_EQ(max_abs_diff(synthesize(single), haar_function(DyadicInterval(0, 1), 4, 1)), 0.0);
}

TEST(Synthesize, Parseval) {
    auto f = synthesize(random_detail_coefficients(8, 2, 9));
    f += GridFunction::sample(8, 2, [](double x) { return std::sin(5 * x); });
    const double e = f.l2_norm() * f.l2_norm();
    EXPECT_NEAR(analyze(f).energy(), e, 1e-12 * e);
}

TEST(PartialSum, Levels) {
    const auto c = random_detail_coefficients(6, 1, 4);
    EXPECT_LE(max_abs_diff(partial_sum(c, 5), synthesize(c)), 1e-14);
    EXPECT_LE(max_abs_diff(partial_sum(c, 99), synthesize(c)), 1e-14);
    HaarCoefficients only1(6, 1);
    only1.at(1, 2) = 3.0;
    EXPECT_EQ(partial_sum(only1, 0).scale(), 0.0);
}

TEST(PartialSum, EqualsLevelAverages) {
    constexpr int J = 6, N = 2;
    const auto f = GridFunction::sample(J, 1, [](double x) { return std::exp(x) * std::cos(9 * x); });
    auto c = analyze(f);
    const auto p = partial_sum(c, N);
    const complex mean = c.coarse()[0];
    const std::size_t len = std::size_t{1} << (J - N - 1);
    for (std::size_t i = 0; i < f.size(); ++i) {
        complex avg{};
        const std::size_t lo = i / len * len;
        for (std::size_t y = lo; y < lo + len; ++y) avg += f[y];
        avg /= static_cast<double>(len);
        EXPECT_NEAR(std::abs(p[i] - (avg - mean)), 0.0, 1e-13);
    }
}

TEST(CoeffsCsv, RoundTripAndErrors) {
    auto c = random_detail_coefficients(4, 2, 3);
    c.coarse()[1] = complex(0.25, 1);
    std::stringstream ss;
    write_coeffs_csv(c, ss);
    const auto d = read_coeffs_csv(ss);
    for (std::size_t i = 0; i < c.detail().size(); ++i) EXPECT_EQ(c.detail()[i], d.detail()[i]);
    EXPECT_EQ(d.coarse()[1], complex(0.25, 1));
    std::stringstream dup("# haarcoeffs v1 J=2 L=1\n0,1,1,0\n0,1,2,0\n");
    EXPECT_THROW(read_coeffs_csv(dup), format_error);
    std::stringstream range("# haarcoeffs v1 J=2 L=1\n2,1,1,0\n");
    EXPECT_THROW(read_coeffs_csv(range), format_error);
}
