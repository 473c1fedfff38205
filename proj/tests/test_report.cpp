#include <gtest/gtest.h>

#include "dyadic/report.hpp"
#include "dyadic/verify.hpp"

using namespace dyadic;

TEST(Report, PassRules) {
    VerificationReport r;
    EXPECT_FALSE(r.pass());
    EXPECT_TRUE(r.add("a", "x", 1e-13, 1e-12).pass);
    EXPECT_TRUE(r.pass());
    EXPECT_FALSE(r.add("b", "y", NAN, 1.0).pass);
    EXPECT_FALSE(r.add("c", "z", -1.0, 1.0).pass);
    EXPECT_FALSE(r.pass());
    ASSERT_NE(r.find("b"), nullptr);
    EXPECT_EQ(r.find("nope"), nullptr);
}

TEST(Report, JsonRoundTrip) {
    VerificationReport r;
    r.suite = "s";
    r.seconds = 1.5;
    r.add("a", "anchor a", 0.25, 1.0);
    r.add("b", "anchor b", INFINITY, 1.0);
    const auto j = to_json(r);
    EXPECT_EQ(j.at("version"), 1);
    EXPECT_TRUE(j.at("cases")[1].at("residual").is_null());
    EXPECT_FALSE(j.at("pass").get<bool>());
    const auto back = report_from_json(nlohmann::json::parse(j.dump()));
    ASSERT_EQ(back.cases.size(), 2u);
    EXPECT_EQ(back.cases[0].residual, 0.25);
    EXPECT_TRUE(std::isnan(back.cases[1].residual));
    EXPECT_EQ(back.cases[1].anchor, "anchor b");
    EXPECT_THROW(report_from_json(nlohmann::json{{"version", 2}}), format_error);
    EXPECT_THROW(report_from_json(nlohmann::json{{"version", 1}}), format_error);
}

TEST(Verify, DefaultConfigPasses) {
    const auto r = run_verify({});
    EXPECT_GE(r.cases.size(), 12u);
    for (const auto& c : r.cases) EXPECT_TRUE(c.pass) << c.id << " residual " << c.residual;
    EXPECT_TRUE(r.pass());
}

TEST(Verify, DeterministicForFixedSeed) {
    VerifyConfig cfg;
    cfg.samples = 3;
    cfg.time_points = 32;
    const auto a = run_verify(cfg), b = run_verify(cfg);
    ASSERT_EQ(a.cases.size(), b.cases.size());
    for (std::size_t i = 0; i < a.cases.size(); ++i) EXPECT_EQ(a.cases[i].residual, b.cases[i].residual);
}

TEST(Verify, InjectedPrefactorFaultFailsEigenfunctionCase) {
    VerifyConfig cfg;
    cfg.fault = InjectedFault::drop_prefactor;
    cfg.samples = 2;
    cfg.time_points = 16;
    const auto r = run_verify(cfg);
    EXPECT_FALSE(r.pass());
    EXPECT_FALSE(r.find("dbeta-eigenfunction")->pass);
    for (const auto& c : r.cases)
        if (c.id != "dbeta-eigenfunction") {
            EXPECT_TRUE(c.pass) << c.id;
        }
}

TEST(Verify, RejectsBadConfig) {
    VerifyConfig cfg;
    cfg.beta = 0.9;
    cfg.lambda = 0.5;
    EXPECT_THROW(run_verify(cfg), usage_error);
    cfg = {};
    cfg.resolution = 13;
    EXPECT_THROW(run_verify(cfg), usage_error);
    cfg = {};
    cfg.betas = {1.2};
    EXPECT_THROW(run_verify(cfg), usage_error);
}
