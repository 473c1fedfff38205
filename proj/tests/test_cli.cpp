#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace {

const std::string cli = DYADIC_CLI_PATH;

int run(const std::string& args, const std::string& stdout_file = "/dev/null") {
    const std::string cmd = "'" + cli + "' " + args + " > " + stdout_file + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "dyadic_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

std::vector<std::vector<std::string>> read_rows(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(cell);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

TEST(Cli, VerifyExitCodes) {
    const auto report = scratch("report.json");
    EXPECT_EQ(run("verify --out " + report.string()), 0);
    std::ifstream in(report);
    const auto j = nlohmann::json::parse(in);
    EXPECT_TRUE(j.at("pass").get<bool>());
    EXPECT_GE(j.at("cases").size(), 12u);
    EXPECT_EQ(run("verify --beta 0.9 --lambda 0.5"), 2);
    EXPECT_EQ(run("verify --inject-fault prefactor --samples 2 --tpoints 16"), 1);
    EXPECT_EQ(run("verify --resolution 20"), 2);
    EXPECT_EQ(run("verify --no-such-flag"), 2);
    EXPECT_EQ(run(""), 2);
}

TEST(Cli, ConfigFileAndFlagPrecedence) {
    const auto cfg = scratch("bad.ini");
    std::ofstream(cfg) << "[verify]\nbeta=0.9\nlambda=0.5\n";
    EXPECT_EQ(run("--config " + cfg.string() + " verify"), 2);
    EXPECT_EQ(run("--config " + cfg.string() + " verify --beta 0.3 --lambda 0.7 --samples 2 --tpoints 16"), 0);
}

TEST(Cli, DbetaAndBesov) {
    const auto out = scratch("d.csv");
    EXPECT_EQ(run("dbeta --beta 0.4 --check --output " + out.string()), 0);
    EXPECT_EQ(read_rows(out).size(), 257u);
    EXPECT_EQ(run("dbeta --beta 1.5"), 2);
    EXPECT_EQ(run("dbeta --input /nonexistent.csv"), 2);
    EXPECT_EQ(run("besov --lambda 0.5 --resolution 6"), 0);
    EXPECT_EQ(run("dbeta --method spectral --input " + out.string()), 0);
}

TEST(Cli, EvolveTrajectory) {
    const auto out = scratch("traj.csv");
    EXPECT_EQ(run("evolve --residual --trajectory 0:1:4 --out " + out.string()), 0);
    const auto rows = read_rows(out);
    ASSERT_EQ(rows.size(), 6u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"t", "l2", "besov", "residual"}));
    for (std::size_t i = 2; i < rows.size(); ++i) EXPECT_EQ(rows[i][1], rows[1][1]);  // unitary
    EXPECT_EQ(run("evolve --trajectory 0:1"), 2);
}

TEST(Cli, MaximalReport) {
    const auto out = scratch("max.csv");
    EXPECT_EQ(run("maximal --tpoints 32 --resolution 6 --out " + out.string()), 0);
    const auto rows = read_rows(out);
    ASSERT_EQ(rows.size(), 65u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"cell", "M_dy", "M#_dy", "M#_grid", "Sstar", "lhs_rate", "rhs_rate",
                                                 "violation"}));
    for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_EQ(rows[i][7], "0");
}

TEST(Cli, ConvergeTrajectory) {
    const auto out = scratch("conv.csv");
    EXPECT_EQ(run("converge --seeds 20 --out " + out.string()), 0);
    const auto rows = read_rows(out);
    ASSERT_GT(rows.size(), 2u);
    double prev = INFINITY;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double dev = std::stod(rows[i][1]);
        EXPECT_LT(dev, prev);
        prev = dev;
        EXPECT_EQ(rows[i][3], "0");
    }
    EXPECT_LT(std::stod(rows.back()[2]), 1e-6);

    const auto zero = scratch("zero.csv");
    EXPECT_EQ(run("converge --sample zero --seeds 1 --m-max 5 --out " + zero.string()), 0);
    const auto zrows = read_rows(zero);
    for (std::size_t i = 1; i < zrows.size(); ++i) {
        EXPECT_EQ(std::stod(zrows[i][1]), 0.0);
        EXPECT_EQ(std::stod(zrows[i][2]), 0.0);
        EXPECT_EQ(zrows[i][3], "0");
    }
}
