#pragma once

// Machine-readable verification reports.
//
// JSON schema (version 1):
//   {"version": 1, "suite": str,
//    "cases": [{"id": str, "anchor": str, "residual": num, "tol": num, "pass": bool}],
//    "pass": bool, "seconds": num}

#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "dyadic/core.hpp"

namespace dyadic {

inline constexpr int report_schema_version = 1;

struct VerificationCase {
    std::string id;
    std::string anchor;  ///< the identity or inequality being checked
    double residual = 0.0;
    double tol = 0.0;
    bool pass = false;
};

struct VerificationReport {
    std::string suite;
    std::vector<VerificationCase> cases;
    double seconds = 0.0;

    /// Adds a case; it passes iff the residual is finite, non-negative and <= tol.
    const VerificationCase& add(std::string id, std::string anchor, double residual, double tol) {
        const bool ok = std::isfinite(residual) && residual >= 0.0 && residual <= tol;
        cases.push_back({std::move(id), std::move(anchor), residual, tol, ok});
        return cases.back();
    }

    bool pass() const {
        for (const auto& c : cases)
            if (!c.pass) return false;
        return !cases.empty();
    }

    const VerificationCase* find(const std::string& id) const {
        for (const auto& c : cases)
            if (c.id == id) return &c;
        return nullptr;
    }
};

inline nlohmann::json to_json(const VerificationReport& r) {
    nlohmann::json cases = nlohmann::json::array();
    for (const auto& c : r.cases) {
        // JSON has no inf/nan; report non-finite residuals as null
        nlohmann::json residual = std::isfinite(c.residual) ? nlohmann::json(c.residual) : nlohmann::json();
        cases.push_back({{"id", c.id}, {"anchor", c.anchor}, {"residual", residual}, {"tol", c.tol}, {"pass", c.pass}});
    }
    return {{"version", report_schema_version},
            {"suite", r.suite},
            {"cases", cases},
            {"pass", r.pass()},
            {"seconds", r.seconds}};
}

inline VerificationReport report_from_json(const nlohmann::json& j) {
    try {
        if (j.at("version").get<int>() != report_schema_version) throw format_error("unsupported report version");
        VerificationReport r;
        r.suite = j.at("suite").get<std::string>();
        r.seconds = j.at("seconds").get<double>();
        for (const auto& c : j.at("cases")) {
            const auto& res = c.at("residual");
            r.cases.push_back({c.at("id").get<std::string>(), c.at("anchor").get<std::string>(),
                               res.is_null() ? NAN : res.get<double>(), c.at("tol").get<double>(),
                               c.at("pass").get<bool>()});
        }
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw format_error(std::string("malformed report: ") + e.what());
    }
}

inline void write_report(const VerificationReport& r, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw usage_error("cannot open '" + path + "' for writing");
    out << to_json(r).dump(2) << '\n';
}

}  // namespace dyadic
