#pragma once

#include <string>

#include <json.hpp>

#include "ctraj/oracles.hpp"

namespace ctraj {

/// Serializes an OracleReport for the verify subcommand.
inline nlohmann::json report_to_json(const OracleReport& report) {
    nlohmann::json checks = nlohmann::json::array();
    for (const OracleCheck& c : report.checks) {
        checks.push_back({{"name", c.name},
                          {"max_residual", c.max_residual},
                          {"tolerance", c.tolerance},
                          {"verdict", c.pass ? "pass" : "fail"}});
    }
    return {{"summary", report.summary_pass() ? "pass" : "fail"},
            {"oracle", report.oracle_applicable ? "applicable" : "not_applicable"},
            {"checks", checks},
            {"notes", report.notes}};
}

}  // namespace ctraj
