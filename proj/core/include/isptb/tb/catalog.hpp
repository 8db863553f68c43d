#pragma once

#include "isptb/tb/env.hpp"
#include "isptb/tb/report.hpp"

#include <optional>
#include <string>
#include <vector>

namespace isptb::tb {

// Regression entry points shared by the CLI and the acceptance suite.
// Exit codes: 0 pass, 1 test failure or timeout, 2 usage/config/parse error.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

struct RunOptions {
    std::string test = "default";
    std::string config_path;
    std::optional<std::uint64_t> seed_override;
    bool trace = false;
    std::optional<std::string> report_path;
    bool quiet = false;
};

struct RunResult {
    int exit_code = kExitUsage;
    std::vector<Report> reports;     // one, or two for swap_dut
    std::string diagnostic;          // non-empty on exit 2
};

const std::vector<std::string>& catalog_names();

RunResult run_test(const RunOptions& options);

// `validate --regmap`: parses and validates a register-map document,
// printing one line per error. 0 if clean, 2 otherwise.
int validate_regmap_file(const std::string& path);

} // namespace isptb::tb
