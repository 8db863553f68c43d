#pragma once

#include "isptb/sim/kernel.hpp"
#include "isptb/tb/component.hpp"
#include "isptb/tb/scoreboard.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace isptb::tb {

// Machine-readable run summary. Every field except wall_ms is a pure
// function of (config, seed).
struct Report {
    std::string test;
    std::uint64_t seed = 0;
    TestOutcome outcome = TestOutcome::Pass;
    int frames_compared = 0;
    std::vector<MismatchRecord> mismatches;
    std::vector<std::string> component_errors;
    sim::SimTime sim_end_time = 0;
    double wall_ms = 0.0;
};

// JSON document with keys: test, seed, outcome, frames_compared, mismatches,
// component_errors, sim_end_time, wall_ms. Key order is stable.
std::string to_json(const Report& report);

// Same document with the wall-duration field removed; byte-identical across
// reruns of a deterministic test.
std::string to_json_without_wall(const Report& report);

void write_report_file(const Report& report, const std::string& path);

} // namespace isptb::tb
