#include "isptb/tb/report.hpp"

#include <fstream>
#include <json.hpp>

namespace isptb::tb {

namespace {

nlohmann::json to_json_object(const Report& report) {
    nlohmann::json mismatches = nlohmann::json::array();
    for (const auto& m : report.mismatches) {
        mismatches.push_back({{"frame", m.frame},
                              {"x", m.x},
                              {"y", m.y},
                              {"expected", m.expected},
                              {"actual", m.actual}});
    }
    return {
        {"test", report.test},
        {"seed", report.seed},
        {"outcome", std::string(to_string(report.outcome))},
        {"frames_compared", report.frames_compared},
        {"mismatches", std::move(mismatches)},
        {"component_errors", report.component_errors},
        {"sim_end_time", report.sim_end_time},
        {"wall_ms", report.wall_ms},
    };
}

} // namespace

std::string to_json(const Report& report) { return to_json_object(report).dump(2) + "\n"; }

std::string to_json_without_wall(const Report& report) {
    auto j = to_json_object(report);
    j.erase("wall_ms");
    return j.dump(2) + "\n";
}

void write_report_file(const Report& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    out << to_json(report);
}

} // namespace isptb::tb
