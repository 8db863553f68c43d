#include "isptb/tb/catalog.hpp"

#include "isptb/cfg/regmap_xml.hpp"
#include "isptb/cfg/tb_config.hpp"
#include "isptb/fatal.hpp"
#include "isptb/isp/reg_layout.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace isptb::tb {

namespace {

struct CatalogEntry {
    std::string name;
    std::optional<cfg::PathKind> required_path;
    bool requires_fault = false;
    bool dual_run = false; // swap_dut: wrapper vs staged pipeline
};

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = {
        {"identity_host", cfg::PathKind::Host, false, false},
        {"full_cfg_host", cfg::PathKind::Host, false, false},
        {"full_cfg_cpu", cfg::PathKind::Cpu, false, false},
        {"random_regression", cfg::PathKind::Host, false, false},
        {"fault_detect", cfg::PathKind::Host, true, false},
        {"swap_dut", cfg::PathKind::Host, false, true},
    };
    return entries;
}

std::string slurp_or_empty(const std::string& path, bool* ok) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) {
        *ok = false;
        return {};
    }
    *ok = true;
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct SingleRun {
    Report report;
    TestOutcome outcome;
};

SingleRun run_once(const cfg::TbConfig& config, const std::string& base_dir,
                   const std::string& test_name, bool trace,
                   const std::string& trace_path) {
    Testbench bench(config, isp::dut_address_map(), base_dir);

    std::ofstream trace_file;
    if (trace) {
        trace_file.open(trace_path, std::ios::binary);
        bench.env().kernel().set_trace_sink(
            [&trace_file](sim::SimTime t, std::uint64_t seq, std::string_view label) {
                trace_file << t << ' ' << seq << ' ' << label << '\n';
            });
    }

    const auto start = std::chrono::steady_clock::now();
    const TestOutcome outcome = bench.run();
    const double wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return SingleRun{bench.make_report(test_name, wall_ms), outcome};
}

} // namespace

const std::vector<std::string>& catalog_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& e : catalog()) out.push_back(e.name);
        return out;
    }();
    return names;
}

RunResult run_test(const RunOptions& options) {
    RunResult result;

    const CatalogEntry* entry = nullptr;
    if (options.test != "default") {
        for (const auto& e : catalog()) {
            if (e.name == options.test) entry = &e;
        }
        if (!entry) {
            result.diagnostic = "unknown test '" + options.test + "'; see list-tests";
            return result;
        }
    }

    bool ok = false;
    const std::string text = slurp_or_empty(options.config_path, &ok);
    if (!ok) {
        result.diagnostic = "cannot open config '" + options.config_path + "'";
        return result;
    }
    auto parsed = cfg::parse_tb_config(text);
    if (!parsed.ok()) {
        std::ostringstream os;
        os << "config '" << options.config_path << "' is invalid:";
        for (const auto& e : parsed.errors) {
            os << "\n  [" << cfg::to_string(e.code) << "] " << e.detail;
        }
        result.diagnostic = os.str();
        return result;
    }
    cfg::TbConfig config = *parsed.config;
    if (options.seed_override) config.seed = *options.seed_override;
    if (options.report_path) config.report_path = *options.report_path;

    if (entry) {
        if (entry->required_path && config.path_kind != *entry->required_path) {
            result.diagnostic = "test '" + options.test + "' requires path kind " +
                                std::string(cfg::to_string(*entry->required_path));
            return result;
        }
        if (entry->requires_fault && !config.fault) {
            result.diagnostic = "test '" + options.test + "' needs a <fault> in the config";
            return result;
        }
    }

    const std::string base_dir =
        std::filesystem::path(options.config_path).parent_path().string();

    auto announce = [&](const Report& report) {
        if (options.quiet) return;
        std::cout << options.test << ": " << to_string(report.outcome) << " (frames "
                  << report.frames_compared << ", mismatches " << report.mismatches.size()
                  << ", sim " << report.sim_end_time << " ns)\n";
    };

    try {
        if (entry && entry->dual_run) {
            // Same configuration through both DUT kinds; the testbench does
            // not change.
            cfg::TbConfig wrapper_cfg = config;
            wrapper_cfg.dut_kind = cfg::DutKind::ReferenceWrapper;
            cfg::TbConfig staged_cfg = config;
            staged_cfg.dut_kind = cfg::DutKind::StagedPipeline;

            auto a = run_once(wrapper_cfg, base_dir, options.test, options.trace,
                              config.report_path + ".wrapper.trace");
            auto b = run_once(staged_cfg, base_dir, options.test, options.trace,
                              config.report_path + ".staged.trace");

            write_report_file(a.report, config.report_path + ".wrapper.json");
            write_report_file(b.report, config.report_path + ".staged.json");
            write_report_file(b.report, config.report_path);

            // Reports must agree once timing fields are set aside.
            auto strip = [](Report r) {
                r.wall_ms = 0;
                r.sim_end_time = 0;
                return to_json(r);
            };
            const bool equal = strip(a.report) == strip(b.report);
            const bool passed = a.outcome == TestOutcome::Pass &&
                                b.outcome == TestOutcome::Pass && equal;
            announce(a.report);
            announce(b.report);
            if (!options.quiet && !equal) {
                std::cout << options.test << ": reports diverge between dut kinds\n";
            }
            result.reports = {a.report, b.report};
            result.exit_code = passed ? kExitPass : kExitFail;
            return result;
        }

        auto single = run_once(config, base_dir, options.test, options.trace,
                               config.report_path + ".trace");
        write_report_file(single.report, config.report_path);
        announce(single.report);
        result.reports = {single.report};
        result.exit_code = single.outcome == TestOutcome::Pass ? kExitPass : kExitFail;
        return result;
    } catch (const BuildError& e) {
        result.diagnostic = e.what();
        return result;
    } catch (const isptb::FatalError& e) {
        result.diagnostic = e.what();
        return result;
    }
}

int validate_regmap_file(const std::string& path) {
    bool ok = false;
    const std::string text = slurp_or_empty(path, &ok);
    if (!ok) {
        std::cerr << "cannot open '" << path << "'\n";
        return kExitUsage;
    }
    const auto result = cfg::parse_register_map(text);
    if (result.ok()) {
        std::cout << path << ": OK (" << result.map->registers.size() << " registers, "
                  << result.map->memories.size() << " memories)\n";
        return kExitPass;
    }
    for (const auto& e : result.errors) {
        std::cerr << "[" << cfg::to_string(e.code) << "] " << e.detail << "\n";
    }
    return kExitUsage;
}

} // namespace isptb::tb
