#include "isptb/tb/catalog.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Transaction-level ISP verification bench"};
    app.require_subcommand(1);

    isptb::tb::RunOptions options;
    std::string seed_text;

    auto* run = app.add_subcommand("run", "Build the environment and run one catalog test");
    run->add_option("--config", options.config_path, "Testbench configuration XML")->required();
    run->add_option("--test", options.test, "Catalog test name (default: plain configured run)");
    run->add_option("--seed", seed_text, "Override the configured seed");
    run->add_flag("--trace", options.trace, "Dump the event trace next to the report");
    std::string report_override;
    run->add_option("--report", report_override, "Report output path");

    auto* list = app.add_subcommand("list-tests", "Print the catalog test names");

    std::string regmap_path;
    auto* validate = app.add_subcommand("validate", "Validate a register-map XML document");
    validate->add_option("--regmap", regmap_path, "Register map file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        // CLI11 returns 0 for --help; anything else is a usage error.
        return rc == 0 ? 0 : isptb::tb::kExitUsage;
    }

    if (list->parsed()) {
        for (const auto& name : isptb::tb::catalog_names()) std::cout << name << "\n";
        return isptb::tb::kExitPass;
    }

    if (validate->parsed()) {
        return isptb::tb::validate_regmap_file(regmap_path);
    }

    if (!seed_text.empty()) {
        try {
            options.seed_override = std::stoull(seed_text, nullptr, 0);
        } catch (const std::exception&) {
            std::cerr << "bad --seed value '" << seed_text << "'\n";
            return isptb::tb::kExitUsage;
        }
    }
    if (!report_override.empty()) options.report_path = report_override;

    const auto result = isptb::tb::run_test(options);
    if (!result.diagnostic.empty()) std::cerr << "error: " << result.diagnostic << "\n";
    return result.exit_code;
}
