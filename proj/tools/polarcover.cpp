#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "polarcover/errors.hpp"
#include "polarcover/workbench.hpp"

using namespace polarcover;

namespace {

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::config:
        case ErrorCode::parse:
        case ErrorCode::usage: return 2;
        case ErrorCode::sampling_failure: return 3;
        default: return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"polarcover: polars, contact curves and double covers of hypersurfaces"};
    std::string command;
    std::string config_path;
    std::string json_path;
    std::optional<std::uint64_t> seed;
    app.add_option("command", command, "bounds | pipeline | witness | param | selftest")
        ->required()
        ->check(CLI::IsMember({"bounds", "pipeline", "witness", "param", "selftest"}));
    app.add_option("--config", config_path, "key = value configuration file");
    app.add_option("--seed", seed, "override the configured seed");
    app.add_option("--json", json_path, "write the report here instead of stdout");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        Config cfg = config_path.empty() ? Config{} : load_config(config_path);
        if (seed) cfg.seed = *seed;
        const Outcome out = run_command(*parse_command(command), cfg);
        const std::string text = out.report.dump(2) + "\n";
        if (json_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream file(json_path);
            if (!file) {
                std::cerr << "cannot write " << json_path << "\n";
                return 2;
            }
            file << text;
            std::cout << command << ": " << out.report.value("verdict", "") << "\n";
        }
        return out.exit_code;
    } catch (const Error& e) {
        std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
