#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace polarcover {

using Json = nlohmann::ordered_json;

enum class Command { bounds, pipeline, witness, param, selftest };

std::optional<Command> parse_command(std::string_view name);
std::string to_string(Command c);

/// Function fields with more symbols than this are refused by the workbench.
inline constexpr std::size_t max_function_symbols = 12;

struct Config {
    unsigned d = 3;
    std::size_t r = 8;
    std::size_t q = 4;
    std::string field = "prime";  ///< "prime" or "rationals"
    std::uint64_t p = 10007;
    std::uint64_t seed = 0;
    unsigned trials = 1;
    std::optional<mpz_class> c_external;
    std::optional<mpz_class> q_external;
    unsigned retries = 16;       ///< fresh sub-seeds per trial on resample / exhaustion
    unsigned point_trials = 64;  ///< attempts inside one point search
    unsigned threads = 1;
    unsigned trial = 0;          ///< trial index shown by `param`
    std::vector<unsigned> dbar;  ///< defaults to (2d)
    std::string generation = "random";  ///< or "transcendental" (param only)
    bool timings = false;
    bool full_polys = false;
};

/// `key = value` lines; '#' starts a comment. Throws Error(config) naming the line.
Config parse_config(std::string_view text);
Config load_config(const std::string& path);
/// Throws Error(config) when the command cannot run on this config.
void validate(const Config& cfg, Command cmd);

Json config_json(const Config& cfg);

struct Outcome {
    Json report;
    int exit_code = 0;  ///< 0 PASS, 1 FAIL, 2 config error, 3 sampling exhaustion
};

/// Validates, runs and assembles the report. Configuration problems throw.
Outcome run_command(Command cmd, const Config& cfg);

Outcome cmd_bounds(const Config& cfg);
Outcome cmd_pipeline(const Config& cfg);
Outcome cmd_witness(const Config& cfg);
Outcome cmd_param(const Config& cfg);
Outcome cmd_selftest(const Config& cfg);

}  // namespace polarcover
