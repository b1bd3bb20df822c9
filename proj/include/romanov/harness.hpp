#pragma once

// Experiment configs, result records and the command-line dispatcher.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "romanov/serialize.hpp"

namespace romanov {

// decimal | 2^N | 2^(2^N). CapacityError above max_bits, ConfigError otherwise.
BigInt parse_power_expr(std::string_view text, std::uint64_t max_bits = kDefaultBitBudget);

struct Budgets {
    std::uint64_t enumeration_cap = kDefaultEnumerationCap;
    std::uint64_t memory_cap_bytes = std::uint64_t{1} << 30;
    std::uint64_t bit_budget = kDefaultBitBudget;
};

// Enumeration cap from ROMANOV_ENUM_CAP when set.
Budgets default_budgets();

struct OutputSpec {
    std::string format = "json";  // json | csv
    std::string path;             // empty: stdout
};

struct ExperimentConfig {
    std::string name;
    // paper-chain | desk-density | depolignac-audit | open-question |
    // count-b | sumset | ratio-scan
    std::string pipeline;
    GrowthSchedule schedule = GrowthSchedule::paper();
    std::vector<std::string> x_grid;  // as written; parsed with parse_power_expr
    Budgets budgets;
    OutputSpec output;
    std::string covering_system;  // path, depolignac-audit only; empty = shipped default
    std::uint64_t scan_limit = 0;
};

// ConfigError for missing fields, unknown pipelines, non-ascending grids or
// non-positive caps.
ExperimentConfig config_from_json(const json& j);
json to_json(const ExperimentConfig& c);
ExperimentConfig load_config(const std::filesystem::path& path);

std::vector<std::string> builtin_experiment_names();
// ConfigError for unknown names.
ExperimentConfig builtin_experiment(std::string_view name);

struct ResultRecord {
    std::string version;
    std::string command;
    json config;
    json payload;
    std::map<std::string, double> timing_ms;

    friend bool operator==(const ResultRecord&, const ResultRecord&) = default;
};

json to_json(const ResultRecord& r);
ResultRecord record_from_json(const json& j);

ResultRecord run_experiment(const ExperimentConfig& config);

// Directory holding the shipped configs (ROMANOV_CONFIG_DIR overrides).
std::filesystem::path config_dir();

// Exit codes: 0 ok, 1 usage, 2 config, 3 capacity, 4 any other failure.
inline constexpr int kExitUsage = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitCapacity = 3;
inline constexpr int kExitFailure = 4;

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace romanov
