#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "pcnres/attack.hpp"
#include "pcnres/generators.hpp"
#include "pcnres/snapshot.hpp"

namespace pcnres::cli {

enum class OutputFormat { json, csv };

struct RunConfig {
    std::string command;
    std::filesystem::path snapshot_path;
    BalanceModel balance_model = BalanceModel::capacity_both_ways;
    std::optional<std::filesystem::path> volume_path;
    std::uint64_t seed = 1;
    std::optional<std::size_t> repetitions;  // command-specific default when unset
    std::filesystem::path output_path;
    OutputFormat output_format = OutputFormat::json;
    bool serial = false;

    // analyze
    std::vector<ReferenceKind> references;
    std::size_t reference_runs = 10;
    std::size_t gof_runs = 1000;

    // attack
    std::vector<StrategyKind> strategies;
    std::vector<std::size_t> counts;
    std::vector<Sat> budgets;
    std::size_t cut_samples = 1000;
    std::size_t payment_samples = 1000;
    std::optional<std::string> hub;
    bool griefing = false;
    bool adaptive = false;

    // robustness
    std::vector<std::size_t> failures{1, 2, 3, 5, 10, 50};

    // generate
    ReferenceKind kind = ReferenceKind::erdos_renyi;
    std::size_t nodes = 0;
    std::size_t edges = 0;
};

// The fields that determine a command's output (the output path is excluded).
nlohmann::json config_json(const RunConfig& config);

// "start:end[:step]", inclusive.
std::vector<std::size_t> parse_sweep(const std::string& text);

// Each writes its outputs or throws.
void cmd_analyze(const RunConfig& config);
void cmd_attack(const RunConfig& config);
void cmd_robustness(const RunConfig& config);
void cmd_generate(const RunConfig& config);

// Parses argv and dispatches. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& err);

}  // namespace pcnres::cli
