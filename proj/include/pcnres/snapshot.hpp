#pragma once

#include <filesystem>
#include <string_view>

#include "json.hpp"
#include "pcnres/graph.hpp"

namespace pcnres {

// How per-direction balances are initialised from announced capacities.
enum class BalanceModel {
    capacity_both_ways,  // balance_ab = balance_ba = capacity
    half_split,          // floor(capacity / 2) a->b, remainder b->a
    explicit_balances,   // taken from node1_balance / node2_balance
};

BalanceModel parse_balance_model(std::string_view name);
std::string_view to_string(BalanceModel model);

// Accepts the subset of lnd `describegraph` output documented in README.md.
// Unknown fields are ignored. Missing policies fall back to FeePolicy{}.
PcnGraph parse_snapshot(const nlohmann::json& doc, BalanceModel model);
PcnGraph load_snapshot(const std::filesystem::path& path,
                       BalanceModel model = BalanceModel::capacity_both_ways);

// Writes explicit balances so that load_snapshot(..., explicit_balances)
// reproduces the graph field by field.
nlohmann::json snapshot_to_json(const PcnGraph& g);
void save_snapshot(const PcnGraph& g, const std::filesystem::path& path);

}  // namespace pcnres
