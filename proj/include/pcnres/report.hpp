#pragma once

#include <string>

#include "json.hpp"
#include "pcnres/attack.hpp"
#include "pcnres/metrics.hpp"
#include "pcnres/powerlaw.hpp"

namespace pcnres {

// Shortest round-trip decimal form; identical inputs give identical text.
std::string format_double(double v);

// FNV-1a 64 over the compact dump of `config`, as 16 hex digits.
std::string config_hash(const nlohmann::json& config);

nlohmann::json to_json(const MetricReport& r);
nlohmann::json to_json(const FitResult& f);
nlohmann::json to_json(const GofResult& g);
nlohmann::json to_json(const SimReport& r);

// Frozen column orders.
inline constexpr const char* kMetricCsvHeader =
    "graph,node_count,edge_count,diameter,avg_distance,central_point_dominance,clustering,smallworld_S,gamma,lambda";
inline constexpr const char* kSimCsvHeader =
    "strategy,constraint,n_or_budget,spent,s,s_prime,r,r_prime,F_bar,F_bar_prime,delta_s,delta_r,delta_F,"
    "removed,locked,g_bar,g_bar_prime,delta_g";
inline constexpr const char* kRobustnessCsvHeader = "failures,mean_components";
inline constexpr const char* kCcdfCsvHeader = "k,P(K>=k),fitted";
inline constexpr const char* kDegreeCsvHeader = "degree,count";

std::string to_csv_row(const MetricReport& r);
std::string to_csv_row(const SimReport& r);

}  // namespace pcnres
