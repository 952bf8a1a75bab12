#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "pcnres/common.hpp"
#include "pcnres/graph.hpp"

namespace pcnres {

struct PaymentSpec {
    std::string source;
    std::string target;
    Sat amount = 0;
};

struct PaymentOutcome {
    bool success = false;
    std::vector<std::string> path;  // source .. target; empty on failure
    MilliSat fees_paid = 0;
    std::map<std::string, MilliSat> per_hop_fees;  // forwarding node -> fee
};

// Pool of empirical payment volumes (satoshi), sampled uniformly.
class VolumeModel {
public:
    explicit VolumeModel(std::vector<Sat> volumes);
    static VolumeModel constant(Sat amount) { return VolumeModel({amount}); }
    // Text file, one positive integer per line; blank lines and '#' comments skipped.
    static VolumeModel load(const std::filesystem::path& path);

    const std::vector<Sat>& volumes() const { return volumes_; }

private:
    std::vector<Sat> volumes_;
};

// Single-path source routing over the directed balance view: u -> v is usable
// iff some channel's u-side balance covers the amount. Picks a hop-count
// shortest path; among those the lexicographically smallest node-id
// sequence, and between parallel channels the lowest edge index. Each
// forwarding node charges its outbound policy on the amount. Fees are
// reported, not deducted. With apply, balances shift along the path.
class Router {
public:
    explicit Router(const PcnGraph& g);

    PaymentOutcome route(Balances& balances, NodeIndex source, NodeIndex target, Sat amount, bool apply);

private:
    const PcnGraph* g_;
    std::vector<std::int32_t> dist_;
    std::vector<NodeIndex> queue_;
};

// Throws UnknownIdError for unknown endpoints and Error for source == target.
PaymentOutcome route_payment(const PcnGraph& g, Balances& balances, const PaymentSpec& spec, bool apply);
PaymentOutcome route_payment(const PcnGraph& g, const PaymentSpec& spec);

// Uniform ordered endpoint pairs (s != t, resampled) and uniform volumes,
// drawn sequentially from one stream seeded with `seed`.
std::vector<PaymentSpec> sample_payments(const PcnGraph& g, std::size_t count, const VolumeModel& volumes,
                                         std::uint64_t seed);

// Routes a fixed workload. Payments whose endpoints are missing from g fail.
// Without apply every attempt sees the pristine balances and attempts run
// in parallel; with apply they run in order on one evolving state.
std::vector<PaymentOutcome> simulate_payments(const PcnGraph& g, const std::vector<PaymentSpec>& workload,
                                              bool apply, Exec exec = Exec::parallel);

double success_ratio(const std::vector<PaymentOutcome>& outcomes);
double success_ratio(const PcnGraph& g, std::size_t attempts, const VolumeModel& volumes, std::uint64_t seed,
                     bool apply = false, Exec exec = Exec::parallel);

// Exact max flow on the directed balance view (u -> v capacity = u-side balance).
Sat max_flow(const PcnGraph& g, std::string_view s, std::string_view t);

struct NodePair {
    std::string source;
    std::string target;
};

std::vector<NodePair> sample_pairs(const PcnGraph& g, std::size_t rounds, std::uint64_t seed);

// Mean max flow over the pairs; pairs with a missing endpoint contribute 0.
double average_max_flow(const PcnGraph& g, const std::vector<NodePair>& pairs, Exec exec = Exec::parallel);
double average_max_flow(const PcnGraph& g, std::size_t rounds, std::uint64_t seed, Exec exec = Exec::parallel);

// Mean fee income of `hub` as a forwarding node over an apply-mode run.
double fee_gain(const PcnGraph& g, std::string_view hub, const std::vector<PaymentSpec>& workload);
double fee_gain(const PcnGraph& g, std::string_view hub, std::size_t payments, const VolumeModel& volumes,
                std::uint64_t seed);

// CSV: attempt,source,target,amount,success,hops,fees_msat
void write_outcome_log(std::ostream& out, const std::vector<PaymentSpec>& workload,
                       const std::vector<PaymentOutcome>& outcomes);

}  // namespace pcnres
