#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pcnres/common.hpp"

namespace pcnres {

// Fee charged by the forwarding node on its outbound direction of a channel.
struct FeePolicy {
    MilliSat base_fee_msat = 1000;
    std::int64_t rate_ppm = 1;  // millionths of the forwarded amount

    MilliSat fee_for(Sat amount) const;

    friend bool operator==(const FeePolicy&, const FeePolicy&) = default;
};

struct ChannelEdge {
    std::string channel_id;
    std::string a;
    std::string b;
    Sat capacity = 0;
    Sat balance_ab = 0;  // routable a -> b
    Sat balance_ba = 0;  // routable b -> a
    FeePolicy policy_ab;
    FeePolicy policy_ba;

    friend bool operator==(const ChannelEdge&, const ChannelEdge&) = default;
};

struct NodeInfo {
    std::string id;
    std::string alias;

    friend bool operator==(const NodeInfo&, const NodeInfo&) = default;
};

// One direction of a channel as seen from its source node.
struct Arc {
    NodeIndex to;
    std::uint32_t edge;
    bool forward;  // true: traverses the channel a -> b
};

// Undirected simple projection in CSR form: parallel channels collapse into a
// single neighbour entry whose weight is the summed capacity.
class SimpleGraph {
public:
    SimpleGraph() = default;
    SimpleGraph(std::size_t n, std::span<const std::array<NodeIndex, 2>> ends,
                std::span<const Sat> capacities);

    std::size_t node_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t edge_count() const { return neighbors_.size() / 2; }

    std::span<const NodeIndex> neighbors(NodeIndex v) const {
        return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
    }
    std::span<const Sat> weights(NodeIndex v) const {
        return {weights_.data() + offsets_[v], weights_.data() + offsets_[v + 1]};
    }
    std::size_t degree(NodeIndex v) const { return offsets_[v + 1] - offsets_[v]; }

private:
    std::vector<std::size_t> offsets_;
    std::vector<NodeIndex> neighbors_;  // sorted ascending within each row
    std::vector<Sat> weights_;
};

// Per-direction balances of every channel, indexed by edge position.
class Balances {
public:
    Balances() = default;
    explicit Balances(std::size_t edges) : values_(2 * edges, 0) {}

    Sat get(std::size_t edge, bool forward) const { return values_[2 * edge + (forward ? 0 : 1)]; }
    void set(std::size_t edge, bool forward, Sat value) { values_[2 * edge + (forward ? 0 : 1)] = value; }
    std::size_t edge_count() const { return values_.size() / 2; }

    friend bool operator==(const Balances&, const Balances&) = default;

private:
    std::vector<Sat> values_;
};

// Immutable channel graph. Nodes are stored sorted by id, so NodeIndex order
// equals lexicographic id order; every deterministic tie-break relies on this.
// Parallel channels are kept as distinct edges.
class PcnGraph {
public:
    PcnGraph() = default;

    // Validates and indexes. Throws ValidationError naming the offending record.
    static PcnGraph build(std::vector<NodeInfo> nodes, std::vector<ChannelEdge> edges,
                          std::string snapshot_time = {});

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    bool empty() const { return nodes_.empty(); }

    const std::vector<NodeInfo>& nodes() const { return nodes_; }
    const std::string& id(NodeIndex v) const { return nodes_[v].id; }
    std::optional<NodeIndex> find(std::string_view id) const;
    NodeIndex index_of(std::string_view id) const;  // throws UnknownIdError

    const std::vector<ChannelEdge>& edges() const { return edges_; }
    const ChannelEdge& edge(std::size_t e) const { return edges_[e]; }
    std::optional<std::size_t> find_channel(std::string_view channel_id) const;
    NodeIndex end_a(std::size_t e) const { return ends_[e][0]; }
    NodeIndex end_b(std::size_t e) const { return ends_[e][1]; }

    // Outbound directions of every channel incident to v, ordered by edge index.
    std::span<const Arc> arcs(NodeIndex v) const {
        return {arcs_.data() + arc_offsets_[v], arcs_.data() + arc_offsets_[v + 1]};
    }
    std::size_t channel_degree(NodeIndex v) const { return arc_offsets_[v + 1] - arc_offsets_[v]; }

    Sat outbound_balance(NodeIndex v) const;
    Balances balances() const;
    const SimpleGraph& simple() const { return simple_; }
    const std::string& snapshot_time() const { return snapshot_time_; }

    friend bool operator==(const PcnGraph& l, const PcnGraph& r) {
        return l.nodes_ == r.nodes_ && l.edges_ == r.edges_ && l.snapshot_time_ == r.snapshot_time_;
    }

private:
    std::vector<NodeInfo> nodes_;
    std::vector<ChannelEdge> edges_;
    std::string snapshot_time_;
    std::unordered_map<std::string, NodeIndex> index_;
    std::unordered_map<std::string, std::size_t> channel_index_;
    std::vector<std::array<NodeIndex, 2>> ends_;
    std::vector<std::size_t> arc_offsets_;
    std::vector<Arc> arcs_;
    SimpleGraph simple_;
};

struct Components {
    std::vector<std::uint32_t> label;  // per node
    std::vector<std::size_t> size;     // per component; components numbered by smallest member
    std::size_t count() const { return size.size(); }
};

Components connected_components(const PcnGraph& g);

// Induced subgraph on the largest component; ties go to the component whose
// smallest member id is lexicographically smallest.
PcnGraph largest_connected_component(const PcnGraph& g);

// Pure derivations; the input graph is never modified.
PcnGraph remove_nodes(const PcnGraph& g, std::span<const std::string> targets);
PcnGraph remove_node_mask(const PcnGraph& g, const std::vector<bool>& removed);
PcnGraph remove_channels(const PcnGraph& g, std::span<const std::size_t> edges);
PcnGraph with_balances(const PcnGraph& g, const Balances& balances);

}  // namespace pcnres
