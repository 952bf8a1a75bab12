#pragma once

#include <cstdint>
#include <vector>

#include "pcnres/common.hpp"
#include "pcnres/graph.hpp"

namespace pcnres {

// Dinic max flow with integer capacities. Arcs are added in pairs so that a
// channel's two directions share one residual pair: pushing along one
// direction frees capacity on the other, which matches two independent
// directed arcs for max-flow purposes.
class FlowNetwork {
public:
    explicit FlowNetwork(std::size_t nodes);

    // Adds u -> v with capacity `forward` and v -> u with `backward`.
    void add_pair(NodeIndex u, NodeIndex v, Sat forward, Sat backward);

    std::size_t node_count() const { return head_.size(); }

    // Resets all residuals to the original capacities, then computes.
    Sat max_flow(NodeIndex s, NodeIndex t);

    // Nodes reachable from s in the residual network after max_flow: the
    // source side of the minimum cut closest to s.
    std::vector<bool> source_side(NodeIndex s) const;

private:
    bool build_levels(NodeIndex s, NodeIndex t);
    Sat push(NodeIndex v, NodeIndex t, Sat limit);

    struct ArcData {
        NodeIndex to;
        std::uint32_t next;  // next arc out of the same tail, or kNone
        Sat cap;
    };
    static constexpr std::uint32_t kNone = 0xffffffffu;

    std::vector<std::uint32_t> head_;
    std::vector<ArcData> arcs_;
    std::vector<Sat> residual_;
    std::vector<std::int32_t> level_;
    std::vector<std::uint32_t> cursor_;
    std::vector<NodeIndex> queue_;
};

// Directed balance view: channel e contributes a -> b (balance_ab) and
// b -> a (balance_ba).
FlowNetwork balance_network(const PcnGraph& g);

// Symmetric capacity view used for minimum cuts: both directions carry the
// channel capacity.
FlowNetwork capacity_network(const PcnGraph& g);

}  // namespace pcnres
