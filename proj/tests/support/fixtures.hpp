#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "pcnres/graph.hpp"

namespace fixture {

struct Channel {
    std::string a;
    std::string b;
    pcnres::Sat capacity;
    pcnres::Sat balance_ab = -1;  // -1: capacity
    pcnres::Sat balance_ba = -1;
};

inline pcnres::PcnGraph make(const std::vector<std::string>& ids, const std::vector<Channel>& channels) {
    std::vector<pcnres::NodeInfo> nodes;
    for (const auto& id : ids) nodes.push_back({id, ""});
    std::vector<pcnres::ChannelEdge> edges;
    for (const auto& c : channels) {
        pcnres::ChannelEdge e;
        e.channel_id = c.a + "-" + c.b + "#" + std::to_string(edges.size());
        e.a = c.a;
        e.b = c.b;
        e.capacity = c.capacity;
        e.balance_ab = c.balance_ab < 0 ? c.capacity : c.balance_ab;
        e.balance_ba = c.balance_ba < 0 ? c.capacity : c.balance_ba;
        edges.push_back(e);
    }
    return pcnres::PcnGraph::build(std::move(nodes), std::move(edges));
}

inline std::string node(std::size_t i) {
    std::string s = std::to_string(i);
    return "n" + std::string(s.size() < 3 ? 3 - s.size() : 0, '0') + s;
}

inline std::vector<std::string> ids(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(node(i));
    return out;
}

inline pcnres::PcnGraph path(std::size_t n, pcnres::Sat cap = 10) {
    std::vector<Channel> ch;
    for (std::size_t i = 0; i + 1 < n; ++i) ch.push_back({node(i), node(i + 1), cap});
    return make(ids(n), ch);
}

inline pcnres::PcnGraph cycle(std::size_t n, pcnres::Sat cap = 10) {
    std::vector<Channel> ch;
    for (std::size_t i = 0; i < n; ++i) ch.push_back({node(i), node((i + 1) % n), cap});
    return make(ids(n), ch);
}

// Node 0 is the centre.
inline pcnres::PcnGraph star(std::size_t leaves, pcnres::Sat cap = 10) {
    std::vector<Channel> ch;
    for (std::size_t i = 1; i <= leaves; ++i) ch.push_back({node(0), node(i), cap});
    return make(ids(leaves + 1), ch);
}

inline pcnres::PcnGraph complete(std::size_t n, pcnres::Sat cap = 10) {
    std::vector<Channel> ch;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) ch.push_back({node(i), node(j), cap});
    return make(ids(n), ch);
}

// A with outbound balances 3, 8, 10 towards B, C, D and an attacker E holding
// 21 on its side of the E-A channel.
inline pcnres::PcnGraph fig3() {
    return make({"A", "B", "C", "D", "E"}, {{"A", "B", 10, 3, 7},
                                            {"A", "C", 12, 8, 4},
                                            {"A", "D", 16, 10, 6},
                                            {"E", "A", 21, 21, 0}});
}

// Two complete clusters of `size` nodes with capacity `inner`, joined by
// `bridges` channels of capacity `bridge_cap` between distinct node pairs.
inline pcnres::PcnGraph barbell(std::size_t size, std::size_t bridges, pcnres::Sat inner, pcnres::Sat bridge_cap) {
    std::vector<Channel> ch;
    for (std::size_t off : {std::size_t{0}, size})
        for (std::size_t i = 0; i < size; ++i)
            for (std::size_t j = i + 1; j < size; ++j) ch.push_back({node(off + i), node(off + j), inner});
    for (std::size_t k = 0; k < bridges; ++k) ch.push_back({node(k), node(size + k), bridge_cap});
    return make(ids(2 * size), ch);
}

// Hub-and-spoke: `core` nodes in a ring around hub 0, `leaves` degree-1 nodes
// attached round-robin to the core.
inline pcnres::PcnGraph hub_and_spoke(std::size_t total, std::size_t leaves) {
    const std::size_t core = total - leaves;
    std::vector<Channel> ch;
    for (std::size_t i = 1; i < core; ++i) {
        ch.push_back({node(0), node(i), 100});
        ch.push_back({node(i), node(i + 1 < core ? i + 1 : 1), 100});
    }
    for (std::size_t k = 0; k < leaves; ++k) ch.push_back({node(core + k), node(k % core), 100});
    return make(ids(total), ch);
}

}  // namespace fixture
