#include "pcnres/graph.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <unordered_set>

namespace pcnres {

MilliSat FeePolicy::fee_for(Sat amount) const {
    const auto proportional =
        static_cast<__int128>(amount) * 1000 * rate_ppm / 1'000'000;  // floor, in msat
    return base_fee_msat + static_cast<MilliSat>(proportional);
}

SimpleGraph::SimpleGraph(std::size_t n, std::span<const std::array<NodeIndex, 2>> ends,
                         std::span<const Sat> capacities) {
    struct Half {
        NodeIndex from, to;
        Sat weight;
    };
    std::vector<Half> halves;
    halves.reserve(2 * ends.size());
    for (std::size_t e = 0; e < ends.size(); ++e) {
        halves.push_back({ends[e][0], ends[e][1], capacities[e]});
        halves.push_back({ends[e][1], ends[e][0], capacities[e]});
    }
    std::sort(halves.begin(), halves.end(), [](const Half& l, const Half& r) {
        return l.from != r.from ? l.from < r.from : l.to < r.to;
    });

    offsets_.assign(n + 1, 0);
    for (std::size_t i = 0; i < halves.size(); ++i) {
        if (i > 0 && halves[i].from == halves[i - 1].from && halves[i].to == halves[i - 1].to) {
            weights_.back() += halves[i].weight;
            continue;
        }
        neighbors_.push_back(halves[i].to);
        weights_.push_back(halves[i].weight);
        ++offsets_[halves[i].from + 1];
    }
    std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
}

PcnGraph PcnGraph::build(std::vector<NodeInfo> nodes, std::vector<ChannelEdge> edges,
                         std::string snapshot_time) {
    PcnGraph g;
    std::sort(nodes.begin(), nodes.end(),
              [](const NodeInfo& l, const NodeInfo& r) { return l.id < r.id; });
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].id.empty()) throw ValidationError("node with empty id");
        if (i > 0 && nodes[i].id == nodes[i - 1].id)
            throw ValidationError("duplicate node id '" + nodes[i].id + "'");
        g.index_.emplace(nodes[i].id, static_cast<NodeIndex>(i));
    }
    g.nodes_ = std::move(nodes);

    g.ends_.reserve(edges.size());
    std::vector<Sat> capacities;
    capacities.reserve(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const auto& c = edges[e];
        const auto where = "channel '" + c.channel_id + "'";
        if (c.channel_id.empty()) throw ValidationError("channel with empty id");
        if (!g.channel_index_.emplace(c.channel_id, e).second)
            throw ValidationError("duplicate " + where);
        auto ia = g.index_.find(c.a);
        auto ib = g.index_.find(c.b);
        if (ia == g.index_.end()) throw ValidationError(where + " references unknown node '" + c.a + "'");
        if (ib == g.index_.end()) throw ValidationError(where + " references unknown node '" + c.b + "'");
        if (c.a == c.b) throw ValidationError(where + " is a self-loop");
        if (c.capacity <= 0) throw ValidationError(where + " has non-positive capacity");
        if (c.balance_ab < 0 || c.balance_ba < 0) throw ValidationError(where + " has a negative balance");
        if (c.balance_ab + c.balance_ba > 2 * c.capacity)
            throw ValidationError(where + " holds more than twice its capacity");
        if (c.policy_ab.base_fee_msat < 0 || c.policy_ab.rate_ppm < 0 || c.policy_ba.base_fee_msat < 0 ||
            c.policy_ba.rate_ppm < 0)
            throw ValidationError(where + " has a negative fee policy");
        g.ends_.push_back({ia->second, ib->second});
        capacities.push_back(c.capacity);
    }
    g.edges_ = std::move(edges);
    g.snapshot_time_ = std::move(snapshot_time);

    const auto n = g.nodes_.size();
    g.arc_offsets_.assign(n + 1, 0);
    for (const auto& [a, b] : g.ends_) {
        ++g.arc_offsets_[a + 1];
        ++g.arc_offsets_[b + 1];
    }
    std::partial_sum(g.arc_offsets_.begin(), g.arc_offsets_.end(), g.arc_offsets_.begin());
    g.arcs_.resize(2 * g.ends_.size());
    std::vector<std::size_t> cursor(g.arc_offsets_.begin(), g.arc_offsets_.end() - 1);
    for (std::size_t e = 0; e < g.ends_.size(); ++e) {
        const auto [a, b] = g.ends_[e];
        g.arcs_[cursor[a]++] = Arc{b, static_cast<std::uint32_t>(e), true};
        g.arcs_[cursor[b]++] = Arc{a, static_cast<std::uint32_t>(e), false};
    }
    g.simple_ = SimpleGraph(n, g.ends_, capacities);
    return g;
}

std::optional<NodeIndex> PcnGraph::find(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

NodeIndex PcnGraph::index_of(std::string_view id) const {
    if (auto v = find(id)) return *v;
    throw UnknownIdError("unknown node '" + std::string(id) + "'");
}

std::optional<std::size_t> PcnGraph::find_channel(std::string_view channel_id) const {
    auto it = channel_index_.find(std::string(channel_id));
    if (it == channel_index_.end()) return std::nullopt;
    return it->second;
}

Sat PcnGraph::outbound_balance(NodeIndex v) const {
    Sat total = 0;
    for (const auto& arc : arcs(v)) {
        const auto& c = edges_[arc.edge];
        total += arc.forward ? c.balance_ab : c.balance_ba;
    }
    return total;
}

Balances PcnGraph::balances() const {
    Balances out(edges_.size());
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        out.set(e, true, edges_[e].balance_ab);
        out.set(e, false, edges_[e].balance_ba);
    }
    return out;
}

Components connected_components(const PcnGraph& g) {
    const auto& sg = g.simple();
    const auto n = g.node_count();
    constexpr auto unset = std::numeric_limits<std::uint32_t>::max();
    Components out;
    out.label.assign(n, unset);
    std::vector<NodeIndex> stack;
    for (NodeIndex s = 0; s < n; ++s) {
        if (out.label[s] != unset) continue;
        const auto c = static_cast<std::uint32_t>(out.size.size());
        std::size_t members = 0;
        out.label[s] = c;
        stack.push_back(s);
        while (!stack.empty()) {
            const auto v = stack.back();
            stack.pop_back();
            ++members;
            for (auto w : sg.neighbors(v)) {
                if (out.label[w] == unset) {
                    out.label[w] = c;
                    stack.push_back(w);
                }
            }
        }
        out.size.push_back(members);
    }
    return out;
}

PcnGraph largest_connected_component(const PcnGraph& g) {
    if (g.empty()) return g;
    const auto comps = connected_components(g);
    if (comps.count() == 1) return g;
    // max_element returns the first maximum, i.e. the one with the smallest member.
    const auto best = static_cast<std::uint32_t>(
        std::max_element(comps.size.begin(), comps.size.end()) - comps.size.begin());
    std::vector<bool> removed(g.node_count());
    for (std::size_t v = 0; v < removed.size(); ++v) removed[v] = comps.label[v] != best;
    return remove_node_mask(g, removed);
}

PcnGraph remove_node_mask(const PcnGraph& g, const std::vector<bool>& removed) {
    std::vector<NodeInfo> nodes;
    for (NodeIndex v = 0; v < g.node_count(); ++v)
        if (!removed[v]) nodes.push_back(g.nodes()[v]);
    std::vector<ChannelEdge> edges;
    for (std::size_t e = 0; e < g.edge_count(); ++e)
        if (!removed[g.end_a(e)] && !removed[g.end_b(e)]) edges.push_back(g.edge(e));
    return PcnGraph::build(std::move(nodes), std::move(edges), g.snapshot_time());
}

PcnGraph remove_nodes(const PcnGraph& g, std::span<const std::string> targets) {
    std::vector<bool> removed(g.node_count(), false);
    std::string unknown;
    for (const auto& t : targets) {
        if (auto v = g.find(t)) {
            removed[*v] = true;
        } else {
            unknown += unknown.empty() ? t : ", " + t;
        }
    }
    if (!unknown.empty()) throw UnknownIdError("unknown nodes: " + unknown);
    return remove_node_mask(g, removed);
}

PcnGraph remove_channels(const PcnGraph& g, std::span<const std::size_t> edges) {
    std::vector<bool> drop(g.edge_count(), false);
    for (auto e : edges) {
        if (e >= g.edge_count()) throw UnknownIdError("edge index out of range");
        drop[e] = true;
    }
    std::vector<ChannelEdge> kept;
    for (std::size_t e = 0; e < g.edge_count(); ++e)
        if (!drop[e]) kept.push_back(g.edge(e));
    return PcnGraph::build(g.nodes(), std::move(kept), g.snapshot_time());
}

PcnGraph with_balances(const PcnGraph& g, const Balances& balances) {
    if (balances.edge_count() != g.edge_count())
        throw ValidationError("balance vector does not match the graph's channel count");
    auto edges = g.edges();
    for (std::size_t e = 0; e < edges.size(); ++e) {
        edges[e].balance_ab = balances.get(e, true);
        edges[e].balance_ba = balances.get(e, false);
    }
    return PcnGraph::build(g.nodes(), std::move(edges), g.snapshot_time());
}

}  // namespace pcnres
