#include "pcnres/flow.hpp"

#include <algorithm>
#include <limits>

namespace pcnres {

FlowNetwork::FlowNetwork(std::size_t nodes) : head_(nodes, kNone), level_(nodes), cursor_(nodes) {}

void FlowNetwork::add_pair(NodeIndex u, NodeIndex v, Sat forward, Sat backward) {
    arcs_.push_back({v, head_[u], forward});
    head_[u] = static_cast<std::uint32_t>(arcs_.size() - 1);
    arcs_.push_back({u, head_[v], backward});
    head_[v] = static_cast<std::uint32_t>(arcs_.size() - 1);
}

bool FlowNetwork::build_levels(NodeIndex s, NodeIndex t) {
    std::fill(level_.begin(), level_.end(), -1);
    queue_.clear();
    level_[s] = 0;
    queue_.push_back(s);
    for (std::size_t qh = 0; qh < queue_.size(); ++qh) {
        const auto v = queue_[qh];
        for (auto a = head_[v]; a != kNone; a = arcs_[a].next) {
            const auto w = arcs_[a].to;
            if (residual_[a] > 0 && level_[w] < 0) {
                level_[w] = level_[v] + 1;
                queue_.push_back(w);
            }
        }
    }
    return level_[t] >= 0;
}

Sat FlowNetwork::push(NodeIndex v, NodeIndex t, Sat limit) {
    if (v == t) return limit;
    for (auto& a = cursor_[v]; a != kNone; a = arcs_[a].next) {
        const auto w = arcs_[a].to;
        if (residual_[a] <= 0 || level_[w] != level_[v] + 1) continue;
        const Sat got = push(w, t, std::min(limit, residual_[a]));
        if (got > 0) {
            residual_[a] -= got;
            residual_[a ^ 1u] += got;
            return got;
        }
    }
    return 0;
}

Sat FlowNetwork::max_flow(NodeIndex s, NodeIndex t) {
    residual_.resize(arcs_.size());
    for (std::size_t a = 0; a < arcs_.size(); ++a) residual_[a] = arcs_[a].cap;
    if (s == t) return 0;
    Sat total = 0;
    while (build_levels(s, t)) {
        std::copy(head_.begin(), head_.end(), cursor_.begin());
        while (Sat f = push(s, t, std::numeric_limits<Sat>::max())) total += f;
    }
    return total;
}

std::vector<bool> FlowNetwork::source_side(NodeIndex s) const {
    std::vector<bool> seen(head_.size(), false);
    std::vector<NodeIndex> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
        const auto v = stack.back();
        stack.pop_back();
        for (auto a = head_[v]; a != kNone; a = arcs_[a].next) {
            const auto w = arcs_[a].to;
            if (residual_[a] > 0 && !seen[w]) {
                seen[w] = true;
                stack.push_back(w);
            }
        }
    }
    return seen;
}

FlowNetwork balance_network(const PcnGraph& g) {
    FlowNetwork net(g.node_count());
    for (std::size_t e = 0; e < g.edge_count(); ++e)
        net.add_pair(g.end_a(e), g.end_b(e), g.edge(e).balance_ab, g.edge(e).balance_ba);
    return net;
}

FlowNetwork capacity_network(const PcnGraph& g) {
    FlowNetwork net(g.node_count());
    for (std::size_t e = 0; e < g.edge_count(); ++e)
        net.add_pair(g.end_a(e), g.end_b(e), g.edge(e).capacity, g.edge(e).capacity);
    return net;
}

}  // namespace pcnres
