#include "pcnres/generators.hpp"

#include <cmath>
#include <unordered_set>

#include "pcnres/rng.hpp"

namespace pcnres {

namespace {

std::string padded(char prefix, std::size_t i, int width) {
    auto digits = std::to_string(i);
    std::string out(1, prefix);
    if (static_cast<int>(digits.size()) < width) out.append(width - digits.size(), '0');
    return out + digits;
}

int digits(std::size_t n) {
    int d = 1;
    while (n >= 10) {
        n /= 10;
        ++d;
    }
    return d;
}

}  // namespace

ReferenceKind parse_reference_kind(std::string_view name) {
    if (name == "erdos-renyi" || name == "er") return ReferenceKind::erdos_renyi;
    if (name == "barabasi-albert" || name == "ba") return ReferenceKind::barabasi_albert;
    throw Error("unknown reference kind '" + std::string(name) + "'");
}

std::string_view to_string(ReferenceKind kind) {
    return kind == ReferenceKind::erdos_renyi ? "erdos-renyi" : "barabasi-albert";
}

PcnGraph graph_from_pairs(std::size_t n, const std::vector<std::pair<NodeIndex, NodeIndex>>& pairs, Sat capacity) {
    const int nw = digits(n > 0 ? n - 1 : 0);
    const int ew = digits(pairs.empty() ? 0 : pairs.size() - 1);
    std::vector<NodeInfo> nodes;
    nodes.reserve(n);
    for (std::size_t i = 0; i < n; ++i) nodes.push_back({padded('n', i, nw), {}});
    std::vector<ChannelEdge> edges;
    edges.reserve(pairs.size());
    for (std::size_t e = 0; e < pairs.size(); ++e) {
        ChannelEdge c;
        c.channel_id = padded('c', e, ew);
        c.a = nodes[pairs[e].first].id;
        c.b = nodes[pairs[e].second].id;
        c.capacity = c.balance_ab = c.balance_ba = capacity;
        edges.push_back(std::move(c));
    }
    return PcnGraph::build(std::move(nodes), std::move(edges));
}

PcnGraph erdos_renyi(std::size_t n, std::size_t edges, std::uint64_t seed) {
    if (n < 2) throw Error("erdos-renyi: need n >= 2");
    const auto max_edges = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    if (edges > max_edges) throw Error("erdos-renyi: more edges than node pairs");

    Rng rng(seed);
    // Dense requests sample the missing pairs instead of the present ones.
    const bool complement = edges > max_edges / 2;
    const auto draws = complement ? max_edges - edges : edges;
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(draws * 2);
    std::vector<std::pair<NodeIndex, NodeIndex>> pairs;
    while (chosen.size() < draws) {
        auto u = static_cast<NodeIndex>(rng.below(n));
        auto v = static_cast<NodeIndex>(rng.below(n));
        if (u == v) continue;
        if (u > v) std::swap(u, v);
        if (chosen.insert(static_cast<std::uint64_t>(u) * n + v).second && !complement) pairs.emplace_back(u, v);
    }
    if (complement) {
        for (NodeIndex u = 0; u < n; ++u)
            for (NodeIndex v = u + 1; v < n; ++v)
                if (!chosen.contains(static_cast<std::uint64_t>(u) * n + v)) pairs.emplace_back(u, v);
    }
    return graph_from_pairs(n, pairs);
}

PcnGraph barabasi_albert(std::size_t n, std::size_t m, std::uint64_t seed) {
    if (m < 1 || m >= n) throw Error("barabasi-albert: need 1 <= m < n");
    Rng rng(seed);
    std::vector<std::pair<NodeIndex, NodeIndex>> pairs;
    std::vector<NodeIndex> repeated;  // each node once per incident edge
    for (NodeIndex leaf = 1; leaf <= m; ++leaf) {
        pairs.emplace_back(0, leaf);
        repeated.push_back(0);
        repeated.push_back(leaf);
    }
    std::vector<NodeIndex> targets;
    std::unordered_set<NodeIndex> seen;
    for (auto source = static_cast<NodeIndex>(m + 1); source < n; ++source) {
        targets.clear();
        seen.clear();
        while (targets.size() < m) {
            const auto t = repeated[rng.below(repeated.size())];
            if (seen.insert(t).second) targets.push_back(t);
        }
        for (auto t : targets) {
            pairs.emplace_back(source, t);
            repeated.push_back(t);
            repeated.push_back(source);
        }
    }
    return graph_from_pairs(n, pairs);
}

PcnGraph generate_reference(ReferenceKind kind, std::size_t n, std::size_t target_edges, std::uint64_t seed) {
    if (n < 2) throw Error("reference graph: need n >= 2");
    if (kind == ReferenceKind::erdos_renyi) return erdos_renyi(n, target_edges, seed);
    const auto m = static_cast<std::size_t>(std::llround(static_cast<double>(target_edges) / static_cast<double>(n)));
    if (m < 1 || m >= n) throw Error("barabasi-albert: target edge count gives attachment m outside [1, n)");
    return barabasi_albert(n, m, seed);
}

}  // namespace pcnres
