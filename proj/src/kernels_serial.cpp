#include <numeric>

#include "pcnres/kernels.hpp"
#include "pcnres/rng.hpp"

namespace pcnres::kernels {

namespace detail {

void accumulate_dependency(const SimpleGraph& g, NodeIndex s, BfsScratch& sc, std::span<double> acc) {
    auto& dist = sc.dist;
    auto& sigma = sc.sigma;
    auto& delta = sc.delta;
    auto& order = sc.order;
    order.clear();
    dist[s] = 0;
    sigma[s] = 1.0;
    order.push_back(s);
    for (std::size_t head = 0; head < order.size(); ++head) {
        const auto v = order[head];
        for (auto w : g.neighbors(v)) {
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                order.push_back(w);
            }
            if (dist[w] == dist[v] + 1) sigma[w] += sigma[v];
        }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const auto w = *it;
        const double coeff = (1.0 + delta[w]) / sigma[w];
        for (auto v : g.neighbors(w))
            if (dist[v] == dist[w] - 1) delta[v] += sigma[v] * coeff;
        if (w != s) acc[w] += delta[w];
    }
    for (auto v : order) {
        dist[v] = -1;
        sigma[v] = 0.0;
        delta[v] = 0.0;
    }
}

SourceDistances distances_from(const SimpleGraph& g, NodeIndex s, std::vector<std::int32_t>& dist,
                               std::vector<NodeIndex>& queue) {
    SourceDistances out;
    queue.clear();
    dist[s] = 0;
    queue.push_back(s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const auto v = queue[head];
        for (auto w : g.neighbors(v)) {
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
                out.sum += static_cast<std::uint64_t>(dist[w]);
            }
        }
    }
    out.reached = queue.size() - 1;
    out.eccentricity = static_cast<std::uint32_t>(dist[queue.back()]);
    for (auto v : queue) dist[v] = -1;
    return out;
}

std::size_t components_after_removal(const SimpleGraph& g, std::size_t k, std::uint64_t seed,
                                     std::vector<NodeIndex>& perm, std::vector<std::uint32_t>& stamp,
                                     std::uint32_t& epoch, std::vector<NodeIndex>& stack) {
    const auto n = g.node_count();
    std::iota(perm.begin(), perm.end(), NodeIndex{0});
    Rng rng(seed);
    // Partial Fisher-Yates: perm[0..k) is a uniform k-subset.
    for (std::size_t i = 0; i < k; ++i) {
        const auto j = i + rng.below(n - i);
        std::swap(perm[i], perm[j]);
    }
    // Two fresh stamps: `removed` marks the k victims, `visited` marks traversal.
    const auto removed = ++epoch;
    const auto visited = ++epoch;
    for (std::size_t i = 0; i < k; ++i) stamp[perm[i]] = removed;
    std::size_t count = 0;
    for (NodeIndex s = 0; s < n; ++s) {
        if (stamp[s] == removed || stamp[s] == visited) continue;
        ++count;
        stamp[s] = visited;
        stack.push_back(s);
        while (!stack.empty()) {
            const auto v = stack.back();
            stack.pop_back();
            for (auto w : g.neighbors(v)) {
                if (stamp[w] != removed && stamp[w] != visited) {
                    stamp[w] = visited;
                    stack.push_back(w);
                }
            }
        }
    }
    return count;
}

}  // namespace detail

namespace serial {

std::vector<double> betweenness(const SimpleGraph& g) {
    const auto n = g.node_count();
    std::vector<double> bc(n, 0.0);
    detail::BfsScratch scratch(n);
    for (NodeIndex s = 0; s < n; ++s) detail::accumulate_dependency(g, s, scratch, bc);
    for (auto& v : bc) v /= 2.0;
    return bc;
}

DistanceTotals all_pairs_distances(const SimpleGraph& g) {
    const auto n = g.node_count();
    DistanceTotals out;
    std::vector<std::int32_t> dist(n, -1);
    std::vector<NodeIndex> queue;
    queue.reserve(n);
    for (NodeIndex s = 0; s < n; ++s) {
        const auto d = detail::distances_from(g, s, dist, queue);
        out.diameter = std::max(out.diameter, d.eccentricity);
        out.distance_sum += d.sum;
        out.pair_count += d.reached;
    }
    return out;
}

void shifted_matvec(const SimpleGraph& g, bool weighted, std::span<const double> x, std::span<double> y) {
    for (NodeIndex v = 0; v < g.node_count(); ++v) {
        double acc = x[v];
        const auto nb = g.neighbors(v);
        const auto w = g.weights(v);
        for (std::size_t i = 0; i < nb.size(); ++i)
            acc += (weighted ? static_cast<double>(w[i]) : 1.0) * x[nb[i]];
        y[v] = acc;
    }
}

std::vector<std::uint64_t> failure_component_totals(const SimpleGraph& g, std::span<const std::size_t> failures,
                                                    std::size_t runs, std::uint64_t seed) {
    const auto n = g.node_count();
    std::vector<std::uint64_t> totals(failures.size(), 0);
    std::vector<NodeIndex> perm(n), stack;
    std::vector<std::uint32_t> stamp(n, 0);
    std::uint32_t epoch = 0;
    for (std::size_t i = 0; i < failures.size(); ++i)
        for (std::size_t r = 0; r < runs; ++r)
            totals[i] += detail::components_after_removal(g, failures[i], derive_seed(seed, i, r), perm, stamp,
                                                          epoch, stack);
    return totals;
}

}  // namespace serial

std::vector<double> betweenness(const SimpleGraph& g, Exec exec) {
    return exec == Exec::serial ? serial::betweenness(g) : omp::betweenness(g);
}

DistanceTotals all_pairs_distances(const SimpleGraph& g, Exec exec) {
    return exec == Exec::serial ? serial::all_pairs_distances(g) : omp::all_pairs_distances(g);
}

void shifted_matvec(const SimpleGraph& g, bool weighted, std::span<const double> x, std::span<double> y,
                    Exec exec) {
    if (exec == Exec::serial)
        serial::shifted_matvec(g, weighted, x, y);
    else
        omp::shifted_matvec(g, weighted, x, y);
}

std::vector<std::uint64_t> failure_component_totals(const SimpleGraph& g, std::span<const std::size_t> failures,
                                                    std::size_t runs, std::uint64_t seed, Exec exec) {
    return exec == Exec::serial ? serial::failure_component_totals(g, failures, runs, seed)
                                : omp::failure_component_totals(g, failures, runs, seed);
}

}  // namespace pcnres::kernels
