#include "pcnres/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "pcnres/generators.hpp"
#include "pcnres/kernels.hpp"
#include "pcnres/rng.hpp"

namespace pcnres {

std::map<std::size_t, std::size_t> degree_distribution(const PcnGraph& g) {
    std::map<std::size_t, std::size_t> out;
    for (NodeIndex v = 0; v < g.node_count(); ++v) ++out[g.channel_degree(v)];
    return out;
}

std::vector<double> betweenness_centrality(const PcnGraph& g, bool normalized, Exec exec) {
    auto bc = kernels::betweenness(g.simple(), exec);
    if (normalized) {
        const auto n = static_cast<double>(g.node_count());
        const double pairs = (n - 1.0) * (n - 2.0) / 2.0;
        for (auto& v : bc) v = pairs > 0 ? v / pairs : 0.0;
    }
    return bc;
}

std::vector<double> eigenvector_centrality(const PcnGraph& g, const EigenvectorOptions& opts, Exec exec) {
    if (g.empty()) throw Error("eigenvector centrality of an empty graph");
    const auto lcc = largest_connected_component(g);
    const auto& sg = lcc.simple();
    const auto n = lcc.node_count();

    std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<double> y(n);
    bool converged = false;
    for (int it = 1; it <= opts.max_iter; ++it) {
        kernels::shifted_matvec(sg, opts.weighted, x, y, exec);
        double norm = 0.0;
        for (auto v : y) norm += v * v;
        norm = std::sqrt(norm);
        double change = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            y[i] /= norm;
            change = std::max(change, std::abs(y[i] - x[i]));
        }
        x.swap(y);
        if (change < opts.tol) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw ConvergenceError("eigenvector centrality did not converge in " + std::to_string(opts.max_iter) +
                                   " iterations",
                               opts.max_iter);

    std::vector<double> out(g.node_count(), 0.0);
    for (NodeIndex v = 0; v < n; ++v) out[g.index_of(lcc.id(v))] = x[v];
    return out;
}

double transitivity(const PcnGraph& g) {
    const auto& sg = g.simple();
    std::uint64_t triangles = 0;
    std::uint64_t triples = 0;
    for (NodeIndex u = 0; u < sg.node_count(); ++u) {
        const auto d = static_cast<std::uint64_t>(sg.degree(u));
        triples += d * (d - (d > 0 ? 1 : 0)) / 2;
        const auto nu = sg.neighbors(u);
        for (auto v : nu) {
            if (v <= u) continue;
            // Count common neighbours w > v so each triangle u < v < w is seen once.
            const auto nv = sg.neighbors(v);
            auto i = std::upper_bound(nu.begin(), nu.end(), v);
            auto j = std::upper_bound(nv.begin(), nv.end(), v);
            while (i != nu.end() && j != nv.end()) {
                if (*i < *j) {
                    ++i;
                } else if (*j < *i) {
                    ++j;
                } else {
                    ++triangles;
                    ++i;
                    ++j;
                }
            }
        }
    }
    if (triples == 0) return 0.0;
    return 3.0 * static_cast<double>(triangles) / static_cast<double>(triples);
}

DistanceStats distance_stats(const PcnGraph& g, std::optional<std::size_t> sample_pairs, std::uint64_t seed,
                             Exec exec) {
    const auto lcc = largest_connected_component(g);
    const auto& sg = lcc.simple();
    const auto n = lcc.node_count();
    if (n < 2) return {};

    const auto totals = kernels::all_pairs_distances(sg, exec);
    DistanceStats out;
    out.diameter = totals.diameter;
    if (!sample_pairs) {
        out.avg_distance = static_cast<double>(totals.distance_sum) / static_cast<double>(totals.pair_count);
        return out;
    }

    const auto k = std::max<std::size_t>(*sample_pairs, 1);
    Rng rng(seed);
    std::vector<std::pair<NodeIndex, NodeIndex>> pairs(k);
    for (auto& [s, t] : pairs) {
        s = static_cast<NodeIndex>(rng.below(n));
        do {
            t = static_cast<NodeIndex>(rng.below(n));
        } while (t == s);
    }
    std::uint64_t sum = 0;
#pragma omp parallel if (exec == Exec::parallel) reduction(+ : sum)
    {
        std::vector<std::int32_t> dist(n, -1);
        std::vector<NodeIndex> queue;
#pragma omp for schedule(dynamic, 8)
        for (std::size_t i = 0; i < k; ++i) {
            const auto [s, t] = pairs[i];
            queue.clear();
            dist[s] = 0;
            queue.push_back(s);
            for (std::size_t head = 0; head < queue.size() && dist[t] < 0; ++head) {
                const auto v = queue[head];
                for (auto w : sg.neighbors(v)) {
                    if (dist[w] < 0) {
                        dist[w] = dist[v] + 1;
                        queue.push_back(w);
                    }
                }
            }
            sum += static_cast<std::uint64_t>(dist[t]);
            for (auto v : queue) dist[v] = -1;
        }
    }
    out.avg_distance = static_cast<double>(sum) / static_cast<double>(k);
    return out;
}

double central_point_dominance(const PcnGraph& g, Exec exec) {
    const auto bc = betweenness_centrality(g, true, exec);
    if (bc.empty()) return 0.0;
    return *std::max_element(bc.begin(), bc.end());
}

BiconnectedResult biconnected_analysis(const PcnGraph& g) {
    const auto& sg = g.simple();
    const auto n = sg.node_count();
    std::vector<std::int64_t> disc(n, -1), low(n, 0);
    std::vector<std::size_t> membership(n, 0);
    std::vector<std::size_t> last_component(n, SIZE_MAX);
    std::vector<std::pair<NodeIndex, NodeIndex>> edge_stack;
    struct Frame {
        NodeIndex v;
        NodeIndex parent;
        std::size_t next;
    };
    std::vector<Frame> frames;
    BiconnectedResult out;
    std::int64_t clock = 0;

    for (NodeIndex root = 0; root < n; ++root) {
        if (disc[root] >= 0 || sg.degree(root) == 0) continue;
        disc[root] = low[root] = clock++;
        frames.push_back({root, root, 0});
        while (!frames.empty()) {
            auto& f = frames.back();
            const auto nb = sg.neighbors(f.v);
            if (f.next < nb.size()) {
                const auto w = nb[f.next++];
                if (disc[w] < 0) {
                    edge_stack.emplace_back(f.v, w);
                    disc[w] = low[w] = clock++;
                    frames.push_back({w, f.v, 0});
                } else if (w != f.parent && disc[w] < disc[f.v]) {
                    edge_stack.emplace_back(f.v, w);
                    low[f.v] = std::min(low[f.v], disc[w]);
                }
                continue;
            }
            const auto v = f.v;
            frames.pop_back();
            if (frames.empty()) break;
            const auto p = frames.back().v;
            low[p] = std::min(low[p], low[v]);
            if (low[v] >= disc[p]) {
                const auto id = out.components.size();
                std::vector<NodeIndex> members;
                auto add = [&](NodeIndex x) {
                    if (last_component[x] != id) {
                        last_component[x] = id;
                        members.push_back(x);
                        ++membership[x];
                    }
                };
                while (true) {
                    const auto [a, b] = edge_stack.back();
                    edge_stack.pop_back();
                    add(a);
                    add(b);
                    if (a == p && b == v) break;
                }
                std::sort(members.begin(), members.end());
                out.components.push_back(std::move(members));
            }
        }
    }
    std::sort(out.components.begin(), out.components.end());
    for (NodeIndex v = 0; v < n; ++v)
        if (membership[v] > 1) out.articulation_points.push_back(v);
    return out;
}

SmallWorld smallworld_from_measures(double C_g, double L_g, double C_r, double L_r) {
    SmallWorld s{};
    s.C_g = C_g;
    s.L_g = L_g;
    s.C_r = C_r;
    s.L_r = L_r;
    s.gamma = C_g / C_r;
    s.lambda = L_g / L_r;
    s.S = s.gamma / s.lambda;
    return s;
}

SmallWorld smallworld_coefficient(const PcnGraph& g, std::size_t reference_runs, std::uint64_t seed, Exec exec) {
    if (reference_runs == 0) throw Error("small-world coefficient needs at least one reference run");
    const auto lcc = largest_connected_component(g);
    const auto n = lcc.node_count();
    const auto m = lcc.simple().edge_count();
    if (n < 3) throw Error("small-world coefficient needs at least 3 connected nodes");

    const double C_g = transitivity(lcc);
    const double L_g = distance_stats(lcc, std::nullopt, seed, exec).avg_distance;
    double C_r = 0.0;
    double L_r = 0.0;
    for (std::size_t r = 0; r < reference_runs; ++r) {
        const auto ref = erdos_renyi(n, m, derive_seed(seed, 0x5357, r));
        C_r += transitivity(ref);
        L_r += distance_stats(ref, std::nullopt, seed, exec).avg_distance;
    }
    C_r /= static_cast<double>(reference_runs);
    L_r /= static_cast<double>(reference_runs);
    if (C_r == 0.0)
        throw Error("reference graphs have zero clustering; use a larger graph or more reference runs");
    return smallworld_from_measures(C_g, L_g, C_r, L_r);
}

std::vector<double> random_failure_experiment(const PcnGraph& g, std::span<const std::size_t> failures,
                                              std::size_t runs, std::uint64_t seed, Exec exec) {
    for (auto f : failures)
        if (f >= g.node_count())
            throw Error("failure count " + std::to_string(f) + " is not below the node count " +
                        std::to_string(g.node_count()));
    if (runs == 0) throw Error("random failure experiment needs at least one run");
    const auto totals = kernels::failure_component_totals(g.simple(), failures, runs, seed, exec);
    std::vector<double> means;
    means.reserve(totals.size());
    for (auto t : totals) means.push_back(static_cast<double>(t) / static_cast<double>(runs));
    return means;
}

MetricReport metric_report(const PcnGraph& g, std::string label, std::size_t reference_runs, std::uint64_t seed,
                           Exec exec) {
    const auto lcc = largest_connected_component(g);
    MetricReport r;
    r.label = std::move(label);
    r.node_count = lcc.node_count();
    r.edge_count = lcc.simple().edge_count();
    const auto d = distance_stats(lcc, std::nullopt, seed, exec);
    r.diameter = d.diameter;
    r.avg_distance = d.avg_distance;
    r.clustering = transitivity(lcc);
    r.central_point_dominance = central_point_dominance(lcc, exec);
    try {
        const auto sw = smallworld_coefficient(lcc, reference_runs, seed, exec);
        r.smallworld_S = sw.S;
        r.gamma = sw.gamma;
        r.lambda = sw.lambda;
    } catch (const Error& e) {
        r.note = e.what();
    }
    return r;
}

}  // namespace pcnres
