#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pcnres/common.hpp"
#include "pcnres/graph.hpp"

// Topology measures. Unless noted, everything runs on the undirected simple
// projection with hop-count distances. Per-node results are vectors aligned
// with the graph's NodeIndex order.
namespace pcnres {

// Channel degree (parallel channels each count) -> number of nodes.
std::map<std::size_t, std::size_t> degree_distribution(const PcnGraph& g);

// Brandes betweenness. Normalised values are divided by (n-1)(n-2)/2.
std::vector<double> betweenness_centrality(const PcnGraph& g, bool normalized, Exec exec = Exec::parallel);

struct EigenvectorOptions {
    bool weighted = false;  // capacity-weighted adjacency
    double tol = 1e-8;
    int max_iter = 1000;
};

// Power iteration on A + I over the largest connected component (the shift
// keeps bipartite components from oscillating without changing the dominant
// eigenvector). Unit Euclidean norm; nodes outside the component get 0.
// Throws ConvergenceError after max_iter iterations.
std::vector<double> eigenvector_centrality(const PcnGraph& g, const EigenvectorOptions& opts = {},
                                           Exec exec = Exec::parallel);

// 3 * triangles / connected triples; 0 when there are no triples.
double transitivity(const PcnGraph& g);

struct DistanceStats {
    std::uint32_t diameter = 0;
    double avg_distance = 0.0;
};

// Computed on the largest connected component. With sample_pairs set, the
// average is estimated from that many uniform ordered pairs; the diameter is
// always exact.
DistanceStats distance_stats(const PcnGraph& g, std::optional<std::size_t> sample_pairs = std::nullopt,
                             std::uint64_t seed = 0, Exec exec = Exec::parallel);

// Maximum normalised betweenness.
double central_point_dominance(const PcnGraph& g, Exec exec = Exec::parallel);

struct BiconnectedResult {
    std::vector<std::vector<NodeIndex>> components;  // each sorted; list sorted
    std::vector<NodeIndex> articulation_points;      // sorted
};

BiconnectedResult biconnected_analysis(const PcnGraph& g);

struct SmallWorld {
    double S = 0.0;
    double gamma = 0.0;   // C_g / C_r
    double lambda = 0.0;  // L_g / L_r
    double C_g = 0.0;
    double C_r = 0.0;
    double L_g = 0.0;
    double L_r = 0.0;
};

// S = (C_g / C_r) / (L_g / L_r).
SmallWorld smallworld_from_measures(double C_g, double L_g, double C_r, double L_r);

// Compares the largest component of g against `reference_runs` G(n, M)
// graphs with matching node and simple-edge counts; C_r and L_r are averaged.
SmallWorld smallworld_coefficient(const PcnGraph& g, std::size_t reference_runs, std::uint64_t seed,
                                  Exec exec = Exec::parallel);

// Mean connected-component count after removing k uniform nodes, for each k.
std::vector<double> random_failure_experiment(const PcnGraph& g, std::span<const std::size_t> failures,
                                              std::size_t runs, std::uint64_t seed, Exec exec = Exec::parallel);

struct MetricReport {
    std::string label;
    std::size_t node_count = 0;
    std::size_t edge_count = 0;  // simple projection
    std::uint32_t diameter = 0;
    double avg_distance = 0.0;
    double clustering = 0.0;
    double central_point_dominance = 0.0;
    double smallworld_S = 0.0;
    double gamma = 0.0;
    double lambda = 0.0;
    std::string note;  // set when the small-world comparison was not possible
};

// All measures on the largest component of g.
MetricReport metric_report(const PcnGraph& g, std::string label, std::size_t reference_runs, std::uint64_t seed,
                           Exec exec = Exec::parallel);

}  // namespace pcnres
