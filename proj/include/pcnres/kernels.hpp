#pragma once

// Data-parallel inner loops over the simple projection. Each kernel has a
// plain serial reference (kernels_serial.cpp) and an OpenMP version
// (kernels_omp.cpp). Integer reductions are bit-identical between the two.
// The betweenness kernel sums doubles in fixed source blocks whose layout
// depends only on the node count, so the OpenMP result is reproducible
// across thread counts and matches the serial path to rounding.

#include <cstdint>
#include <span>
#include <vector>

#include "pcnres/common.hpp"
#include "pcnres/graph.hpp"

namespace pcnres::kernels {

struct DistanceTotals {
    std::uint32_t diameter = 0;     // longest finite distance
    std::uint64_t distance_sum = 0; // over ordered reachable pairs
    std::uint64_t pair_count = 0;   // ordered reachable pairs, s != t
};

// Unnormalised undirected betweenness: each unordered pair counted once.
std::vector<double> betweenness(const SimpleGraph& g, Exec exec);
DistanceTotals all_pairs_distances(const SimpleGraph& g, Exec exec);

// y = (A + I) x, A the (optionally capacity-weighted) adjacency matrix.
void shifted_matvec(const SimpleGraph& g, bool weighted, std::span<const double> x,
                    std::span<double> y, Exec exec);

// For each entry of `failures`, the total connected-component count of the
// remainder summed over `runs` independent uniform removals. Run r of entry i
// draws from derive_seed(seed, i, r).
std::vector<std::uint64_t> failure_component_totals(const SimpleGraph& g,
                                                    std::span<const std::size_t> failures,
                                                    std::size_t runs, std::uint64_t seed, Exec exec);

namespace serial {
std::vector<double> betweenness(const SimpleGraph& g);
DistanceTotals all_pairs_distances(const SimpleGraph& g);
void shifted_matvec(const SimpleGraph& g, bool weighted, std::span<const double> x, std::span<double> y);
std::vector<std::uint64_t> failure_component_totals(const SimpleGraph& g, std::span<const std::size_t> failures,
                                                    std::size_t runs, std::uint64_t seed);
}  // namespace serial

namespace omp {
std::vector<double> betweenness(const SimpleGraph& g);
DistanceTotals all_pairs_distances(const SimpleGraph& g);
void shifted_matvec(const SimpleGraph& g, bool weighted, std::span<const double> x, std::span<double> y);
std::vector<std::uint64_t> failure_component_totals(const SimpleGraph& g, std::span<const std::size_t> failures,
                                                    std::size_t runs, std::uint64_t seed);
}  // namespace omp

// Shared single-source building blocks.
namespace detail {

struct BfsScratch {
    std::vector<std::int32_t> dist;
    std::vector<double> sigma;
    std::vector<double> delta;
    std::vector<NodeIndex> order;
    explicit BfsScratch(std::size_t n) : dist(n, -1), sigma(n, 0.0), delta(n, 0.0) { order.reserve(n); }
};

// Adds the dependency of source s onto every other node into `acc`.
void accumulate_dependency(const SimpleGraph& g, NodeIndex s, BfsScratch& scratch, std::span<double> acc);

// BFS from s; returns (eccentricity, distance sum, reached count excluding s).
struct SourceDistances {
    std::uint32_t eccentricity = 0;
    std::uint64_t sum = 0;
    std::uint64_t reached = 0;
};
SourceDistances distances_from(const SimpleGraph& g, NodeIndex s, std::vector<std::int32_t>& dist,
                               std::vector<NodeIndex>& queue);

// Picks `k` distinct nodes uniformly and returns the component count of the
// remainder. `removed` and `seen` are caller-owned scratch of size n.
std::size_t components_after_removal(const SimpleGraph& g, std::size_t k, std::uint64_t seed,
                                     std::vector<NodeIndex>& perm, std::vector<std::uint32_t>& stamp,
                                     std::uint32_t& epoch, std::vector<NodeIndex>& stack);

}  // namespace detail

}  // namespace pcnres::kernels
