#pragma once

#include <cstdint>
#include <string_view>

#include "pcnres/graph.hpp"

namespace pcnres {

enum class ReferenceKind { erdos_renyi, barabasi_albert };

ReferenceKind parse_reference_kind(std::string_view name);
std::string_view to_string(ReferenceKind kind);

// Reference graphs with unit capacities (balance 1 both ways) and default fee
// policies. Node ids are zero-padded ("n0042") so id order is numeric order.
//
// erdos_renyi: G(n, M) with exactly target_edges distinct uniform edges.
// barabasi_albert: preferential attachment with m = round(target_edges / n),
// seeded from a star on m + 1 nodes, which yields m * (n - m) edges.
// The edge list is a pure function of (kind, n, target_edges, seed).
PcnGraph generate_reference(ReferenceKind kind, std::size_t n, std::size_t target_edges, std::uint64_t seed);

PcnGraph erdos_renyi(std::size_t n, std::size_t edges, std::uint64_t seed);
PcnGraph barabasi_albert(std::size_t n, std::size_t m, std::uint64_t seed);

// Builds a graph with unit capacities from an index edge list.
PcnGraph graph_from_pairs(std::size_t n, const std::vector<std::pair<NodeIndex, NodeIndex>>& pairs,
                          Sat capacity = 1);

}  // namespace pcnres
