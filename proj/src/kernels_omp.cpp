#include <omp.h>

#include <algorithm>

#include "pcnres/kernels.hpp"
#include "pcnres/rng.hpp"

namespace pcnres::kernels::omp {

namespace {

// Source blocks depend on n only, never on the thread count.
constexpr std::size_t kMaxBlocks = 256;
constexpr std::size_t kMinBlockSize = 32;

std::size_t block_size_for(std::size_t n) {
    return std::max(kMinBlockSize, (n + kMaxBlocks - 1) / kMaxBlocks);
}

}  // namespace

std::vector<double> betweenness(const SimpleGraph& g) {
    const auto n = g.node_count();
    if (n == 0) return {};
    const auto block = block_size_for(n);
    const auto blocks = (n + block - 1) / block;
    std::vector<double> partial(blocks * n, 0.0);

#pragma omp parallel
    {
        detail::BfsScratch scratch(n);
#pragma omp for schedule(dynamic, 1)
        for (std::size_t b = 0; b < blocks; ++b) {
            std::span<double> acc(partial.data() + b * n, n);
            const auto end = std::min(n, (b + 1) * block);
            for (auto s = b * block; s < end; ++s)
                detail::accumulate_dependency(g, static_cast<NodeIndex>(s), scratch, acc);
        }
    }

    std::vector<double> bc(n, 0.0);
#pragma omp parallel for schedule(static)
    for (std::size_t v = 0; v < n; ++v) {
        double sum = 0.0;
        for (std::size_t b = 0; b < blocks; ++b) sum += partial[b * n + v];
        bc[v] = sum / 2.0;
    }
    return bc;
}

DistanceTotals all_pairs_distances(const SimpleGraph& g) {
    const auto n = g.node_count();
    std::uint32_t diameter = 0;
    std::uint64_t distance_sum = 0;
    std::uint64_t pair_count = 0;

#pragma omp parallel reduction(max : diameter) reduction(+ : distance_sum, pair_count)
    {
        std::vector<std::int32_t> dist(n, -1);
        std::vector<NodeIndex> queue;
        queue.reserve(n);
#pragma omp for schedule(dynamic, 16)
        for (std::size_t s = 0; s < n; ++s) {
            const auto d = detail::distances_from(g, static_cast<NodeIndex>(s), dist, queue);
            diameter = std::max(diameter, d.eccentricity);
            distance_sum += d.sum;
            pair_count += d.reached;
        }
    }
    return {diameter, distance_sum, pair_count};
}

void shifted_matvec(const SimpleGraph& g, bool weighted, std::span<const double> x, std::span<double> y) {
    const auto n = g.node_count();
#pragma omp parallel for schedule(static)
    for (std::size_t v = 0; v < n; ++v) {
        double acc = x[v];
        const auto nb = g.neighbors(static_cast<NodeIndex>(v));
        const auto w = g.weights(static_cast<NodeIndex>(v));
        for (std::size_t i = 0; i < nb.size(); ++i)
            acc += (weighted ? static_cast<double>(w[i]) : 1.0) * x[nb[i]];
        y[v] = acc;
    }
}

std::vector<std::uint64_t> failure_component_totals(const SimpleGraph& g, std::span<const std::size_t> failures,
                                                    std::size_t runs, std::uint64_t seed) {
    const auto n = g.node_count();
    const auto jobs = failures.size() * runs;
    std::vector<std::uint64_t> per_job(jobs, 0);

#pragma omp parallel
    {
        std::vector<NodeIndex> perm(n), stack;
        std::vector<std::uint32_t> stamp(n, 0);
        std::uint32_t epoch = 0;
#pragma omp for schedule(dynamic, 4)
        for (std::size_t j = 0; j < jobs; ++j) {
            const auto i = j / runs;
            const auto r = j % runs;
            per_job[j] = detail::components_after_removal(g, failures[i], derive_seed(seed, i, r), perm, stamp,
                                                          epoch, stack);
        }
    }

    std::vector<std::uint64_t> totals(failures.size(), 0);
    for (std::size_t j = 0; j < jobs; ++j) totals[j / runs] += per_job[j];
    return totals;
}

}  // namespace pcnres::kernels::omp
