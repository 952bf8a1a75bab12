#include "pcnres/payment.hpp"

#include <charconv>
#include <fstream>

#include "pcnres/flow.hpp"
#include "pcnres/rng.hpp"

namespace pcnres {

VolumeModel::VolumeModel(std::vector<Sat> volumes) : volumes_(std::move(volumes)) {
    if (volumes_.empty()) throw ValidationError("volume model needs at least one volume");
    for (auto v : volumes_)
        if (v <= 0) throw ValidationError("volume model entries must be positive, got " + std::to_string(v));
}

VolumeModel VolumeModel::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open volume file '" + path.string() + "'");
    std::vector<Sat> volumes;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto last = line.find_last_not_of(" \t\r");
        Sat v = 0;
        auto [ptr, ec] = std::from_chars(line.data() + first, line.data() + last + 1, v);
        if (ec != std::errc{} || ptr != line.data() + last + 1)
            throw ParseError(path.string() + ":" + std::to_string(line_no) + ": expected an integer");
        if (v <= 0) throw ValidationError(path.string() + ":" + std::to_string(line_no) + ": volume must be positive");
        volumes.push_back(v);
    }
    return VolumeModel(std::move(volumes));
}

Router::Router(const PcnGraph& g) : g_(&g), dist_(g.node_count(), -1) { queue_.reserve(g.node_count()); }

PaymentOutcome Router::route(Balances& bal, NodeIndex source, NodeIndex target, Sat amount, bool apply) {
    const auto& g = *g_;
    PaymentOutcome out;

    // Reverse BFS from the target over usable directions x -> w.
    queue_.clear();
    dist_[target] = 0;
    queue_.push_back(target);
    for (std::size_t head = 0; head < queue_.size() && dist_[source] < 0; ++head) {
        const auto w = queue_[head];
        for (const auto& arc : g.arcs(w)) {
            const auto x = arc.to;
            if (dist_[x] >= 0 || bal.get(arc.edge, !arc.forward) < amount) continue;
            dist_[x] = dist_[w] + 1;
            queue_.push_back(x);
        }
    }

    if (dist_[source] >= 0) {
        // Greedy walk: smallest next id one step closer, lowest edge index per hop.
        struct Hop {
            std::uint32_t edge;
            bool forward;
        };
        std::vector<Hop> hops;
        std::vector<NodeIndex> nodes{source};
        auto v = source;
        while (v != target) {
            const Arc* best = nullptr;
            for (const auto& arc : g.arcs(v)) {
                if (dist_[arc.to] != dist_[v] - 1 || bal.get(arc.edge, arc.forward) < amount) continue;
                if (!best || arc.to < best->to) best = &arc;  // arcs are in edge order
            }
            hops.push_back({best->edge, best->forward});
            v = best->to;
            nodes.push_back(v);
        }
        out.success = true;
        for (std::size_t i = 0; i < nodes.size(); ++i) out.path.push_back(g.id(nodes[i]));
        for (std::size_t i = 1; i + 1 < nodes.size(); ++i) {
            const auto& c = g.edge(hops[i].edge);
            const auto fee = (hops[i].forward ? c.policy_ab : c.policy_ba).fee_for(amount);
            out.per_hop_fees[g.id(nodes[i])] += fee;
            out.fees_paid += fee;
        }
        if (apply) {
            for (const auto& h : hops) {
                bal.set(h.edge, h.forward, bal.get(h.edge, h.forward) - amount);
                bal.set(h.edge, !h.forward, bal.get(h.edge, !h.forward) + amount);
            }
        }
    }

    for (auto x : queue_) dist_[x] = -1;
    return out;
}

PaymentOutcome route_payment(const PcnGraph& g, Balances& balances, const PaymentSpec& spec, bool apply) {
    const auto s = g.index_of(spec.source);
    const auto t = g.index_of(spec.target);
    if (s == t) throw Error("payment source and target must differ");
    if (spec.amount <= 0) throw Error("payment amount must be positive");
    Router router(g);
    return router.route(balances, s, t, spec.amount, apply);
}

PaymentOutcome route_payment(const PcnGraph& g, const PaymentSpec& spec) {
    auto balances = g.balances();
    return route_payment(g, balances, spec, false);
}

std::vector<PaymentSpec> sample_payments(const PcnGraph& g, std::size_t count, const VolumeModel& volumes,
                                         std::uint64_t seed) {
    const auto n = g.node_count();
    if (n < 2) throw Error("sampling payments needs at least two nodes");
    Rng rng(seed);
    std::vector<PaymentSpec> out;
    out.reserve(count);
    const auto& pool = volumes.volumes();
    for (std::size_t i = 0; i < count; ++i) {
        const auto s = static_cast<NodeIndex>(rng.below(n));
        NodeIndex t;
        do {
            t = static_cast<NodeIndex>(rng.below(n));
        } while (t == s);
        out.push_back({g.id(s), g.id(t), pool[rng.below(pool.size())]});
    }
    return out;
}

std::vector<PaymentOutcome> simulate_payments(const PcnGraph& g, const std::vector<PaymentSpec>& workload,
                                              bool apply, Exec exec) {
    std::vector<PaymentOutcome> outcomes(workload.size());
    auto endpoints = [&](const PaymentSpec& p) -> std::optional<std::pair<NodeIndex, NodeIndex>> {
        auto s = g.find(p.source);
        auto t = g.find(p.target);
        if (!s || !t || *s == *t) return std::nullopt;
        return std::pair{*s, *t};
    };

    if (apply) {
        auto balances = g.balances();
        Router router(g);
        for (std::size_t i = 0; i < workload.size(); ++i)
            if (auto st = endpoints(workload[i]))
                outcomes[i] = router.route(balances, st->first, st->second, workload[i].amount, true);
        return outcomes;
    }

    const auto pristine = g.balances();
#pragma omp parallel if (exec == Exec::parallel)
    {
        Router router(g);
        auto balances = pristine;  // never modified without apply
#pragma omp for schedule(dynamic, 16)
        for (std::size_t i = 0; i < workload.size(); ++i)
            if (auto st = endpoints(workload[i]))
                outcomes[i] = router.route(balances, st->first, st->second, workload[i].amount, false);
    }
    return outcomes;
}

double success_ratio(const std::vector<PaymentOutcome>& outcomes) {
    if (outcomes.empty()) return 0.0;
    std::size_t ok = 0;
    for (const auto& o : outcomes) ok += o.success ? 1 : 0;
    return static_cast<double>(ok) / static_cast<double>(outcomes.size());
}

double success_ratio(const PcnGraph& g, std::size_t attempts, const VolumeModel& volumes, std::uint64_t seed,
                     bool apply, Exec exec) {
    if (attempts == 0) throw Error("success ratio needs at least one attempt");
    return success_ratio(simulate_payments(g, sample_payments(g, attempts, volumes, seed), apply, exec));
}

Sat max_flow(const PcnGraph& g, std::string_view s, std::string_view t) {
    const auto si = g.index_of(s);
    const auto ti = g.index_of(t);
    if (si == ti) throw Error("max flow needs distinct endpoints");
    auto net = balance_network(g);
    return net.max_flow(si, ti);
}

std::vector<NodePair> sample_pairs(const PcnGraph& g, std::size_t rounds, std::uint64_t seed) {
    const auto n = g.node_count();
    if (n < 2) throw Error("sampling node pairs needs at least two nodes");
    Rng rng(seed);
    std::vector<NodePair> out;
    out.reserve(rounds);
    for (std::size_t i = 0; i < rounds; ++i) {
        const auto s = static_cast<NodeIndex>(rng.below(n));
        NodeIndex t;
        do {
            t = static_cast<NodeIndex>(rng.below(n));
        } while (t == s);
        out.push_back({g.id(s), g.id(t)});
    }
    return out;
}

double average_max_flow(const PcnGraph& g, const std::vector<NodePair>& pairs, Exec exec) {
    if (pairs.empty()) throw Error("average max flow needs at least one round");
    const auto base = balance_network(g);
    Sat total = 0;
#pragma omp parallel if (exec == Exec::parallel) reduction(+ : total)
    {
        auto net = base;
#pragma omp for schedule(dynamic, 4)
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            auto s = g.find(pairs[i].source);
            auto t = g.find(pairs[i].target);
            if (s && t && *s != *t) total += net.max_flow(*s, *t);
        }
    }
    return static_cast<double>(total) / static_cast<double>(pairs.size());
}

double average_max_flow(const PcnGraph& g, std::size_t rounds, std::uint64_t seed, Exec exec) {
    if (rounds == 0) throw Error("average max flow needs at least one round");
    return average_max_flow(g, sample_pairs(g, rounds, seed), exec);
}

double fee_gain(const PcnGraph& g, std::string_view hub, const std::vector<PaymentSpec>& workload) {
    g.index_of(hub);
    if (workload.empty()) throw Error("fee gain needs at least one payment");
    const auto outcomes = simulate_payments(g, workload, true, Exec::serial);
    const std::string key(hub);
    MilliSat total = 0;
    for (const auto& o : outcomes)
        if (auto it = o.per_hop_fees.find(key); it != o.per_hop_fees.end()) total += it->second;
    return static_cast<double>(total) / static_cast<double>(workload.size());
}

double fee_gain(const PcnGraph& g, std::string_view hub, std::size_t payments, const VolumeModel& volumes,
                std::uint64_t seed) {
    return fee_gain(g, hub, sample_payments(g, payments, volumes, seed));
}

void write_outcome_log(std::ostream& out, const std::vector<PaymentSpec>& workload,
                       const std::vector<PaymentOutcome>& outcomes) {
    out << "attempt,source,target,amount,success,hops,fees_msat\n";
    for (std::size_t i = 0; i < workload.size() && i < outcomes.size(); ++i) {
        const auto& o = outcomes[i];
        out << i << ',' << workload[i].source << ',' << workload[i].target << ',' << workload[i].amount << ','
            << (o.success ? 1 : 0) << ',' << (o.path.empty() ? 0 : o.path.size() - 1) << ',' << o.fees_paid << '\n';
    }
}

}  // namespace pcnres
