#include "pcnres/attack.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "pcnres/flow.hpp"
#include "pcnres/metrics.hpp"
#include "pcnres/rng.hpp"

namespace pcnres {

namespace {

constexpr std::uint64_t kCutStream = 0x637574;
constexpr std::uint64_t kPathStream = 0x70617468;
constexpr std::uint64_t kPaymentStream = 1;
constexpr std::uint64_t kFlowStream = 2;
constexpr std::uint64_t kFeeStream = 3;

// Indices sorted by score descending, ties by index (= node id order).
std::vector<NodeIndex> rank_desc(const std::vector<double>& score) {
    std::vector<NodeIndex> order(score.size());
    std::iota(order.begin(), order.end(), NodeIndex{0});
    std::stable_sort(order.begin(), order.end(), [&](NodeIndex l, NodeIndex r) { return score[l] > score[r]; });
    return order;
}

std::vector<double> node_scores(const PcnGraph& g, StrategyKind kind, Exec exec) {
    switch (kind) {
        case StrategyKind::degree: {
            std::vector<double> s(g.node_count());
            for (NodeIndex v = 0; v < g.node_count(); ++v) s[v] = static_cast<double>(g.channel_degree(v));
            return s;
        }
        case StrategyKind::betweenness:
            return betweenness_centrality(g, true, exec);
        case StrategyKind::eigenvector:
            return eigenvector_centrality(g, EigenvectorOptions{.weighted = true}, exec);
        default:
            throw Error("not a centrality strategy");
    }
}

Target node_target(const PcnGraph& g, NodeIndex v, std::size_t occurrences = 0) {
    Target t;
    t.kind = Target::Kind::node;
    t.node = g.id(v);
    t.cost = g.outbound_balance(v);
    t.occurrences = occurrences;
    return t;
}

std::vector<Target> centrality_targets(const PcnGraph& g, const Strategy& st, std::size_t limit, Exec exec) {
    std::vector<Target> out;
    if (!st.adaptive) {
        for (auto v : rank_desc(node_scores(g, st.kind, exec))) {
            if (out.size() == limit) break;
            out.push_back(node_target(g, v));
        }
        return out;
    }
    // Adaptive: recompute on the remainder after every pick.
    auto current = g;
    while (out.size() < limit && !current.empty()) {
        const auto order = rank_desc(node_scores(current, st.kind, exec));
        const auto& pick = current.id(order.front());
        out.push_back(node_target(g, g.index_of(pick)));
        const std::string removed[] = {pick};
        current = remove_nodes(current, removed);
    }
    return out;
}

std::vector<Target> random_targets(const PcnGraph& g, const Strategy& st, std::size_t limit) {
    std::vector<NodeIndex> order(g.node_count());
    std::iota(order.begin(), order.end(), NodeIndex{0});
    Rng rng(st.seed);
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    std::vector<Target> out;
    for (auto v : order) {
        if (out.size() == limit) break;
        out.push_back(node_target(g, v));
    }
    return out;
}

std::vector<Target> min_cut_targets(const PcnGraph& g, const Strategy& st, std::size_t limit, Exec exec) {
    if (st.cut_samples < 1) throw Error("ranked-min-cut needs cut_samples >= 1");
    const auto n = g.node_count();
    if (n < 2) return {};
    Rng rng(derive_seed(st.seed, kCutStream));
    std::vector<std::pair<NodeIndex, NodeIndex>> terminals(st.cut_samples);
    for (auto& [s, t] : terminals) {
        s = static_cast<NodeIndex>(rng.below(n));
        do {
            t = static_cast<NodeIndex>(rng.below(n));
        } while (t == s);
    }

    const auto base = capacity_network(g);
    std::vector<std::vector<std::uint32_t>> cuts(terminals.size());
#pragma omp parallel if (exec == Exec::parallel)
    {
        auto net = base;
#pragma omp for schedule(dynamic, 4)
        for (std::size_t i = 0; i < terminals.size(); ++i) {
            const auto [s, t] = terminals[i];
            if (net.max_flow(s, t) == 0) continue;  // different components: nothing to cut
            const auto side = net.source_side(s);
            for (std::size_t e = 0; e < g.edge_count(); ++e)
                if (side[g.end_a(e)] != side[g.end_b(e)]) cuts[i].push_back(static_cast<std::uint32_t>(e));
        }
    }

    std::map<std::vector<std::string>, std::pair<std::size_t, Sat>> ranked;
    for (const auto& cut : cuts) {
        if (cut.empty()) continue;
        std::vector<std::string> ids;
        Sat cost = 0;
        for (auto e : cut) {
            ids.push_back(g.edge(e).channel_id);
            cost += g.edge(e).capacity;
        }
        std::sort(ids.begin(), ids.end());
        auto& slot = ranked[std::move(ids)];
        ++slot.first;
        slot.second = cost;
    }
    std::vector<Target> out;
    for (auto& [ids, info] : ranked) {
        Target t;
        t.kind = Target::Kind::cut;
        t.channels = ids;
        t.occurrences = info.first;
        t.cost = info.second;
        out.push_back(std::move(t));
    }
    // map order is lexicographic on the id set, so stable_sort keeps that as the tie-break.
    std::stable_sort(out.begin(), out.end(),
                     [](const Target& l, const Target& r) { return l.occurrences > r.occurrences; });
    if (out.size() > limit) out.resize(limit);
    return out;
}

std::vector<Target> parallel_path_targets(const PcnGraph& g, const Strategy& st, std::size_t limit, Exec exec) {
    if (st.payment_samples < 1) throw Error("parallel-paths needs payment_samples >= 1");
    std::optional<NodeIndex> hub;
    if (st.hub) hub = g.index_of(*st.hub);
    if (g.node_count() < 2) return {};
    const auto volumes = st.volumes.value_or(VolumeModel::constant(1));
    const auto workload = sample_payments(g, st.payment_samples, volumes, derive_seed(st.seed, kPathStream));
    const auto outcomes = simulate_payments(g, workload, false, exec);

    std::vector<std::size_t> count(g.node_count(), 0);
    for (const auto& o : outcomes) {
        if (!o.success) continue;
        if (hub && std::find(o.path.begin(), o.path.end(), g.id(*hub)) != o.path.end()) continue;
        for (std::size_t i = 1; i + 1 < o.path.size(); ++i) ++count[g.index_of(o.path[i])];
    }
    std::vector<double> score(count.begin(), count.end());
    std::vector<Target> out;
    for (auto v : rank_desc(score)) {
        if (out.size() == limit || count[v] == 0) break;
        if (hub && v == *hub) continue;
        out.push_back(node_target(g, v, count[v]));
    }
    return out;
}

}  // namespace

PcnGraph exhaust_channel(const PcnGraph& g, std::string_view channel_id, Direction direction) {
    const auto e = g.find_channel(channel_id);
    if (!e) throw UnknownIdError("unknown channel '" + std::string(channel_id) + "'");
    auto balances = g.balances();
    const bool forward = direction == Direction::a_to_b;
    const auto drained = balances.get(*e, forward);
    balances.set(*e, forward, 0);
    balances.set(*e, !forward, balances.get(*e, !forward) + drained);
    return with_balances(g, balances);
}

IsolationResult isolate_node(const PcnGraph& g, std::string_view target, IsolationMode mode,
                             std::optional<std::string_view> attacker) {
    const auto v = g.index_of(target);
    std::optional<NodeIndex> adversary;
    if (attacker) {
        adversary = g.index_of(*attacker);
        if (*adversary == v) throw Error("attacker and target must differ");
    }

    auto balances = g.balances();
    Sat cost = 0;
    std::vector<std::size_t> attacker_channels;
    for (const auto& arc : g.arcs(v)) {
        if (adversary && arc.to == *adversary) {
            attacker_channels.push_back(arc.edge);
            continue;
        }
        const auto drained = balances.get(arc.edge, arc.forward);
        cost += drained;
        balances.set(arc.edge, arc.forward, 0);
        balances.set(arc.edge, !arc.forward, balances.get(arc.edge, !arc.forward) + drained);
    }

    if (adversary) {
        // Fund the drain from the attacker side of one sufficiently large channel.
        auto funding = std::find_if(attacker_channels.begin(), attacker_channels.end(), [&](std::size_t e) {
            return balances.get(e, g.end_a(e) == *adversary) >= cost;
        });
        if (funding == attacker_channels.end())
            throw Error("attacker has no channel to '" + std::string(target) + "' holding " + std::to_string(cost) +
                        " sat");
        const bool from_a = g.end_a(*funding) == *adversary;
        balances.set(*funding, from_a, balances.get(*funding, from_a) - cost);
        balances.set(*funding, !from_a, balances.get(*funding, !from_a) + cost);
    }

    IsolationResult out;
    out.cost = cost;
    out.spent = mode == IsolationMode::routing ? cost : 0;
    out.drained = with_balances(g, balances);
    if (!attacker_channels.empty()) out.drained = remove_channels(out.drained, attacker_channels);
    const std::string removed[] = {std::string(target)};
    out.routable = remove_nodes(out.drained, removed);
    return out;
}

StrategyKind parse_strategy_kind(std::string_view name) {
    if (name == "degree") return StrategyKind::degree;
    if (name == "betweenness") return StrategyKind::betweenness;
    if (name == "eigenvector") return StrategyKind::eigenvector;
    if (name == "mincut" || name == "ranked-min-cut") return StrategyKind::ranked_min_cut;
    if (name == "parallel" || name == "parallel-paths") return StrategyKind::parallel_paths;
    if (name == "random") return StrategyKind::random;
    throw Error("unknown strategy '" + std::string(name) + "'");
}

std::string_view to_string(StrategyKind kind) {
    switch (kind) {
        case StrategyKind::degree: return "degree";
        case StrategyKind::betweenness: return "betweenness";
        case StrategyKind::eigenvector: return "eigenvector";
        case StrategyKind::ranked_min_cut: return "mincut";
        case StrategyKind::parallel_paths: return "parallel";
        case StrategyKind::random: return "random";
    }
    return "?";
}

std::string Target::label() const {
    if (kind == Kind::node) return node;
    std::string out = "cut{";
    for (std::size_t i = 0; i < channels.size(); ++i) out += (i ? "|" : "") + channels[i];
    return out + "}";
}

AttackPlan plan_targets(const PcnGraph& g, const Strategy& strategy, std::size_t limit, Exec exec) {
    if (limit < 1) throw Error("plan limit must be at least 1");
    AttackPlan plan;
    plan.strategy = strategy;
    switch (strategy.kind) {
        case StrategyKind::degree:
        case StrategyKind::betweenness:
        case StrategyKind::eigenvector:
            plan.targets = centrality_targets(g, strategy, limit, exec);
            break;
        case StrategyKind::random:
            plan.targets = random_targets(g, strategy, limit);
            break;
        case StrategyKind::ranked_min_cut:
            plan.targets = min_cut_targets(g, strategy, limit, exec);
            break;
        case StrategyKind::parallel_paths:
            plan.targets = parallel_path_targets(g, strategy, limit, exec);
            break;
    }
    return plan;
}

double advantage(double m, double m_prime) {
    if (m == 0.0) throw Error("adversarial advantage is undefined for an a-priori value of 0");
    return std::abs(1.0 - m_prime / m);
}

std::size_t reachability(const PcnGraph& g) {
    if (g.empty()) return 0;
    const auto c = connected_components(g);
    return *std::max_element(c.size.begin(), c.size.end());
}

AttackSession::AttackSession(PcnGraph g, MetricParams params, std::uint64_t seed, Exec exec)
    : graph_(std::move(g)), params_(std::move(params)), seed_(seed), exec_(exec) {
    if (graph_.node_count() < 2) throw Error("attack simulation needs at least two nodes");
    if (params_.attempts == 0 || params_.flow_rounds == 0) throw Error("attempts and flow rounds must be positive");
    workload_ = sample_payments(graph_, params_.attempts, params_.volumes, derive_seed(seed_, kPaymentStream));
    flow_pairs_ = sample_pairs(graph_, params_.flow_rounds, derive_seed(seed_, kFlowStream));
    if (params_.hub) {
        graph_.index_of(*params_.hub);
        fee_workload_ = sample_payments(graph_, params_.fee_payments, params_.volumes, derive_seed(seed_, kFeeStream));
    }
    a_priori_ = measure(graph_);
}

MetricSet AttackSession::measure(const PcnGraph& g) const {
    MetricSet m;
    m.s = success_ratio(simulate_payments(g, workload_, false, exec_));
    m.r = static_cast<double>(reachability(g));
    m.F_bar = average_max_flow(g, flow_pairs_, exec_);
    if (params_.hub) m.g_bar = g.find(*params_.hub) ? fee_gain(g, *params_.hub, fee_workload_) : 0.0;
    return m;
}

void AttackSession::check_plan(const AttackPlan& plan) const {
    for (const auto& t : plan.targets) {
        if (t.kind == Target::Kind::node) {
            const auto v = graph_.find(t.node);
            if (!v) throw Error("plan/graph mismatch: unknown node '" + t.node + "'");
            if (graph_.outbound_balance(*v) != t.cost)
                throw StalePlanError("stale plan: isolation cost of '" + t.node + "' changed since planning");
        } else {
            for (const auto& c : t.channels)
                if (!graph_.find_channel(c)) throw Error("plan/graph mismatch: unknown channel '" + c + "'");
        }
    }
}

AttackSession::Walk AttackSession::walk(const AttackPlan& plan, const Constraint& constraint) const {
    check_plan(plan);
    const auto& g = graph_;
    Walk w;
    w.node_removed.assign(g.node_count(), false);
    w.edge_removed.assign(g.edge_count(), false);
    auto alive = [&](std::size_t e) {
        return !w.edge_removed[e] && !w.node_removed[g.end_a(e)] && !w.node_removed[g.end_b(e)];
    };

    for (const auto& t : plan.targets) {
        if (!constraint.budget_mode && w.executed.size() >= constraint.count) break;
        Sat cost = 0;
        std::vector<std::size_t> cut_edges;
        std::optional<NodeIndex> v;
        if (t.kind == Target::Kind::node) {
            v = *g.find(t.node);
            if (w.node_removed[*v]) continue;
            for (const auto& arc : g.arcs(*v))
                if (alive(arc.edge)) cost += arc.forward ? g.edge(arc.edge).balance_ab : g.edge(arc.edge).balance_ba;
        } else {
            for (const auto& c : t.channels) {
                const auto e = *g.find_channel(c);
                if (!alive(e)) continue;
                cut_edges.push_back(e);
                cost += g.edge(e).capacity;
            }
        }

        const Sat charge = params_.griefing ? 0 : cost;
        if (constraint.budget_mode && w.spent + charge > constraint.budget) continue;
        w.spent += charge;
        if (params_.griefing) w.locked += cost;
        if (v) {
            w.node_removed[*v] = true;
        } else {
            for (auto e : cut_edges) w.edge_removed[e] = true;
        }
        w.executed.push_back(t.label());
    }
    return w;
}

PcnGraph AttackSession::apply(const Walk& w) const {
    std::vector<ChannelEdge> edges;
    for (std::size_t e = 0; e < graph_.edge_count(); ++e)
        if (!w.edge_removed[e] && !w.node_removed[graph_.end_a(e)] && !w.node_removed[graph_.end_b(e)])
            edges.push_back(graph_.edge(e));
    std::vector<NodeInfo> nodes;
    for (NodeIndex v = 0; v < graph_.node_count(); ++v)
        if (!w.node_removed[v]) nodes.push_back(graph_.nodes()[v]);
    return PcnGraph::build(std::move(nodes), std::move(edges), graph_.snapshot_time());
}

PcnGraph AttackSession::survivors(const AttackPlan& plan, const Constraint& constraint) const {
    return apply(walk(plan, constraint));
}

SimReport AttackSession::run(const AttackPlan& plan, const Constraint& constraint) const {
    const auto w = walk(plan, constraint);
    SimReport rep;
    rep.strategy = std::string(to_string(plan.strategy.kind));
    rep.constraint = constraint;
    rep.seed = seed_;
    rep.a_priori = a_priori_;
    rep.a_posteriori = w.executed.empty() ? a_priori_ : measure(apply(w));
    rep.spent = w.spent;
    rep.locked = w.locked;
    rep.removed = w.executed.size();
    rep.executed = w.executed;
    rep.advantage.delta_s = advantage(rep.a_priori.s, rep.a_posteriori.s);
    rep.advantage.delta_r = advantage(rep.a_priori.r, rep.a_posteriori.r);
    rep.advantage.delta_F = advantage(rep.a_priori.F_bar, rep.a_posteriori.F_bar);
    if (rep.a_priori.g_bar && *rep.a_priori.g_bar != 0.0)
        rep.advantage.delta_g = advantage(*rep.a_priori.g_bar, *rep.a_posteriori.g_bar);
    return rep;
}

SimReport execute_attack(const PcnGraph& g, const AttackPlan& plan, const Constraint& constraint,
                         const MetricParams& params, std::uint64_t seed, Exec exec) {
    return AttackSession(g, params, seed, exec).run(plan, constraint);
}

}  // namespace pcnres
