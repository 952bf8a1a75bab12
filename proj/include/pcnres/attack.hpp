#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pcnres/common.hpp"
#include "pcnres/graph.hpp"
#include "pcnres/payment.hpp"

namespace pcnres {

enum class Direction { a_to_b, b_to_a };

// Drains one direction of a channel into the other.
PcnGraph exhaust_channel(const PcnGraph& g, std::string_view channel_id, Direction direction);

enum class IsolationMode { griefing, routing };

struct IsolationResult {
    PcnGraph drained;   // every outbound balance of the target is 0
    PcnGraph routable;  // drained graph without the target
    Sat cost = 0;       // outbound balance that had to be moved (locked under griefing)
    Sat spent = 0;      // monetary cost: cost for routing, 0 for griefing
};

// Zeroes all outbound balances of `target`. With an attacker, the drain is
// funded through the attacker's channel to the target (which must hold at
// least `cost` on the attacker side) and that channel is closed afterwards;
// channels to the attacker are not part of the cost.
IsolationResult isolate_node(const PcnGraph& g, std::string_view target, IsolationMode mode,
                             std::optional<std::string_view> attacker = std::nullopt);

enum class StrategyKind { degree, betweenness, eigenvector, ranked_min_cut, parallel_paths, random };

StrategyKind parse_strategy_kind(std::string_view name);
std::string_view to_string(StrategyKind kind);

struct Strategy {
    StrategyKind kind = StrategyKind::degree;
    std::size_t cut_samples = 1000;      // ranked_min_cut
    std::size_t payment_samples = 1000;  // parallel_paths
    std::optional<std::string> hub;      // parallel_paths: adversary's own node
    std::optional<VolumeModel> volumes;  // parallel_paths; 1 sat when absent
    std::uint64_t seed = 0;              // random, ranked_min_cut, parallel_paths
    bool adaptive = false;               // re-rank centrality after each pick
};

struct Target {
    enum class Kind { node, cut };
    Kind kind = Kind::node;
    std::string node;                   // node targets
    std::vector<std::string> channels;  // cut targets, sorted
    Sat cost = 0;                       // at planning time
    std::size_t occurrences = 0;        // cut samples / path memberships

    std::string label() const;
};

struct AttackPlan {
    Strategy strategy;
    std::vector<Target> targets;
};

// Node strategies rank by the metric descending with ties broken by node id.
// Node cost is the outbound balance; cut cost is the summed capacity.
AttackPlan plan_targets(const PcnGraph& g, const Strategy& strategy, std::size_t limit, Exec exec = Exec::parallel);

struct Constraint {
    bool budget_mode = false;
    std::size_t count = 0;
    Sat budget = 0;

    static Constraint by_count(std::size_t n) { return {false, n, 0}; }
    static Constraint by_budget(Sat b) { return {true, 0, b}; }
};

struct MetricParams {
    std::size_t attempts = 1000;
    std::size_t flow_rounds = 1000;
    VolumeModel volumes = VolumeModel::constant(1);
    std::optional<std::string> hub;  // enables fee gain
    std::size_t fee_payments = 1000;
    bool griefing = false;           // budget mode: targets cost nothing
};

struct MetricSet {
    double s = 0.0;
    double r = 0.0;
    double F_bar = 0.0;
    std::optional<double> g_bar;
};

struct Advantage {
    double delta_s = 0.0;
    double delta_r = 0.0;
    double delta_F = 0.0;
    std::optional<double> delta_g;  // absent when the a-priori fee gain is 0
};

struct SimReport {
    std::string strategy;
    Constraint constraint;
    std::uint64_t seed = 0;
    MetricSet a_priori;
    MetricSet a_posteriori;
    Advantage advantage;
    Sat spent = 0;
    Sat locked = 0;  // griefing: balance locked without spending
    std::size_t removed = 0;
    std::vector<std::string> executed;
};

// |1 - m' / m|; throws Error when m == 0.
double advantage(double m, double m_prime);

// Size of the largest connected component.
std::size_t reachability(const PcnGraph& g);

// Holds the pristine graph, the sampled payment/flow workloads and the
// a-priori metrics, so many plans and constraints can be evaluated against
// identical inputs.
class AttackSession {
public:
    AttackSession(PcnGraph g, MetricParams params, std::uint64_t seed, Exec exec = Exec::parallel);

    const PcnGraph& graph() const { return graph_; }
    const MetricSet& a_priori() const { return a_priori_; }
    MetricSet measure(const PcnGraph& g) const;

    // Walks the plan. Count mode executes the first n targets; budget mode
    // skips targets it cannot afford and keeps going. Cuts are all or nothing.
    // Costs are charged on the state at execution time.
    SimReport run(const AttackPlan& plan, const Constraint& constraint) const;

    // The surviving graph after walking the plan (no metrics).
    PcnGraph survivors(const AttackPlan& plan, const Constraint& constraint) const;

private:
    struct Walk {
        std::vector<bool> node_removed;
        std::vector<bool> edge_removed;
        Sat spent = 0;
        Sat locked = 0;
        std::vector<std::string> executed;
    };
    Walk walk(const AttackPlan& plan, const Constraint& constraint) const;
    PcnGraph apply(const Walk& w) const;
    void check_plan(const AttackPlan& plan) const;

    PcnGraph graph_;
    MetricParams params_;
    std::uint64_t seed_;
    Exec exec_;
    std::vector<PaymentSpec> workload_;
    std::vector<NodePair> flow_pairs_;
    std::vector<PaymentSpec> fee_workload_;
    MetricSet a_priori_;
};

SimReport execute_attack(const PcnGraph& g, const AttackPlan& plan, const Constraint& constraint,
                         const MetricParams& params, std::uint64_t seed, Exec exec = Exec::parallel);

}  // namespace pcnres
