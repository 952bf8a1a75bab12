// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles/oracles.hpp"
#include "pcnres/attack.hpp"
#include "pcnres/cli.hpp"
#include "pcnres/flow.hpp"
#include "pcnres/generators.hpp"
#include "pcnres/metrics.hpp"
#include "pcnres/powerlaw.hpp"
#include "pcnres/snapshot.hpp"
#include "support/fixtures.hpp"

using namespace pcnres;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double v, int digits = 4) {
    std::ostringstream os;
    os << std::setprecision(digits) << v;
    return os.str();
}

bool close_rel(double a, double b, double rel = 1e-9) {
    return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

Outcome smallworld_formula() {
    const auto sw = smallworld_from_measures(0.085, 2.92, 0.005, 3.45);
    return {sw.S >= 19.0 && sw.S <= 21.0, "S=" + fmt(sw.S)};
}

Outcome reference_regime() {
    bool ok = true;
    std::uint32_t dmin = 99, dmax = 0;
    double lmin = 1e9, lmax = 0, cpd_er = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto g = erdos_renyi(2400, 13941, seed);
        const auto d = distance_stats(g);
        const double cpd = central_point_dominance(g);
        dmin = std::min(dmin, d.diameter);
        dmax = std::max(dmax, d.diameter);
        lmin = std::min(lmin, d.avg_distance);
        lmax = std::max(lmax, d.avg_distance);
        cpd_er = std::max(cpd_er, cpd);
        ok = ok && d.diameter >= 5 && d.diameter <= 7 && std::abs(d.avg_distance - 3.45) <= 0.15 && cpd < 0.02;
    }
    const double cpd_ba = central_point_dominance(barabasi_albert(2400, 5, 1));
    ok = ok && cpd_ba > 0.05;
    return {ok, "ER diameter " + std::to_string(dmin) + ".." + std::to_string(dmax) + ", avg distance " + fmt(lmin) +
                    ".." + fmt(lmax) + ", max cpd " + fmt(cpd_er) + "; BA cpd " + fmt(cpd_ba)};
}

Outcome robustness() {
    const std::vector<std::size_t> fifty{50};
    const double er = random_failure_experiment(erdos_renyi(2400, 13941, 1), fifty, 100, 1)[0];
    const double hub = random_failure_experiment(fixture::hub_and_spoke(500, 300), fifty, 100, 1)[0];
    return {er <= 1.1 && hub > 3.0, "ER mean " + fmt(er) + ", hub-and-spoke mean " + fmt(hub)};
}

Outcome power_law_recovery() {
    constexpr std::size_t seeds = 20, draws = 10'000, runs = 500;
    const PowerLawSampler sampler(2.5, 5);
    std::vector<double> alphas;
    std::size_t accepted = 0, rejected = 0;
    for (std::uint64_t s = 0; s < seeds; ++s) {
        Rng rng(derive_seed(2024, s));
        std::vector<std::int64_t> data(draws);
        for (auto& x : data) x = sampler(rng);
        const auto fit = fit_power_law(data);
        alphas.push_back(fit.alpha);
        if (goodness_of_fit(data, fit, runs, derive_seed(7, s)).p_value > kRejectThreshold) ++accepted;

        std::mt19937_64 gen(derive_seed(99, s));
        std::geometric_distribution<std::int64_t> geo(0.15);
        std::vector<std::int64_t> expo(draws);
        for (auto& x : expo) x = 1 + geo(gen);
        const auto efit = fit_power_law(expo);
        if (goodness_of_fit(expo, efit, runs, derive_seed(8, s)).reject) ++rejected;
    }
    std::sort(alphas.begin(), alphas.end());
    const double median = 0.5 * (alphas[seeds / 2 - 1] + alphas[seeds / 2]);
    const bool ok = median >= 2.4 && median <= 2.6 && accepted * 100 >= 85 * seeds && rejected * 100 >= 85 * seeds;
    return {ok, "median alpha " + fmt(median) + ", accepted " + std::to_string(accepted) + "/20, exponential rejected " +
                    std::to_string(rejected) + "/20; published snapshot not supplied"};
}

Outcome oracle_suite() {
    std::mt19937_64 gen(5150);
    std::size_t instances = 0, mismatches = 0;
    for (int rep = 0; rep < 240; ++rep) {
        const std::size_t n = 2 + rep % 7;
        const auto g = oracle::random_graph(gen, n, 0.25 + 0.05 * (rep % 8), 2, 20);
        const auto adj = oracle::adjacency(g);
        ++instances;

        const auto bc = betweenness_centrality(g, false, Exec::serial);
        const auto bc_par = betweenness_centrality(g, false, Exec::parallel);
        const auto ref = oracle::betweenness(adj);
        for (std::size_t v = 0; v < n; ++v)
            if (!close_rel(bc[v], ref[v]) || !close_rel(bc_par[v], ref[v])) ++mismatches;
        if (!close_rel(transitivity(g), oracle::transitivity(adj))) ++mismatches;

        const auto bal = oracle::balance_matrix(g);
        const auto cap = oracle::capacity_matrix(g);
        auto bnet = balance_network(g);
        auto cnet = capacity_network(g);
        for (std::size_t s = 0; s < n; ++s)
            for (std::size_t t = 0; t < n; ++t) {
                if (s == t) continue;
                const auto si = static_cast<int>(s), ti = static_cast<int>(t);
                if (bnet.max_flow(s, t) != oracle::edmonds_karp(bal, si, ti)) ++mismatches;
                if (cnet.max_flow(s, t) != oracle::min_cut_by_enumeration(cap, si, ti)) ++mismatches;
            }

        if (connected_components(g).count() != oracle::component_count(adj)) ++mismatches;
        for (std::uint32_t mask = 1; mask < (1u << n) - 1; mask += 3) {
            std::vector<bool> removed(n);
            for (std::size_t v = 0; v < n; ++v) removed[v] = mask >> v & 1u;
            if (connected_components(remove_node_mask(g, removed)).count() != oracle::component_count(adj, removed))
                ++mismatches;
        }
    }
    return {instances >= 200 && mismatches == 0,
            std::to_string(instances) + " graphs, " + std::to_string(mismatches) + " mismatches"};
}

Outcome strategy_ordering() {
    std::size_t wins = 0;
    double dr_deg = 0, dr_rnd = 0, ds_deg = 0, ds_rnd = 0;
    constexpr std::size_t seeds = 20;
    for (std::uint64_t s = 0; s < seeds; ++s) {
        const auto g = barabasi_albert(500, 3, derive_seed(500, s));
        const AttackSession session(g, MetricParams{}, derive_seed(600, s));
        Strategy deg{StrategyKind::degree};
        Strategy rnd{StrategyKind::random};
        rnd.seed = derive_seed(700, s);
        const auto a = session.run(plan_targets(g, deg, 50), Constraint::by_count(50));
        const auto b = session.run(plan_targets(g, rnd, 50), Constraint::by_count(50));
        if (a.advantage.delta_r > b.advantage.delta_r && a.advantage.delta_s > b.advantage.delta_s) ++wins;
        dr_deg += a.advantage.delta_r / seeds;
        dr_rnd += b.advantage.delta_r / seeds;
        ds_deg += a.advantage.delta_s / seeds;
        ds_rnd += b.advantage.delta_s / seeds;
    }
    return {wins * 100 >= 90 * seeds, "degree wins " + std::to_string(wins) + "/20 (mean delta_r " + fmt(dr_deg) +
                                          " vs " + fmt(dr_rnd) + ", delta_s " + fmt(ds_deg) + " vs " + fmt(ds_rnd) +
                                          ")"};
}

Outcome budget_efficiency() {
    constexpr Sat bridge = 10;
    const auto g = fixture::barbell(50, 3, 1000, bridge);
    const Sat budget = 3 * bridge;
    MetricParams params;
    params.attempts = 200;
    params.flow_rounds = 200;
    auto run_once = [&](StrategyKind kind) {
        const AttackSession session(g, params, 11);
        Strategy st{kind};
        st.cut_samples = 200;
        st.seed = 13;
        return session.run(plan_targets(g, st, g.node_count()), Constraint::by_budget(budget));
    };
    const auto cut = run_once(StrategyKind::ranked_min_cut);
    const auto again = run_once(StrategyKind::ranked_min_cut);
    const auto deg = run_once(StrategyKind::degree);
    const bool deterministic = cut.advantage.delta_r == again.advantage.delta_r &&
                               cut.advantage.delta_s == again.advantage.delta_s && cut.executed == again.executed;
    return {cut.advantage.delta_r >= 0.45 && deg.advantage.delta_r < 0.1 && deterministic,
            "mincut delta_r " + fmt(cut.advantage.delta_r) + " (spent " + std::to_string(cut.spent) +
                "), degree delta_r " + fmt(deg.advantage.delta_r) + (deterministic ? "" : ", not deterministic")};
}

Sat outbound(const PcnGraph& g, const std::string& from, const std::string& to) {
    for (const auto& e : g.edges()) {
        if (e.a == from && e.b == to) return e.balance_ab;
        if (e.b == from && e.a == to) return e.balance_ba;
    }
    return -1;
}

Outcome isolation_accounting() {
    const auto r = isolate_node(fixture::fig3(), "A", IsolationMode::routing, "E");
    const bool ok = r.cost == 21 && r.spent == 21 && outbound(r.drained, "A", "B") == 0 &&
                    outbound(r.drained, "A", "C") == 0 && outbound(r.drained, "A", "D") == 0 &&
                    outbound(r.drained, "B", "A") == 10 && outbound(r.drained, "C", "A") == 12 &&
                    outbound(r.drained, "D", "A") == 16;
    return {ok, "cost " + std::to_string(r.cost) + ", counterpart balances " +
                    std::to_string(outbound(r.drained, "B", "A")) + "/" +
                    std::to_string(outbound(r.drained, "C", "A")) + "/" +
                    std::to_string(outbound(r.drained, "D", "A"))};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "pcnres");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), err);
    if (code != 0) std::cerr << err.str();
    return code;
}

// Runs the command into out/a and out/b and compares every file.
bool same_twice(const fs::path& root, const std::string& name, const std::vector<std::string>& args,
                bool out_is_dir) {
    std::vector<fs::path> outs;
    for (const char* tag : {"a", "b"}) {
        const auto out = root / name / (out_is_dir ? std::string(tag) : std::string(tag) + ".out");
        auto full = args;
        full.insert(full.end(), {"--out", out.string()});
        if (invoke(full) != 0) return false;
        outs.push_back(out);
    }
    if (!out_is_dir) return slurp(outs[0]) == slurp(outs[1]) && !slurp(outs[0]).empty();
    std::size_t files = 0;
    for (const auto& entry : fs::directory_iterator(outs[0])) {
        ++files;
        if (slurp(entry.path()) != slurp(outs[1] / entry.path().filename())) return false;
    }
    return files > 0;
}

Outcome cli_determinism() {
    const auto root = fs::temp_directory_path() / "pcnres_acceptance";
    fs::remove_all(root);
    fs::create_directories(root);
    const auto snap = (root / "g.json").string();
    save_snapshot(barabasi_albert(200, 3, 9), snap);

    std::vector<std::string> failed;
    auto check = [&](const std::string& name, const std::vector<std::string>& args, bool dir) {
        if (!same_twice(root, name, args, dir)) failed.push_back(name);
    };
    check("analyze", {"analyze", "--snapshot", snap, "--reference", "er", "--reference", "ba", "--reference-runs", "2",
                      "--gof-runs", "100", "--seed", "3"},
          true);
    check("analyze-csv", {"analyze", "--snapshot", snap, "--gof-runs", "50", "--format", "csv", "--seed", "3"}, true);
    check("attack", {"attack", "--snapshot", snap, "--strategy", "all", "--n-sweep", "0:10:5", "--reps", "100",
                     "--cut-samples", "50", "--payment-samples", "50", "--seed", "3"},
          false);
    check("attack-budget", {"attack", "--snapshot", snap, "--strategy", "mincut", "--strategy", "degree",
                            "--budget-sweep", "1,5,50", "--reps", "100", "--cut-samples", "50", "--griefing",
                            "--format", "csv", "--seed", "3"},
          false);
    check("robustness", {"robustness", "--snapshot", snap, "--failures", "1,5,20", "--reps", "20", "--seed", "3"},
          false);
    check("generate", {"generate", "--kind", "er", "--nodes", "300", "--edges", "900", "--seed", "3"}, false);
    fs::remove_all(root);

    std::string detail = "6 runs compared";
    if (!failed.empty()) {
        detail = "differs:";
        for (const auto& f : failed) detail += " " + f;
    }
    return {failed.empty(), detail};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 small-world formula", smallworld_formula},
        {"2 reference-graph regime", reference_regime},
        {"3 robustness experiment", robustness},
        {"4 power-law recovery", power_law_recovery},
        {"5 oracle equivalence", oracle_suite},
        {"6 attack-strategy ordering", strategy_ordering},
        {"7 budget efficiency", budget_efficiency},
        {"8 node-isolation accounting", isolation_accounting},
        {"9 CLI determinism", cli_determinism},
    };
    int failures = 0;
    for (const auto& [name, fn] : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = fn();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << (out.pass ? "PASS" : "FAIL") << "  " << name << ": " << out.detail << " (" << fmt(secs, 3)
                  << " s)" << std::endl;
        if (!out.pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
