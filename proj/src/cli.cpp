#include "pcnres/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "pcnres/metrics.hpp"
#include "pcnres/powerlaw.hpp"
#include "pcnres/report.hpp"
#include "pcnres/rng.hpp"

namespace pcnres::cli {

using nlohmann::json;

namespace {

constexpr std::size_t kDefaultAttackReps = 1000;
constexpr std::size_t kDefaultRobustnessReps = 100;

const std::vector<StrategyKind> kAllStrategies{StrategyKind::degree,         StrategyKind::betweenness,
                                               StrategyKind::eigenvector,    StrategyKind::ranked_min_cut,
                                               StrategyKind::parallel_paths, StrategyKind::random};

Exec exec_of(const RunConfig& c) { return c.serial ? Exec::serial : Exec::parallel; }

std::string_view to_string(OutputFormat f) { return f == OutputFormat::json ? "json" : "csv"; }

std::size_t to_size(const std::string& s, const char* what) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw Error(std::string("invalid ") + what + " '" + s + "'");
    return v;
}

json meta(const RunConfig& c) {
    const auto cfg = config_json(c);
    return {{"tool", "pcnres"}, {"version", kVersion}, {"seed", c.seed}, {"config_hash", config_hash(cfg)},
            {"config", cfg}};
}

std::string csv_comment(const RunConfig& c) {
    return "# pcnres " + std::string(kVersion) + " seed=" + std::to_string(c.seed) +
           " config_hash=" + config_hash(config_json(c)) + "\n";
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + path.string() + "' for writing");
    out << text;
    out.flush();
    if (!out) throw Error("failed writing '" + path.string() + "'");
}

PcnGraph load_lcc(const RunConfig& c) {
    if (c.snapshot_path.empty()) throw Error("--snapshot is required");
    return largest_connected_component(load_snapshot(c.snapshot_path, c.balance_model));
}

VolumeModel volumes_of(const RunConfig& c) {
    return c.volume_path ? VolumeModel::load(*c.volume_path) : VolumeModel::constant(1);
}

}  // namespace

json config_json(const RunConfig& c) {
    json j{{"command", c.command},
           {"snapshot", c.snapshot_path.generic_string()},
           {"balance_model", std::string(to_string(c.balance_model))},
           {"volumes", c.volume_path ? json(c.volume_path->generic_string()) : json(nullptr)},
           {"seed", c.seed},
           {"repetitions", c.repetitions ? json(*c.repetitions) : json(nullptr)},
           {"format", std::string(to_string(c.output_format))}};
    if (c.command == "analyze") {
        json refs = json::array();
        for (auto r : c.references) refs.push_back(std::string(to_string(r)));
        j["references"] = refs;
        j["reference_runs"] = c.reference_runs;
        j["gof_runs"] = c.gof_runs;
    } else if (c.command == "attack") {
        json st = json::array();
        for (auto s : c.strategies) st.push_back(std::string(to_string(s)));
        j["strategies"] = st;
        j["counts"] = c.counts;
        j["budgets"] = c.budgets;
        j["cut_samples"] = c.cut_samples;
        j["payment_samples"] = c.payment_samples;
        j["hub"] = c.hub ? json(*c.hub) : json(nullptr);
        j["griefing"] = c.griefing;
        j["adaptive"] = c.adaptive;
    } else if (c.command == "robustness") {
        j["failures"] = c.failures;
    } else if (c.command == "generate") {
        j["kind"] = std::string(to_string(c.kind));
        j["nodes"] = c.nodes;
        j["edges"] = c.edges;
    }
    return j;
}

std::vector<std::size_t> parse_sweep(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() < 2 || parts.size() > 3) throw Error("sweep must be start:end[:step], got '" + text + "'");
    const auto start = to_size(parts[0], "sweep start");
    const auto end = to_size(parts[1], "sweep end");
    const auto step = parts.size() == 3 ? to_size(parts[2], "sweep step") : 1;
    if (step == 0) throw Error("sweep step must be positive");
    if (end < start) throw Error("sweep end is below its start");
    std::vector<std::size_t> out;
    for (auto v = start; v <= end; v += step) out.push_back(v);
    return out;
}

void cmd_analyze(const RunConfig& c) {
    if (c.output_path.empty()) throw Error("--out is required");
    const auto exec = exec_of(c);
    const auto g = load_lcc(c);
    const auto m = meta(c);

    std::vector<MetricReport> rows;
    rows.push_back(metric_report(g, "pcn", c.reference_runs, derive_seed(c.seed, 0x4d4554, 0), exec));
    for (std::size_t i = 0; i < c.references.size(); ++i) {
        const auto kind = c.references[i];
        const auto ref = generate_reference(kind, g.node_count(), g.simple().edge_count(),
                                            derive_seed(c.seed, 0x524546, i));
        rows.push_back(
            metric_report(ref, std::string(to_string(kind)), c.reference_runs, derive_seed(c.seed, 0x4d4554, i + 1), exec));
    }

    if (c.output_format == OutputFormat::json) {
        json arr = json::array();
        for (const auto& r : rows) arr.push_back(to_json(r));
        write_file(c.output_path / "metrics.json", json{{"meta", m}, {"metrics", arr}}.dump(2) + "\n");
    } else {
        std::string text = csv_comment(c) + kMetricCsvHeader + "\n";
        for (const auto& r : rows) text += to_csv_row(r) + "\n";
        write_file(c.output_path / "metrics.csv", text);
    }

    std::vector<std::int64_t> degrees;
    for (NodeIndex v = 0; v < g.node_count(); ++v) degrees.push_back(static_cast<std::int64_t>(g.channel_degree(v)));

    std::string deg = csv_comment(c) + kDegreeCsvHeader + "\n";
    for (const auto& [k, count] : degree_distribution(g)) deg += std::to_string(k) + "," + std::to_string(count) + "\n";
    write_file(c.output_path / "degree_distribution.csv", deg);

    json pl{{"meta", m}};
    std::optional<FitResult> fit;
    try {
        fit = fit_power_law(degrees);
    } catch (const FitError& e) {
        pl["fit"] = nullptr;
        pl["gof"] = nullptr;
        pl["error"] = e.what();
    }
    std::string ccdf = csv_comment(c) + kCcdfCsvHeader + "\n";
    if (fit) {
        pl["fit"] = to_json(*fit);
        pl["gof"] = to_json(goodness_of_fit(degrees, *fit, c.gof_runs, derive_seed(c.seed, 0x474f46), exec));
        for (const auto& row : ccdf_table(degrees, *fit))
            ccdf += std::to_string(row.k) + "," + format_double(row.empirical) + "," +
                    (row.fitted ? format_double(*row.fitted) : std::string()) + "\n";
    }
    write_file(c.output_path / "powerlaw.json", pl.dump(2) + "\n");
    write_file(c.output_path / "ccdf.csv", ccdf);
}

void cmd_attack(const RunConfig& c) {
    if (c.output_path.empty()) throw Error("--out is required");
    if (c.strategies.empty()) throw Error("--strategy is required");
    if (c.counts.empty() == c.budgets.empty()) throw Error("give exactly one of --n / --n-sweep or --budget-sweep");
    const auto exec = exec_of(c);
    const auto g = load_lcc(c);
    const auto reps = c.repetitions.value_or(kDefaultAttackReps);

    MetricParams params;
    params.attempts = reps;
    params.flow_rounds = reps;
    params.fee_payments = reps;
    params.volumes = volumes_of(c);
    params.hub = c.hub;
    params.griefing = c.griefing;
    AttackSession session(g, params, c.seed, exec);

    const bool budget_mode = !c.budgets.empty();
    const std::size_t limit =
        budget_mode ? g.node_count() : std::max<std::size_t>(1, *std::max_element(c.counts.begin(), c.counts.end()));

    std::vector<SimReport> reports;
    for (auto kind : c.strategies) {
        Strategy st;
        st.kind = kind;
        st.cut_samples = c.cut_samples;
        st.payment_samples = c.payment_samples;
        st.hub = c.hub;
        st.volumes = params.volumes;
        st.seed = derive_seed(c.seed, 0x504c414e, static_cast<std::uint64_t>(kind));
        st.adaptive = c.adaptive;
        const auto plan = plan_targets(g, st, limit, exec);
        if (budget_mode) {
            for (auto b : c.budgets) reports.push_back(session.run(plan, Constraint::by_budget(b)));
        } else {
            for (auto n : c.counts) reports.push_back(session.run(plan, Constraint::by_count(n)));
        }
    }

    if (c.output_format == OutputFormat::json) {
        json arr = json::array();
        for (const auto& r : reports) arr.push_back(to_json(r));
        write_file(c.output_path, json{{"meta", meta(c)}, {"reports", arr}}.dump(2) + "\n");
    } else {
        std::string text = csv_comment(c) + kSimCsvHeader + "\n";
        for (const auto& r : reports) text += to_csv_row(r) + "\n";
        write_file(c.output_path, text);
    }
}

void cmd_robustness(const RunConfig& c) {
    if (c.output_path.empty()) throw Error("--out is required");
    const auto g = load_lcc(c);
    const auto means =
        random_failure_experiment(g, c.failures, c.repetitions.value_or(kDefaultRobustnessReps), c.seed, exec_of(c));
    if (c.output_format == OutputFormat::json) {
        json rows = json::array();
        for (std::size_t i = 0; i < means.size(); ++i)
            rows.push_back({{"failures", c.failures[i]}, {"mean_components", means[i]}});
        write_file(c.output_path, json{{"meta", meta(c)}, {"rows", rows}}.dump(2) + "\n");
    } else {
        std::string text = csv_comment(c) + kRobustnessCsvHeader + "\n";
        for (std::size_t i = 0; i < means.size(); ++i)
            text += std::to_string(c.failures[i]) + "," + format_double(means[i]) + "\n";
        write_file(c.output_path, text);
    }
}

void cmd_generate(const RunConfig& c) {
    if (c.output_path.empty()) throw Error("--out is required");
    const auto g = generate_reference(c.kind, c.nodes, c.edges, c.seed);
    write_file(c.output_path, snapshot_to_json(g).dump(1) + "\n");
}

int run(int argc, const char* const* argv, std::ostream& err) {
    CLI::App app{"Resilience analysis of payment channel networks", "pcnres"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    RunConfig c;
    std::string balance_model = "capacity-both-ways";
    std::string volumes;
    std::optional<std::uint64_t> seed;
    std::size_t reps = 0;
    std::string format = "json";
    std::vector<std::string> references;
    std::vector<std::string> strategies;
    std::optional<std::size_t> single_n;
    std::string n_sweep;
    std::string budget_sweep;
    std::string hub;
    std::string kind = "erdos-renyi";

    auto common = [&](CLI::App* sub, bool snapshot) {
        if (snapshot) {
            sub->add_option("--snapshot", c.snapshot_path, "describegraph-style JSON snapshot")->required();
            sub->add_option("--balance-model", balance_model, "capacity-both-ways | half-split | explicit");
        }
        sub->add_option("--seed", seed, "RNG seed (falls back to PCN_RESILIENCE_SEED)");
        sub->add_option("--out", c.output_path, "output file or directory")->required();
        sub->add_flag("--serial", c.serial, "disable OpenMP parallel kernels");
    };

    auto* analyze = app.add_subcommand("analyze", "topology metrics, small-world comparison and power-law fit");
    common(analyze, true);
    analyze->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    analyze->add_option("--reference", references, "erdos-renyi | barabasi-albert (repeatable)");
    analyze->add_option("--reference-runs", c.reference_runs, "random graphs per small-world estimate");
    analyze->add_option("--gof-runs", c.gof_runs, "synthetic data sets for the goodness-of-fit test");

    std::map<CLI::App*, bool> reps_opt;
    auto* attack = app.add_subcommand("attack", "plan and execute attack strategies over a sweep");
    common(attack, true);
    attack->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    attack->add_option("--volumes", volumes, "payment volume file (one satoshi amount per line)");
    reps_opt[attack] = true;
    attack->add_option("--reps", reps, "payment attempts and max-flow rounds per measurement");
    attack->add_option("--strategy", strategies, "degree|betweenness|eigenvector|mincut|parallel|random|all")
        ->required();
    attack->add_option("--n", single_n, "number of targets");
    attack->add_option("--n-sweep", n_sweep, "start:end[:step]");
    attack->add_option("--budget-sweep", budget_sweep, "comma-separated satoshi budgets");
    attack->add_option("--cut-samples", c.cut_samples, "random max-flow samples for min-cut ranking");
    attack->add_option("--payment-samples", c.payment_samples, "payments sampled for parallel-path ranking");
    attack->add_option("--hub", hub, "adversary node: excluded from targets, enables fee gain");
    attack->add_flag("--griefing", c.griefing, "isolation locks funds instead of spending them");
    attack->add_flag("--adaptive", c.adaptive, "recompute centrality after each removal");

    auto* robustness = app.add_subcommand("robustness", "component count after random node failures");
    common(robustness, true);
    robustness->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    reps_opt[robustness] = true;
    robustness->add_option("--reps", reps, "runs per failure count (default 100)");
    robustness->add_option("--failures", c.failures, "failure counts")->delimiter(',');

    auto* generate = app.add_subcommand("generate", "write a reference random graph as a snapshot");
    common(generate, false);
    generate->add_option("--kind", kind, "erdos-renyi | barabasi-albert");
    generate->add_option("--nodes", c.nodes)->required();
    generate->add_option("--edges", c.edges)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream out;
        const int code = app.exit(e, out, err);
        err << out.str();
        return code;
    }

    try {
        auto* sub = app.get_subcommands().front();
        c.command = sub->get_name();
        c.balance_model = parse_balance_model(balance_model);
        c.output_format = format == "csv" ? OutputFormat::csv : OutputFormat::json;
        if (!volumes.empty()) c.volume_path = volumes;
        if (seed) {
            c.seed = *seed;
        } else if (const char* env = std::getenv("PCN_RESILIENCE_SEED")) {
            c.seed = to_size(env, "PCN_RESILIENCE_SEED");
        }
        if (reps_opt.count(sub) > 0 && sub->count("--reps") > 0) c.repetitions = reps;
        for (const auto& r : references) c.references.push_back(parse_reference_kind(r));
        for (const auto& s : strategies) {
            if (s == "all") {
                c.strategies.insert(c.strategies.end(), kAllStrategies.begin(), kAllStrategies.end());
            } else {
                c.strategies.push_back(parse_strategy_kind(s));
            }
        }
        if (single_n) c.counts.push_back(*single_n);
        if (!n_sweep.empty()) {
            const auto sweep = parse_sweep(n_sweep);
            c.counts.insert(c.counts.end(), sweep.begin(), sweep.end());
        }
        if (!budget_sweep.empty()) {
            std::stringstream ss(budget_sweep);
            for (std::string b; std::getline(ss, b, ',');)
                c.budgets.push_back(static_cast<Sat>(to_size(b, "budget")));
        }
        if (!hub.empty()) c.hub = hub;
        c.kind = parse_reference_kind(kind);

        if (c.command == "analyze") {
            cmd_analyze(c);
        } else if (c.command == "attack") {
            cmd_attack(c);
        } else if (c.command == "robustness") {
            cmd_robustness(c);
        } else {
            cmd_generate(c);
        }
    } catch (const std::exception& e) {
        err << "pcnres: error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace pcnres::cli
