#include "pcnres/report.hpp"

#include <charconv>
#include <cstdio>

namespace pcnres {

using nlohmann::json;

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

std::string config_hash(const json& config) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : config.dump()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json to_json(const MetricReport& r) {
    json j{
        {"graph", r.label},
        {"node_count", r.node_count},
        {"edge_count", r.edge_count},
        {"diameter", r.diameter},
        {"avg_distance", r.avg_distance},
        {"clustering", r.clustering},
        {"central_point_dominance", r.central_point_dominance},
        {"smallworld_S", r.smallworld_S},
        {"gamma", r.gamma},
        {"lambda", r.lambda},
    };
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

json to_json(const FitResult& f) {
    return {{"alpha", f.alpha}, {"x_min", f.x_min}, {"ks_distance", f.ks_distance}, {"tail_count", f.tail_count}};
}

json to_json(const GofResult& g) {
    json j{{"p_value", g.p_value},
           {"synthetic_runs", g.synthetic_runs},
           {"exceed_count", g.exceed_count},
           {"reject", g.reject}};
    j["warning"] = g.warning ? json(*g.warning) : json(nullptr);
    return j;
}

namespace {

json metric_set(const MetricSet& m) {
    json j{{"s", m.s}, {"r", m.r}, {"F_bar", m.F_bar}};
    j["g_bar"] = m.g_bar ? json(*m.g_bar) : json(nullptr);
    return j;
}

std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

}  // namespace

json to_json(const SimReport& r) {
    json adv{{"delta_s", r.advantage.delta_s}, {"delta_r", r.advantage.delta_r}, {"delta_F", r.advantage.delta_F}};
    adv["delta_g"] = r.advantage.delta_g ? json(*r.advantage.delta_g) : json(nullptr);
    return {
        {"strategy", r.strategy},
        {"constraint", r.constraint.budget_mode ? "budget" : "count"},
        {"n_or_budget", r.constraint.budget_mode ? r.constraint.budget : static_cast<Sat>(r.constraint.count)},
        {"seed", r.seed},
        {"a_priori", metric_set(r.a_priori)},
        {"a_posteriori", metric_set(r.a_posteriori)},
        {"advantage", std::move(adv)},
        {"spent", r.spent},
        {"locked", r.locked},
        {"removed", r.removed},
        {"executed", r.executed},
    };
}

std::string to_csv_row(const MetricReport& r) {
    return r.label + ',' + std::to_string(r.node_count) + ',' + std::to_string(r.edge_count) + ',' +
           std::to_string(r.diameter) + ',' + format_double(r.avg_distance) + ',' +
           format_double(r.central_point_dominance) + ',' + format_double(r.clustering) + ',' +
           format_double(r.smallworld_S) + ',' + format_double(r.gamma) + ',' + format_double(r.lambda);
}

std::string to_csv_row(const SimReport& r) {
    const auto amount = r.constraint.budget_mode ? r.constraint.budget : static_cast<Sat>(r.constraint.count);
    return r.strategy + ',' + (r.constraint.budget_mode ? "budget" : "count") + ',' + std::to_string(amount) + ',' +
           std::to_string(r.spent) + ',' + format_double(r.a_priori.s) + ',' + format_double(r.a_posteriori.s) + ',' +
           format_double(r.a_priori.r) + ',' + format_double(r.a_posteriori.r) + ',' + format_double(r.a_priori.F_bar) +
           ',' + format_double(r.a_posteriori.F_bar) + ',' + format_double(r.advantage.delta_s) + ',' +
           format_double(r.advantage.delta_r) + ',' + format_double(r.advantage.delta_F) + ',' +
           std::to_string(r.removed) + ',' + std::to_string(r.locked) + ',' + opt(r.a_priori.g_bar) + ',' +
           opt(r.a_posteriori.g_bar) + ',' + opt(r.advantage.delta_g);
}

}  // namespace pcnres
