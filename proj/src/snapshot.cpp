#include "pcnres/snapshot.hpp"

#include <charconv>
#include <fstream>

namespace pcnres {

using nlohmann::json;

namespace {

// lnd emits 64-bit integers as decimal strings; accept either form.
std::int64_t as_int(const json& v, const std::string& what) {
    if (v.is_number_integer()) return v.get<std::int64_t>();
    if (v.is_number_unsigned()) return static_cast<std::int64_t>(v.get<std::uint64_t>());
    if (v.is_string()) {
        const auto& s = v.get_ref<const std::string&>();
        std::int64_t out = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
        if (ec == std::errc{} && ptr == s.data() + s.size()) return out;
    }
    throw ParseError(what + ": expected an integer or decimal string");
}

std::string as_string(const json& v, const std::string& what) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
    throw ParseError(what + ": expected a string");
}

FeePolicy parse_policy(const json& edge, const char* key, const std::string& where) {
    FeePolicy p;
    auto it = edge.find(key);
    if (it == edge.end() || it->is_null()) return p;
    if (!it->is_object()) throw ParseError(where + ": " + key + " must be an object");
    if (auto f = it->find("fee_base_msat"); f != it->end() && !f->is_null())
        p.base_fee_msat = as_int(*f, where + "." + key + ".fee_base_msat");
    if (auto f = it->find("fee_rate_milli_msat"); f != it->end() && !f->is_null())
        p.rate_ppm = as_int(*f, where + "." + key + ".fee_rate_milli_msat");
    return p;
}

}  // namespace

BalanceModel parse_balance_model(std::string_view name) {
    if (name == "capacity-both-ways") return BalanceModel::capacity_both_ways;
    if (name == "half-split") return BalanceModel::half_split;
    if (name == "explicit") return BalanceModel::explicit_balances;
    throw Error("unknown balance model '" + std::string(name) + "'");
}

std::string_view to_string(BalanceModel model) {
    switch (model) {
        case BalanceModel::capacity_both_ways: return "capacity-both-ways";
        case BalanceModel::half_split: return "half-split";
        case BalanceModel::explicit_balances: return "explicit";
    }
    return "?";
}

PcnGraph parse_snapshot(const json& doc, BalanceModel model) {
    if (!doc.is_object()) throw ParseError("snapshot: top level must be an object");

    std::vector<NodeInfo> nodes;
    if (auto it = doc.find("nodes"); it != doc.end() && !it->is_null()) {
        if (!it->is_array()) throw ParseError("snapshot: 'nodes' must be an array");
        nodes.reserve(it->size());
        for (std::size_t i = 0; i < it->size(); ++i) {
            const auto& n = (*it)[i];
            const auto where = "node #" + std::to_string(i);
            if (!n.is_object() || !n.contains("pub_key")) throw ParseError(where + ": missing pub_key");
            NodeInfo info{as_string(n["pub_key"], where + ".pub_key"), {}};
            if (auto a = n.find("alias"); a != n.end() && a->is_string()) info.alias = a->get<std::string>();
            nodes.push_back(std::move(info));
        }
    }

    std::vector<ChannelEdge> edges;
    if (auto it = doc.find("edges"); it != doc.end() && !it->is_null()) {
        if (!it->is_array()) throw ParseError("snapshot: 'edges' must be an array");
        edges.reserve(it->size());
        for (std::size_t i = 0; i < it->size(); ++i) {
            const auto& e = (*it)[i];
            if (!e.is_object()) throw ParseError("edge #" + std::to_string(i) + ": not an object");
            ChannelEdge c;
            if (!e.contains("channel_id")) throw ParseError("edge #" + std::to_string(i) + ": missing channel_id");
            c.channel_id = as_string(e["channel_id"], "edge #" + std::to_string(i) + ".channel_id");
            const auto where = "channel '" + c.channel_id + "'";
            if (!e.contains("node1_pub") || !e.contains("node2_pub"))
                throw ParseError(where + ": missing node1_pub/node2_pub");
            c.a = as_string(e["node1_pub"], where + ".node1_pub");
            c.b = as_string(e["node2_pub"], where + ".node2_pub");
            if (!e.contains("capacity") || e["capacity"].is_null())
                throw ValidationError(where + " has no capacity");
            c.capacity = as_int(e["capacity"], where + ".capacity");
            if (c.capacity <= 0) throw ValidationError(where + " has non-positive capacity");
            c.policy_ab = parse_policy(e, "node1_policy", where);
            c.policy_ba = parse_policy(e, "node2_policy", where);
            switch (model) {
                case BalanceModel::capacity_both_ways:
                    c.balance_ab = c.balance_ba = c.capacity;
                    break;
                case BalanceModel::half_split:
                    c.balance_ab = c.capacity / 2;
                    c.balance_ba = c.capacity - c.balance_ab;
                    break;
                case BalanceModel::explicit_balances:
                    if (!e.contains("node1_balance") || !e.contains("node2_balance"))
                        throw ParseError(where + ": explicit balance model needs node1_balance/node2_balance");
                    c.balance_ab = as_int(e["node1_balance"], where + ".node1_balance");
                    c.balance_ba = as_int(e["node2_balance"], where + ".node2_balance");
                    break;
            }
            edges.push_back(std::move(c));
        }
    }

    std::string time;
    if (auto it = doc.find("snapshot_time"); it != doc.end() && it->is_string()) time = it->get<std::string>();
    return PcnGraph::build(std::move(nodes), std::move(edges), std::move(time));
}

PcnGraph load_snapshot(const std::filesystem::path& path, BalanceModel model) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open snapshot '" + path.string() + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError("snapshot '" + path.string() + "': " + e.what());
    }
    return parse_snapshot(doc, model);
}

json snapshot_to_json(const PcnGraph& g) {
    json nodes = json::array();
    for (const auto& n : g.nodes()) {
        json j{{"pub_key", n.id}};
        if (!n.alias.empty()) j["alias"] = n.alias;
        nodes.push_back(std::move(j));
    }
    json edges = json::array();
    for (const auto& c : g.edges()) {
        edges.push_back({
            {"channel_id", c.channel_id},
            {"node1_pub", c.a},
            {"node2_pub", c.b},
            {"capacity", std::to_string(c.capacity)},
            {"node1_balance", c.balance_ab},
            {"node2_balance", c.balance_ba},
            {"node1_policy", {{"fee_base_msat", c.policy_ab.base_fee_msat},
                              {"fee_rate_milli_msat", c.policy_ab.rate_ppm}}},
            {"node2_policy", {{"fee_base_msat", c.policy_ba.base_fee_msat},
                              {"fee_rate_milli_msat", c.policy_ba.rate_ppm}}},
        });
    }
    json doc{{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
    if (!g.snapshot_time().empty()) doc["snapshot_time"] = g.snapshot_time();
    return doc;
}

void save_snapshot(const PcnGraph& g, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write snapshot '" + path.string() + "'");
    out << snapshot_to_json(g).dump(1) << '\n';
    if (!out) throw Error("failed writing snapshot '" + path.string() + "'");
}

}  // namespace pcnres
