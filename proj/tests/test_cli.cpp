#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pcnres/cli.hpp"
#include "pcnres/generators.hpp"
#include "pcnres/snapshot.hpp"
#include "support/fixtures.hpp"

using namespace pcnres;
namespace fs = std::filesystem;

namespace {

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("pcnres_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    int run(std::vector<std::string> args) {
        args.insert(args.begin(), "pcnres");
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        err_.str("");
        return cli::run(static_cast<int>(argv.size()), argv.data(), err_);
    }

    static std::string slurp(const std::string& p) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    static std::size_t data_lines(const std::string& p) {
        std::ifstream in(p);
        std::size_t n = 0;
        for (std::string line; std::getline(in, line);)
            if (!line.empty() && line[0] != '#') ++n;
        return n - 1;  // header
    }

    fs::path dir_;
    std::ostringstream err_;
};

}  // namespace

TEST(Sweep, Parse) {
    EXPECT_EQ(cli::parse_sweep("1:5"), (std::vector<std::size_t>{1, 2, 3, 4, 5}));
    EXPECT_EQ(cli::parse_sweep("0:10:5"), (std::vector<std::size_t>{0, 5, 10}));
    EXPECT_THROW(cli::parse_sweep("5"), Error);
    EXPECT_THROW(cli::parse_sweep("5:1"), Error);
    EXPECT_THROW(cli::parse_sweep("1:5:0"), Error);
    EXPECT_THROW(cli::parse_sweep("a:5"), Error);
}

TEST_F(CliTest, AnalyzeFixtureHasAllFields) {
    save_snapshot(fixture::cycle(12), path("g.json"));
    ASSERT_EQ(run({"analyze", "--snapshot", path("g.json"), "--out", path("out"), "--gof-runs", "100"}), 0)
        << err_.str();
    const auto doc = nlohmann::json::parse(slurp(path("out/metrics.json")));
    ASSERT_EQ(doc["metrics"].size(), 1u);
    for (const char* key : {"node_count", "edge_count", "diameter", "avg_distance", "clustering",
                            "central_point_dominance", "smallworld_S", "gamma", "lambda"})
        EXPECT_TRUE(doc["metrics"][0].contains(key)) << key;
    EXPECT_EQ(doc["meta"]["version"], kVersion);
    EXPECT_TRUE(doc["meta"].contains("seed"));
    EXPECT_TRUE(doc["meta"].contains("config_hash"));
    EXPECT_TRUE(fs::exists(path("out/powerlaw.json")));
    EXPECT_TRUE(fs::exists(path("out/degree_distribution.csv")));
    EXPECT_TRUE(fs::exists(path("out/ccdf.csv")));
}

TEST_F(CliTest, AnalyzeReferencesAddRows) {
    save_snapshot(erdos_renyi(120, 480, 1), path("g.json"));
    ASSERT_EQ(run({"analyze", "--snapshot", path("g.json"), "--out", path("out"), "--format", "csv", "--reference",
                   "erdos-renyi", "--reference", "barabasi-albert", "--gof-runs", "100", "--reference-runs", "2"}),
              0)
        << err_.str();
    EXPECT_EQ(data_lines(path("out/metrics.csv")), 3u);
    const auto pl = nlohmann::json::parse(slurp(path("out/powerlaw.json")));
    EXPECT_TRUE(pl["fit"].is_object());
    EXPECT_EQ(pl["gof"]["synthetic_runs"], 100);
}

TEST_F(CliTest, AnalyzeIsByteIdentical) {
    save_snapshot(barabasi_albert(150, 2, 3), path("g.json"));
    const std::vector<std::string> common{"analyze", "--snapshot", path("g.json"), "--gof-runs", "100",
                                          "--reference", "ba", "--reference-runs", "2", "--seed", "7"};
    auto a = common;
    a.insert(a.end(), {"--out", path("a")});
    auto b = common;
    b.insert(b.end(), {"--out", path("b")});
    ASSERT_EQ(run(a), 0) << err_.str();
    ASSERT_EQ(run(b), 0) << err_.str();
    for (const char* f : {"metrics.json", "powerlaw.json", "degree_distribution.csv", "ccdf.csv"})
        EXPECT_EQ(slurp(path(std::string("a/") + f)), slurp(path(std::string("b/") + f))) << f;
}

TEST_F(CliTest, AttackRandomZero) {
    save_snapshot(barabasi_albert(60, 2, 1), path("g.json"));
    ASSERT_EQ(run({"attack", "--snapshot", path("g.json"), "--strategy", "random", "--n", "0", "--reps", "100",
                   "--out", path("r.json")}),
              0)
        << err_.str();
    const auto doc = nlohmann::json::parse(slurp(path("r.json")));
    ASSERT_EQ(doc["reports"].size(), 1u);
    const auto& adv = doc["reports"][0]["advantage"];
    EXPECT_EQ(adv["delta_s"], 0.0);
    EXPECT_EQ(adv["delta_r"], 0.0);
    EXPECT_EQ(adv["delta_F"], 0.0);
}

TEST_F(CliTest, AttackAllStrategiesSweep) {
    save_snapshot(barabasi_albert(500, 3, 2), path("g.json"));
    ASSERT_EQ(run({"attack", "--snapshot", path("g.json"), "--strategy", "all", "--n-sweep", "1:30", "--reps", "50",
                   "--cut-samples", "50", "--payment-samples", "100", "--format", "csv", "--out", path("a.csv")}),
              0)
        << err_.str();
    EXPECT_EQ(data_lines(path("a.csv")), 6u * 30u);

    // Degree rows: delta_r never decreases along the sweep.
    std::ifstream in(path("a.csv"));
    double prev = 0.0;
    for (std::string line; std::getline(in, line);) {
        if (line.rfind("degree,", 0) != 0) continue;
        std::vector<std::string> cols;
        std::stringstream ss(line);
        for (std::string c; std::getline(ss, c, ',');) cols.push_back(c);
        const double dr = std::stod(cols[11]);
        EXPECT_GE(dr, prev);
        prev = dr;
    }
    EXPECT_GT(prev, 0.0);
}

TEST_F(CliTest, AttackBudgetSweepAndDeterminism) {
    save_snapshot(fixture::barbell(8, 2, 100, 5), path("g.json"));
    const std::vector<std::string> common{"attack", "--snapshot", path("g.json"), "--strategy", "mincut",
                                          "--strategy", "degree", "--budget-sweep", "5,10,1000", "--reps", "100",
                                          "--cut-samples", "100", "--format", "csv"};
    auto a = common;
    a.insert(a.end(), {"--out", path("a.csv")});
    auto b = common;
    b.insert(b.end(), {"--out", path("b.csv")});
    ASSERT_EQ(run(a), 0) << err_.str();
    ASSERT_EQ(run(b), 0) << err_.str();
    EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
    EXPECT_EQ(data_lines(path("a.csv")), 6u);
}

TEST_F(CliTest, RobustnessCompleteGraph) {
    save_snapshot(fixture::complete(10), path("k10.json"));
    ASSERT_EQ(run({"robustness", "--snapshot", path("k10.json"), "--failures", "1,2,3", "--format", "csv", "--out",
                   path("r.csv")}),
              0)
        << err_.str();
    const auto text = slurp(path("r.csv"));
    EXPECT_NE(text.find("1,1\n2,1\n3,1\n"), std::string::npos) << text;
}

TEST_F(CliTest, RobustnessSingleRepIsRepeatable) {
    save_snapshot(erdos_renyi(100, 200, 4), path("g.json"));
    for (const char* out : {"a.csv", "b.csv"})
        ASSERT_EQ(run({"robustness", "--snapshot", path("g.json"), "--failures", "10,20", "--reps", "1", "--seed",
                       "3", "--format", "csv", "--out", path(out)}),
                  0);
    EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
}

TEST_F(CliTest, RobustnessTooManyFailures) {
    save_snapshot(fixture::complete(5), path("k5.json"));
    EXPECT_NE(run({"robustness", "--snapshot", path("k5.json"), "--failures", "5", "--out", path("r.csv")}), 0);
    EXPECT_NE(err_.str().find("failure count"), std::string::npos);
    EXPECT_FALSE(fs::exists(path("r.csv")));
}

TEST_F(CliTest, ErrorsGiveNonzeroExit) {
    EXPECT_NE(run({"analyze", "--snapshot", path("missing.json"), "--out", path("o")}), 0);
    {
        std::ofstream(path("bad.json")) << "{";
    }
    EXPECT_NE(run({"analyze", "--snapshot", path("bad.json"), "--out", path("o")}), 0);
    EXPECT_NE(run({"attack", "--snapshot", path("bad.json"), "--out", path("o")}), 0);
    EXPECT_NE(run({"bogus"}), 0);
    save_snapshot(fixture::cycle(5), path("c.json"));
    EXPECT_NE(run({"attack", "--snapshot", path("c.json"), "--strategy", "degree", "--out", path("o.json")}), 0);
    EXPECT_NE(run({"attack", "--snapshot", path("c.json"), "--strategy", "nope", "--n", "1", "--out", path("o.json")}),
              0);
}

TEST_F(CliTest, SeedFromEnvironment) {
    save_snapshot(erdos_renyi(50, 100, 4), path("g.json"));
    ::setenv("PCN_RESILIENCE_SEED", "77", 1);
    ASSERT_EQ(run({"robustness", "--snapshot", path("g.json"), "--failures", "5", "--out", path("r.json")}), 0);
    ::unsetenv("PCN_RESILIENCE_SEED");
    const auto doc = nlohmann::json::parse(slurp(path("r.json")));
    EXPECT_EQ(doc["meta"]["seed"], 77);
}

TEST_F(CliTest, GenerateIsDeterministic) {
    ASSERT_EQ(run({"generate", "--kind", "ba", "--nodes", "100", "--edges", "300", "--seed", "5", "--out",
                   path("a.json")}),
              0);
    ASSERT_EQ(run({"generate", "--kind", "ba", "--nodes", "100", "--edges", "300", "--seed", "5", "--out",
                   path("b.json")}),
              0);
    EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
    const auto g = load_snapshot(path("a.json"), BalanceModel::explicit_balances);
    EXPECT_EQ(g.simple().edge_count(), 3u * 97u);
}
