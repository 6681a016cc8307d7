#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qbasim/cli.hpp"

using namespace qbasim;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "qbasim");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("qbasim-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string write(const std::string& name, const std::string& text) {
        const auto path = dir_ / name;
        std::ofstream(path) << text;
        return path.string();
    }

    static std::string read(const fs::path& p) {
        std::ifstream in(p);
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    }

    fs::path dir_;
};

nlohmann::json parse(const std::string& s) { return nlohmann::json::parse(s); }

}  // namespace

TEST_F(CliTest, HonestScenarioReport) {
    const auto cfg = write("honest.json", R"({"schema_version": 1, "seed": 3, "adversary_strategy": "honest"})");
    const auto r = invoke({"qba", cfg});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = parse(r.out);
    EXPECT_EQ(j["status"], "completed");
    EXPECT_EQ(j["verdict"]["outputs"]["Bob"]["message"], "attack");
    EXPECT_EQ(j["verdict"]["outputs"]["Charlie"]["message"], "attack");
    EXPECT_EQ(j["verdict"]["ic1"], true);
    EXPECT_EQ(j["verdict"]["ic2"], true);
    EXPECT_EQ(j["security"].size(), 2U);
    EXPECT_EQ(j["scenario"]["seed"], 3);
    EXPECT_FALSE(j.contains("wall_clock_seconds"));
    EXPECT_EQ(j["transcript_digest"].get<std::string>().size(), 64U);
}

TEST_F(CliTest, ReportsAreByteIdentical) {
    const auto cfg = write("s.json", R"({"schema_version": 1, "seed": 8, "adversary_strategy": "forging_bob",
                                         "forgery_tactic": "mixed"})");
    const auto a = invoke({"qba", "--config", cfg});
    const auto b = invoke({"qba", "--config", cfg});
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    const auto c = invoke({"qba", "--config", cfg, "--seed", "9"});
    EXPECT_NE(parse(a.out)["transcript_digest"], parse(c.out)["transcript_digest"]);
    const auto t = invoke({"qba", "--config", cfg, "--timing"});
    EXPECT_TRUE(parse(t.out).contains("wall_clock_seconds"));
}

TEST_F(CliTest, EquivocationAndForgery) {
    const auto eq = write("eq.json", R"({"schema_version": 1, "adversary_strategy": "equivocating_commander",
                                         "messages": ["go", "stay"]})");
    auto j = parse(invoke({"qba", eq}).out);
    EXPECT_EQ(j["verdict"]["outputs"]["Bob"]["message"], "go");
    EXPECT_EQ(j["verdict"]["outputs"]["Charlie"]["message"], "go");
    EXPECT_EQ(j["verdict"]["ic1"], true);
    EXPECT_EQ(j["verdict"]["ic2"], "n/a");

    const auto fg = write("fg.json", R"({"schema_version": 1, "adversary_strategy": "forging_charlie"})");
    j = parse(invoke({"qba", fg}).out);
    EXPECT_EQ(j["verdict"]["outputs"]["Bob"]["message"], "attack");
    EXPECT_EQ(j["verdict"]["lists"]["Bob"].size(), 1U);
}

TEST_F(CliTest, ReconciliationFailureAborts) {
    const auto cfg = write("abort.json", R"({"schema_version": 1, "link_params": {"ab": {"eps_ec": 0.999999999}}})");
    const auto r = invoke({"qba", cfg});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(parse(r.out)["status"], "aborted: reconciliation failure");
}

TEST_F(CliTest, KeygenWritesCorrelatedBlocks) {
    const auto cfg = write("k.json", R"({"schema_version": 1, "seed": 4, "n_events": 50000})");
    const auto out1 = (dir_ / "k1").string();
    const auto out2 = (dir_ / "k2").string();
    ASSERT_EQ(invoke({"keygen", cfg, "--out", out1}).code, 0);
    ASSERT_EQ(invoke({"keygen", cfg, "--out", out2}).code, 0);
    for (const char* f : {"alice.json", "bob.json", "charlie.json", "link_stats.json"}) {
        EXPECT_EQ(read(fs::path(out1) / f), read(fs::path(out2) / f)) << f;
    }
    const auto a = parse(read(fs::path(out1) / "alice.json"));
    const auto b = parse(read(fs::path(out1) / "bob.json"));
    const auto c = parse(read(fs::path(out1) / "charlie.json"));
    ASSERT_GE(a["blocks"].size(), 4U);
    for (std::size_t i = 0; i < a["blocks"].size(); ++i) {
        const auto xa = from_hex(a["blocks"][i]["hex"].get<std::string>());
        const auto xb = from_hex(b["blocks"][i]["hex"].get<std::string>());
        const auto xc = from_hex(c["blocks"][i]["hex"].get<std::string>());
        EXPECT_EQ(xa, xor_bytes(xb, xc));
    }
    const auto stats = parse(read(fs::path(out1) / "link_stats.json"));
    EXPECT_EQ(stats["ab"]["n_events"], 50000);
}

TEST_F(CliTest, KeygenInsufficientMaterial) {
    const auto cfg = write("small.json", R"({"schema_version": 1, "n_events": 1000})");
    const auto r = invoke({"keygen", cfg, "--out", (dir_ / "k").string()});
    EXPECT_NE(r.code, 0);
    EXPECT_NE(r.err.find("insufficient key material"), std::string::npos);
}

TEST_F(CliTest, ConfigDiagnosticsNameLineAndField) {
    auto r = invoke({"qba", write("a.json", "{\"schema_version\": 1,\n \"bogus\": 2}")});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find(":2: field 'bogus': unknown field"), std::string::npos) << r.err;

    r = invoke({"qba", write("b.json", "{\"schema_version\": 1,\n\n \"seed\": -4}")});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find(":3: field 'seed'"), std::string::npos) << r.err;

    r = invoke({"qba", write("c.json", "{\"schema_version\": 1,\n \"seed\": 2,\n}")});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("c.json:3:"), std::string::npos) << r.err;
    EXPECT_NE(r.err.find("malformed JSON"), std::string::npos);

    r = invoke({"qba", write("d.json", R"({"seed": 2})")});
    EXPECT_NE(r.err.find("field 'schema_version': missing"), std::string::npos) << r.err;

    r = invoke({"qba", write("e.json", R"({"schema_version": 2})")});
    EXPECT_NE(r.err.find("unsupported version 2"), std::string::npos) << r.err;

    r = invoke({"qba", write("f.json", "{\"schema_version\": 1,\n \"link_params\": {\"ac\": {\"qber_x\": 0.7}}}")});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("field 'link_params.ac'"), std::string::npos) << r.err;

    r = invoke({"qba", write("g.json", R"({"schema_version": 1, "adversary_strategy": "forging_bob",
                                           "faulty_party": "Charlie"})")});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("faulty_party"), std::string::npos) << r.err;

    r = invoke({"qba", (dir_ / "missing.json").string()});
    EXPECT_EQ(r.code, 2);
}

TEST_F(CliTest, SecurityDefaultsAndSweep) {
    auto r = invoke({"security"});
    ASSERT_EQ(r.code, 0) << r.err;
    const double eps = parse(r.out)["results"][0]["report"]["eps_for"];
    EXPECT_EQ(std::floor(std::log10(eps)), -16);

    r = invoke({"security", "--sweep", "l=128,256,512,1024"});
    const auto results = parse(r.out)["results"];
    ASSERT_EQ(results.size(), 4U);
    for (std::size_t i = 1; i < results.size(); ++i) {
        EXPECT_GT(results[i]["report"]["h_l"].get<double>(), results[i - 1]["report"]["h_l"].get<double>());
    }

    r = invoke({"security", "--sweep", "l=256,512", "--sweep", "eps_gamma=1e-8,1e-10,1e-12"});
    EXPECT_EQ(parse(r.out)["results"].size(), 6U);

    r = invoke({"security", "--e-x", "0.6"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(parse(r.out)["results"][0]["report"]["insecure"], true);

    EXPECT_EQ(invoke({"security", "--sweep", "q=1"}).code, 2);
    EXPECT_EQ(invoke({"security", "--sweep", "l=abc"}).code, 2);
    EXPECT_EQ(invoke({"security", "--f-ec", "0.5"}).code, 2);
}

TEST_F(CliTest, NetplanAndClassical) {
    auto r = invoke({"netplan", "--users", "16", "--parties", "5", "--faulty", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = parse(r.out);
    EXPECT_EQ(j["optimal_subnets"]["k"], 4);
    EXPECT_EQ(j["plan"]["channels_total"], 24);
    EXPECT_EQ(j["comm_complexity"]["qds_executions"], "36");
    EXPECT_EQ(invoke({"netplan", "--users", "10", "--subnets", "3"}).code, 2);

    r = invoke({"classical", "--protocol", "oral3"});
    ASSERT_EQ(r.code, 0) << r.err;
    j = parse(r.out);
    EXPECT_EQ(j["verdict"]["outputs"]["Bob"]["kind"], "undecidable");

    r = invoke({"classical", "--protocol", "signature", "--commander-disloyal"});
    j = parse(r.out);
    EXPECT_EQ(j["effective_party_count"], 4);
    EXPECT_EQ(invoke({"classical", "--protocol", "smoke-signals"}).code, 2);
}

TEST_F(CliTest, UsageErrors) {
    EXPECT_EQ(invoke({}).code, 2);
    EXPECT_EQ(invoke({"qba"}).code, 2);
    EXPECT_EQ(invoke({"--help"}).code, 0);
}
