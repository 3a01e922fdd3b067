#include "cli_helpers.hpp"
#include "schema.hpp"

#include <gtest/gtest.h>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qsa::testing;

namespace {
const fs::path configs = fs::path(QSA_SOURCE_DIR) / "configs";
}

TEST(Schema, CheckedInSchemaIsCurrent) {
    const auto r = run({"schema"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out, slurp(configs / "schema.json"));
}

TEST(Schema, CheckedInConfigsValidate) {
    int seen = 0;
    for (const auto& e : fs::directory_iterator(configs)) {
        if (e.path().filename() == "schema.json" || e.path().extension() != ".json") continue;
        const json cfg = json::parse(slurp(e.path()));
        EXPECT_NO_THROW(qsa::cli::validate_config(cfg, cfg.at("command"))) << e.path();
        ++seen;
    }
    EXPECT_GE(seen, 9);
}

TEST(Schema, DefaultConfigsMatchCode) {
    for (const auto& c : qsa::cli::command_schemas()) {
        if (c.name == "repro-all") continue;
        const auto p = configs / (c.name + ".json");
        ASSERT_TRUE(fs::exists(p)) << p;
        EXPECT_EQ(json::parse(slurp(p)), qsa::cli::default_config(c.name)) << c.name;
    }
}

TEST(Schema, ErrorsCarryPointers) {
    json bad = {{"schema_version", 1}, {"params", {{"n_values", {1, 2.5}}, {"extra", true}}}};
    try {
        qsa::cli::validate_config(bad, "coupling-scan");
        FAIL();
    } catch (const qsa::cli::SchemaError& e) {
        ASSERT_EQ(e.errors.size(), 2u);
        EXPECT_EQ(e.errors[0].rfind("/params/extra:", 0), 0u) << e.errors[0];
        EXPECT_EQ(e.errors[1].rfind("/params/n_values/1:", 0), 0u) << e.errors[1];
    }
}

TEST(Schema, NestedDefaultsMerge) {
    const json p = qsa::cli::validate_config({{"params", {{"dephasing", {{"enabled", false}}}}}}, "ms-gate");
    EXPECT_FALSE(p["dephasing"]["enabled"].get<bool>());
    EXPECT_EQ(p["dephasing"]["cutoff"], 10);
}

TEST(Cli, InvalidConfigExitsTwoWithoutArtifacts) {
    const auto dir = scratch_dir("bad");
    fs::create_directories(dir);
    {
        std::ofstream f(dir / "c.json");
        f << R"({"schema_version": 1, "params": {"d_um": [-4]}})";
    }
    const auto r = run({"heating", "--config", (dir / "c.json").string(), "--out", (dir / "out").string()});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("/params/d_um/0"), std::string::npos) << r.err;
    EXPECT_FALSE(fs::exists(dir / "out"));
    fs::remove_all(dir);
}

TEST(Cli, WrongCommandInConfig) {
    const auto dir = scratch_dir("cmd");
    fs::create_directories(dir);
    {
        std::ofstream f(dir / "c.json");
        f << R"({"command": "qec"})";
    }
    EXPECT_EQ(run({"heating", "--config", (dir / "c.json").string(), "--out", (dir / "o").string()}).code, 2);
    fs::remove_all(dir);
}

TEST(Cli, UnknownSubcommand) { EXPECT_EQ(run({"frobnicate"}).code, 2); }

TEST(Cli, ProtocolQuery) {
    const auto dir = scratch_dir("proto");
    const auto r = run({"qec", "--protocol", "universal-gate-set", "--out", dir.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["ions_per_well"], 15);
    EXPECT_EQ(j["registers"], 7);
    EXPECT_EQ(run({"qec", "--protocol", "bogus", "--out", dir.string()}).code, 2);
    fs::remove_all(dir);
}

TEST(Cli, ArtifactsAreAtomicAndDeterministic) {
    const auto a = scratch_dir("a"), b = scratch_dir("b");
    ASSERT_EQ(run({"qec", "--out", a.string()}).code, 0);
    ASSERT_EQ(run({"qec", "--out", b.string(), "--jobs", "3"}).code, 0);
    const auto ta = tree(a);
    EXPECT_EQ(ta, tree(b));
    for (const auto& [name, bytes] : ta) EXPECT_EQ(name.find(".tmp"), std::string::npos);
    EXPECT_TRUE(ta.count("plot_hints.json"));
    EXPECT_TRUE(ta.count("layout_d2.json"));
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST(Cli, SeedChangesNoise) {
    const auto a = scratch_dir("s1"), b = scratch_dir("s2"), c = scratch_dir("s3");
    ASSERT_EQ(run({"avoided-crossing", "--seed", "1", "--out", a.string()}).code, 0);
    ASSERT_EQ(run({"avoided-crossing", "--seed", "1", "--out", b.string()}).code, 0);
    ASSERT_EQ(run({"avoided-crossing", "--seed", "2", "--out", c.string()}).code, 0);
    EXPECT_EQ(slurp(a / "spectrum_0.csv"), slurp(b / "spectrum_0.csv"));
    EXPECT_NE(slurp(a / "spectrum_0.csv"), slurp(c / "spectrum_0.csv"));
    for (auto& p : {a, b, c}) fs::remove_all(p);
}

TEST(Cli, CsvHasUnitsRow) {
    const auto dir = scratch_dir("csv");
    ASSERT_EQ(run({"heating", "--out", dir.string()}).code, 0);
    std::istringstream s(slurp(dir / "heating.csv"));
    std::string header, units;
    std::getline(s, header);
    std::getline(s, units);
    EXPECT_EQ(header.rfind("d_um,", 0), 0u);
    EXPECT_EQ(units.rfind("um,", 0), 0u);
    fs::remove_all(dir);
}

TEST(Cli, NumericFailureExitsThree) {
    const auto dir = scratch_dir("num");
    fs::create_directories(dir);
    {
        std::ofstream f(dir / "c.json");
        f << R"({"params": {"n_values": [6], "d_um": [5]}})";
    }
    const auto r = run({"coupling-scan", "--config", (dir / "c.json").string(), "--out", (dir / "o").string()});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("point failed: n=6 d=5 um"), std::string::npos) << r.err;
    fs::remove_all(dir);
}
