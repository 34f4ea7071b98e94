#include <gtest/gtest.h>

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "foldex/cli.hpp"
#include "foldex/report_io.hpp"

namespace fs = std::filesystem;
using namespace foldex;

namespace {

int run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "foldex");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    return cli::run(static_cast<int>(argv.size()), argv.data());
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir = fs::temp_directory_path() / ("foldex_cli_" + std::string(
            ::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }
    std::string path(const std::string& name) const { return (dir / name).string(); }
    fs::path dir;
};

}  // namespace

TEST_F(Cli, SynthDetectRender) {
    ASSERT_EQ(run_cli({"synth", "comb", "-o", path("comb.json")}), 0);
    ASSERT_TRUE(fs::exists(path("comb.truth.json")));
    const auto input_before = io::read_text_file(path("comb.json"));

    ASSERT_EQ(run_cli({"detect", path("comb.json"), "--delta", "1", "-o", path("comb.report.json"), "--svg",
                   path("comb.svg")}),
              0);
    const auto doc = io::parse_report(io::read_text_file(path("comb.report.json")));
    EXPECT_EQ(doc.report.folds.size(), 3u);
    EXPECT_EQ(doc.name, "comb");
    EXPECT_TRUE(fs::exists(path("comb.svg")));
    EXPECT_EQ(io::read_text_file(path("comb.json")), input_before);

    ASSERT_EQ(run_cli({"render", path("comb.report.json"), path("again.svg")}), 0);
    EXPECT_EQ(io::read_text_file(path("again.svg")), io::read_text_file(path("comb.svg")));
}

TEST_F(Cli, ReportsAreReproducible) {
    ASSERT_EQ(run_cli({"synth", "comb", "--teeth", "4", "--noise", "0.1", "--seed", "9", "-o", path("c.csv")}), 0);
    ASSERT_EQ(run_cli({"detect", path("c.csv"), "--delta", "1", "-o", path("a.json")}), 0);
    ASSERT_EQ(run_cli({"detect", path("c.csv"), "--delta", "1", "-o", path("b.json")}), 0);
    auto a = nlohmann::json::parse(io::read_text_file(path("a.json")));
    auto b = nlohmann::json::parse(io::read_text_file(path("b.json")));
    a.erase("timestamp");
    b.erase("timestamp");
    EXPECT_EQ(a.dump(), b.dump());
}

TEST_F(Cli, NoFoldsExitsTwo) {
    io::write_text_file(path("line.csv"), "0,0\n10,0\n");
    EXPECT_EQ(run_cli({"detect", path("line.csv"), "--delta", "1"}), 2);
    const auto doc = io::parse_report(io::read_text_file(path("line.report.json")));
    EXPECT_TRUE(doc.report.folds.empty());
}

TEST_F(Cli, ErrorsExitOneWithoutOutput) {
    io::write_text_file(path("bad.csv"), "0,0\n1;2\n");
    EXPECT_EQ(run_cli({"detect", path("bad.csv"), "--delta", "1", "-o", path("bad.report.json")}), 1);
    EXPECT_FALSE(fs::exists(path("bad.report.json")));

    io::write_text_file(path("ok.csv"), "0,0\n10,0\n");
    EXPECT_EQ(run_cli({"detect", path("ok.csv")}), 1);                                  // no delta
    EXPECT_EQ(run_cli({"detect", path("ok.csv"), "--delta", "1", "--tau", "7"}), 1);     // out of range
    EXPECT_EQ(run_cli({"detect", path("ok.csv"), "--delta", "1", "--side", "up"}), 1);   // bad flag value
    EXPECT_EQ(run_cli({"detect", path("ok.csv"), "--delta", "1", "--delta-auto"}), 1);  // exclusive
    EXPECT_EQ(run_cli({"detect", path("missing.csv"), "--delta", "1"}), 1);
    EXPECT_EQ(run_cli({"render", path("ok.csv"), path("x.svg")}), 1);
    EXPECT_FALSE(fs::exists(path("x.svg")));
    EXPECT_EQ(run_cli({"bogus"}), 1);
}

TEST_F(Cli, FormatFlagOverridesExtension) {
    io::write_text_file(path("data.txt"), R"({"version":1,"vertices":[[0,0],[10,0]]})");
    EXPECT_EQ(run_cli({"detect", path("data.txt"), "--delta", "1", "--format", "json", "-o", path("r.json")}), 2);
    EXPECT_EQ(run_cli({"detect", path("data.txt"), "--delta", "1", "-o", path("r2.json")}), 1);
}

TEST_F(Cli, DeltaAuto) {
    ASSERT_EQ(run_cli({"synth", "comb", "-o", path("comb.json")}), 0);
    EXPECT_EQ(run_cli({"detect", path("comb.json"), "--delta-auto", "-o", path("r.json")}), 0);
    const auto doc = io::parse_report(io::read_text_file(path("r.json")));
    EXPECT_EQ(doc.report.folds.size(), 3u);
    EXPECT_GT(doc.report.params.maximal.delta, 0.5);
}

TEST_F(Cli, DirectoryInput) {
    const auto in = dir / "in";
    fs::create_directories(in);
    ASSERT_EQ(run_cli({"synth", "comb", "-o", (in / "a.json").string()}), 0);
    ASSERT_EQ(run_cli({"synth", "comb", "--teeth", "2", "-o", (in / "b.csv").string()}), 0);
    io::write_text_file(in / "flat.csv", "0,0\n10,0\n");
    const auto out = dir / "out";
    EXPECT_EQ(run_cli({"detect", in.string(), "--delta", "1", "-o", out.string(), "--svg", (dir / "svg").string(),
                   "-j", "2"}),
              0);
    EXPECT_EQ(io::parse_report(io::read_text_file(out / "a.report.json")).report.folds.size(), 3u);
    EXPECT_EQ(io::parse_report(io::read_text_file(out / "b.report.json")).report.folds.size(), 2u);
    EXPECT_TRUE(io::parse_report(io::read_text_file(out / "flat.report.json")).report.folds.empty());
    EXPECT_TRUE(fs::exists(dir / "svg" / "a.svg"));
    EXPECT_FALSE(fs::exists(out / "a.truth.report.json"));

    io::write_text_file(in / "broken.csv", "zzz\n");
    EXPECT_EQ(run_cli({"detect", in.string(), "--delta", "1", "-o", out.string()}), 1);
}

TEST_F(Cli, SynthBulge) {
    ASSERT_EQ(run_cli({"synth", "bulge", "--mouth", "6", "--depth", "2", "-o", path("b.json"), "--truth",
                   path("t.json")}),
              0);
    const auto truth = nlohmann::json::parse(io::read_text_file(path("t.json")));
    EXPECT_TRUE(truth["folds"].empty());
    EXPECT_EQ(truth["bulges"], 1);
    EXPECT_EQ(run_cli({"detect", path("b.json"), "--delta", "1"}), 2);
}
