#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>

#include "ffrand/io.hpp"

namespace fs = std::filesystem;
using ffrand::io::json;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ffrand_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  CliResult run(const std::string& args) const {
    const std::string cmd = std::string(FFRAND_CLI_PATH) + " " + args + " > " + path("stdout") +
                            " 2> " + path("stderr");
    const int status = std::system(cmd.c_str());
    CliResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = ffrand::io::read_text_file(path("stdout"));
    r.err = ffrand::io::read_text_file(path("stderr"));
    return r;
  }

  std::string make_p4() const {
    EXPECT_EQ(run("gen --family path --n 4 --out " + path("p4.json")).code, 0);
    return path("p4.json");
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, GenPathWritesForestAndManifest) {
  const auto p4 = make_p4();
  const auto doc = json::parse(ffrand::io::read_text_file(p4));
  EXPECT_EQ(doc.at("n"), 4);
  EXPECT_EQ(doc.at("edges"), json::parse("[[0,1],[1,2],[2,3]]"));
  const auto manifest = json::parse(ffrand::io::read_text_file(p4 + ".manifest.json"));
  EXPECT_EQ(manifest.at("subcommand"), "gen");
  EXPECT_EQ(manifest.at("parameters").at("--family"), "path");
  EXPECT_TRUE(manifest.contains("version"));
  EXPECT_TRUE(manifest.contains("wall_time"));
  EXPECT_EQ(manifest.at("outputs").at(0), p4);
}

TEST_F(Cli, ExactPrintsNineQuarters) {
  const auto p4 = make_p4();
  const auto r = run("exact --forest " + p4);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "9/4\n");
  const auto j = run("exact --format json --forest " + p4);
  EXPECT_EQ(json::parse(j.out).at("expected"), "9/4");
}

TEST_F(Cli, ColorHandTracedOrder) {
  const auto p4 = make_p4();
  const auto r = run("color --forest " + p4 + " --order '[3,0,2,1]'");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = json::parse(r.out);
  EXPECT_EQ(doc.at("coloring").at("max_color"), 3);
  EXPECT_EQ(doc.at("bidirected_witness").at("path").size(), 4u);
  EXPECT_EQ(doc.at("bidirected_witness").at("path"), json::parse("[0,1,2,3]"));
  EXPECT_EQ(doc.at("bidirected_witness").at("peak"), 1);
  EXPECT_EQ(doc.at("directed_witness").at("path"), json::parse("[3,2,1]"));
  EXPECT_EQ(doc.at("verified"), true);
}

TEST_F(Cli, ColorFromPositionsFile) {
  const auto p4 = make_p4();
  ffrand::io::write_text_file(path("pos.json"), R"({"positions": [0.2, 0.9, 0.5, 0.1]})");
  const auto r = run("color --forest " + p4 + " --positions-file " + path("pos.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out).at("order"), json::parse("[3,0,2,1]"));
}

TEST_F(Cli, ColorSingleVertex) {
  ASSERT_EQ(run("gen --family path --n 1 --out " + path("k1.json")).code, 0);
  const auto r = run("color --forest " + path("k1.json") + " --seed 1");
  EXPECT_EQ(r.code, 0);
  const auto doc = json::parse(r.out);
  EXPECT_EQ(doc.at("coloring").at("max_color"), 1);
  EXPECT_TRUE(doc.at("bidirected_witness").is_null());
}

TEST_F(Cli, ColorMismatchedOrderExitsTwo) {
  const auto p4 = make_p4();
  EXPECT_EQ(run("color --forest " + p4 + " --order '[0,1,2]'").code, 2);
  EXPECT_EQ(run("color --forest " + path("missing.json") + " --seed 1").code, 2);
}

TEST_F(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("gen --family nope --n 3").code, 2);
  EXPECT_EQ(run("estimate --trials 10").code, 2);
  EXPECT_EQ(run("bounds").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST_F(Cli, CapExceededExitsThree) {
  EXPECT_EQ(run("gen --family lowerbound --k 3 --gamma 0.5 --vertex-cap 100").code, 3);
  EXPECT_EQ(run("rootcolor --k 9 --trials 1 --seed 1").code, 3);
  ASSERT_EQ(run("gen --family path --n 12 --out " + path("p12.json")).code, 0);
  EXPECT_EQ(run("exact --forest " + path("p12.json")).code, 3);
}

TEST_F(Cli, GenLowerBoundSizes) {
  ASSERT_EQ(run("gen --family lowerbound --k 3 --gamma 0.5 --out " + path("t3.json")).code, 0);
  const auto t3 = json::parse(ffrand::io::read_text_file(path("t3.json")));
  EXPECT_EQ(t3.at("n"), 17689);
  EXPECT_EQ(t3.at("root"), 0);
  ASSERT_EQ(run("gen --family lowerbound --k 3 --r 2 --out " + path("small.json")).code, 0);
  EXPECT_EQ(json::parse(ffrand::io::read_text_file(path("small.json"))).at("n"), 9);
}

TEST_F(Cli, EstimateOnT3) {
  ASSERT_EQ(run("gen --family lowerbound --k 3 --gamma 0.5 --out " + path("t3.json")).code, 0);
  const auto r = run("estimate --forest " + path("t3.json") + " --trials 10000 --seed 42");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = json::parse(r.out);
  const double mean = doc.at("mean");
  EXPECT_GE(mean, 2.5);
  EXPECT_LE(mean, 3.0);
  const double p3 = doc.at("color_histogram").value("3", 0.0) / 10000.0;
  EXPECT_GE(p3, 0.5);
}

TEST_F(Cli, BoundsRow) {
  const auto r = run("bounds --n 1000000");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "n,alpha,k_star,upper_rff,tail,lower_g");
  const auto row = r.out.substr(r.out.find('\n') + 1);
  EXPECT_EQ(row.substr(0, 15), "1000000,2.97600");
  EXPECT_NE(row.find(",21,"), std::string::npos);
  const auto grid = run("bounds --n-grid 1e4:1e12:log");
  ASSERT_EQ(grid.code, 0);
  EXPECT_EQ(std::count(grid.out.begin(), grid.out.end(), '\n'), 10);
}

TEST_F(Cli, OmittedSeedIsSampledAndReported) {
  const auto p4 = make_p4();
  const auto r = run("estimate --forest " + p4 + " --trials 10 --out " + path("e.json"));
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("seed: "), std::string::npos);
  const auto manifest = json::parse(ffrand::io::read_text_file(path("e.json.manifest.json")));
  EXPECT_TRUE(manifest.at("seed").is_number_unsigned());
  EXPECT_EQ(manifest.at("seed"), json::parse(ffrand::io::read_text_file(path("e.json"))).at("base_seed"));
}

TEST_F(Cli, OutputsAreByteIdenticalAcrossThreadCounts) {
  const auto forest = path("tree.json");
  ASSERT_EQ(run("gen --family prufer --n 2000 --seed 5 --out " + forest).code, 0);
  std::string first;
  for (int threads : {1, 2, 4}) {
    const auto out = path("est" + std::to_string(threads) + ".json");
    ASSERT_EQ(run("estimate --forest " + forest + " --trials 2000 --seed 9 --threads " +
                  std::to_string(threads) + " --out " + out)
                  .code,
              0);
    const auto text = ffrand::io::read_text_file(out);
    if (first.empty()) first = text;
    EXPECT_EQ(text, first);
  }
  const auto root1 = run("rootcolor --k 3 --r 20 --trials 200 --seed 3 --threads 1");
  const auto root3 = run("rootcolor --k 3 --r 20 --trials 200 --seed 3 --threads 3");
  EXPECT_EQ(root1.out, root3.out);
}

TEST_F(Cli, ManifestCommandLineReproducesOutput) {
  const auto forest = path("tree.json");
  ASSERT_EQ(run("gen --family forest-union --parts path:3,star:4,prufer:6 --out " + forest).code, 0);
  const auto gen_bytes = ffrand::io::read_text_file(forest);
  auto manifest = json::parse(ffrand::io::read_text_file(forest + ".manifest.json"));
  std::string args;
  for (std::size_t i = 1; i < manifest.at("command_line").size(); ++i) {
    args += " '" + manifest.at("command_line")[i].get<std::string>() + "'";
  }
  args += " --seed " + std::to_string(manifest.at("seed").get<std::uint64_t>());
  fs::remove(forest);
  ASSERT_EQ(run(args).code, 0);
  EXPECT_EQ(ffrand::io::read_text_file(forest), gen_bytes);
}

TEST_F(Cli, FormatsRoundTrip) {
  ASSERT_EQ(run("gen --family prufer --n 25 --seed 8 --format edgelist --out " + path("t.txt")).code, 0);
  ASSERT_EQ(run("gen --family prufer --n 25 --seed 8 --out " + path("t.json")).code, 0);
  const auto a = run("estimate --forest " + path("t.txt") + " --trials 500 --seed 1");
  const auto b = run("estimate --forest " + path("t.json") + " --trials 500 --seed 1");
  EXPECT_EQ(a.out, b.out);
  const auto csv = run("estimate --forest " + path("t.json") + " --trials 500 --seed 1 --format csv --histogram " + path("h.csv"));
  EXPECT_EQ(csv.out.substr(0, 30), "trials,mean,stderr,ci_lo,ci_hi");
  EXPECT_EQ(ffrand::io::read_text_file(path("h.csv")).substr(0, 12), "color,count\n");
}

TEST_F(Cli, WorstCaseP4) {
  const auto p4 = make_p4();
  const auto r = run("worstcase --forest " + p4);
  ASSERT_EQ(r.code, 0);
  const auto doc = json::parse(r.out);
  EXPECT_EQ(doc.at("max_colors"), 3);
  EXPECT_EQ(doc.at("chromatic_number"), 2);
}
