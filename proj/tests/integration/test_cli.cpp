#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "collimator/commands.hpp"
#include "collimator/trial_csv.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = collimator::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "collimator_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST(Cli, HelpAndUsageErrors) {
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({}).code, 2);
  const Result bogus = run({"frobnicate"});
  EXPECT_EQ(bogus.code, 2);
  EXPECT_EQ(bogus.err.rfind("error: ", 0), 0u);
  EXPECT_EQ(run({"gen-targets"}).code, 2);  // no seed
}

TEST(Cli, GenTargetsCountsAndDeterminism) {
  const Result a = run({"gen-targets", "--seed", "5", "--out", "-"});
  ASSERT_EQ(a.code, 0) << a.err;
  const auto doc = nlohmann::json::parse(a.out);
  EXPECT_EQ(doc["training"].size(), 32u);
  EXPECT_EQ(doc["mandible"].size(), 16u);
  EXPECT_EQ(doc["maxilla"].size(), 16u);
  EXPECT_EQ(run({"gen-targets", "--seed", "5", "--out", "-"}).out, a.out);
  EXPECT_NE(run({"gen-targets", "--seed", "6", "--out", "-"}).out, a.out);

  const auto only = nlohmann::json::parse(
      run({"gen-targets", "--seed", "5", "--out", "-", "--group", "maxilla"}).out);
  EXPECT_FALSE(only.contains("training"));
  EXPECT_EQ(only["maxilla"].size(), 16u);
  const Result bad = run({"gen-targets", "--seed", "5", "--group", "palate"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("--group"), std::string::npos);
}

TEST(Cli, SimulateOneParticipant) {
  const fs::path out = scratch("one.csv");
  const Result r = run({"simulate", "--seed", "3", "--participants", "1", "--out", out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(out);
  const auto records = collimator::read_trial_csv(in);
  EXPECT_EQ(records.size(), 64u);
  for (const auto& rec : records) EXPECT_TRUE(rec.simulated);
  EXPECT_EQ(run({"simulate", "--seed", "3", "--participants", "0"}).code, 2);
  EXPECT_EQ(run({"simulate", "--seed", "3", "--widget", "hud"}).code, 2);
}

TEST(Cli, SimulateWidgetFilterAndThreadsIndependence) {
  const Result acw = run({"simulate", "--seed", "8", "--participants", "2", "--widget", "acw",
                          "--out", "-"});
  ASSERT_EQ(acw.code, 0);
  EXPECT_EQ(count(acw.out, ",GSW,"), 0u);
  EXPECT_EQ(count(acw.out, ",ACW,"), 64u);
  const Result one = run({"simulate", "--seed", "8", "--participants", "3", "--threads", "1",
                          "--out", "-"});
  const Result many = run({"simulate", "--seed", "8", "--participants", "3", "--threads", "4",
                           "--out", "-"});
  EXPECT_EQ(one.out, many.out);
}

TEST(Cli, SimulateThenAnalyze) {
  const fs::path csv = scratch("study.csv");
  ASSERT_EQ(run({"simulate", "--seed", "7", "--participants", "30", "--out", csv.string()}).code,
            0);
  const fs::path dir = scratch("analysis");
  fs::remove_all(dir);
  const Result r = run({"analyze", "--in", csv.string(), "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("read 1920 trials, analysing 1800"), std::string::npos) << r.err;
  EXPECT_NE(r.out.find("Records analysed: 1800"), std::string::npos);
  const std::string tests = slurp(dir / "tests.csv");
  EXPECT_EQ(count(tests, "\n"), 11u);  // header + one Mann-Whitney row per metric
  EXPECT_TRUE(fs::exists(dir / "summary.csv"));
  EXPECT_EQ(slurp(dir / "report.txt"), r.out);

  const Result grouped = run({"analyze", "--in", csv.string(), "--group-by", "anatomy"});
  EXPECT_EQ(grouped.code, 0);
  EXPECT_NE(grouped.out.find("mandible"), std::string::npos);
  EXPECT_EQ(run({"analyze", "--in", csv.string(), "--group-by", "tooth"}).code, 2);
  EXPECT_EQ(run({"analyze", "--in", csv.string(), "--alternative", "two"}).code, 2);
}

TEST(Cli, AnalyzeRejectsEmptyAndMissingInput) {
  const fs::path empty = scratch("empty.csv");
  std::ofstream(empty).close();
  const Result r = run({"analyze", "--in", empty.string()});
  EXPECT_NE(r.code, 0);
  EXPECT_EQ(r.err.rfind("error: ", 0), 0u);

  const fs::path header_only = scratch("header_only.csv");
  std::ofstream(header_only) << collimator::kTrialCsvHeader << '\n';
  EXPECT_NE(run({"analyze", "--in", header_only.string()}).code, 0);
  EXPECT_NE(run({"analyze", "--in", scratch("missing.csv").string()}).code, 0);
  EXPECT_EQ(run({"analyze"}).code, 2);
}

TEST(Cli, ConfigSeedIsUsedWhenFlagMissing) {
  const fs::path cfg = scratch("seeded.json");
  std::ofstream(cfg) << R"({"seed": 5})";
  const Result a = run({"gen-targets", "--config", cfg.string(), "--out", "-"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, run({"gen-targets", "--seed", "5", "--out", "-"}).out);
  const fs::path broken = scratch("broken.json");
  std::ofstream(broken) << R"({"display_scale": 0})";
  EXPECT_NE(run({"gen-targets", "--config", broken.string(), "--seed", "1"}).code, 0);
}

TEST(Cli, ServeArgumentChecks) {
  EXPECT_EQ(run({"serve", "--seed", "1"}).code, 2);
  EXPECT_EQ(run({"serve", "--seed", "1", "--stdio", "--port", "0"}).code, 2);
  EXPECT_EQ(run({"serve", "--seed", "1", "--port", "70000"}).code, 2);
  EXPECT_EQ(run({"serve", "--seed", "1", "--stdio", "--set", "C"}).code, 2);
}
