#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fqco/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kData = FQCO_DATA_DIR;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "fqco");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = fqco::cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  auto d = fs::temp_directory_path() / ("fqco_cli_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t line_count(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST(CliVerify, ExampleEncodes) {
  const auto r = invoke({"verify", (kData / "qcbo3.json").string(), "--gamma", "3"});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto report = json::parse(r.out);
  EXPECT_EQ(report["argmin"], "001");
  EXPECT_EQ(report["ok"], true);
}

TEST(CliVerify, ZeroGammaFails) {
  const auto r = invoke({"verify", (kData / "qcbo3.json").string(), "--gamma", "0"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(json::parse(r.out)["argmin"], "111");
}

TEST(CliVerify, MalformedJsonIsInputFailure) {
  const auto dir = scratch("malformed");
  std::ofstream(dir / "bad.json") << "{\"n\": 3, \"objective\": ";
  const auto r = invoke({"verify", (dir / "bad.json").string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("byte"), std::string::npos) << r.err;
  EXPECT_EQ(invoke({"verify", (dir / "missing.json").string()}).code, 2);
  EXPECT_EQ(invoke({"frobnicate"}).code, 2);
}

TEST(CliOracle, ReportsOptimum) {
  const auto r = invoke({"oracle", (kData / "qcbo3.json").string()});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto report = json::parse(r.out);
  EXPECT_EQ(report["optimum"]["bits"], "001");
  EXPECT_EQ(report["feasible_count"], 2);
}

TEST(CliRun, WritesTraceFilesAndSummary) {
  const auto dir = scratch("run");
  const auto r = invoke({"run", (kData / "qcbo3.json").string(), "--mode", "falqon-c",
                         "--controller", "standard", "--dt", "0.02", "--depth", "200",
                         "--gamma", "3", "--out-dir", dir.string(), "--gnuplot"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("P_s="), std::string::npos);
  EXPECT_EQ(line_count(slurp(dir / "trace.csv")), 202u);
  EXPECT_EQ(line_count(slurp(dir / "probabilities.csv")), 9u);
  const auto meta = json::parse(slurp(dir / "metadata.json"));
  EXPECT_GE(meta["final"]["P_s"].get<double>(), 0.9);
  EXPECT_TRUE(fs::exists(dir / "plot.gp"));
}

TEST(CliRun, DepthZeroSingleRow) {
  const auto dir = scratch("depth0");
  const auto r = invoke({"run", (kData / "qcbo3.json").string(), "--depth", "0",
                         "--out-dir", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(line_count(slurp(dir / "trace.csv")), 2u);
}

TEST(CliRun, FalqonBaselineAndStateDump) {
  const auto dir = scratch("falqon");
  const auto r = invoke({"run", (kData / "qcbo3.json").string(), "--mode", "falqon",
                         "--depth", "20", "--out-dir", dir.string(), "--name", "base",
                         "--dump-state", (dir / "state.bin").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("mode=falqon "), std::string::npos) << r.out;
  EXPECT_TRUE(fs::exists(dir / "base_trace.csv"));
  EXPECT_EQ(fs::file_size(dir / "state.bin"), 16u + 8 * 16u);
}

TEST(CliRun, BadFlagsAreInputFailures) {
  const auto p = (kData / "qcbo3.json").string();
  EXPECT_EQ(invoke({"run", p, "--dt", "-1"}).code, 2);
  EXPECT_EQ(invoke({"run", p, "--controller", "pid"}).code, 2);
  EXPECT_EQ(invoke({"run", p, "--zeta-init", "1,2"}).code, 2);
}

TEST(CliSweep, FiveControllers) {
  const auto dir = scratch("sweep5");
  std::ofstream(dir / "m.json") << json{
      {"problem", fs::absolute(kData / "qcbo3.json").string()},
      {"base", {{"depth", 40}, {"gamma", 3}}},
      {"axes", {{"controller", {"standard", "bang-bang", "finite1", "finite2", "fixed"}}}},
      {"controller_overrides", {{"bang-bang", {{"K", 3.5}}}}},
      {"out_dir", "out"},
      {"jobs", 2}}.dump();
  const auto r = invoke({"sweep", (dir / "m.json").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto summary = slurp(dir / "out" / "summary.csv");
  EXPECT_EQ(line_count(summary), 6u);
  for (const char* c : {"standard", "bang-bang", "finite1", "finite2", "fixed"})
    EXPECT_TRUE(fs::exists(dir / "out" / (std::string("controller-") + c + "_trace.csv")));
}

TEST(CliSweep, EmptyAxesMatchesRun) {
  const auto dir = scratch("sweep0");
  std::ofstream(dir / "m.json")
      << json{{"problem", fs::absolute(kData / "qcbo3.json").string()},
              {"base", {{"depth", 25}}}}
             .dump();
  ASSERT_EQ(invoke({"sweep", (dir / "m.json").string(), "--out-dir", (dir / "s").string()}).code, 0);
  ASSERT_EQ(invoke({"run", (kData / "qcbo3.json").string(), "--depth", "25", "--out-dir",
                    (dir / "r").string()})
                .code,
            0);
  EXPECT_EQ(slurp(dir / "s" / "run_trace.csv"), slurp(dir / "r" / "trace.csv"));
}

TEST(CliSweep, FailedPointsAreRecorded) {
  const auto dir = scratch("sweepfail");
  std::ofstream(dir / "m.json")
      << json{{"problem", fs::absolute(kData / "qcbo3.json").string()},
              {"base", {{"depth", 5}}},
              {"axes", {{"dt", {0.02, -1.0}}}}}
             .dump();
  const auto r = invoke({"sweep", (dir / "m.json").string(), "--out-dir", (dir / "o").string()});
  EXPECT_EQ(r.code, 1);
  const auto summary = slurp(dir / "o" / "summary.csv");
  EXPECT_NE(summary.find("error"), std::string::npos) << summary;
  EXPECT_NE(summary.find("ok"), std::string::npos) << summary;
}

TEST(CliRun, MatchesGoldenOutput) {
  const auto dir = scratch("golden");
  ASSERT_EQ(invoke({"run", (kData / "qcbo3.json").string(), "--out-dir", dir.string()}).code, 0);
  for (const char* name : {"trace.csv", "probabilities.csv"}) {
    std::istringstream fresh(slurp(dir / name)), gold(slurp(kData / "golden" / name));
    std::string a, b;
    std::size_t rows = 0;
    while (std::getline(gold, b)) {
      ASSERT_TRUE(static_cast<bool>(std::getline(fresh, a))) << name << " row " << rows;
      if (rows++ == 0 || a == b) continue;
      // tolerate last-digit differences from a different libm
      std::istringstream fa(a), fb(b);
      std::string x, y;
      while (std::getline(fb, y, ',')) {
        ASSERT_TRUE(static_cast<bool>(std::getline(fa, x, ',')));
        if (x == y) continue;
        EXPECT_NEAR(std::stod(x), std::stod(y), 1e-9) << name << " row " << rows;
      }
    }
    EXPECT_FALSE(static_cast<bool>(std::getline(fresh, a))) << name << " has extra rows";
  }
}
