#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = SMCSIM_CLI;
const std::string kDir = SMCSIM_SCENARIO_DIR;

struct Result {
  int code = -1;
  std::string output;  // stdout and stderr
};

Result invoke(const std::string& args) {
  Result r;
  const std::string cmd = "'" + kCli + "' " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.output.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("smcsim_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_file(const fs::path& dir, const std::string& name, const std::string& text) {
  const fs::path p = dir / name;
  std::ofstream(p) << text;
  return p;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::string nominal_text() { return read_file(kDir + "/nominal_ncsmc.yaml"); }

std::string replace(std::string text, const std::string& from, const std::string& to) {
  return text.replace(text.find(from), from.size(), to);
}

size_t line_count(const fs::path& p) {
  std::ifstream in(p);
  size_t n = 0;
  std::string line;
  while (std::getline(in, line)) ++n;
  return n;
}

}  // namespace

TEST(Cli, RunWritesLogAndMetrics) {
  const fs::path out = scratch("run");
  const Result r = invoke("run " + kDir + "/nominal_ncsmc.yaml --out " + out.string());
  ASSERT_EQ(r.code, 0) << r.output;
  const fs::path csv = out / "nominal_ncsmc_log.csv";
  ASSERT_TRUE(fs::exists(csv));
  ASSERT_TRUE(fs::exists(out / "nominal_ncsmc_metrics.json"));
  EXPECT_EQ(line_count(csv), 1u + 16001u);  // header + duration/dt + 1
  const auto j = nlohmann::json::parse(read_file(out / "nominal_ncsmc_metrics.json"));
  EXPECT_EQ(j["records"], 16001);
}

TEST(Cli, OverridesApplyBeforeValidation) {
  const fs::path out = scratch("override");
  Result r = invoke("run " + kDir + "/nominal_nsmc.yaml --dt 0.0025 --out " + out.string());
  ASSERT_EQ(r.code, 0) << r.output;
  EXPECT_EQ(line_count(out / "nominal_nsmc_log.csv"), 1u + 8001u);
  // the file pins the metrics window to [15, 20] s
  r = invoke("run " + kDir + "/nominal_nsmc.yaml --duration 1 --out " + out.string());
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.output.find("metrics.window"), std::string::npos) << r.output;
}

TEST(Cli, NegativeMassExitsOneNamingField) {
  const fs::path dir = scratch("negmass");
  const fs::path f = write_file(dir, "bad.yaml", replace(nominal_text(), "m1: 386 g", "m1: -386 g"));
  const Result r = invoke("run " + f.string() + " --out " + dir.string());
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.output.find("m1"), std::string::npos) << r.output;
}

TEST(Cli, UnknownKeyExitsOneNamingKey) {
  const fs::path dir = scratch("masss");
  const fs::path f = write_file(dir, "bad.yaml", replace(nominal_text(), "  m1: 386 g", "  m1: 386 g\n  masss: 386 g"));
  const Result r = invoke("run " + f.string() + " --out " + dir.string());
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.output.find("masss"), std::string::npos) << r.output;
}

TEST(Cli, CompareWritesThreeLogsAndSummary) {
  const fs::path out = scratch("compare");
  const Result r = invoke("compare " + kDir + "/nominal_ncsmc.yaml --controllers smc,nsmc,ncsmc --out " + out.string());
  ASSERT_EQ(r.code, 0) << r.output;
  for (const char* c : {"smc", "nsmc", "ncsmc"}) {
    EXPECT_TRUE(fs::exists(out / ("nominal_ncsmc_" + std::string(c) + "_log.csv"))) << c;
  }
  const auto j = nlohmann::json::parse(read_file(out / "comparison.json"));
  EXPECT_EQ(j["runs"].size(), 3u);
  ASSERT_TRUE(j["chattering_ratios"].contains("ncsmc/nsmc"));
  EXPECT_EQ(j["chattering_ratios"]["ncsmc/nsmc"].size(), 2u);
}

TEST(Cli, CompareNeedsTwoDistinctControllers) {
  const fs::path out = scratch("compare_bad");
  Result r = invoke("compare " + kDir + "/nominal_ncsmc.yaml --controllers nsmc --out " + out.string());
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.output.find("needs >= 2"), std::string::npos) << r.output;
  r = invoke("compare " + kDir + "/nominal_ncsmc.yaml --controllers nsmc,nsmc --out " + out.string());
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.output.find("duplicate"), std::string::npos) << r.output;
}

TEST(Cli, ValidatePrintsSiScenario) {
  const Result r = invoke("validate " + kDir + "/nominal_ncsmc.yaml");
  ASSERT_EQ(r.code, 0) << r.output;
  EXPECT_NE(r.output.find("l1: 0.32"), std::string::npos) << r.output;
  EXPECT_NE(r.output.find("dt: 0.00125"), std::string::npos) << r.output;
}

TEST(Cli, ValidateRejectsZeroStep) {
  const fs::path dir = scratch("dt0");
  const fs::path f = write_file(dir, "bad.yaml", replace(nominal_text(), "dt: 1.25 ms", "dt: 0"));
  EXPECT_EQ(invoke("validate " + f.string()).code, 1);
  EXPECT_EQ(invoke("validate " + kDir + "/nominal_ncsmc.yaml --dt 0").code, 1);
}

TEST(Cli, ValidateNamesUnreachableWaypoint) {
  const fs::path dir = scratch("waypoint");
  std::string text = read_file(kDir + "/cartesian_circle_ncsmc.yaml");
  text = replace(text, "- [0.400000 m, 0.300000 m]", "- [0.900000 m, 0.300000 m]");
  const fs::path f = write_file(dir, "bad.yaml", text);
  const Result r = invoke("validate " + f.string());
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.output.find("waypoint 3"), std::string::npos) << r.output;
}

TEST(Cli, RuntimeDivergenceExitsTwo) {
  const fs::path dir = scratch("diverge");
  std::string text = replace(nominal_text(), "duration: 20 s", "duration: 2 s\nplant_override: {l1: 0.32, l2: 0.36, m1: 1e-9, m2: 1e-9}");
  text = replace(text, "dt: 1.25 ms", "dt: 10 ms");
  text = replace(text, "plant_substeps: 4", "plant_substeps: 1");
  text = replace(text, "window: [15 s, 20 s]", "window: [1 s, 2 s]");
  const fs::path f = write_file(dir, "diverge.yaml", text);
  const Result r = invoke("run " + f.string() + " --out " + dir.string());
  EXPECT_EQ(r.code, 2) << r.output;
}

TEST(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(invoke("").code, 1);
  EXPECT_EQ(invoke("frobnicate").code, 1);
  EXPECT_EQ(invoke("run").code, 1);
  EXPECT_EQ(invoke("compare " + kDir + "/nominal_ncsmc.yaml").code, 1);
  EXPECT_EQ(invoke("--help").code, 0);
}
