#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
};

Result run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + std::string(L2EXT_CLI) + " " + args + " 2>/dev/null";
  Result r{0, ""};
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path write_config(const std::string& name, const std::string& body) {
  const fs::path dir = fs::temp_directory_path() / "l2ext_cli_tests";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << body;
  return p;
}

std::string drop_wall_clock(const std::string& s) {
  std::istringstream in(s);
  std::string line, out;
  while (std::getline(in, line))
    if (line.find("wall_clock") == std::string::npos) out += line + "\n";
  return out;
}

} // namespace

TEST(Cli, PassingRunExitsZero) {
  const auto cfg = write_config("pass.json", R"({"scenario": "radial_minimal", "n": 1, "k": 1})");
  const auto r = run("run --config " + cfg.string());
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"scenario\": \"radial_minimal\""), std::string::npos);
}

TEST(Cli, RepeatedRunsAreByteIdenticalApartFromWallClock) {
  const auto cfg = write_config("det.json", R"({"scenario": "example41", "n": 2, "samples": 200000, "seed": 5})");
  const auto a = run("run --config " + cfg.string());
  const auto b = run("run --config " + cfg.string());
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(drop_wall_clock(a.out), drop_wall_clock(b.out));
}

TEST(Cli, SeedAndSampleOverrides) {
  const auto cfg = write_config("ovr.json", R"({"scenario": "example41", "n": 2})");
  const auto r = run("run --config " + cfg.string() + " --seed 77 --samples 50000");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"seed\": 77"), std::string::npos);
  EXPECT_NE(r.out.find("mc_integral"), std::string::npos);
}

TEST(Cli, FailedAssertionExitsOne) {
  const auto cfg = write_config(
      "fail.json",
      R"({"scenario": "scaling_limit", "model": "ball_point", "n": 2, "samples": 1000, "seed": 1, "tolerances": {"mc_rel": 1e-12}})");
  EXPECT_EQ(run("run --config " + cfg.string()).code, 1);
}

TEST(Cli, UsageErrorsExitTwo) {
  const auto cfg = write_config("bad.json", R"({"scenario": "radial_minimal", "n": "x"})");
  EXPECT_EQ(run("run --config " + cfg.string()).code, 2);
  EXPECT_EQ(run("run").code, 2);
  EXPECT_EQ(run("run --config /nonexistent/file.json").code, 2);
  const auto ok = write_config("fmt.json", R"({"scenario": "example41"})");
  EXPECT_EQ(run("run --config " + ok.string() + " --format xml").code, 2);
}

TEST(Cli, UnsupportedScenarioExitsThree) {
  const auto cfg = write_config("unsup.json", R"({"scenario": "riemann_hypothesis"})");
  EXPECT_EQ(run("run --config " + cfg.string()).code, 3);
}

TEST(Cli, ListModes) {
  const auto a = run("list");
  const auto b = run("--list");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("scaling_limit"), std::string::npos);
}

TEST(Cli, TableFormatAndOutFile) {
  const auto cfg = write_config("table.json", R"({"scenario": "example41", "n": 3})");
  const fs::path out = fs::temp_directory_path() / "l2ext_cli_tests" / "report.txt";
  fs::remove(out);
  const auto r = run("run --config " + cfg.string() + " --format table --out " + out.string());
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_NE(ss.str().find("ratio_below_one"), std::string::npos);
}

TEST(Cli, EnvironmentSetsDefaultOutputDirectory) {
  const auto cfg = write_config("env.json", R"({"scenario": "example41", "n": 2})");
  const fs::path dir = fs::temp_directory_path() / "l2ext_cli_tests" / "env_out";
  fs::remove_all(dir);
  const auto r = run("run --config " + cfg.string(), "L2EXT_OUT_DIR=" + dir.string());
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(fs::exists(dir / "ball_lift_ratio.json"));
}
