#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "speclab/cli.hpp"

namespace fs = std::filesystem;
using speclab::cli::run;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("speclab-cli-test-" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// every payload file except the manifest
std::map<std::string, std::string> payloads(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.find("manifest") == std::string::npos) out[name] = slurp(entry.path());
  }
  return out;
}

}  // namespace

TEST(Cli, UsageErrors) {
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"--help"}).code, 0);
  EXPECT_EQ(invoke({"frobnicate"}).code, 2);
  EXPECT_EQ(invoke({"inequalities", "--bogus", "1"}).code, 2);
  EXPECT_EQ(invoke({"inequalities", "--trials", "many"}).code, 2);
  EXPECT_EQ(invoke({"spectrum", "--potential", "x1^^2"}).code, 2);
  EXPECT_EQ(invoke({"spectrum", "--potential", "x3", "--nu", "2"}).code, 2);
  EXPECT_EQ(invoke({"thinness", "--radii", "10,abc"}).code, 2);
  EXPECT_EQ(invoke({"kernel-power", "--r", "4", "--k", "2"}).code, 2);
  const auto help = invoke({"thinness", "--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("--radii"), std::string::npos);
}

TEST(Cli, ConfigText) {
  const auto values = speclab::cli::read_config_text("# comment\n\nsubcommand = thinness\nM = 2\n r=3 \n");
  EXPECT_EQ(values.at("M"), "2");
  EXPECT_EQ(values.at("r"), "3");
  EXPECT_EQ(values.at("subcommand"), "thinness");
  EXPECT_THROW(speclab::cli::read_config_text("M = 1\nM = 2\n"), speclab::cli::ConfigError);
  EXPECT_THROW(speclab::cli::read_config_text("no equals sign\n"), speclab::cli::ConfigError);
  EXPECT_EQ(speclab::cli::digest_hex(""), "cbf29ce484222325");
  EXPECT_EQ(speclab::cli::digest_hex("a"), "af63dc4c8601ec8c");
}

TEST(Cli, InequalitiesRunWritesReportsAndManifest) {
  const fs::path dir = fresh_dir("ineq");
  const auto r = invoke({"inequalities", "--trials", "30", "--dim", "5", "--seed", "7", "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string csv = slurp(dir / "inequalities-summary.csv");
  EXPECT_EQ(csv.rfind("name,trials,min_margin,pass_rate\n", 0), 0u);
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  while (std::getline(lines, line)) EXPECT_EQ(line.substr(line.rfind(',') + 1), "1") << line;

  const auto manifest = nlohmann::json::parse(slurp(dir / "inequalities-manifest.json"));
  EXPECT_EQ(manifest.at("subcommand"), "inequalities");
  EXPECT_EQ(manifest.at("seed"), 7);
  EXPECT_EQ(manifest.at("config").at("trials"), "30");
  for (const auto& f : manifest.at("files")) {
    const std::string bytes = slurp(dir / f.at("name").get<std::string>());
    EXPECT_EQ(f.at("bytes").get<std::size_t>(), bytes.size());
    EXPECT_EQ(f.at("fnv1a64"), speclab::cli::digest_hex(bytes));
  }
}

TEST(Cli, RepeatedRunsAreByteIdentical) {
  const fs::path a = fresh_dir("repeat-a"), b = fresh_dir("repeat-b");
  const std::vector<std::string> base{"thinness", "--potential", "x1^2*x2^2", "--radii", "5,10,20",
                                      "--samples", "20000", "--inner-samples", "1000", "--max-points", "60"};
  auto args_a = base, args_b = base;
  args_a.insert(args_a.end(), {"--out", a.string()});
  args_b.insert(args_b.end(), {"--out", b.string()});
  ASSERT_EQ(invoke(args_a).code, 0);
  ASSERT_EQ(invoke(args_b).code, 0);
  auto pa = payloads(a), pb = payloads(b);
  // the resolved config names its own output directory
  pa.erase("thinness-config.txt");
  pb.erase("thinness-config.txt");
  EXPECT_EQ(pa, pb);
  EXPECT_EQ(pa.count("thinness-partial-integrals.dat"), 1u);
  EXPECT_EQ(pa.at("thinness-partial-integrals.dat").rfind("# R I(R)\n", 0), 0u);
}

TEST(Cli, ConfigRoundTripReproducesPayloads) {
  const fs::path first = fresh_dir("round-a"), second = fresh_dir("round-b");
  ASSERT_EQ(invoke({"kernel-power", "--L", "3", "--h", "0.5", "--out", first.string()}).code, 0);
  const fs::path config = first / "kernel-power-config.txt";
  ASSERT_TRUE(fs::exists(config));
  const auto r = invoke({"--config", config.string(), "--out", second.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  auto pa = payloads(first), pb = payloads(second);
  pa.erase("kernel-power-config.txt");
  pb.erase("kernel-power-config.txt");
  EXPECT_EQ(pa, pb);
}

TEST(Cli, FlagsOverrideConfigFile) {
  const fs::path dir = fresh_dir("override");
  fs::create_directories(dir);
  {
    std::ofstream cfg(dir / "run.cfg");
    cfg << "subcommand = inequalities\ntrials = 1000000\ndim = 3\n";
  }
  const auto r = invoke({"inequalities", "--config", (dir / "run.cfg").string(), "--trials", "5", "--out",
                         (dir / "out").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto manifest = nlohmann::json::parse(slurp(dir / "out" / "inequalities-manifest.json"));
  EXPECT_EQ(manifest.at("config").at("trials"), "5");
  EXPECT_EQ(manifest.at("config").at("dim"), "3");

  std::ofstream bad(dir / "bad.cfg");
  bad << "subcommand = inequalities\nfrobs = 2\n";
  bad.close();
  EXPECT_EQ(invoke({"--config", (dir / "bad.cfg").string()}).code, 2);
  EXPECT_EQ(invoke({"thinness", "--config", (dir / "run.cfg").string()}).code, 2);
}

TEST(Cli, DivergentVerdictIsNotAFailure) {
  const fs::path dir = fresh_dir("strip");
  const auto r = invoke({"thinness", "--potential", "x1^2", "--radii", "10,20,40,80", "--samples", "50000",
                         "--inner-samples", "1000", "--max-points", "100", "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto report = nlohmann::json::parse(slurp(dir / "thinness-report.json"));
  EXPECT_EQ(report.at("report").at("verdict"), "divergent-evidence");
}

TEST(Cli, FailedCheckExitsOne) {
  const fs::path dir = fresh_dir("fail");
  const auto r = invoke({"spectrum", "--potential", "x1^2", "--nu", "1", "--L", "5,10", "--h", "0.05",
                         "--shift-invert", "false", "--max-matvecs", "60", "--out", dir.string()});
  EXPECT_EQ(r.code, 1) << r.out << r.err;
  EXPECT_NE(r.out.find("FAIL lanczos-residuals"), std::string::npos) << r.out;
}

TEST(Cli, EnvironmentSetsDefaultOutput) {
  const fs::path dir = fresh_dir("env");
  ::setenv("SPECLAB_OUT", dir.string().c_str(), 1);
  const auto r = invoke({"inequalities", "--trials", "3", "--dim", "3"});
  ::unsetenv("SPECLAB_OUT");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir / "inequalities-summary.csv"));
}
