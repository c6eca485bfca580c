// End-to-end checks of the bdmix binary: exit-code contract, output shapes,
// determinism.

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "bdmix/io.hpp"
#include "testutil.hpp"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(BDMIX_CLI_PATH) + " " + args + " 2>/dev/null";
  RunResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return res;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    res.out.append(buf.data(), got);
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string write_temp(const std::string& name, const std::string& body) {
  const std::string path = std::string(::testing::TempDir()) + name;
  std::ofstream(path) << body;
  return path;
}

std::string srw2_path() {
  return write_temp("srw2.json",
                    R"({"n":2,"p":[0.5,0.5,0.0],"q":[0.0,0.5,0.5]})");
}

}  // namespace

TEST(Cli, AnalyzeReportsBoundsAndSpectrum) {
  const auto res = run_cli("analyze --chain " + srw2_path());
  ASSERT_EQ(res.exit_code, 0);
  const auto j = nlohmann::json::parse(res.out);
  EXPECT_NEAR(j["spectrum"]["gap"].get<double>(), 0.5, 1e-12);
  EXPECT_NEAR(j["bounds"]["t"].get<double>(), 2.0, 1e-12);
  EXPECT_NEAR(j["bounds"]["ell"].get<double>(), 2.0, 1e-12);
}

TEST(Cli, AnalyzeIsDeterministic) {
  const auto path = srw2_path();
  const auto a = run_cli("analyze --chain " + path);
  const auto b = run_cli("analyze --chain " + path);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, MalformedJsonExitsOne) {
  const auto path = write_temp("broken.json", "{\"n\": 2, \"p\": [");
  EXPECT_EQ(run_cli("analyze --chain " + path).exit_code, 1);
}

TEST(Cli, ReducibleChainExitsOne) {
  const auto path = write_temp(
      "reducible.json", R"({"n":2,"p":[0.5,0.0,0.0],"q":[0.0,0.5,0.5]})");
  EXPECT_EQ(run_cli("analyze --chain " + path).exit_code, 1);
}

TEST(Cli, EigsListsSpectrum) {
  const auto res = run_cli("eigs --chain " + srw2_path());
  ASSERT_EQ(res.exit_code, 0);
  const auto j = nlohmann::json::parse(res.out);
  ASSERT_EQ(j["eigs"].size(), 2u);
  EXPECT_NEAR(j["eigs"][0].get<double>(), 0.5, 1e-12);
  EXPECT_NEAR(j["eigs"][1].get<double>(), 1.5, 1e-12);
}

TEST(Cli, TvCurveEmitsMonotoneCsv) {
  const auto res =
      run_cli("tv-curve --chain " + srw2_path() +
              " --mode discrete --times 0,1,2,4,8");
  ASSERT_EQ(res.exit_code, 0);
  const auto prof = bdmix::tv_profile_from_csv(res.out);
  ASSERT_EQ(prof.times.size(), 5u);
  EXPECT_NEAR(prof.values[0], 2.0 / 3.0, 1e-12);  // 1 - min pi at t = 0
  for (std::size_t i = 0; i + 1 < prof.values.size(); ++i)
    EXPECT_LE(prof.values[i + 1], prof.values[i] + 1e-12);
}

TEST(Cli, BoundsCheckPasses) {
  EXPECT_EQ(run_cli("bounds-check --chain " + srw2_path() +
                    " --eps 0.1 --mode continuous")
                .exit_code,
            0);
  EXPECT_EQ(run_cli("bounds-check --chain " + srw2_path() +
                    " --eps 0.25 --mode lazy:0.5")
                .exit_code,
            0);
}

TEST(Cli, ScanSimpleWalkIsBoundedVerdict) {
  const auto family = write_temp(
      "srw_family.json", R"({"kind":"simple_walk","n":1,"params":{}})");
  const auto res = run_cli("scan --family " + family +
                           " --indices 8,16,32,64 --eps 0.1 --json");
  ASSERT_EQ(res.exit_code, 0);
  const auto j = nlohmann::json::parse(res.out);
  EXPECT_EQ(j["verdicts"]["ratio_t_over_ell"]["verdict"], "bounded");
  EXPECT_EQ(j["verdicts"]["product_s_gap"]["verdict"], "bounded");
  EXPECT_EQ(j["rows"].size(), 4u);
}

TEST(Cli, ScanCsvRoundTrips) {
  const auto family = write_temp(
      "eh_family.json", R"({"kind":"ehrenfest","n":1,"params":{}})");
  const auto res = run_cli("scan --family " + family +
                           " --indices 4,8,16 --eps 0.1,0.25 --delta 0.5");
  ASSERT_EQ(res.exit_code, 0);
  const auto scan = bdmix::family_scan_from_csv(res.out);
  ASSERT_EQ(scan.rows.size(), 3u);
  EXPECT_EQ(scan.options.eps, (std::vector<double>{0.1, 0.25}));
  EXPECT_EQ(scan.options.delta, (std::vector<double>{0.5}));
  EXPECT_EQ(bdmix::to_csv(scan), res.out);
}

TEST(Cli, ScanEmptyIndicesExitsOne) {
  const auto family = write_temp(
      "srw_family2.json", R"({"kind":"simple_walk","n":1,"params":{}})");
  EXPECT_EQ(run_cli("scan --family " + family + " --indices '' --eps 0.1")
                .exit_code,
            1);
}

TEST(Cli, OversizeChainExitsThree) {
  // 2001 states exceeds the dense limit for profile computation
  nlohmann::json doc;
  const std::size_t n = 2400;
  std::vector<double> p(n + 1, 0.4), q(n + 1, 0.4);
  p[n] = 0.0;
  q[0] = 0.0;
  doc["n"] = n;
  doc["p"] = p;
  doc["q"] = q;
  const auto path = write_temp("big.json", doc.dump());
  EXPECT_EQ(run_cli("tv-curve --chain " + path +
                    " --mode discrete --times 1,2")
                .exit_code,
            3);
}
