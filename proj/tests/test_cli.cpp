#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "cli_runner.hpp"

namespace fs = std::filesystem;

namespace {

fs::path scratch() {
  const fs::path d = fs::temp_directory_path() / "evoalg_cli_test";
  fs::create_directories(d);
  return d;
}

std::string write_tmp(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p, std::ios::binary) << text;
  return p.string();
}

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST(CliClassify, ScaledE4) {
  const auto r = cli::run("classify " + cli::source("data/matrices/e4_scaled.txt"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "E4\n");
}

TEST(CliClassify, ZeroMatrix) {
  const auto r = cli::run("classify " + cli::source("data/matrices/zero.txt") + " --field complex");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "E0\n");
}

TEST(CliClassify, CanonicalE5KeepsParameters) {
  const auto r = cli::run("classify " + cli::source("data/matrices/e5_canonical.txt"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "E5(0.1, 0.2)\n");
}

TEST(CliClassify, InputErrors) {
  EXPECT_EQ(cli::run("classify " + write_tmp("bad.txt", "2\n1 0\n0 zz\n")).code, 1);
  EXPECT_EQ(cli::run("classify " + write_tmp("three.txt", "3\n1 0 0\n0 1 0\n0 0 1\n")).code, 1);
  EXPECT_EQ(cli::run("classify /nonexistent/file").code, 1);
  EXPECT_EQ(cli::run("classify " + write_tmp("cplx.txt", "2\n1+1i 0\n0 1\n") + " --field real").code, 1);
  EXPECT_EQ(cli::run("classify").code, 1);
  EXPECT_EQ(cli::run("frobnicate").code, 1);
}

TEST(CliCea, M1Passes) {
  const auto r = cli::run("cea verify " + cli::source("data/cea/m1_exp.json"));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("samples: 1000\n"), std::string::npos);
  EXPECT_NE(r.out.find("result: pass\n"), std::string::npos);
}

TEST(CliCea, M0PassesWithZeroViolation) {
  const auto r = cli::run("cea verify " + cli::source("data/cea/m0.json"));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("max_violation: 0\n"), std::string::npos);
}

TEST(CliCea, ThresholdFamilyReportsFailure) {
  EXPECT_EQ(cli::run("cea verify " + cli::source("data/cea/m5_threshold.json")).code, 3);
}

TEST(CliCea, FlagsOverrideConfig) {
  const auto r = cli::run("cea verify " + cli::source("data/cea/m1_exp.json") + " --samples 7 --seed 3");
  EXPECT_NE(r.out.find("samples: 7\n"), std::string::npos);
  EXPECT_NE(r.out.find("seed: 3\n"), std::string::npos);
}

TEST(CliCea, ConfigErrors) {
  EXPECT_EQ(cli::run("cea verify " + write_tmp("v2.json", R"({"schema_version": 2, "family": "M0"})")).code, 1);
  EXPECT_EQ(cli::run("cea verify " + write_tmp("m9.json", R"({"schema_version": 1, "family": "M9"})")).code, 1);
  EXPECT_EQ(cli::run("cea verify " + write_tmp("miss.json", R"({"schema_version": 1, "family": "M1",
      "functions": {"rho": "s"}})")).code, 1);
  EXPECT_EQ(cli::run("cea verify " + write_tmp("expr.json", R"({"schema_version": 1, "family": "M1",
      "functions": {"rho": "s +", "phi": "1"}})")).code, 1);
  EXPECT_EQ(cli::run("cea verify " + write_tmp("typo.json", R"({"schema_version": 1, "family": "M0",
      "sampels": 3})")).code, 1);
  EXPECT_EQ(cli::run("cea verify " + write_tmp("neg.json", R"({"schema_version": 1, "family": "M5",
      "functions": {"Phi": "1"}, "thresholds": {"C": -1}})")).code, 1);
  EXPECT_EQ(cli::run("cea verify " + write_tmp("json.json", "{")).code, 1);
  // log of a negative argument everywhere in the sampling range
  EXPECT_EQ(cli::run("cea verify " + write_tmp("dom.json", R"j({"schema_version": 1, "family": "M1",
      "functions": {"rho": "1", "phi": "log(s-20)"}})j")).code, 1);
}

TEST(CliCea, DiagramWritesCsvAndSvg) {
  const std::string prefix = (scratch() / "m5").string();
  const auto r = cli::run("cea diagram " + cli::source("data/cea/m5_threshold.json") + " --out " + prefix);
  ASSERT_EQ(r.code, 0);
  const std::string csv = cli::slurp(prefix + ".csv");
  const std::string svg = cli::slurp(prefix + ".svg");
  EXPECT_EQ(count_lines(csv), 64u * 64u + 1);
  EXPECT_EQ(csv.rfind("s,t,class_tag\n", 0), 0u);
  // Cell centered at (1.03125, 3.03125): t > 2 band carries the E4 color.
  EXPECT_NE(svg.find("fill=\"#d62728\"><title>1.03125,3.03125 E4</title>"), std::string::npos);
  EXPECT_NE(svg.find("<title>1.03125,1.53125 E0</title>"), std::string::npos);
  EXPECT_NE(svg.find("<title>3.03125,1.03125 out_of_domain</title>"), std::string::npos);
}

TEST(CliRbo, VerifyE2WeightOne) {
  const auto r = cli::run("rbo verify --algebra E2 --weight 1");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("6 families, 6 pass, 0 fail"), std::string::npos);
}

TEST(CliRbo, VerifyWritesReportCsv) {
  const std::string out = (scratch() / "e3.csv").string();
  ASSERT_EQ(cli::run("rbo verify --algebra E3 --weight 0 --samples 20 --out " + out).code, 0);
  const std::string csv = cli::slurp(out);
  EXPECT_EQ(csv.rfind("family,samples,worst_residual,worst_relative,pass\n", 0), 0u);
  EXPECT_EQ(count_lines(csv), 3u);
}

TEST(CliRbo, SearchZeroAlgebra) {
  const auto r = cli::run("rbo search --algebra E0 --weight 0 --starts 10");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(count_lines(r.out), 11u);
  EXPECT_EQ(r.out.rfind("index,start,hits,residual,family,distance,a,b,c,d\n", 0), 0u);
}

TEST(CliRbo, SearchFromMatrixFile) {
  const auto a = cli::run("rbo search --matrix " + cli::source("data/matrices/e6_zero.txt") +
                          " --weight 1 --starts 50");
  const auto b = cli::run("rbo search --algebra E6 --x 0 --weight 1 --starts 50");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(CliRbo, SystemsE1WeightZero) {
  const auto r = cli::run("rbo systems --algebra E1 --weight 0");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "a^2 = 0\n2*a*b = 0\nb*c = 0\nc^2 = 0\n");
}

TEST(CliRbo, SystemsSymbolicAndNumeric) {
  const auto sym = cli::run("rbo systems --algebra E6 --weight 1");
  EXPECT_EQ(sym.code, 0);
  EXPECT_NE(sym.out.find("x"), std::string::npos);
  const auto num = cli::run("rbo systems --algebra E6 --x 0 --weight 1");
  EXPECT_EQ(num.out.find("x"), std::string::npos);
}

TEST(CliRbo, CatalogAndExclusions) {
  const auto c = cli::run("rbo catalog --algebra E6 --weight 1");
  EXPECT_EQ(c.code, 0);
  EXPECT_NE(c.out.find("[w1.E6_0.m7]"), std::string::npos);
  const auto e = cli::run("rbo exclusions");
  EXPECT_EQ(e.code, 0);
  EXPECT_EQ(e.out.find("OPEN"), std::string::npos);
}

TEST(CliRbo, InputErrors) {
  EXPECT_EQ(cli::run("rbo verify --algebra E9").code, 1);
  EXPECT_EQ(cli::run("rbo verify --algebra E0").code, 1);
  EXPECT_EQ(cli::run("rbo verify --weight 2").code, 1);
  EXPECT_EQ(cli::run("rbo search --weight 1").code, 1);
  EXPECT_EQ(cli::run("rbo search --algebra E5 --x 1 --y 1").code, 1);
  EXPECT_EQ(cli::run("rbo search --algebra E5 --x abc").code, 1);
  EXPECT_EQ(cli::run("rbo systems --algebra E7").code, 1);
}

// Same seed, same bytes, regardless of the job count.
TEST(CliDeterminism, CsvOutputsAreByteIdentical) {
  const auto s1 = cli::run("rbo search --algebra E2 --weight 1 --starts 80 --seed 4 --jobs 1");
  const auto s2 = cli::run("rbo search --algebra E2 --weight 1 --starts 80 --seed 4 --jobs 3");
  EXPECT_EQ(s1.out, s2.out);
  const std::string p1 = (scratch() / "det1").string(), p2 = (scratch() / "det2").string();
  cli::run("cea diagram " + cli::source("data/cea/m8_sign_change.json") + " --out " + p1 + " --jobs 1");
  cli::run("cea diagram " + cli::source("data/cea/m8_sign_change.json") + " --out " + p2 + " --jobs 4");
  EXPECT_EQ(cli::slurp(p1 + ".csv"), cli::slurp(p2 + ".csv"));
  EXPECT_EQ(cli::slurp(p1 + ".svg"), cli::slurp(p2 + ".svg"));
}
