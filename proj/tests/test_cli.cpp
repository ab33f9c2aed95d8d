// Copyright 2026 The lenswrt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Runs the lenswrt binary and checks output and exit codes.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "lenswrt/serialization.hpp"

#ifndef LENSWRT_CLI
#error "LENSWRT_CLI must name the lenswrt executable"
#endif

namespace lenswrt {
namespace {

struct CliRun {
  int code;
  std::string out;
};

CliRun run(const std::string& args) {
  const std::string cmd = std::string(LENSWRT_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string temp_path(const std::string& name) {
  return ::testing::TempDir() + "lenswrt_" + name;
}

TEST(Cli, GaussJson) {
  const CliRun r = run("--format json gauss 2 1 1");
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(cyclotomic_from_json(j.at("exact")), CyclotomicNumber(2));
  EXPECT_NEAR(j.at("re").get<double>(), 2.0, 1e-15);
}

TEST(Cli, DedekindAndPhi) {
  CliRun r = run("--format json dedekind 9 4");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(Rational(Json::parse(r.out).at("s").get<std::string>()), dedekind_sum(4, 9));
  r = run("--format json phi 9 4");
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j.at("phi"), rademacher_phi(9, 4));
  EXPECT_TRUE(j.at("identity_holds").get<bool>());
}

TEST(Cli, FPolyMatchesLibrary) {
  const CliRun r = run("--format json fpoly 7 3 2 4");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(fpoly_from_json(Json::parse(r.out)), f_poly(LensSpace::make(7, 3), 2, 4));
}

TEST(Cli, WrtCsvHasOracleColumns) {
  const CliRun r = run("--format csv wrt 5 2 --c 1 --r-min 2 --r-max 9");
  ASSERT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "r,re,im,oracle_re,oracle_im,abs_diff");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    const double diff = std::stod(line.substr(line.rfind(',') + 1));
    EXPECT_LT(diff, 1e-12);
  }
  EXPECT_EQ(rows, 8);
}

TEST(Cli, WrtWithSkeinFileAndPrecision) {
  const std::string path = temp_path("skein.json");
  std::ofstream(path) << skein_to_json(SkeinElement::meridian(7, 2) + SkeinElement::meridian(7, 0)).dump();
  const CliRun r = run("--format json --precision 200 wrt 7 3 --skein " + path + " --r-max 6");
  ASSERT_EQ(r.code, 0);
  for (const auto& v : Json::parse(r.out).at("values")) EXPECT_LT(v.at("abs_diff").get<double>(), 1e-30);
}

TEST(Cli, RankKernelClassify) {
  CliRun r = run("rank 9 4");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "4\n");
  r = run("--format json kernel 9 1");
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  ASSERT_EQ(j.at("dimension"), 1);
  const auto v = skein_z_from_json(j.at("basis")[0]);
  EXPECT_EQ(v.coeffs, kernel(LensSpace::make(9, 1))[0]);
  EXPECT_FALSE(j.at("basis")[0].at("in_lambda_image").get<bool>());
  r = run("classify 25");
  EXPECT_EQ(r.out, "NonDetermining\n");
}

TEST(Cli, RecoverFromSamplesFile) {
  const LensSpace L = LensSpace::make(7, 2);
  APoly a(Variable::A);
  a.add_term(1, 2);
  a.add_term(-1, -1);
  const SkeinElement J = SkeinElement::meridian(7, 1).scaled(a) + SkeinElement::meridian(7, 3);
  std::vector<KPoly> F;
  for (int64_t k = 0; k < 7; ++k) F.push_back(f_link(L, J, k));
  const std::string path = temp_path("samples.json");
  std::ofstream(path) << fpolys_to_json(7, 2, F).dump();
  const CliRun r = run("--format json recover 7 2 " + path);
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_TRUE(j.at("polynomial").get<bool>());
  EXPECT_EQ(skein_from_json(j.at("skein")), J);
}

TEST(Cli, ExitCodes) {
  CliRun r = run("--format json rank 6 4");
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(Json::parse(r.out).at("error"), "NotCoprime");
  r = run("--format json wrt 5 2 --c 1 --r-min 1");
  EXPECT_EQ(r.code, 2);
  r = run("--format json recover 9 2 /nonexistent.json");
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(Json::parse(r.out).at("error"), "FileNotFound");
  r = run("bogus");
  EXPECT_EQ(r.code, 2);
  r = run("--format xml rank 5 2");
  EXPECT_EQ(r.code, 2);

  // a rank-deficient system is a computation error
  const LensSpace L = LensSpace::make(9, 2);
  std::vector<KPoly> F;
  for (int64_t k = 0; k < 9; ++k) F.push_back(f_link(L, SkeinElement::meridian(9, 1), k));
  const std::string path = temp_path("deficient.json");
  std::ofstream(path) << fpolys_to_json(9, 2, F).dump();
  r = run("--format json recover 9 2 " + path);
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(Json::parse(r.out).at("error"), "RankDeficient");
}

TEST(Cli, DocumentedExamples) {
  EXPECT_EQ(run("gauss 2 1 1").out.substr(0, 2), "2\n");
  EXPECT_EQ(run("gauss 5 0 3").out.substr(0, 2), "0\n");
  const Json g = Json::parse(run("--format json gauss 5 1 0").out);
  EXPECT_NEAR(g.at("abs2").get<double>(), 5.0, 1e-10);
  EXPECT_TRUE(Json::parse(run("--format json fpoly 4 1 1 1").out).at("body").empty());
  EXPECT_FALSE(Json::parse(run("--format json fpoly 9 1 0 0").out).at("body").empty());
  EXPECT_EQ(run("rank 9 1").out, "4\n");
  EXPECT_EQ(run("classify 14").out, "Determining\n");

  const Json vanish = Json::parse(run("--format json wrt 4 1 --c 1 --r-min 2 --r-max 20").out);
  for (const auto& v : vanish.at("values")) {
    EXPECT_LT(std::hypot(v.at("re").get<double>(), v.at("im").get<double>()), 1e-10);
  }
  const Json w = Json::parse(run("--format json wrt 5 2 --c 0 --r-min 2 --r-max 30").out);
  EXPECT_EQ(w.at("values").size(), 29u);
  for (const auto& v : w.at("values")) EXPECT_LT(v.at("abs_diff").get<double>(), 1e-9);
}

// The kernel vector of L(9,1), fed back as a skein file, has zero invariants.
TEST(Cli, KernelVectorAsSkeinFile) {
  const CliRun k = run("--format json kernel 9 1");
  ASSERT_EQ(k.code, 0);
  const std::string path = temp_path("kernel91.json");
  std::ofstream(path) << Json::parse(k.out).at("basis")[0].dump();
  const CliRun r = run("--format json wrt 9 1 --skein " + path + " --r-min 2 --r-max 30");
  ASSERT_EQ(r.code, 0);
  for (const auto& v : Json::parse(r.out).at("values"))
    EXPECT_LT(std::hypot(v.at("re").get<double>(), v.at("im").get<double>()), 1e-10);
}

TEST(Cli, JsonIsByteIdenticalAcrossRuns) {
  for (const char* args : {"--format json kernel 9 4", "--format json fpoly 11 3 2 7",
                           "--format json wrt 7 3 --c 2 --r-max 12"})
    EXPECT_EQ(run(args).out, run(args).out) << args;
}

TEST(Cli, OutputFile) {
  const std::string path = temp_path("out.csv");
  const CliRun r = run("--format csv --output " + path + " classify 14");
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_EQ(content, "p,class\n14,Determining\n");
}

}  // namespace
}  // namespace lenswrt
