#include <gtest/gtest.h>
#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <map>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "means_lab/means.hpp"

using json = nlohmann::json;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run(const std::string& args) {
  const std::string cmd = std::string(MEANS_LAB_CLI_PATH) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

json run_json(const std::string& args, int expected_code = 0) {
  const CliRun r = run("--format json " + args);
  EXPECT_EQ(r.code, expected_code) << args;
  return json::parse(r.out);
}

void expect_report_keys(const json& j) {
  for (const char* key : {"command", "seed", "verdicts", "worst_case"}) {
    EXPECT_TRUE(j.contains(key)) << key << " missing in " << j.dump();
  }
  EXPECT_TRUE(j.contains("grid_size") || j.contains("samples"));
  EXPECT_TRUE(j["verdicts"].is_array());
}

// Structural equality with numbers compared to relative 1e-14.
void expect_json_close(const json& got, const json& want, const std::string& path = "$") {
  if (want.is_number() && got.is_number()) {
    const double g = got.get<double>();
    const double w = want.get<double>();
    EXPECT_LE(std::abs(g - w), 1e-14 * std::max(1.0, std::abs(w))) << path;
    return;
  }
  ASSERT_EQ(got.type(), want.type()) << path;
  if (want.is_object()) {
    ASSERT_EQ(got.size(), want.size()) << path;
    for (auto it = want.begin(); it != want.end(); ++it) {
      ASSERT_TRUE(got.contains(it.key())) << path << "." << it.key();
      expect_json_close(got[it.key()], it.value(), path + "." + it.key());
    }
  } else if (want.is_array()) {
    ASSERT_EQ(got.size(), want.size()) << path;
    for (std::size_t i = 0; i < want.size(); ++i) {
      expect_json_close(got[i], want[i], path + "[" + std::to_string(i) + "]");
    }
  } else {
    EXPECT_EQ(got, want) << path;
  }
}

json golden(const std::string& name) {
  std::ifstream in(std::string(MEANS_LAB_GOLDEN_DIR) + "/" + name);
  EXPECT_TRUE(in.good()) << name;
  std::stringstream ss;
  ss << in.rdbuf();
  return json::parse(ss.str());
}

}  // namespace

TEST(CliEval, HarmonicGeometricQuadratic) {
  const json j = run_json("eval --means H,G,Q --pair 1,2");
  expect_report_keys(j);
  ASSERT_EQ(j["verdicts"].size(), 3u);
  const means_lab::PositivePair p{1, 2};
  EXPECT_EQ(j["verdicts"][0]["value"].get<double>(),
            means_lab::evaluate_mean(means_lab::MeanKind::harmonic(), p));
  EXPECT_NEAR(j["verdicts"][0]["value"].get<double>(), 4.0 / 3.0, 1e-15);
  EXPECT_NEAR(j["verdicts"][1]["value"].get<double>(), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(j["verdicts"][2]["value"].get<double>(), std::sqrt(2.5), 1e-15);
}

TEST(CliEval, Diagonal) {
  const json j = run_json("eval --means M --pair 3,3");
  EXPECT_EQ(j["verdicts"][0]["value"].get<double>(), 3.0);
}

TEST(CliEval, DomainAndUsageErrors) {
  EXPECT_EQ(run("eval --means M --pair 0,1").code, 2);
  EXPECT_EQ(run("eval --means M --pair -1,1").code, 2);
  EXPECT_EQ(run("eval --means X --pair 1,2").code, 2);
  EXPECT_EQ(run("eval --means M --pair 1").code, 2);
  EXPECT_EQ(run("eval --means 'L(nan)' --pair 1,2").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("").code, 2);
}

TEST(CliEval, GoldenAllMeans) {
  const json j = run_json("eval --means 'H,G,L,P,A,M,T,Q,C,L(2),L(0),L(-1)' --pair 1,2");
  expect_json_close(j, golden("eval_all_1_2.json"));
}

TEST(CliFormats, CsvHasHeaderRow) {
  const CliRun r = run("--format csv eval --means H,Q --pair 1,2");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "mean,value");
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 3);
}

TEST(CliFormats, TableIsAligned) {
  const CliRun r = run("--format table series HC --terms 5");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("StrictlyIncreasing"), std::string::npos);
  EXPECT_NE(r.out.find("5/12"), std::string::npos);
}

TEST(CliFormats, PipedOutputDefaultsToJson) {
  const CliRun r = run("eval --means A --pair 1,3");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out)["verdicts"][0]["value"].get<double>(), 2.0);
  EXPECT_EQ(run("--format xml eval --means A --pair 1,3").code, 2);
}

TEST(CliVerify, TheoremTwoHolds) {
  const json j = run_json("verify 1.2 --grid 100000");
  expect_report_keys(j);
  EXPECT_EQ(j["grid_size"], 100000);
  EXPECT_TRUE(j["all_hold"].get<bool>());
  EXPECT_GT(j["worst_case"]["min_margin"].get<double>(), 0.0);
}

TEST(CliVerify, ChainHolds) {
  const json j = run_json("verify chain --samples 100000 --seed 7");
  expect_report_keys(j);
  EXPECT_EQ(j["seed"], 7);
  EXPECT_EQ(j["samples"], 100000);
}

TEST(CliVerify, SubSharpLowerWeightFails) {
  const json j = run_json("verify 1.1 --weight-lower 0.2210 --grid 100000", 1);
  EXPECT_FALSE(j["all_hold"].get<bool>());
  EXPECT_LT(j["worst_case"]["min_margin"].get<double>(), 0.0);
  EXPECT_EQ(j["worst_case"]["id"], "1.1-lower");
}

TEST(CliVerify, CorpusReportsDisplayVerdict) {
  const json j = run_json("verify corpus --samples 2000 --seed 3");
  expect_report_keys(j);
  EXPECT_EQ(j["quad_arith_surviving_display"], 1);
  EXPECT_EQ(j["verdicts"].size(), 12u);
}

TEST(CliVerify, Errors) {
  EXPECT_EQ(run("verify 1.4").code, 2);
  EXPECT_EQ(run("verify 1.1 --grid 50").code, 2);
  EXPECT_EQ(run("verify 1.1 --weight-lower 1.5 --grid 1000").code, 2);
}

TEST(CliSharpness, Examples) {
  json j = run_json("sharpness 1.3 --side upper --epsilon 1e-3");
  expect_report_keys(j);
  EXPECT_TRUE(j["verdicts"][0]["violated"].get<bool>());
  EXPECT_LT(j["verdicts"][0]["witness_gap"].get<double>(), 0.2);
  EXPECT_EQ(j["verdicts"][0]["witness"].size(), 2u);

  j = run_json("sharpness 1.1 --side lower --epsilon 1e-3");
  EXPECT_LT(j["worst_case"]["gap"].get<double>(), 0.2);

  EXPECT_EQ(run("sharpness 1.1 --side lower --epsilon 0").code, 2);
  EXPECT_EQ(run("sharpness 1.1 --side middle").code, 2);
}

TEST(CliConstants, RowsAndRecovery) {
  const json j = run_json("constants");
  expect_report_keys(j);
  std::map<std::string, json> rows;
  for (const auto& v : j["verdicts"]) rows[v["name"].get<std::string>()] = v;
  EXPECT_NEAR(rows["alpha1"]["value"].get<double>(), 2.0 / 9.0, 1e-16);
  EXPECT_TRUE(rows["alpha1"]["match"].get<bool>());
  EXPECT_NEAR(rows["beta3"]["value"].get<double>(), 0.416666666666667, 1e-15);
  EXPECT_EQ(std::floor(rows["p0"]["value"].get<double>() * 1000) / 1000, 1.843);
  const CliRun table_p0 = run("--format table constants");
  EXPECT_NE(table_p0.out.find("1.843"), std::string::npos);

  const CliRun table = run("--format table constants");
  EXPECT_NE(table.out.find("0.222222222222222"), std::string::npos);
  EXPECT_NE(table.out.find("0.416666666666667"), std::string::npos);
}

TEST(CliSeries, Golden) {
  const json hq = run_json("series HQ --terms 50");
  expect_report_keys(hq);
  EXPECT_EQ(hq["verdicts"][0]["direction"], "StrictlyDecreasing");
  EXPECT_EQ(hq["verdicts"][0]["first_ratios"][0], "2/9");
  expect_json_close(hq, golden("series_hq_50.json"));
  const json hc = run_json("series HC --terms 50");
  EXPECT_EQ(hc["verdicts"][0]["first_ratios"][0], "5/12");
  expect_json_close(hc, golden("series_hc_50.json"));
  EXPECT_EQ(run("series HQ --terms 1").code, 2);
  EXPECT_EQ(run("series QQ").code, 2);
}
