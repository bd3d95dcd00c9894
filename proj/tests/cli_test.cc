#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "json.hpp"
#include "test_support.h"

namespace amrmeter {
namespace {

namespace fs = std::filesystem;

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string Slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path Scratch(const std::string& name) {
  const fs::path dir = fs::path(AMRMETER_SCRATCH) / "cli" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

RunResult RunCli(const std::string& args, const std::string& tag) {
  const fs::path dir = Scratch(tag);
  const std::string cmd = std::string("'") + AMRMETER_CLI + "' " + args + " > '" +
                          (dir / "stdout").string() + "' 2> '" + (dir / "stderr").string() +
                          "'";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = Slurp(dir / "stdout");
  r.err = Slurp(dir / "stderr");
  return r;
}

std::string Data(const std::string& name) { return "'" + testing::TestData(name) + "'"; }

TEST(Cli, ValidateToySuite) {
  const RunResult r = RunCli("validate --suite " + Data("toy_suite.jsonl"), "validate");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("cases\t9"), std::string::npos);
  EXPECT_NE(r.out.find("SICK\tNegation\t2\t3.6500"), std::string::npos) << r.out;
}

TEST(Cli, ValidateRejectsBadInput) {
  const RunResult bad = RunCli("validate --suite " + Data("bad_amr.jsonl"), "bad");
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("bad-1"), std::string::npos) << bad.err;
  EXPECT_EQ(RunCli("validate --suite " + Data("empty.jsonl"), "empty").code, 2);
  EXPECT_EQ(RunCli("validate", "nosuite").code, 2);
  EXPECT_EQ(RunCli("frobnicate", "unknown").code, 2);
}

TEST(Cli, ScoreWritesOneRecordPerMetricAndCase) {
  const std::string args = "score --suite " + Data("toy_suite.jsonl") +
                           " --metrics smatch,wlk --format jsonl --seed 3";
  const RunResult r = RunCli(args, "score1");
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  size_t n = 0;
  while (std::getline(in, line)) {
    const auto j = nlohmann::json::parse(line);
    EXPECT_TRUE(j.contains("metric"));
    EXPECT_TRUE(j["value"].is_number());
    ++n;
  }
  EXPECT_EQ(n, 18u);
  const RunResult again = RunCli(args + " --threads 3", "score2");
  EXPECT_EQ(again.out, r.out);
}

// The SICK Negation cases of the toy suite.
fs::path NegationSuite(const std::string& tag) {
  const fs::path path = Scratch(tag) / "suite.jsonl";
  std::ifstream src(testing::TestData("toy_suite.jsonl"));
  std::ofstream out(path);
  std::string line;
  while (std::getline(src, line)) {
    if (line.find("\"Negation\"") != std::string::npos && line.find("\"SICK\"") != std::string::npos)
      out << line << "\n";
  }
  return path;
}

TEST(Cli, BleuOnTwoCases) {
  const fs::path suite = NegationSuite("two_cases");
  const RunResult r = RunCli("score --suite '" + suite.string() + "' --metrics bleu --format jsonl",
                             "two_cases_run");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 2);
  EXPECT_NE(r.out.find("\"id\":\"sick-neg-1\""), std::string::npos) << r.out;
}

TEST(Cli, SinglePhenomenonGivesOneGroupAndOverall) {
  const fs::path suite = NegationSuite("single");
  const fs::path out = Scratch("single_out");
  const RunResult r = RunCli("evaluate --suite '" + suite.string() +
                                 "' --metrics bleu,smatch --format md --out '" + out.string() + "'",
                             "single_run");
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string md = Slurp(out / "report.md");
  EXPECT_NE(md.find("| metric | Negation | Overall |"), std::string::npos) << md;
  EXPECT_NE(md.find("| smatch | "), std::string::npos);
  EXPECT_NE(md.find(" ± "), std::string::npos);
}

TEST(Cli, MissingResourceNamesFlag) {
  const RunResult r = RunCli("score --suite " + Data("toy_suite.jsonl") +
                              " --metrics bleu,graco_contextual,wwlk",
                          "missing");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("graco_contextual requires --ctx-emb"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("wwlk requires --static-emb"), std::string::npos) << r.err;
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, UnknownMetricAndFormat) {
  EXPECT_EQ(RunCli("score --suite " + Data("toy_suite.jsonl") + " --metrics rouge", "m").code, 2);
  EXPECT_EQ(RunCli("score --suite " + Data("toy_suite.jsonl") + " --metrics bleu --format xml",
                "f")
                .code,
            2);
}

TEST(Cli, EvaluateWritesReports) {
  const fs::path out = Scratch("evaluate_out");
  const RunResult r =
      RunCli("evaluate --suite " + Data("toy_suite.jsonl") + " --metrics smatch,s2match,chrf++," +
              "graco_static_reduced,graco_contextual,bertscore --static-emb " +
              Data("toy_glove.txt") + " --ctx-emb " + Data("toy_ctx.jsonl") +
              " --format md,tsv,jsonl --out '" + out.string() + "'",
          "evaluate");
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string md = Slurp(out / "report.md");
  EXPECT_NE(md.find(" ± "), std::string::npos);
  EXPECT_NE(md.find("| graco_contextual |"), std::string::npos);
  EXPECT_TRUE(fs::exists(out / "report.tsv"));
  EXPECT_TRUE(fs::exists(out / "report.jsonl"));
  EXPECT_TRUE(fs::exists(out / "scores.jsonl"));
  EXPECT_TRUE(fs::exists(out / "phenomena" / "SICK_Hyponymy.txt"));
  EXPECT_TRUE(fs::exists(out / "phenomena" / "STS_Aspect.txt"));
}

TEST(Cli, EvaluateOptions) {
  const fs::path out = Scratch("evaluate_tau");
  const RunResult bad = RunCli("evaluate --suite " + Data("toy_suite.jsonl") +
                                " --metrics bleu --tau-rule median --out '" + out.string() + "'",
                            "tau_bad");
  EXPECT_EQ(bad.code, 2);
  EXPECT_EQ(RunCli("evaluate --suite " + Data("toy_suite.jsonl") + " --metrics bleu", "noout").code,
            2);
  const RunResult ok = RunCli("evaluate --suite " + Data("toy_suite.jsonl") +
                               " --metrics bleu --tau-rule zero --format jsonl --out '" +
                               out.string() + "'",
                           "tau_ok");
  ASSERT_EQ(ok.code, 0) << ok.err;
  std::ifstream in(out / "report.jsonl");
  std::string first;
  std::getline(in, first);
  EXPECT_EQ(nlohmann::json::parse(first)["tau_rule"], "zero");
}

TEST(Cli, PartialFailureExitsOne) {
  // The contextual store lacks one case, so that case fails alone.
  const fs::path dir = Scratch("partial");
  std::ofstream store(dir / "store.jsonl");
  std::ifstream src(testing::TestData("toy_ctx.jsonl"));
  std::string line;
  while (std::getline(src, line)) {
    if (line.find("\"sick-hyp-1\"") == std::string::npos) store << line << "\n";
  }
  store.close();
  const RunResult r = RunCli("score --suite " + Data("toy_suite.jsonl") +
                              " --metrics bertscore,bleu --ctx-emb '" +
                              (dir / "store.jsonl").string() + "'",
                          "partial_run");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("bertscore failed on 1 case"), std::string::npos) << r.err;
  EXPECT_NE(r.out.find("bleu\tsick-hyp-1"), std::string::npos);
}

}  // namespace
}  // namespace amrmeter
