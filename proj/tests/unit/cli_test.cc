#include <array>
#include <cstdio>
#include <sstream>
#include <sys/wait.h>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "essmart/common/io.h"
#include "test_support.h"

#ifdef ESSMART_CLI_PATH

namespace {

using essmart::testing::TempDir;

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

RunResult run(const std::string& args, const TempDir& dir) {
  const auto err_path = dir / "stderr.txt";
  const std::string cmd =
      std::string("'") + ESSMART_CLI_PATH + "' " + args + " 2>'" + err_path.string() + "'";
  RunResult r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = essmart::read_file(err_path);
  return r;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

TEST(Cli, EveryCommandHasHelp) {
  TempDir dir;
  for (const char* cmd : {"ingest", "synth", "train", "summarize", "evaluate", "benchmark", "mrmr",
                          "triage", "serve"}) {
    const auto r = run(std::string(cmd) + " --help", dir);
    EXPECT_EQ(r.code, 0) << cmd;
    EXPECT_NE(r.out.find("Usage"), std::string::npos) << cmd;
  }
}

TEST(Cli, ParseErrorsExitWithTwo) {
  TempDir dir;
  EXPECT_EQ(run("", dir).code, 2);
  EXPECT_EQ(run("frobnicate", dir).code, 2);
  EXPECT_EQ(run("summarize " + (dir / "missing.txt").string(), dir).code, 2);
  EXPECT_EQ(run("mrmr --corpus x --bins 1", dir).code, 2);
}

TEST(Cli, DataErrorsExitWithOneAndJsonOnStderr) {
  TempDir dir;
  essmart::write_file(dir / "bad.jsonl", "{bad\n");
  const auto r = run("ingest '" + (dir / "bad.jsonl").string() + "'", dir);
  EXPECT_EQ(r.code, 1);
  const auto j = nlohmann::json::parse(r.err);
  EXPECT_EQ(j.at("error").at("code"), "MalformedRecord");
}

TEST(Cli, SummarizePlainTextHonoursTheBudget) {
  TempDir dir;
  essmart::write_file(dir / "t.txt",
                      "One cat sat. Two dogs ran. Three birds flew. Four fish swam. Five cows ate.\n");
  const auto r = run("summarize '" + (dir / "t.txt").string() + "' --budget 3", dir);
  ASSERT_EQ(r.code, 0) << r.err;
  std::size_t lines = 0;
  for (const auto& line : lines_of(r.out)) lines += !line.empty() && line[0] != '#';
  EXPECT_EQ(lines, 3u);
}

TEST(Cli, IdenticalSummariesAgreePerfectly) {
  TempDir dir;
  const auto corpus = (dir / "r.jsonl").string();
  ASSERT_EQ(run("synth --requests 30 --out '" + corpus + "'", dir).code, 0);
  const auto a = run("summarize '" + corpus + "' --format json", dir);
  ASSERT_EQ(a.code, 0) << a.err;
  essmart::write_file(dir / "a.jsonl", a.out);
  essmart::write_file(dir / "b.jsonl", a.out);
  const auto e = run("evaluate --summaries '" + (dir / "a.jsonl").string() + "' --summaries '" +
                         (dir / "b.jsonl").string() + "' --format json",
                     dir);
  ASSERT_EQ(e.code, 0) << e.err;
  const auto j = nlohmann::json::parse(e.out);
  EXPECT_DOUBLE_EQ(j.at("matrix").at("f1")[0][1].get<double>(), 1.0);
  EXPECT_DOUBLE_EQ(j.at("matrix").at("f1")[1][0].get<double>(), 1.0);
}

TEST(Cli, TrainThenTriageEmitsDecisions) {
  TempDir dir;
  const auto corpus = (dir / "r.jsonl").string();
  const auto bundle = (dir / "bundle").string();
  ASSERT_EQ(run("synth --requests 80 --out '" + corpus + "'", dir).code, 0);
  const auto t = run("train --corpus '" + corpus + "' --out '" + bundle + "'", dir);
  ASSERT_EQ(t.code, 0) << t.err;
  const auto r = run("triage '" + corpus + "' --bundle '" + bundle + "' --format json", dir);
  ASSERT_EQ(r.code, 0) << r.err;
  std::size_t decisions = 0;
  for (const auto& line : lines_of(r.out)) {
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line);
    EXPECT_EQ(j.contains("ticket") && !j["ticket"].is_null(), j.at("escalate").get<bool>());
    ++decisions;
  }
  EXPECT_EQ(decisions, 80u);
}

}  // namespace

#endif
