#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include "json.hpp"

using nlohmann::json;

namespace {

struct CliRun {
  int status;
  std::string out;
};

CliRun cli(const std::string& args) {
  std::string cmd = std::string(SCHREIER_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

TEST(Cli, Member) {
  EXPECT_EQ(cli("member --family A:w --set '{3,5,9}'").out, "true\n");
  EXPECT_EQ(cli("member --family A:w --set '{3,5,9}'").status, 0);
  CliRun no = cli("member --family A:w --set '{1,2}'");
  EXPECT_EQ(no.out, "false\n");
  EXPECT_EQ(no.status, 1);
  EXPECT_EQ(cli("member --family A:w --set '{2,3,4}' --star").status, 1);
  EXPECT_EQ(cli("member --family exL --set '{2,9}' --down").status, 0);
}

TEST(Cli, Fundseq) {
  EXPECT_EQ(cli("fundseq --ordinal w^2 --at 3").out, "w*2 + 2\n");
  EXPECT_EQ(cli("fundseq --ordinal w --upto 3").out, "1 0\n2 1\n3 2\n");
  EXPECT_EQ(cli("fundseq --ordinal w+1 --at 3").status, 2);
}

TEST(Cli, Ord) {
  EXPECT_EQ(cli("ord --ordinal 'w^2*3 + w*2' --op add --with w^2").out, "w^2*4\n");
  EXPECT_EQ(cli("ord --ordinal w*2 --op compare --with w+5").out, "greater\n");
  EXPECT_EQ(cli("ord --ordinal w+3 --op classify").out, "successor w + 2\n");
  EXPECT_EQ(cli("ord --ordinal w --op times --times 2").out, "w*2\n");
}

TEST(Cli, EnumAndSection) {
  EXPECT_EQ(cli("enum --family A:w --window 1..4").out, "{1}\n{2,3}\n{2,4}\n");
  json j = json::parse(cli("--json enum --family B:1 --window 1..5").out);
  EXPECT_EQ(j["members"].size(), 1u + 3u + 1u);  // {1}, {2,x} for x in 3..5, {3,4,5}
  EXPECT_EQ(j["window"]["hi"], 5);
  EXPECT_EQ(cli("section --family A:w --at 3 --window 4..6").out, "{4,5}\n{4,6}\n{5,6}\n");
}

TEST(Cli, Canon) {
  json j = json::parse(cli("canon --family A:w --set '{2,3,4,5,6}' --json").out);
  EXPECT_EQ(j["blocks"], json::parse("[[2,3]]"));
  EXPECT_EQ(j["tail"], json::parse("[4,5,6]"));
  EXPECT_EQ(j["type"], 1);
  EXPECT_EQ(cli("canon --family A:w --set '{2,3,4,5,6}'").out, "type 1: {2,3} | tail {4,5,6}\n");
}

TEST(Cli, RankAndIndex) {
  EXPECT_EQ(cli("rank --family A:w --set '{3}'").out, "2\n");
  EXPECT_EQ(cli("index --family-closure A:w").out, "w + 1\n");
  EXPECT_EQ(cli("index --family-closure A:3 --brute --window 1..10").out, "4 (brute force: 4)\n");
  json t = json::parse(cli("--json rank --family A:2 --down --brute --window 1..4").out);
  EXPECT_EQ(t["rank"]["{}"], 2);
  EXPECT_EQ(t["index"], 3);
}

TEST(Cli, Searches) {
  CliRun h = cli("homogenize --family A:2 --coloring parity-sum --window 1..20 --target 4");
  EXPECT_EQ(h.status, 0);
  EXPECT_NE(h.out.find("L={1,3,5,7} color=1"), std::string::npos) << h.out;
  EXPECT_EQ(cli("homogenize --family A:2 --coloring hash --seed 3 --window 1..18 --target 4").status, 0);
  CliRun d = cli("dichotomy --hereditary F:1 --family exL --window 1..20 --json");
  EXPECT_EQ(json::parse(d.out)[0]["kind"], "DichotomyBranchB");
  EXPECT_EQ(cli("chain --hereditary down:A:3 --window 1..20 --depth 5").status, 1);
  CliRun t = cli("transfer --xi 1 --window 1..20 --json");
  EXPECT_EQ(json::parse(t.out)["witness"].size(), 18u);
  EXPECT_EQ(cli("separate --xi1 2 --xi2 w --window 1..20 --target 16").status, 0);
  EXPECT_EQ(cli("sperner --family ex112 --window 1..25 --target 6").status, 0);
}

TEST(Cli, VerifyRoundTrip) {
  std::string cert = cli("--json homogenize --family A:2 --coloring parity-sum --window 1..12 --target 4").out;
  std::string path = ::testing::TempDir() + "cert.json";
  FILE* f = std::fopen(path.c_str(), "w");
  std::fputs(cert.c_str(), f);
  std::fclose(f);
  EXPECT_EQ(cli("verify " + path).status, 0);
  json j = json::parse(cert);
  j["witness"] = json::parse("[1,2,3,4]");
  f = std::fopen(path.c_str(), "w");
  std::fputs(j.dump().c_str(), f);
  std::fclose(f);
  CliRun bad = cli("verify " + path);
  EXPECT_EQ(bad.status, 1);
  EXPECT_EQ(bad.out.rfind("invalid", 0), 0u) << bad.out;
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(cli("").status, 2);
  EXPECT_EQ(cli("frobnicate").status, 2);
  EXPECT_EQ(cli("member --family A:w").status, 2);
  EXPECT_EQ(cli("member --family Q:w --set '{1}'").status, 2);
  EXPECT_EQ(cli("member --family A:w --set '{3,1}'").status, 2);
  EXPECT_EQ(cli("--scheme wainer member --family A:w --set '{1}'").status, 2);
  EXPECT_EQ(cli("--help").status, 0);
}

TEST(Cli, CheckSubset) {
  CliRun r = cli("check --criteria 4,9");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("PASS  criterion 4"), std::string::npos);
  EXPECT_NE(r.out.find("PASS  criterion 9"), std::string::npos);
}

}  // namespace
