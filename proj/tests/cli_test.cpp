#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run fdsc(const std::string& args) {
  const std::string cmd = std::string(FDSC_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

nlohmann::json parse(const Run& r) { return nlohmann::json::parse(r.out); }

std::string temp_file(const std::string& name, const std::string& content) {
  const std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST(Cli, GenEdgesN4) {
  const auto r = fdsc("gen --d 2 --format edges");
  ASSERT_EQ(r.code, 0);
  std::size_t lines = 0;
  for (char c : r.out) lines += c == '\n';
  EXPECT_EQ(lines, 33U);  // header + 32 edges
}

TEST(Cli, GenDotN2) {
  const auto r = fdsc("gen --d 1 --format dot");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("graph fdsc_n2 {"), std::string::npos);
  EXPECT_NE(r.out.find("\"11\";"), std::string::npos);
}

TEST(Cli, GenToFileAndDsc) {
  const std::string path = ::testing::TempDir() + "dsc4.txt";
  ASSERT_EQ(fdsc("gen --d 2 --variant dsc --format edges --out " + path).code, 0);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "# fdsc d=2 n=4 variant=dsc");
}

TEST(Cli, ExitCodesForCapsAndUsage) {
  EXPECT_EQ(fdsc("gen --d 5 --format edges").code, 3);
  EXPECT_EQ(fdsc("gen --d 2 --format png").code, 2);
  EXPECT_EQ(fdsc("gen --d 9").code, 2);
  EXPECT_EQ(fdsc("gen").code, 2);
  EXPECT_EQ(fdsc("frobnicate").code, 2);
  EXPECT_EQ(fdsc("--help").code, 0);
  EXPECT_EQ(fdsc("cut --d 1 --pattern k11").code, 2);
  EXPECT_EQ(fdsc("cut --d 5 --pattern k11 --verify").code, 3);
  EXPECT_EQ(fdsc("oracle --d 5 --m 1").code, 3);
}

TEST(Cli, CutK1mVerifyN4) {
  const auto r = fdsc("cut --d 2 --pattern k1m --m 2 --verify");
  ASSERT_EQ(r.code, 0);
  const auto j = parse(r);
  EXPECT_EQ(j["size"], 2);
  EXPECT_TRUE(j["report"]["is_cut"].get<bool>());
  EXPECT_EQ(j["report"]["isolated"], "1100");
  EXPECT_EQ(j["config"]["module"], "00");
  EXPECT_EQ(j["tool"]["name"], "fdsc");
}

TEST(Cli, CutK11VerifyN8) {
  const auto r = fdsc("cut --d 3 --pattern k11 --u 00000000 --verify");
  ASSERT_EQ(r.code, 0);
  const auto j = parse(r);
  EXPECT_EQ(j["size"], 4);
  EXPECT_TRUE(j["report"]["is_cut"].get<bool>());
}

TEST(Cli, CutK1mLabelOnlyAtN64) {
  const auto r = fdsc("cut --d 6 --pattern k1m --m 3");
  ASSERT_EQ(r.code, 0);
  const auto j = parse(r);
  EXPECT_EQ(j["size"], 4);
  EXPECT_TRUE(j["valid"].get<bool>());
  EXPECT_FALSE(j.contains("report"));
}

TEST(Cli, CutRejectsUnbalancedModule) {
  EXPECT_EQ(fdsc("cut --d 3 --pattern k1m --m 2 --module 0001").code, 2);
  EXPECT_EQ(fdsc("cut --d 3 --pattern k1m --m 2 --module 01").code, 2);
  EXPECT_EQ(fdsc("cut --d 3 --pattern k1m --m 9").code, 2);
  EXPECT_EQ(fdsc("cut --d 3 --pattern k1m --m 2 --module 0110 --verify").code, 0);
}

TEST(Cli, OracleMatchesKnownValue) {
  const auto r = fdsc("oracle --d 2 --m 2 --mode structure --budget 3");
  ASSERT_EQ(r.code, 0);
  const auto j = parse(r);
  EXPECT_EQ(j["value"], 2);
  EXPECT_EQ(j["candidates"], 64);
  EXPECT_TRUE(j["consistent"].get<bool>());
  EXPECT_EQ(j["config"]["budget"], 3);
  EXPECT_EQ(j["config"]["seed"], 0);
}

TEST(Cli, OracleIsDeterministicAcrossThreads) {
  auto strip = [](nlohmann::json j) {
    j.erase("elapsed_ms");
    j["config"].erase("threads");
    return j.dump();
  };
  const auto a = fdsc("oracle --d 2 --m 3 --mode substructure --budget 2");
  const auto b = fdsc("oracle --d 2 --m 3 --mode substructure --budget 2 --threads 3");
  ASSERT_EQ(a.code, 0);
  ASSERT_EQ(b.code, 0);
  EXPECT_EQ(strip(parse(a)), strip(parse(b)));
}

TEST(Cli, OracleOtherChecks) {
  EXPECT_EQ(parse(fdsc("oracle --d 2 --check kappa"))["kappa"], 4);
  const auto super = fdsc("oracle --d 2 --check super");
  ASSERT_EQ(super.code, 0);
  EXPECT_EQ(parse(super)["examined"], 696);
  const auto a1a2 = fdsc("oracle --d 3 --check a1a2 --sweep sample --samples 2000 --seed 5");
  ASSERT_EQ(a1a2.code, 0);
  EXPECT_EQ(parse(a1a2)["seed"], 5);
  EXPECT_EQ(fdsc("oracle --d 2 --check a1a2").code, 2);
}

TEST(Cli, LemmasExitStatus) {
  const auto r = fdsc("lemmas --d 3");
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(parse(r)["overall"].get<bool>());
  EXPECT_EQ(fdsc("lemmas --d 2").code, 1);  // apex common neighbor at n = 4
  EXPECT_EQ(fdsc("lemmas --d 6").code, 0);
}

TEST(Cli, VerifyFamilies) {
  const auto good = temp_file("good.json", fdsc("cut --d 2 --pattern k1").out);
  // `cut` output embeds the family under "family"; extract it.
  const auto family = nlohmann::json::parse(std::ifstream(good))["family"];
  const auto fam_path = temp_file("fam.json", family.dump());
  const auto ok = fdsc("verify --d 2 --family " + fam_path);
  ASSERT_EQ(ok.code, 0);
  EXPECT_TRUE(parse(ok)["report"]["is_cut"].get<bool>());

  const auto bad = temp_file(
      "bad.json", R"({"mode":"structure","m":1,"elements":[{"center":"0000","leaves":["0011"]}]})");
  const auto r = fdsc("verify --d 2 --family " + bad);
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(parse(r)["violation"].get<std::string>().find("not adjacent"), std::string::npos);

  const auto not_cut = temp_file(
      "notcut.json", R"({"mode":"structure","m":2,"elements":[{"center":"1011","leaves":["0011","0111"]}]})");
  EXPECT_EQ(fdsc("verify --d 2 --family " + not_cut).code, 1);

  const auto garbage = temp_file("garbage.json", "{not json");
  EXPECT_EQ(fdsc("verify --d 2 --family " + garbage).code, 2);
  EXPECT_EQ(fdsc("verify --d 2 --family /nonexistent/x.json").code, 2);
}
