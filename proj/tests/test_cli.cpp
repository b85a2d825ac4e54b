#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "ringcover/cli.hpp"

using namespace ringcover;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

json parse(const Run& r) { return json::parse(r.out); }

}  // namespace

TEST(Cli, Formula) {
  auto r = run({"formula", "--ring", "agl:3,3,3"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = parse(r);
  EXPECT_EQ(j["schema"], "ringcover/1");
  EXPECT_EQ(j["sigma"], 40);
  EXPECT_EQ(j["elementary"], true);
  j = parse(run({"formula", "--ring", "mat:2,2"}));
  EXPECT_EQ(j["sigma"], 4);
  j = parse(run({"formula", "--ring", "agl:2,2,2"}));
  EXPECT_EQ(j["sigma"], 4);
  EXPECT_EQ(j["elementary"], false);
  j = parse(run({"formula", "--n", "3", "--q1", "2", "--q2", "2"}));
  EXPECT_EQ(j["sigma"], "unknown");
  EXPECT_EQ(j["upper_bound"], 15);
  j = parse(run({"formula", "--ring", "field:4"}));
  EXPECT_EQ(j["sigma"], "infinite");
}

TEST(Cli, ParseErrors) {
  EXPECT_EQ(run({"formula", "--ring", "agl:3,3"}).code, 2);
  EXPECT_EQ(run({"formula", "--ring", "field:6"}).code, 2);
  EXPECT_EQ(run({"nonsense"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"brute"}).code, 2);
  EXPECT_EQ(run({"verify-cover", "--ring", "agl:3,3,3", "--mode", "fast"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, Brute) {
  auto j = parse(run({"brute", "--ring", "field:4"}));
  EXPECT_EQ(j["sigma"], "infinite");
  j = parse(run({"brute", "--ring", "agl:1,2,2"}));
  EXPECT_EQ(j["sigma"], 3);
  EXPECT_EQ(j["witness"].size(), 3u);
  j = parse(run({"brute", "--ring", "agl:1,3,3", "--elementary"}));
  EXPECT_EQ(j["elementary"], true);
  EXPECT_EQ(run({"brute", "--ring", "agl:2,2,4", "--max-order", "200"}).code, 3);
  EXPECT_EQ(parse(run({"brute", "--ring", "agl:2,2,2"}))["sigma"], 4);
}

TEST(Cli, BuildAndVerify) {
  auto r = run({"build-cover", "--ring", "agl:3,3,3"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = parse(r);
  EXPECT_EQ(j["family_size"], 40);
  EXPECT_EQ(j["family"].size(), 40u);

  r = run({"verify-cover", "--ring", "agl:3,3,3", "--mode", "naive", "--workers", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  j = parse(r);
  EXPECT_EQ(j["covered"], true);
  EXPECT_EQ(j["sweep_mode"], "naive");
  EXPECT_EQ(j["certificate"], "pass");
  EXPECT_EQ(j["elements_checked"], 1594323);

  r = run({"verify-cover", "--ring", "agl:2,2,2"});
  EXPECT_EQ(r.code, 4);
  EXPECT_NE(r.err.find("M_n(q1)"), std::string::npos);
  EXPECT_EQ(run({"verify-cover", "--ring", "agl:5,2,4", "--mode", "naive"}).code, 3);
}

TEST(Cli, CertificateIsDeterministic) {
  auto a = run({"certificate", "--ring", "agl:4,2,2", "--seed", "3"});
  auto b = run({"certificate", "--ring", "agl:4,2,2", "--seed", "3"});
  ASSERT_EQ(a.code, 0) << a.err;
  auto ja = parse(a), jb = parse(b);
  ja.erase("elapsed_ms");
  jb.erase("elapsed_ms");
  EXPECT_EQ(ja.dump(), jb.dump());
  EXPECT_EQ(ja["certificate"], "pass");
  EXPECT_EQ(ja["seed"], 3);
}

TEST(Cli, SeedFromEnvironment) {
  setenv("RINGCOVER_SEED", "9", 1);
  auto j = parse(run({"certificate", "--ring", "agl:3,3,3", "--seed", "1"}));
  unsetenv("RINGCOVER_SEED");
  EXPECT_EQ(j["seed"], 9);
}

TEST(Cli, Bounds) {
  auto r = run({"bounds", "--check", "product_lower_bound", "--n", "2..4", "--q", "2,3"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) ++count;
  EXPECT_EQ(count, 1 + 6);
  EXPECT_EQ(run({"bounds"}).code, 0);
  EXPECT_EQ(run({"bounds", "--check", "no_such_check"}).code, 2);
}

TEST(Cli, ExportTable) {
  const auto path = (std::filesystem::temp_directory_path() / "ringcover_table.bin").string();
  ASSERT_EQ(run({"export-table", "--ring", "agl:1,2,2", "--format", "binary", "--out", path}).code, 0);
  std::ifstream f(path, std::ios::binary);
  const auto T = read_table_binary(f);
  EXPECT_EQ(T.size(), 8u);
  std::remove(path.c_str());
  auto j = parse(run({"export-table", "--ring", "field:4"}));
  EXPECT_EQ(j["N"], 4);
  EXPECT_EQ(j["mul_table"].size(), 16u);
}

#ifdef RINGCOVER_CLI_PATH
TEST(Cli, BinaryExitCodes) {
  const std::string exe = RINGCOVER_CLI_PATH;
  EXPECT_EQ(std::system((exe + " formula --ring agl:3,3,3 > /dev/null").c_str()), 0);
  EXPECT_NE(std::system((exe + " formula --ring bad > /dev/null 2>&1").c_str()), 0);
}
#endif
