#include <gtest/gtest.h>

#include "cli_cases.hpp"

namespace {

const std::string kCli = ORTHGEN_CLI_PATH;
const std::string kGolden = ORTHGEN_GOLDEN_DIR;

}  // namespace

TEST(Cli, GoldenOutputs) {
  auto cases = cli_cases::load(kGolden);
  ASSERT_EQ(cases.size(), 20u);
  for (const auto& c : cases) {
    auto r = cli_cases::run(kCli, c.args);
    EXPECT_EQ(r.exit_code, c.exit_code) << c.name;
    EXPECT_EQ(r.out, cli_cases::read_file(kGolden + "/" + c.name + ".out")) << c.name;
  }
}

TEST(Cli, OutputsAreDeterministic) {
  for (const auto& c : cli_cases::load(kGolden)) {
    auto a = cli_cases::run(kCli, c.args), b = cli_cases::run(kCli, c.args);
    EXPECT_EQ(a.out, b.out) << c.name;
    EXPECT_EQ(a.exit_code, b.exit_code) << c.name;
  }
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(cli_cases::run(kCli, "").exit_code, 2);
  EXPECT_EQ(cli_cases::run(kCli, "bogus").exit_code, 2);
  EXPECT_EQ(cli_cases::run(kCli, "gen --fam F1 --i 1 --z 0").exit_code, 2);
  EXPECT_EQ(cli_cases::run(kCli, "gen --fam F1 --i 9 --z 0 --n 3").exit_code, 2);
  EXPECT_EQ(cli_cases::run(kCli, "gen --fam F1 --i 1 --z 0 --n 3 --ring Z/9").exit_code, 2);
  EXPECT_EQ(cli_cases::run(kCli, "verify --file /nonexistent/x.json").exit_code, 2);
  EXPECT_EQ(cli_cases::run(kCli, "decompose --file " + kGolden + "/inputs/nonsquare.json --mode tmt").exit_code, 2);
  EXPECT_EQ(cli_cases::run(kCli, "identities --items L2.3.i --seed 42 --samples 3").exit_code, 0);
}

TEST(Cli, VerifyReportsFalse) {
  auto r = cli_cases::run(kCli, "verify --file " + kGolden + "/inputs/f1_1_q.json --what monomial");
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.out.find("\"ok\":false"), std::string::npos);
}

TEST(Cli, StdinInput) {
  std::string cmd = "verify --what orthogonal < '" + kGolden + "/inputs/identity7.json'";
  auto r = cli_cases::run(kCli, cmd);
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, cli_cases::read_file(kGolden + "/verify_identity.out"));
}
