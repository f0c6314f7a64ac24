#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "runner.hpp"

namespace {

using dirca::cli::run_main;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args, std::optional<std::string> env_seed = {}) {
  std::ostringstream out, err;
  const int code = run_main(args, std::move(env_seed), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::filesystem::path temp_file(const std::string& name, const std::string& body = {}) {
  const auto path = std::filesystem::temp_directory_path() / ("dirca_cli_" + name);
  if (!body.empty()) std::ofstream(path) << body;
  return path;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

TEST(Cli, EntropyPlanParses) {
  const auto plan = dirca::cli::parse_config(
      {"entropy", "--rule", "a=2;coeffs=1,0,1", "--M", "1", "--seq", "syndetic:gap=1,len=6,n=0"});
  EXPECT_EQ(plan.command, dirca::cli::Command::entropy);
  EXPECT_EQ(plan.rule, "a=2;coeffs=1,0,1");
  EXPECT_EQ(plan.M, 1);
  EXPECT_EQ(plan.seq, "syndetic:gap=1,len=6,n=0");
  EXPECT_EQ(plan.seed, 0u);
  EXPECT_EQ(plan.budget, dirca::kDefaultBudget);
}

TEST(Cli, EntropyRowsMatchClosedForm) {
  const auto r = run({"entropy", "--rule", "a=2;coeffs=1,0,1", "--M", "1", "--seq", "syndetic:gap=1,len=6,n=0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = csv(r.out);
  ASSERT_EQ(rows.size(), 8u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"l", "H_nats", "H_per_step", "closed_form", "atoms", "window_lo",
                                               "window_hi", "uniform"}));
  for (int l = 0; l <= 6; ++l) {
    const auto& row = rows[static_cast<std::size_t>(l + 1)];
    EXPECT_EQ(row[0], std::to_string(l));
    EXPECT_NEAR(std::stod(row[1]), (2 * l + 3) * std::log(2.0), 1e-12);
    EXPECT_EQ(row[4], std::to_string(1 << (2 * l + 3)));
    EXPECT_EQ(row[7], "true");
  }
}

TEST(Cli, UnknownFlagIsConfigError) {
  const auto r = run({"entropy", "--foo"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("--foo"), std::string::npos);
}

TEST(Cli, MissingSubcommandIsConfigError) { EXPECT_EQ(run({"--seed", "3"}).code, 1); }

TEST(Cli, BudgetFloor) {
  const auto low = run({"--budget", "1023", "selftest"});
  EXPECT_EQ(low.code, 1);
  EXPECT_NE(low.err.find("budget"), std::string::npos);
  EXPECT_EQ(run({"--budget", "1024", "mixing", "--kmax", "2"}).code, 0);
}

TEST(Cli, BadLiteralNamesKey) {
  const auto r = run({"entropy", "--rule", "a=2;coeffs=1,0"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("rule"), std::string::npos);
  EXPECT_EQ(run({"mixing", "--B", "[0:02]"}).code, 1);
  EXPECT_EQ(run({"ergodic", "--dir", "-1,0"}).code, 1);
  EXPECT_EQ(run({"binom", "--rule", "a=3;coeffs=0,1,1"}).code, 1);
}

TEST(Cli, UnknownConfigKeyRejected) {
  const auto path = temp_file("bad.ini", "[binom]\nfoo=1\n");
  const auto r = run({"binom", "--config", path.string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("foo"), std::string::npos);
}

TEST(Cli, FlagsOverrideConfigFile) {
  const auto path = temp_file("ok.ini", "# comment\nseed=7\n[binom]\nk=5\nnmax=40\nseeds=1\n");
  const auto from_file = dirca::cli::parse_config({"binom", "--config", path.string()});
  EXPECT_EQ(from_file.seed, 7u);
  EXPECT_EQ(from_file.k, 5);
  EXPECT_EQ(from_file.n_max, 40);
  const auto overridden = dirca::cli::parse_config({"binom", "--config", path.string(), "--k", "3", "--seed", "1"});
  EXPECT_EQ(overridden.seed, 1u);
  EXPECT_EQ(overridden.k, 3);
  EXPECT_EQ(overridden.n_max, 40);
  const auto rules = temp_file("rule.ini", "rule=a=3;coeffs=0,1,1\n[mixing]\nkmax=4\n");
  const auto mixing = dirca::cli::parse_config({"--config", rules.string(), "mixing"});
  EXPECT_EQ(mixing.rule, "a=3;coeffs=0,1,1");
  EXPECT_EQ(mixing.k_max, 4);
  EXPECT_EQ(run({"binom", "--config", rules.string()}).code, 1);
}

TEST(Cli, SeedPrecedence) {
  const auto path = temp_file("seed.ini", "seed=11\n");
  EXPECT_EQ(dirca::cli::parse_config({"selftest"}).seed, 0u);
  EXPECT_EQ(dirca::cli::parse_config({"selftest"}, "42").seed, 42u);
  EXPECT_EQ(dirca::cli::parse_config({"selftest", "--config", path.string()}, "42").seed, 11u);
  EXPECT_EQ(dirca::cli::parse_config({"selftest", "--config", path.string(), "--seed", "5"}, "42").seed, 5u);
  EXPECT_EQ(run({"selftest"}, "not-a-number").code, 1);
}

TEST(Cli, EnvSeedMatchesFlag) {
  const std::vector<std::string> args{"binom", "--nmax", "200", "--seeds", "3", "--k", "3"};
  auto with_flag = args;
  with_flag.insert(with_flag.begin(), {"--seed", "99"});
  EXPECT_EQ(run(args, "99").out, run(with_flag).out);
  EXPECT_NE(run(args, "98").out, run(with_flag).out);
}

TEST(Cli, ByteIdenticalReports) {
  for (const auto& fmt : {"csv", "json"}) {
    const auto a = temp_file(std::string("det_a.") + fmt);
    const auto b = temp_file(std::string("det_b.") + fmt);
    const std::vector<std::string> base{"--seed", "3", "--format", fmt, "ergodic", "--N", "2000", "--seeds", "4",
                                        "--stride", "500"};
    auto args_a = base;
    args_a.insert(args_a.end(), {"--out", a.string()});
    auto args_b = base;
    args_b.insert(args_b.end(), {"--out", b.string()});
    ASSERT_EQ(run(args_a).code, 0);
    ASSERT_EQ(run(args_b).code, 0);
    EXPECT_EQ(slurp(a), slurp(b));
    EXPECT_FALSE(slurp(a).empty());
  }
}

TEST(Cli, JsonSchema) {
  const auto r = run({"--format", "json", "--seed", "5", "binom", "--nmax", "300", "--seeds", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  ASSERT_TRUE(doc.is_object());
  EXPECT_EQ(doc.size(), 3u);
  EXPECT_EQ(doc["plan"]["seed"], 5);
  EXPECT_EQ(doc["plan"]["subcommand"], "binom");
  ASSERT_TRUE(doc["records"].is_array());
  EXPECT_EQ(doc["records"].size(), 4u);
  for (const auto& rec : doc["records"]) {
    for (const auto* key : {"k", "N", "variant", "n_max", "seed", "freq_0", "freq_1", "max_dev"}) {
      EXPECT_TRUE(rec.contains(key)) << key;
    }
  }
  const auto& flags = doc["flags"];
  EXPECT_TRUE(flags["asserted"]["engine_matches_direct_leading"].get<bool>());
  EXPECT_TRUE(flags["asserted"]["engine_matches_direct_action"].get<bool>());
  EXPECT_TRUE(flags.contains("observed"));
  EXPECT_TRUE(flags.contains("summary"));
  // sorted keys
  EXPECT_LT(r.out.find("\"flags\""), r.out.find("\"plan\""));
  EXPECT_LT(r.out.find("\"plan\""), r.out.find("\"records\""));
}

TEST(Cli, CsvColumns) {
  EXPECT_EQ(csv(run({"mixing", "--kmax", "2"}).out)[0], (std::vector<std::string>{"k", "cone_size", "D_k", "exact"}));
  EXPECT_EQ(csv(run({"mixing", "--mode", "independence"}).out)[0],
            (std::vector<std::string>{"m", "n", "pass", "boundary"}));
  EXPECT_EQ(csv(run({"ergodic", "--N", "100", "--seeds", "1"}).out)[0], (std::vector<std::string>{"seed", "t", "average"}));
  EXPECT_EQ(csv(run({"binom", "--k", "3", "--nmax", "50", "--seeds", "1", "--variant", "leading"}).out)[0],
            (std::vector<std::string>{"k", "N", "variant", "n_max", "seed", "freq_0", "freq_1", "freq_2", "max_dev"}));
  const auto two = csv(run({"entropy", "--seq", "syndetic:gap=1,len=2,n=0", "--seq2", "syndetic:gap=1,len=2,n=m-1"}).out);
  EXPECT_EQ(two[0][0], "sequence");
  EXPECT_EQ(two.size(), 7u);
}

TEST(Cli, DecayRowsAreExact) {
  const auto rows = csv(run({"mixing", "--kmax", "3"}).out);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[1], (std::vector<std::string>{"1", "3", "0.10416666666666667", "true"}));
  EXPECT_EQ(rows[2][2], "0.0625");
}

TEST(Cli, BudgetExceededExitsTwo) {
  const auto r = run({"--budget", "1024", "entropy"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("budget"), std::string::npos);
}

TEST(Cli, UnwritableOutputExitsFour) {
  EXPECT_EQ(run({"--out", "/nonexistent-dir/x.csv", "selftest"}).code, 4);
}

TEST(Cli, BinomDumpWritesSequence) {
  const auto path = temp_file("dump.csv");
  ASSERT_EQ(run({"binom", "--nmax", "20", "--seeds", "2", "--variant", "action", "--dump", path.string()}).code, 0);
  const auto rows = csv(slurp(path));
  ASSERT_EQ(rows.size(), 21u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"n", "s_n"}));
  EXPECT_EQ(rows[20][0], "20");
}

TEST(Cli, SelftestPasses) {
  const auto r = run({"--format", "json", "selftest"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_GE(doc["flags"]["asserted"].size(), 10u);
  for (const auto& [name, pass] : doc["flags"]["asserted"].items()) EXPECT_TRUE(pass.get<bool>()) << name;
}

TEST(Cli, FailedAssertionMakesReportNotOk) {
  dirca::cli::Report report;
  report.asserted["a"] = true;
  EXPECT_TRUE(report.ok());
  report.asserted["b"] = false;
  EXPECT_FALSE(report.ok());
  EXPECT_EQ(report.failed(), std::vector<std::string>{"b"});
}

TEST(Cli, HelpExitsZero) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("entropy"), std::string::npos);
}

}  // namespace
