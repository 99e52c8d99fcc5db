#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include "json.hpp"
#include "periodlab/commands.hpp"

using namespace periodlab;

namespace {

struct CliRun {
  int status = -1;
  std::string out;
};

#ifdef PERIODLAB_CLI
CliRun run_cli(const std::string& args, const std::string& env = {}) {
  const std::string cmd = env + (env.empty() ? "" : " ") + PERIODLAB_CLI + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}
#endif

RunReport sample_report() {
  RunReport r;
  r.command = "mahler";
  r.parameters = {{"poly", "2 + x"}, {"budget", "1000"}};
  r.seed = 42;
  r.add(exact_record("m", std::log(2.0), CheckStatus::Info));
  Estimate e;
  e.value = cplx(0.125, -3.5e-17);
  e.std_error = 1.5e-9;
  r.add(estimate_record("pair", e, CheckStatus::Flagged, 1e-3, "near a pole"));
  r.add(exact_record("gate", 1.0, gate(false)));
  return r;
}

}  // namespace

TEST(Report, JsonRoundTrip) {
  const RunReport r = sample_report();
  const std::string text = r.to_json();
  const RunReport back = RunReport::from_json(text);
  EXPECT_EQ(back, r);
  EXPECT_EQ(back.to_json(), text);
  // doubles survive bit for bit
  EXPECT_EQ(back.checks[1].imag, r.checks[1].imag);
  EXPECT_EQ(*back.checks[1].std_error, 1.5e-9);
}

TEST(Report, ExactMarker) {
  const auto j = nlohmann::json::parse(sample_report().to_json());
  bool exact_seen = false, numeric_seen = false;
  for (const auto& c : j["checks"]) {
    ASSERT_TRUE(c.contains("stderr"));
    exact_seen = exact_seen || (c["stderr"].is_string() && c["stderr"] == "exact");
    numeric_seen = numeric_seen || c["stderr"].is_number();
  }
  EXPECT_TRUE(exact_seen);
  EXPECT_TRUE(numeric_seen);
  EXPECT_FALSE(j.contains("wall_seconds"));
}

TEST(Report, StatusStrings) {
  for (auto s : {CheckStatus::Pass, CheckStatus::Fail, CheckStatus::Flagged, CheckStatus::Info})
    EXPECT_EQ(status_from_string(to_string(s)), s);
  EXPECT_EQ(to_string(CheckStatus::Flagged), "flagged");
  EXPECT_THROW(status_from_string("maybe"), std::invalid_argument);
  EXPECT_EQ(gate(true), CheckStatus::Pass);
}

TEST(Report, AllPassAndExitStatus) {
  RunReport r;
  r.add(exact_record("a", 1.0, CheckStatus::Pass));
  r.add(exact_record("b", 1.0, CheckStatus::Info));
  EXPECT_TRUE(r.all_pass());
  EXPECT_EQ(exit_status(r), 0);
  r.add(exact_record("c", 1.0, CheckStatus::Flagged));
  EXPECT_FALSE(r.all_pass());
  EXPECT_EQ(exit_status(r), 1);
  RunReport f;
  f.add(exact_record("d", 1.0, CheckStatus::Fail));
  EXPECT_EQ(exit_status(f), 1);
}

TEST(Report, IdentityRows) {
  IdentityReport rep;
  rep.identity = "d_theta";
  rep.n = 2;
  rep.j = 1;
  rep.tolerance = 1e-3;
  const std::array<cplx, 1> c{1.0};
  const Estimate rhs = Estimate::exact_value(1.0);
  const std::array<const Estimate*, 1> parts{&rhs};
  rep.rows.push_back(make_row(0, Estimate::exact_value(1.0), c, parts, 1e-3));
  rep.rows.push_back(make_row(1, Estimate::exact_value(1.5), c, parts, 1e-3));
  auto flagged = make_row(2, Estimate::exact_value(1.0), c, parts, 1e-3);
  flagged.flagged = true;
  rep.rows.push_back(flagged);
  RunReport r;
  r.add_identity(rep);
  ASSERT_EQ(r.checks.size(), 3u);
  EXPECT_EQ(r.checks[0].name, "d_theta[n=2,j=1].form0");
  EXPECT_EQ(r.checks[0].status, CheckStatus::Pass);
  EXPECT_EQ(r.checks[1].status, CheckStatus::Flagged);
  EXPECT_EQ(r.checks[2].status, CheckStatus::Flagged);
  EXPECT_EQ(*r.checks[0].tolerance, 1e-3);
}

TEST(Commands, MahlerOfConstant) {
  const RunReport r = cmd_mahler({"2", 1000, 0, false});
  EXPECT_EQ(r.command, "mahler");
  ASSERT_FALSE(r.checks.empty());
  bool found = false;
  for (const auto& c : r.checks)
    if (c.name == "mahler_measure") {
      found = true;
      EXPECT_EQ(c.value, std::log(2.0));
      EXPECT_FALSE(c.std_error.has_value());
    }
  EXPECT_TRUE(found);
  EXPECT_TRUE(r.all_pass());
}

TEST(Commands, ParseErrorPosition) {
  try {
    cmd_mahler({"x^^2", 1000, 0, false});
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 2u);
  }
}

TEST(Commands, TripleOnPointPasses) {
  TripleArgs a;
  a.n = 0;
  a.budget = 1 << 12;
  const RunReport r = cmd_verify_triple(a);
  EXPECT_TRUE(r.all_pass());
  EXPECT_EQ(exit_status(r), 0);
  a.n = 4;
  EXPECT_THROW(cmd_verify_triple(a), std::invalid_argument);
}

TEST(Commands, ZeroToleranceFlagsEveryRow) {
  TripleArgs a;
  a.n = 1;
  a.suite_size = 2;
  a.tol = 0.0;
  a.budget = 1 << 12;
  const RunReport r = cmd_verify_triple(a);
  int rows = 0;
  for (const auto& c : r.checks)
    if (c.tolerance) {
      ++rows;
      EXPECT_EQ(c.status, CheckStatus::Flagged) << c.name;
    }
  EXPECT_GT(rows, 0);
  EXPECT_EQ(exit_status(r), 1);
}

#ifdef PERIODLAB_CLI
TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli("mahler 2").status, 0);
  EXPECT_EQ(run_cli("mahler 'x^^2'").status, 2);
  EXPECT_EQ(run_cli("mahler 2 --no-such-flag").status, 2);
  EXPECT_EQ(run_cli("verify-triple --n 9").status, 2);
  EXPECT_EQ(run_cli("").status, 2);
  EXPECT_EQ(run_cli("verify-triple --n 0").status, 0);
  // a failing row gives 1
  EXPECT_EQ(run_cli("verify-triple --n 1 --suite-size 1 --tol 0").status, 1);
}

TEST(Cli, OutputIndependentOfThreads) {
  const std::string args = "mahler '8 + x + x^-1 + y + y^-1' --budget 65536 --seed 3 --hypergeometric";
  const CliRun a = run_cli(args, "PERIODLAB_THREADS=1");
  const CliRun b = run_cli(args, "PERIODLAB_THREADS=3");
  EXPECT_EQ(a.status, 0);
  EXPECT_FALSE(a.out.empty());
  EXPECT_EQ(a.out, b.out);
  const RunReport r = RunReport::from_json(a.out);
  EXPECT_EQ(r.seed, 3u);
}
#endif
