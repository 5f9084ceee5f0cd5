#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "dgd/csv_trace.hpp"
#include "dgd/eta_expression.hpp"
#include "dgd/experiment.hpp"
#include "dgd/text_format.hpp"

namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::path(::testing::TempDir()) / "dgd_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string read_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int cli(const std::string& args) {
  const std::string cmd = std::string(DGD_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(TextFormatTest, RoundTripsAwkwardValues) {
  for (double v : {0.1, -0.0, 1e-308, 5e-324, 1.7976931348623157e308, 1.0 / 3.0}) {
    EXPECT_TRUE(dgd::same_double(dgd::parse_double(dgd::format_double(v)), v)) << v;
  }
  EXPECT_TRUE(std::isnan(dgd::parse_double(dgd::format_double(std::nan("")))));
  EXPECT_EQ(dgd::parse_double("-inf"), -std::numeric_limits<double>::infinity());
  EXPECT_THROW(dgd::parse_double("1.0x"), std::invalid_argument);
  EXPECT_THROW(dgd::parse_uint("-3"), std::invalid_argument);
}

TEST(EtaExpressionTest, Evaluates) {
  const dgd::EtaContext ctx{2.0, 25.0, 0.5, 0.25, 1.0, 0.004};
  EXPECT_DOUBLE_EQ(dgd::evaluate_eta("0.6/(L*tau)", ctx), 0.6 / 50.0);
  EXPECT_DOUBLE_EQ(dgd::evaluate_eta("0.1 / tau", ctx), 0.004);
  EXPECT_DOUBLE_EQ(dgd::evaluate_eta("0.5*max_step", ctx), 0.002);
  EXPECT_DOUBLE_EQ(dgd::evaluate_eta("1e-3", ctx), 1e-3);
  EXPECT_DOUBLE_EQ(dgd::evaluate_eta("-(-mu) * zeta / q", ctx), 0.125);
  EXPECT_DOUBLE_EQ(dgd::evaluate_eta("1 - 2 + 3 - 1", ctx), 1.0);
  EXPECT_DOUBLE_EQ(dgd::evaluate_eta("8/4/2", ctx), 1.0);
}

TEST(EtaExpressionTest, Rejects) {
  dgd::EtaContext ctx{2.0, 25.0, 0.5, 0.25, 1.0, std::nan("")};
  for (const char* bad : {"", "2L", "(1", "1)", "foo", "1/0", "-1", "max_step", "1 +"}) {
    EXPECT_THROW(dgd::evaluate_eta(bad, ctx), std::invalid_argument) << bad;
  }
}

dgd::CsvTrace sample_csv() {
  dgd::RunTrace tr;
  tr.meta.problem = "ridge_ls";
  tr.meta.eta = 0.1;
  tr.meta.tau = 2;
  tr.meta.seed = 7;
  tr.meta.x_star_radius = 1e-12;
  tr.meta.extras["eta_spec"] = "0.6/(L*tau)";
  tr.meta.extras["L"] = "2.5";
  for (std::size_t t = 0; t < 5; ++t) {
    dgd::TraceRow r{t, 1.0 / (t + 3.0), 0.1 * t, 1e-300, 0.0, 2.0 / 3.0};
    tr.rows.push_back(r);
  }
  const double nan = std::nan("");
  return dgd::make_csv_trace(tr, {0.0, -0.1, -0.2}, {0.0, -1.0}, 2,
                             {1.0, nan, 0.5, std::numeric_limits<double>::infinity(), 0.1});
}

TEST(CsvTraceTest, ExactRoundTrip) {
  const dgd::CsvTrace csv = sample_csv();
  const std::string text = dgd::serialize_csv(csv);
  EXPECT_EQ(dgd::parse_csv(text), csv);
  EXPECT_EQ(dgd::serialize_csv(dgd::parse_csv(text)), text);
  EXPECT_NE(text.find(std::string(dgd::kCsvHeader) + "\n"), std::string::npos);
  EXPECT_NE(text.find("# extra.eta_spec=0.6/(L*tau)\n"), std::string::npos);
  ASSERT_EQ(csv.log_dist.size(), 5u);
  EXPECT_TRUE(std::isnan(csv.log_dist[4]));
  EXPECT_TRUE(std::isnan(csv.log_gap[0]));
  EXPECT_EQ(csv.log_gap[3], -1.0);
}

TEST(CsvTraceTest, EqualityNoticesDifferences) {
  const dgd::CsvTrace a = sample_csv();
  dgd::CsvTrace b = a;
  b.bound[1] = 0.0;
  EXPECT_FALSE(a == b);
  b = a;
  b.trace.meta.extras["L"] = "2.6";
  EXPECT_FALSE(a == b);
}

TEST(CsvTraceTest, MalformedInputRejected) {
  EXPECT_THROW(dgd::parse_csv(""), std::invalid_argument);
  EXPECT_THROW(dgd::parse_csv("t,dist\n"), std::invalid_argument);
  EXPECT_THROW(dgd::parse_csv(std::string(dgd::kCsvHeader) + "\n1,2,3\n"), std::invalid_argument);
  EXPECT_THROW(dgd::parse_csv("# bogus=1\n" + std::string(dgd::kCsvHeader) + "\n"),
               std::invalid_argument);
}

TEST(CmdGenDataTest, RoundTripAndIdempotent) {
  dgd::ExperimentConfig cfg;
  cfg.out = scratch("ridge.txt");
  std::ostringstream log;
  ASSERT_EQ(dgd::cmd_gen_data(cfg, log), dgd::kExitPass);
  const std::string first = read_bytes(cfg.out);
  const dgd::Dataset back = dgd::load_dataset(cfg.out);
  const dgd::Dataset mem = dgd::generate_dataset(dgd::ProblemKind::ridge_ls, 1000, 10, 42);
  EXPECT_EQ(dgd::serialize_dataset(back), dgd::serialize_dataset(mem));
  ASSERT_EQ(dgd::cmd_gen_data(cfg, log), dgd::kExitPass);
  EXPECT_EQ(read_bytes(cfg.out), first);
}

TEST(CmdRunTest, WritesTraceAndReportsDeterministically) {
  dgd::ExperimentConfig cfg;
  cfg.tau = 5;
  cfg.out = scratch("run.csv");
  std::ostringstream log;
  ASSERT_EQ(dgd::cmd_run(cfg, log), dgd::kExitPass);
  const std::string csv1 = read_bytes(cfg.out);
  const std::string rep1 = read_bytes(scratch("run.csv.report"));
  ASSERT_EQ(dgd::cmd_run(cfg, log), dgd::kExitPass);
  EXPECT_EQ(read_bytes(cfg.out), csv1);
  EXPECT_EQ(read_bytes(scratch("run.csv.report")), rep1);
  EXPECT_NE(rep1.find("thm15_distance.status=pass\n"), std::string::npos);
  EXPECT_NE(rep1.find("thm15_distance.violations=0\n"), std::string::npos);
  const dgd::CsvTrace loaded = dgd::load_csv(cfg.out);
  EXPECT_EQ(loaded.trace.rows.size(), 1001u);
  EXPECT_EQ(loaded.trace.meta.extras.at("eta_spec"), "max_step");
  EXPECT_EQ(loaded.trace.meta.extras.at("max_iters"), "1000");
}

TEST(CmdRunTest, EtaExpressionUsesMeasuredL) {
  const dgd::Dataset ds = dgd::generate_dataset(dgd::ProblemKind::pl_ls, 6, 15, 42);
  dgd::ExperimentConfig cfg;
  cfg.problem = dgd::ProblemKind::pl_ls;
  cfg.tau = 25;
  cfg.eta_spec = "0.6/(L*tau)";
  const dgd::RunOutcome o = dgd::run_experiment(ds, cfg);
  const double L = dgd::oracle_of(ds.problem).curvature().L;
  EXPECT_DOUBLE_EQ(o.eta, 0.6 / (L * 25));
  EXPECT_EQ(o.csv.trace.meta.extras.at("L"), dgd::format_double(L));
  EXPECT_EQ(o.exit_code(), dgd::kExitPass);
  ASSERT_EQ(o.probes.size(), 1u);
  EXPECT_EQ(o.probes[0].violations.size(), 0u);
  // e_t starts at the anchor and never increases past it.
  ASSERT_GT(o.metrics.log_gap.size(), 100u);
  EXPECT_EQ(o.metrics.log_gap[0], 0.0);
}

TEST(CmdRunTest, WarmupOnlyRunHasConstantRows) {
  const dgd::Dataset ds = dgd::generate_dataset(dgd::ProblemKind::ridge_ls, 100, 4, 1);
  dgd::ExperimentConfig cfg;
  cfg.tau = 8;
  cfg.max_iters = 8;
  const dgd::RunOutcome o = dgd::run_experiment(ds, cfg);
  ASSERT_EQ(o.csv.trace.rows.size(), 9u);
  for (const auto& r : o.csv.trace.rows) EXPECT_EQ(r.dist, o.csv.trace.rows[0].dist);
}

TEST(CmdRunTest, InadmissibleStepDowngradesChecks) {
  const dgd::Dataset ds = dgd::generate_dataset(dgd::ProblemKind::ridge_ls, 100, 4, 1);
  dgd::ExperimentConfig cfg;
  cfg.tau = 2;
  cfg.eta_spec = "3*max_step";
  const dgd::RunOutcome o = dgd::run_experiment(ds, cfg);
  EXPECT_FALSE(o.admissible);
  EXPECT_EQ(o.reports[0].status, dgd::CheckStatus::not_applicable);
  EXPECT_EQ(o.reports[1].status, dgd::CheckStatus::not_applicable);
  EXPECT_EQ(o.exit_code(), dgd::kExitPass);
}

TEST(CmdVerifyLemmasTest, DefaultPassesForcedJFails) {
  dgd::LemmaConfig cfg;
  cfg.instances = 100;
  cfg.condition_samples = 1000;
  std::ostringstream log;
  EXPECT_EQ(dgd::cmd_verify_lemmas(cfg, log), dgd::kExitPass);
  cfg.j_half = 1.0;
  std::ostringstream bad;
  EXPECT_EQ(dgd::cmd_verify_lemmas(cfg, bad), dgd::kExitViolation);
  EXPECT_NE(bad.str().find("lemma21 counterexample: n=0.5 x=0.001"), std::string::npos)
      << bad.str();
}

TEST(CmdSweepTest, GridRowsAndDeterminism) {
  dgd::SweepConfig cfg;
  cfg.base.m = 200;
  cfg.base.d = 5;
  cfg.base.out = scratch("sweep.csv");
  cfg.taus = {5, 10, 20, 100};
  cfg.etas = {"0.1/(L*tau)", "0.2/(L*tau)", "0.3/(L*tau)"};
  std::ostringstream log;
  ASSERT_EQ(dgd::cmd_sweep(cfg, log), dgd::kExitPass);
  const std::string first = read_bytes(cfg.base.out);
  const auto rows = dgd::run_sweep(cfg);
  ASSERT_EQ(rows.size(), 12u);
  EXPECT_EQ(rows[0].tau, 5u);
  EXPECT_EQ(rows[11].tau, 100u);
  EXPECT_EQ(rows[11].eta_spec, "0.3/(L*tau)");
  for (const auto& r : rows) {
    EXPECT_TRUE(r.error.empty()) << r.error;
    EXPECT_LT(r.slope, 0.0);
  }
  cfg.threads = 1;
  ASSERT_EQ(dgd::cmd_sweep(cfg, log), dgd::kExitPass);
  EXPECT_EQ(read_bytes(cfg.base.out), first);
}

TEST(CmdSweepTest, EmptyGridAndPartialFailure) {
  dgd::SweepConfig cfg;
  cfg.base.m = 100;
  cfg.base.d = 4;
  cfg.base.out = scratch("sweep_bad.csv");
  cfg.taus = {};
  cfg.etas = {"0.1"};
  EXPECT_THROW(dgd::run_sweep(cfg), std::invalid_argument);
  cfg.taus = {2, 3};
  cfg.etas = {"0.01", "bogus"};
  const auto rows = dgd::run_sweep(cfg);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_TRUE(rows[0].error.empty());
  EXPECT_FALSE(rows[1].error.empty());
  std::ostringstream log;
  EXPECT_EQ(dgd::cmd_sweep(cfg, log), dgd::kExitConfigError);
}

TEST(CliBinaryTest, ExitCodes) {
  const std::string out = scratch("bin.csv").string();
  EXPECT_EQ(cli("run --problem ridge_ls --m 200 --d 5 --tau 3 --out " + out), 0);
  EXPECT_EQ(cli("run --problem nonsense --out " + out), 2);
  EXPECT_EQ(cli("run --problem ridge_ls --eta 2L --out " + out), 2);
  EXPECT_EQ(cli("run --problem ridge_ls"), 2);
  EXPECT_EQ(cli("run --data /nonexistent/file --out " + out), 2);
  EXPECT_EQ(cli("verify-lemmas --instances 50"), 0);
  EXPECT_EQ(cli("verify-lemmas --instances 50 --j-half 1.0"), 1);
  EXPECT_EQ(cli("sweep --m 100 --d 4 --taus 2,3 --etas 0.01,0.02 --out " +
                scratch("bin_sweep.csv").string()),
            0);
  EXPECT_EQ(cli(""), 2);
}

}  // namespace
