#include <gtest/gtest.h>

#include <sstream>

#include "pqqa/report.hpp"

using namespace pqqa;

namespace {

SolveConfig small_config() {
  SolveConfig cfg;
  cfg.problem = ProblemKind::MIS;
  cfg.gen_spec = "er:n=14,p=0.3";
  cfg.pqqa.runs = 4;
  cfg.pqqa.schedule.total_steps = 300;
  cfg.pqqa.seed = 3;
  return cfg;
}

std::size_t line_count(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(Solve, JsonHasEveryTopLevelKey) {
  auto cfg = small_config();
  auto out = solve(cfg);
  auto j = report_json(cfg, out);
  for (const char* key : {"schema_version", "config", "instance", "solution", "metrics", "final_mean_entropy",
                          "steps_to_99", "trace", "wall_time_s"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["schema_version"], kReportSchemaVersion);
  EXPECT_EQ(j["instance"]["nodes"], 14);
  EXPECT_EQ(j["solution"]["assignment"].size(), 14u);
  EXPECT_EQ(j["metrics"]["reference_source"], "brute_force");
  EXPECT_TRUE(j["wall_time_s"].is_number());
  EXPECT_FALSE(j["trace"].empty());
}

TEST(Solve, BruteForceReferenceGivesApr) {
  auto cfg = small_config();
  cfg.solver = SolverKind::Brute;
  auto out = solve(cfg);
  ASSERT_TRUE(out.metrics.apr.has_value());
  EXPECT_DOUBLE_EQ(*out.metrics.apr, 1.0);
  EXPECT_FALSE(out.final_mean_entropy.has_value());

  cfg.reference = 100.0;
  auto user = solve(cfg);
  EXPECT_EQ(user.reference_source, "user");
  EXPECT_DOUBLE_EQ(*user.metrics.apr, user.metrics.raw_objective / 100.0);
}

TEST(Solve, EverySolverRuns) {
  for (SolverKind s : {SolverKind::PQQA, SolverKind::SA, SolverKind::Greedy, SolverKind::Brute}) {
    auto cfg = small_config();
    cfg.solver = s;
    cfg.sa.steps = 2000;
    auto out = solve(cfg);
    EXPECT_TRUE(out.best.feasible) << to_string(s);
    EXPECT_EQ(parse_solver_kind(to_string(s)), s);
  }
}

TEST(Solve, OmitTimingIsByteStable) {
  auto cfg = small_config();
  cfg.omit_timing = true;
  cfg.pqqa.comm.comm_strength = 0.2;
  const std::string a = report_json(cfg, solve(cfg)).dump(2);
  const std::string b = report_json(cfg, solve(cfg)).dump(2);
  EXPECT_EQ(a, b);
  EXPECT_NE(a.find("\"wall_time_s\": null"), std::string::npos);
  EXPECT_EQ(report_csv(cfg, solve(cfg)), report_csv(cfg, solve(cfg)));
}

TEST(Solve, CsvHasHeaderAndOneRow) {
  auto cfg = small_config();
  cfg.problem = ProblemKind::Coloring;
  cfg.categories = 3;
  cfg.gen_spec = "queen:n=3";
  const std::string csv = report_csv(cfg, solve(cfg));
  EXPECT_EQ(line_count(csv), 2u);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), kSolveCsvHeader);
}

TEST(Solve, ConfigErrors) {
  auto cfg = small_config();
  cfg.input_path = "graph.col";
  EXPECT_THROW(solve(cfg), ConfigError);
  cfg = small_config();
  cfg.problem = ProblemKind::Coloring;
  EXPECT_THROW(solve(cfg), ConfigError);
  cfg = small_config();
  cfg.categories = 3;
  EXPECT_THROW(solve(cfg), ConfigError);
  cfg = small_config();
  cfg.problem = ProblemKind::MaxCut;
  cfg.solver = SolverKind::Greedy;
  EXPECT_THROW(solve(cfg), ConfigError);
  cfg = small_config();
  cfg.gen_spec.clear();
  cfg.input_path = "/nonexistent/file.col";
  EXPECT_THROW(solve(cfg), IoError);
  EXPECT_THROW(parse_solver_kind("qaoa"), ConfigError);
}

TEST(Solve, AutoLambdaUsesSelection) {
  auto cfg = small_config();
  cfg.gen_spec = "er:n=2,m=1";
  cfg.auto_lambda = true;
  EXPECT_DOUBLE_EQ(solve(cfg).lambda, 1.5);
  cfg.auto_lambda = false;
  cfg.lambda = 3.0;
  EXPECT_DOUBLE_EQ(solve(cfg).lambda, 3.0);
}

TEST(Sweep, RowsPerValueAndSeed) {
  auto cfg = small_config();
  cfg.pqqa.schedule.total_steps = 100;
  auto rows = sweep(cfg, SweepAxis::CommStrength, {0.0, 0.2, 0.4}, 5);
  ASSERT_EQ(rows.size(), 15u);
  EXPECT_EQ(rows[0].seed, 3u);
  EXPECT_EQ(rows[4].seed, 7u);
  EXPECT_DOUBLE_EQ(rows[5].value, 0.2);
  const std::string csv = sweep_csv(SweepAxis::CommStrength, rows, true);
  EXPECT_EQ(line_count(csv), 16u);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), kSweepCsvHeader);
  EXPECT_GT(line_count(sweep_trace_csv(SweepAxis::CommStrength, rows)), 15u);
}

TEST(Sweep, Errors) {
  auto cfg = small_config();
  EXPECT_THROW(sweep(cfg, SweepAxis::Gamma0, {}, 5), ConfigError);
  EXPECT_THROW(sweep(cfg, SweepAxis::Steps, {2.5}, 1), ConfigError);
  cfg.solver = SolverKind::SA;
  EXPECT_THROW(sweep(cfg, SweepAxis::Gamma0, {-1.0}, 1), ConfigError);
  EXPECT_THROW(parse_sweep_axis("lr"), ConfigError);
  EXPECT_EQ(parse_sweep_axis("gamma0"), SweepAxis::Gamma0);
}
