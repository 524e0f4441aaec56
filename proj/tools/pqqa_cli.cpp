#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "pqqa/pqqa.hpp"
#include "pqqa/report.hpp"
#include "pqqa/verify.hpp"

namespace {

enum ExitCode { kOk = 0, kSuiteFailure = 1, kConfig = 2, kIo = 3, kSolver = 4 };

struct CommonArgs {
  std::string problem = "mis";
  std::size_t colors = 0;
  std::size_t parts = 0;
  std::string lambda;  // number or "auto"
  std::string solver = "pqqa";
  std::string sa_schedule = "geometric";
  std::string sa_move = "metropolis";
  std::string format = "json";
  std::string output;
  double reference = 0.0;
  bool has_reference = false;
};

void add_common(CLI::App& cmd, pqqa::SolveConfig& cfg, CommonArgs& a) {
  auto& sch = cfg.pqqa.schedule;
  cmd.add_option("--problem", a.problem, "mis | clique | maxcut | partition | coloring")->capture_default_str();
  cmd.add_option("--colors", a.colors, "colors for --problem coloring");
  cmd.add_option("--parts", a.parts, "parts for --problem partition");
  cmd.add_option("--lambda", a.lambda, "penalty weight, or 'auto' (small instances)");
  auto* gen = cmd.add_option("--gen", cfg.gen_spec, "generator spec, e.g. er:n=700,p=0.15");
  auto* input = cmd.add_option("--input", cfg.input_path, "graph file (DIMACS or weighted edge list)");
  gen->excludes(input);
  cmd.add_option("--solver", a.solver, "pqqa | sa | greedy | brute")->capture_default_str();
  cmd.add_option("--runs", cfg.pqqa.runs, "parallel runs S")->capture_default_str();
  cmd.add_option("--steps", sch.total_steps, "annealing steps")->capture_default_str();
  cmd.add_option("--gamma-min", sch.gamma_min)->capture_default_str();
  cmd.add_option("--gamma-max", sch.gamma_max)->capture_default_str();
  cmd.add_option("--temperature", sch.temperature)->capture_default_str();
  cmd.add_option("--lr", sch.learning_rate, "learning rate")->capture_default_str();
  cmd.add_option("--weight-decay", sch.weight_decay)->capture_default_str();
  cmd.add_option("--eval-interval", sch.eval_interval, "0 = steps/100")->capture_default_str();
  cmd.add_flag("!--no-noise", sch.noise, "drop the Langevin noise term");
  cmd.add_option("--comm-strength", cfg.pqqa.comm.comm_strength)->capture_default_str();
  cmd.add_option("--alpha", cfg.pqqa.entropy.alpha, "entropy exponent")->capture_default_str();
  cmd.add_option("--seed", cfg.pqqa.seed)->capture_default_str();
  cmd.add_option("--sa-steps", cfg.sa.steps)->capture_default_str();
  cmd.add_option("--sa-t-start", cfg.sa.t_start)->capture_default_str();
  cmd.add_option("--sa-t-end", cfg.sa.t_end)->capture_default_str();
  cmd.add_option("--sa-schedule", a.sa_schedule, "geometric | linear")->capture_default_str();
  cmd.add_option("--sa-move", a.sa_move, "metropolis | gibbs")->capture_default_str();
  cmd.add_option("--reference", a.reference, "reference objective for ApR")
      ->each([&a](const std::string&) { a.has_reference = true; });
  cmd.add_option("--output,-o", a.output, "output path (stdout when omitted)");
  cmd.add_flag("--omit-timing", cfg.omit_timing, "write wall time as null (byte-stable reports)");
}

void finish_config(pqqa::SolveConfig& cfg, const CommonArgs& a) {
  cfg.problem = pqqa::parse_problem_kind(a.problem);
  cfg.categories = a.colors + a.parts;
  if (a.colors && a.parts) throw pqqa::ConfigError("give --colors or --parts, not both");
  if (cfg.problem == pqqa::ProblemKind::Coloring && a.parts) throw pqqa::ConfigError("coloring takes --colors");
  if (cfg.problem == pqqa::ProblemKind::Partition && a.colors) throw pqqa::ConfigError("partition takes --parts");
  if (a.lambda == "auto") {
    cfg.auto_lambda = true;
  } else if (!a.lambda.empty()) {
    try {
      std::size_t used = 0;
      cfg.lambda = std::stod(a.lambda, &used);
      if (used != a.lambda.size()) throw std::invalid_argument("trailing");
    } catch (const std::logic_error&) {
      throw pqqa::ConfigError("--lambda must be a number or 'auto'");
    }
  }
  cfg.solver = pqqa::parse_solver_kind(a.solver);
  cfg.sa.seed = cfg.pqqa.seed;
  if (a.sa_schedule == "geometric") {
    cfg.sa.schedule = pqqa::SASchedule::Geometric;
  } else if (a.sa_schedule == "linear") {
    cfg.sa.schedule = pqqa::SASchedule::Linear;
  } else {
    throw pqqa::ConfigError("--sa-schedule must be geometric or linear");
  }
  if (a.sa_move == "metropolis") {
    cfg.sa.move = pqqa::SAMove::Metropolis;
  } else if (a.sa_move == "gibbs") {
    cfg.sa.move = pqqa::SAMove::Gibbs;
  } else {
    throw pqqa::ConfigError("--sa-move must be metropolis or gibbs");
  }
  if (a.has_reference) cfg.reference = a.reference;
  if (a.format != "json" && a.format != "csv") throw pqqa::ConfigError("--format must be json or csv");
}

/// Writes to a sibling temp file and renames, so a failed run never leaves a
/// partial report behind.
void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw pqqa::IoError("cannot write '" + tmp.string() + "'");
    out << text;
    out.flush();
    if (!out) {
      out.close();
      std::filesystem::remove(tmp);
      throw pqqa::IoError("write failed for '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw pqqa::IoError("cannot move report to '" + path + "': " + ec.message());
  }
}

void apply_thread_env() {
  const char* env = std::getenv("PQQA_THREADS");
  if (!env || !*env) return;
  char* end = nullptr;
  long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1) throw pqqa::ConfigError("PQQA_THREADS must be a positive integer");
#ifdef _OPENMP
  omp_set_num_threads(static_cast<int>(n));
#endif
}

std::vector<double> parse_values(const std::vector<std::string>& raw) {
  std::vector<double> out;
  for (const auto& r : raw) {
    if (r.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stod(r, &used));
      if (used != r.size()) throw std::invalid_argument("trailing");
    } catch (const std::logic_error&) {
      throw pqqa::ConfigError("--values entry '" + r + "' is not a number");
    }
  }
  return out;
}

int run_verify(bool corrupt) {
  pqqa::VerifyOptions opt;
  opt.corrupt_gradient = corrupt;
  bool ok = true;
  for (const auto& r : pqqa::verify_all(opt)) {
    std::printf("%s %-22s %8.3fs  %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.seconds, r.detail.c_str());
    ok = ok && r.passed;
  }
  return ok ? kOk : kSuiteFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parallel quasi-quantum annealing for graph problems"};
  app.set_config("--config", "", "TOML/INI file with option defaults");
  app.require_subcommand(1);

  pqqa::SolveConfig solve_cfg;
  CommonArgs solve_args;
  auto* solve = app.add_subcommand("solve", "solve one instance and write a report");
  add_common(*solve, solve_cfg, solve_args);
  solve->add_option("--format", solve_args.format, "json | csv")->capture_default_str();
  std::string save_graph;
  solve->add_option("--save-graph", save_graph, "also write the solved graph as a weighted edge list");

  pqqa::SolveConfig sweep_cfg;
  CommonArgs sweep_args;
  std::string axis;
  std::vector<std::string> raw_values;
  std::size_t seeds = 5;
  std::string trace_out;
  auto* sweep = app.add_subcommand("sweep", "ablation grid: one solve per (value, seed), CSV out");
  add_common(*sweep, sweep_cfg, sweep_args);
  sweep->add_option("--axis", axis, "gamma0 | steps | comm_strength")->required();
  sweep->add_option("--values", raw_values, "comma-separated axis values")->delimiter(',')->expected(0, -1);
  sweep->add_option("--seeds", seeds, "seeds per value")->capture_default_str();
  sweep->add_option("--trace-output", trace_out, "long-format trace CSV");

  bool corrupt = false;
  auto* verify = app.add_subcommand("verify", "run the property suites");
  verify->add_flag("--corrupt-gradient", corrupt, "test hook: perturb analytic gradients")->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    apply_thread_env();
    if (*verify) return run_verify(corrupt);
    if (*solve) {
      finish_config(solve_cfg, solve_args);
      const auto outcome = pqqa::solve(solve_cfg);
      const std::string text = solve_args.format == "json"
                                   ? pqqa::report_json(solve_cfg, outcome).dump(2) + "\n"
                                   : pqqa::report_csv(solve_cfg, outcome);
      if (!save_graph.empty()) {
        write_output(save_graph, pqqa::serialize_weighted_edgelist(pqqa::load_config_instance(solve_cfg).graph));
      }
      write_output(solve_args.output, text);
      return kOk;
    }
    finish_config(sweep_cfg, sweep_args);
    const auto ax = pqqa::parse_sweep_axis(axis);
    const auto rows = pqqa::sweep(sweep_cfg, ax, parse_values(raw_values), seeds);
    if (!trace_out.empty()) write_output(trace_out, pqqa::sweep_trace_csv(ax, rows));
    write_output(sweep_args.output, pqqa::sweep_csv(ax, rows, sweep_cfg.omit_timing));
    return kOk;
  } catch (const pqqa::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const pqqa::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const pqqa::SolverAbort& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSolver;
  } catch (const pqqa::GenerationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSolver;
  } catch (const pqqa::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  }
}
