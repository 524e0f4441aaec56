#pragma once

#include <chrono>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "pqqa/annealer.hpp"
#include "pqqa/baseline.hpp"
#include "pqqa/instance.hpp"
#include "pqqa/problems.hpp"

// Solver dispatch and machine-readable reports. JSON is canonical; CSV is a
// flat projection (one row per solve, one row per sweep cell).

namespace pqqa {

inline constexpr const char* kReportSchemaVersion = "1.0";

enum class SolverKind { PQQA, SA, Greedy, Brute };

inline std::string_view to_string(SolverKind s) {
  switch (s) {
    case SolverKind::PQQA: return "pqqa";
    case SolverKind::SA: return "sa";
    case SolverKind::Greedy: return "greedy";
    case SolverKind::Brute: return "brute";
  }
  return "pqqa";
}

inline SolverKind parse_solver_kind(std::string_view s) {
  if (s == "pqqa") return SolverKind::PQQA;
  if (s == "sa") return SolverKind::SA;
  if (s == "greedy") return SolverKind::Greedy;
  if (s == "brute") return SolverKind::Brute;
  throw ConfigError("unknown solver '" + std::string(s) + "'");
}

struct SolveConfig {
  ProblemKind problem = ProblemKind::MIS;
  std::size_t categories = 0;          // colors or parts for categorical problems
  std::optional<double> lambda;        // problem default when unset
  bool auto_lambda = false;            // select_lambda on small instances
  std::string gen_spec;                // exactly one of gen_spec / input_path
  std::string input_path;
  SolverKind solver = SolverKind::PQQA;
  RunOptions pqqa;
  SAConfig sa;
  std::optional<double> reference;
  bool omit_timing = false;            // wall time written as null

  void validate() const {
    if (gen_spec.empty() == input_path.empty()) throw ConfigError("give exactly one of --gen or --input");
    const bool cat = problem == ProblemKind::Partition || problem == ProblemKind::Coloring;
    if (cat && categories < 2) throw ConfigError("partition/coloring need at least 2 parts/colors");
    if (!cat && categories != 0) throw ConfigError("--colors/--parts only apply to partition and coloring");
    if (lambda && !(*lambda > 0.0)) throw ConfigError("lambda must be positive");
    if (pqqa.runs < 1) throw ConfigError("runs must be >= 1");
    pqqa.schedule.validate();
    pqqa.comm.validate();
    pqqa.entropy.validate();
    if (solver == SolverKind::SA) sa.validate();
    if (solver == SolverKind::Greedy && problem != ProblemKind::MIS) throw ConfigError("greedy solver is MIS only");
  }
};

inline Instance load_config_instance(const SolveConfig& cfg) {
  return cfg.gen_spec.empty() ? load_instance(cfg.input_path) : generate_instance(cfg.gen_spec, cfg.pqqa.seed);
}

inline EnergyModel build_model(const SolveConfig& cfg, Graph g) {
  EnergyModel m = [&] {
    switch (cfg.problem) {
      case ProblemKind::MIS: return EnergyModel::mis(std::move(g));
      case ProblemKind::MaxClique: return EnergyModel::max_clique(std::move(g));
      case ProblemKind::MaxCut: return EnergyModel::max_cut(std::move(g));
      case ProblemKind::Partition: return EnergyModel::partition(std::move(g), cfg.categories);
      case ProblemKind::Coloring: return EnergyModel::coloring(std::move(g), cfg.categories);
    }
    return EnergyModel::mis(std::move(g));
  }();
  if (cfg.lambda) return m.with_lambda(*cfg.lambda);
  if (cfg.auto_lambda) return m.with_lambda(select_lambda(m));
  return m;
}

struct TraceRow {
  long step = 0;
  double best_objective = 0.0;
  std::optional<double> gamma;
  std::optional<double> mean_entropy;
  std::optional<double> temperature;
};

struct SolveOutcome {
  InstanceMeta instance;
  std::size_t nodes = 0, edges = 0;
  double lambda = 0.0;
  DiscreteSolution best;
  Metrics metrics;
  std::optional<double> reference;
  std::string reference_source;  // "user", "brute_force" or ""
  std::optional<double> final_mean_entropy;
  std::optional<std::size_t> best_run;
  std::optional<long> best_step;
  std::optional<long> steps_to_99;
  std::vector<TraceRow> trace;
  double wall_time_s = 0.0;
};

inline bool brute_force_feasible(const EnergyModel& m) {
  return static_cast<double>(m.num_nodes()) * std::log2(static_cast<double>(m.arity())) <= 20.0;
}

inline SolveOutcome solve(const SolveConfig& cfg) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  Instance inst = load_config_instance(cfg);
  SolveOutcome out;
  out.instance = inst.meta;
  out.nodes = inst.graph.num_nodes();
  out.edges = inst.graph.num_edges();
  const EnergyModel m = build_model(cfg, std::move(inst.graph));
  out.lambda = m.lambda();

  switch (cfg.solver) {
    case SolverKind::PQQA: {
      const RunReport rep = run(m, cfg.pqqa);
      out.best = rep.best;
      out.final_mean_entropy = rep.final_mean_entropy;
      out.best_run = rep.best_run;
      out.best_step = rep.best_step;
      out.steps_to_99 = steps_to_fraction(rep.trace, 0.99);
      for (const auto& t : rep.trace) out.trace.push_back({t.step, t.best_objective, t.gamma, t.mean_entropy, {}});
      break;
    }
    case SolverKind::SA: {
      const SAResult res = sa_solve_traced(m, cfg.sa);
      out.best = res.best;
      for (const auto& [step, e] : res.trace) out.trace.push_back({step, e, {}, {}, sa_temperature(cfg.sa, step)});
      break;
    }
    case SolverKind::Greedy: out.best = greedy_mis(m.graph(), cfg.pqqa.seed); break;
    case SolverKind::Brute: out.best = brute_force(m); break;
  }

  if (cfg.reference) {
    out.reference = cfg.reference;
    out.reference_source = "user";
  } else if (brute_force_feasible(m)) {
    out.reference = raw_objective(m, brute_force(m).assignment);
    out.reference_source = "brute_force";
  }
  out.metrics = compute_metrics(out.best, m, out.reference);
  out.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

namespace detail {

template <typename T>
nlohmann::json opt_json(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace detail

/// Everything needed to rerun the solve bit-exactly.
inline nlohmann::json config_json(const SolveConfig& cfg) {
  using nlohmann::json;
  const auto& sch = cfg.pqqa.schedule;
  json j;
  j["problem"] = std::string(to_string(cfg.problem));
  j["categories"] = cfg.categories;
  j["lambda"] = detail::opt_json(cfg.lambda);
  j["auto_lambda"] = cfg.auto_lambda;
  j["input"] = cfg.gen_spec.empty() ? json{{"kind", "file"}, {"path", cfg.input_path}}
                                    : json{{"kind", "generator"}, {"spec", cfg.gen_spec}};
  j["solver"] = std::string(to_string(cfg.solver));
  j["seed"] = cfg.pqqa.seed;
  j["reference"] = detail::opt_json(cfg.reference);
  j["pqqa"] = {{"runs", cfg.pqqa.runs},
               {"gamma_min", sch.gamma_min},
               {"gamma_max", sch.gamma_max},
               {"steps", sch.total_steps},
               {"temperature", sch.temperature},
               {"learning_rate", sch.learning_rate},
               {"weight_decay", sch.weight_decay},
               {"eval_interval", sch.effective_eval_interval()},
               {"noise", sch.noise},
               {"comm_strength", cfg.pqqa.comm.comm_strength},
               {"epsilon_std", cfg.pqqa.comm.epsilon_std},
               {"entropy_alpha", cfg.pqqa.entropy.alpha}};
  j["sa"] = {{"t_start", cfg.sa.t_start},
             {"t_end", cfg.sa.t_end},
             {"steps", cfg.sa.steps},
             {"schedule", cfg.sa.schedule == SASchedule::Geometric ? "geometric" : "linear"},
             {"move", cfg.sa.move == SAMove::Metropolis ? "metropolis" : "gibbs"}};
  return j;
}

inline nlohmann::json report_json(const SolveConfig& cfg, const SolveOutcome& o) {
  using nlohmann::json;
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["config"] = config_json(cfg);
  j["instance"] = {{"name", o.instance.name},
                   {"family", std::string(to_string(o.instance.family))},
                   {"nodes", o.nodes},
                   {"edges", o.edges},
                   {"lambda", o.lambda}};
  j["solution"] = {{"assignment", o.best.assignment},
                   {"objective", o.best.objective},
                   {"penalty_violation", o.best.penalty_violation},
                   {"feasible", o.best.feasible},
                   {"best_run", detail::opt_json(o.best_run)},
                   {"best_step", detail::opt_json(o.best_step)}};
  const auto& mt = o.metrics;
  j["metrics"] = {{"raw_objective", mt.raw_objective},
                  {"reference", detail::opt_json(o.reference)},
                  {"reference_source", o.reference_source.empty() ? json(nullptr) : json(o.reference_source)},
                  {"apr", detail::opt_json(mt.apr)},
                  {"cut_ratio", detail::opt_json(mt.cut_ratio)},
                  {"balanceness", detail::opt_json(mt.balanceness)},
                  {"conflicts", detail::opt_json(mt.conflicts)},
                  {"is_density", detail::opt_json(mt.is_density)}};
  j["final_mean_entropy"] = detail::opt_json(o.final_mean_entropy);
  j["steps_to_99"] = detail::opt_json(o.steps_to_99);
  json trace = json::array();
  for (const auto& t : o.trace) {
    trace.push_back({{"step", t.step},
                     {"best_objective", t.best_objective},
                     {"gamma", detail::opt_json(t.gamma)},
                     {"mean_entropy", detail::opt_json(t.mean_entropy)},
                     {"temperature", detail::opt_json(t.temperature)}});
  }
  j["trace"] = std::move(trace);
  j["wall_time_s"] = cfg.omit_timing ? json(nullptr) : json(o.wall_time_s);
  return j;
}

namespace detail {

inline std::string csv_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

template <typename T>
std::string csv_opt(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_floating_point_v<T>) {
    return csv_number(*v);
  } else {
    return std::to_string(*v);
  }
}

}  // namespace detail

inline constexpr const char* kSolveCsvHeader =
    "problem,solver,instance,seed,nodes,edges,objective,raw_objective,feasible,apr,cut_ratio,balanceness,conflicts,"
    "is_density,final_mean_entropy,steps_to_99,wall_time_s";

inline std::string report_csv(const SolveConfig& cfg, const SolveOutcome& o) {
  std::ostringstream os;
  os << kSolveCsvHeader << '\n';
  const auto& mt = o.metrics;
  os << to_string(cfg.problem) << ',' << to_string(cfg.solver) << ',' << '"' << o.instance.name << '"' << ','
     << cfg.pqqa.seed << ',' << o.nodes << ',' << o.edges << ',' << detail::csv_number(o.best.objective) << ','
     << detail::csv_number(mt.raw_objective) << ',' << (o.best.feasible ? 1 : 0) << ',' << detail::csv_opt(mt.apr)
     << ',' << detail::csv_opt(mt.cut_ratio) << ',' << detail::csv_opt(mt.balanceness) << ','
     << detail::csv_opt(mt.conflicts) << ',' << detail::csv_opt(mt.is_density) << ','
     << detail::csv_opt(o.final_mean_entropy) << ',' << detail::csv_opt(o.steps_to_99) << ','
     << (cfg.omit_timing ? std::string() : detail::csv_number(o.wall_time_s)) << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------
// Sweeps

enum class SweepAxis { Gamma0, Steps, CommStrength };

inline SweepAxis parse_sweep_axis(std::string_view s) {
  if (s == "gamma0") return SweepAxis::Gamma0;
  if (s == "steps") return SweepAxis::Steps;
  if (s == "comm_strength") return SweepAxis::CommStrength;
  throw ConfigError("unknown sweep axis '" + std::string(s) + "'");
}

inline std::string_view to_string(SweepAxis a) {
  switch (a) {
    case SweepAxis::Gamma0: return "gamma0";
    case SweepAxis::Steps: return "steps";
    case SweepAxis::CommStrength: return "comm_strength";
  }
  return "gamma0";
}

struct SweepRow {
  double value = 0.0;
  std::uint64_t seed = 0;
  SolveOutcome outcome;
};

/// One solve per (value, seed); seeds are base, base+1, ... The instance is
/// rebuilt per cell from the same spec, so a generator seed fixed with
/// "seed=" in the spec keeps one instance across the whole sweep.
inline std::vector<SweepRow> sweep(const SolveConfig& base, SweepAxis axis, const std::vector<double>& values,
                                   std::size_t seeds) {
  if (values.empty()) throw ConfigError("sweep needs at least one value");
  if (seeds < 1) throw ConfigError("sweep needs at least one seed");
  if (base.solver != SolverKind::PQQA) throw ConfigError("sweeps run the pqqa solver");
  std::vector<SweepRow> rows;
  for (double v : values) {
    for (std::size_t k = 0; k < seeds; ++k) {
      SolveConfig cfg = base;
      cfg.pqqa.seed = base.pqqa.seed + k;
      switch (axis) {
        case SweepAxis::Gamma0: cfg.pqqa.schedule.gamma_min = v; break;
        case SweepAxis::Steps:
          if (v < 1 || v != std::floor(v)) throw ConfigError("steps values must be positive integers");
          cfg.pqqa.schedule.total_steps = static_cast<long>(v);
          break;
        case SweepAxis::CommStrength: cfg.pqqa.comm.comm_strength = v; break;
      }
      rows.push_back({v, cfg.pqqa.seed, solve(cfg)});
    }
  }
  return rows;
}

inline constexpr const char* kSweepCsvHeader =
    "axis,value,seed,best_objective,raw_objective,apr,feasible,final_mean_entropy,steps_to_99,wall_time_s";

inline std::string sweep_csv(SweepAxis axis, const std::vector<SweepRow>& rows, bool omit_timing) {
  std::ostringstream os;
  os << kSweepCsvHeader << '\n';
  for (const auto& r : rows) {
    const auto& o = r.outcome;
    os << to_string(axis) << ',' << detail::csv_number(r.value) << ',' << r.seed << ','
       << detail::csv_number(o.best.objective) << ',' << detail::csv_number(o.metrics.raw_objective) << ','
       << detail::csv_opt(o.metrics.apr) << ',' << (o.best.feasible ? 1 : 0) << ','
       << detail::csv_opt(o.final_mean_entropy) << ',' << detail::csv_opt(o.steps_to_99) << ','
       << (omit_timing ? std::string() : detail::csv_number(o.wall_time_s)) << '\n';
  }
  return os.str();
}

/// Long-format trace table (axis value, seed, step, best objective) for
/// convergence plots.
inline std::string sweep_trace_csv(SweepAxis axis, const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "axis,value,seed,step,best_objective,mean_entropy\n";
  for (const auto& r : rows) {
    for (const auto& t : r.outcome.trace) {
      os << to_string(axis) << ',' << detail::csv_number(r.value) << ',' << r.seed << ',' << t.step << ','
         << detail::csv_number(t.best_objective) << ',' << detail::csv_opt(t.mean_entropy) << '\n';
    }
  }
  return os.str();
}

}  // namespace pqqa
