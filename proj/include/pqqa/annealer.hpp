#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "pqqa/error.hpp"
#include "pqqa/problems.hpp"
#include "pqqa/relax.hpp"

namespace pqqa {

/// Linear gamma ramp, optimizer hyper-parameters and reporting cadence.
struct AnnealSchedule {
  double gamma_min = -2.0;
  double gamma_max = 0.1;
  long total_steps = 3000;
  double temperature = 1e-3;
  double learning_rate = 1.0;
  double weight_decay = 0.01;
  long eval_interval = 0;  // 0 -> total_steps / 100 (at least 1)
  bool noise = true;

  long effective_eval_interval() const noexcept {
    if (eval_interval > 0) return eval_interval;
    return std::max<long>(1, total_steps / 100);
  }

  void validate() const {
    if (!(gamma_min <= gamma_max)) throw ConfigError("gamma_min must be <= gamma_max");
    if (total_steps < 1) throw ConfigError("total_steps must be >= 1");
    if (!(temperature >= 0.0)) throw ConfigError("temperature must be >= 0");
    if (!(learning_rate > 0.0)) throw ConfigError("learning_rate must be > 0");
    if (!(weight_decay >= 0.0)) throw ConfigError("weight_decay must be >= 0");
    if (eval_interval < 0) throw ConfigError("eval_interval must be >= 0");
  }
};

inline double gamma_at(const AnnealSchedule& sch, long step) {
  return std::lerp(sch.gamma_min, sch.gamma_max, static_cast<double>(step) / static_cast<double>(sch.total_steps));
}

/// Adaptive-moment state with bias correction and decoupled weight decay.
struct OptimizerState {
  std::vector<double> first_moment;
  std::vector<double> second_moment;
  long step_count = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

namespace detail {

inline std::mt19937_64 run_engine(std::uint64_t seed, std::size_t run, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(run), static_cast<std::uint32_t>(run >> 32), stream};
  return std::mt19937_64(seq);
}

}  // namespace detail

/// One Gaussian stream per run, derived from (seed, run index). A run only
/// ever draws from its own stream, so results do not depend on how runs
/// are scheduled across threads.
class NoiseStreams {
 public:
  NoiseStreams() = default;
  NoiseStreams(std::uint64_t seed, std::size_t runs) {
    engines_.reserve(runs);
    for (std::size_t s = 0; s < runs; ++s) engines_.push_back(detail::run_engine(seed, s, 1));
    normals_.resize(runs);
  }

  double normal(std::size_t run) { return normals_[run](engines_[run]); }
  std::size_t size() const noexcept { return engines_.size(); }

 private:
  std::vector<std::mt19937_64> engines_;
  std::vector<std::normal_distribution<double>> normals_;
};

/// Everything that evolves during a solve.
struct AnnealState {
  RelaxedEnsemble ensemble;
  OptimizerState optimizer;
  NoiseStreams noise;
  std::vector<double> grad;
};

inline constexpr double kInitJitter = 0.1;

/// Binary entries ~ U(0.5 - 0.1, 0.5 + 0.1); categorical rows are
/// (1/K)(1 + U(-0.1, 0.1)) renormalized. Moments start at zero.
inline AnnealState init_ensemble(const EnergyModel& m, std::size_t runs, std::uint64_t seed) {
  if (runs < 1) throw ConfigError("need at least one run");
  AnnealState st;
  st.ensemble = RelaxedEnsemble(runs, m.dim(), m.width());
  std::uniform_real_distribution<double> jitter(-kInitJitter, kInitJitter);
  for (std::size_t s = 0; s < runs; ++s) {
    auto eng = detail::run_engine(seed, s, 0);
    auto row = st.ensemble.run(s);
    if (!m.categorical()) {
      for (double& v : row) v = 0.5 + jitter(eng);
    } else {
      const double base = 1.0 / static_cast<double>(m.width());
      for (double& v : row) v = base * (1.0 + jitter(eng));
      kary_sigma_inplace(row, m.width());
    }
  }
  st.optimizer.first_moment.assign(st.ensemble.p.size(), 0.0);
  st.optimizer.second_moment.assign(st.ensemble.p.size(), 0.0);
  st.noise = NoiseStreams(seed, runs);
  st.grad.assign(st.ensemble.p.size(), 0.0);
  return st;
}

/// Projects every K-wide gradient row onto the face of the simplex that p
/// currently lies on: entries stuck at 0 and pushing outward are zeroed and
/// the mean of the remaining entries is removed. Row normalization cancels
/// any common shift, but the adaptive step would otherwise scale that shift
/// up to full size and flatten the row.
inline void project_rows_to_face(std::span<const double> p, std::span<double> g, std::size_t k) {
  for (std::size_t r = 0; r + k <= g.size(); r += k) {
    double mean = 0.0;
    std::size_t free = 0;
    for (std::size_t j = r; j < r + k; ++j) {
      if (p[j] > 0.0 || g[j] < 0.0) {
        mean += g[j];
        ++free;
      }
    }
    if (free > 0) mean /= static_cast<double>(free);
    for (std::size_t j = r; j < r + k; ++j) g[j] = (p[j] > 0.0 || g[j] < 0.0) ? g[j] - mean : 0.0;
  }
}

/// One sensitive-transition update at `step` (1-based):
///   g  = grad R(p) at gamma_at(step)
///   p' = p - lr * mhat / (sqrt(vhat) + eps) - lr * wd * p + sqrt(2 lr T) xi
///   p  = clamp(p')   (row-renormalized for categorical problems)
inline void qqa_step(AnnealState& st, const EnergyModel& m, const AnnealSchedule& sch, const EntropyConfig& ecfg,
                     const CommConfig& ccfg, long step) {
  auto& e = st.ensemble;
  auto& opt = st.optimizer;
  e.gamma = gamma_at(sch, step);
  ensemble_gradient(e, m, e.gamma, ecfg, ccfg, st.grad);
  if (m.categorical()) project_rows_to_face(e.p, st.grad, m.width());

  ++opt.step_count;
  const double bc1 = 1.0 - std::pow(opt.beta1, static_cast<double>(opt.step_count));
  const double bc2 = 1.0 - std::pow(opt.beta2, static_cast<double>(opt.step_count));
  const double lr = sch.learning_rate;
  const double decay = lr * sch.weight_decay;
  const double noise_scale = sch.noise ? std::sqrt(2.0 * lr * sch.temperature) : 0.0;
  const auto runs = static_cast<long>(e.runs);
  const std::size_t dim = e.dim;
  bool finite = true;

#pragma omp parallel for schedule(static) reduction(&& : finite)
  for (long sl = 0; sl < runs; ++sl) {
    const auto s = static_cast<std::size_t>(sl);
    double* p = e.p.data() + s * dim;
    double* g = st.grad.data() + s * dim;
    double* m1 = opt.first_moment.data() + s * dim;
    double* m2 = opt.second_moment.data() + s * dim;
    for (std::size_t i = 0; i < dim; ++i) {
      const double gi = g[i];
      if (!std::isfinite(gi)) finite = false;
      m1[i] = opt.beta1 * m1[i] + (1.0 - opt.beta1) * gi;
      m2[i] = opt.beta2 * m2[i] + (1.0 - opt.beta2) * gi * gi;
      const double mhat = m1[i] / bc1;
      const double vhat = m2[i] / bc2;
      double v = p[i] - lr * mhat / (std::sqrt(vhat) + opt.eps) - decay * p[i];
      if (noise_scale > 0.0) v += noise_scale * st.noise.normal(s);
      p[i] = v;
    }
    auto row = e.run(s);
    if (m.categorical()) {
      kary_sigma_inplace(row, m.width());
    } else {
      clamp_sigma_inplace(row);
    }
  }
  if (!finite) throw SolverAbort("non-finite gradient at step " + std::to_string(step));
}

/// Projection rounding: x_i = [p_i >= 1/2] for binary problems, row argmax
/// (lowest index on ties) for categorical ones.
inline Assignment round_run(const EnergyModel& m, std::span<const double> p) {
  Assignment x(m.num_nodes());
  if (!m.categorical()) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = p[i] >= 0.5 ? 1 : 0;
  } else {
    const std::size_t k = m.width();
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double* row = &p[i * k];
      std::size_t best = 0;
      for (std::size_t j = 1; j < k; ++j) {
        if (row[j] > row[best]) best = j;
      }
      x[i] = static_cast<int>(best);
    }
  }
  return x;
}

inline std::vector<DiscreteSolution> round_solution(const RelaxedEnsemble& e, const EnergyModel& m) {
  std::vector<DiscreteSolution> out(e.runs);
#pragma omp parallel for schedule(static)
  for (long s = 0; s < static_cast<long>(e.runs); ++s) {
    out[static_cast<std::size_t>(s)] = evaluate(m, round_run(m, e.run(static_cast<std::size_t>(s))));
  }
  return out;
}

/// Mean per-node entropy of each run.
inline std::vector<double> per_node_entropy(const RelaxedEnsemble& e, const EnergyModel& m,
                                            const EntropyConfig& ecfg) {
  std::vector<double> out(e.runs, 0.0);
  const double n = std::max<double>(1.0, static_cast<double>(m.num_nodes()));
  for (std::size_t s = 0; s < e.runs; ++s) out[s] = entropy(e.run(s), m.width(), ecfg) / n;
  return out;
}

struct TracePoint {
  long step = 0;
  double gamma = 0.0;
  double mean_entropy = 0.0;
  double best_objective = 0.0;
};

struct RunOptions {
  std::size_t runs = 100;
  AnnealSchedule schedule;
  CommConfig comm;
  EntropyConfig entropy;
  std::uint64_t seed = 0;
};

struct RunReport {
  RunOptions options;
  DiscreteSolution best;  // global best over runs and evaluation points
  std::size_t best_run = 0;
  long best_step = 0;
  double best_raw_objective = 0.0;
  std::vector<DiscreteSolution> run_best;
  std::vector<double> final_entropy;  // per run, per node
  double final_mean_entropy = 0.0;
  std::vector<TracePoint> trace;
  double wall_time_s = 0.0;
};

/// First traced step at which the best objective is within (1 - fraction)
/// of its final value, measured relative to |final|.
inline long steps_to_fraction(const std::vector<TracePoint>& trace, double fraction) {
  if (trace.empty()) return 0;
  const double final_best = trace.back().best_objective;
  const double slack = (1.0 - fraction) * std::abs(final_best);
  for (const auto& t : trace) {
    if (t.best_objective <= final_best + slack) return t.step;
  }
  return trace.back().step;
}

/// Runs S coupled trajectories for `total_steps` updates. All runs are
/// rounded at step 0, every eval_interval steps and at the final step; the
/// best penalized objective so far is tracked per run and globally.
inline RunReport run(const EnergyModel& m, const RunOptions& opts) {
  opts.schedule.validate();
  opts.comm.validate();
  opts.entropy.validate();
  const auto t0 = std::chrono::steady_clock::now();

  RunReport rep;
  rep.options = opts;
  AnnealState st = init_ensemble(m, opts.runs, opts.seed);
  rep.run_best.assign(opts.runs, DiscreteSolution{{}, std::numeric_limits<double>::infinity(), 0.0, false});
  rep.best.objective = std::numeric_limits<double>::infinity();

  const long total = opts.schedule.total_steps;
  const long every = opts.schedule.effective_eval_interval();

  auto evaluate_all = [&](long step) {
    auto sols = round_solution(st.ensemble, m);
    for (std::size_t s = 0; s < sols.size(); ++s) {
      if (sols[s].objective < rep.run_best[s].objective) rep.run_best[s] = sols[s];
      if (sols[s].objective < rep.best.objective) {
        rep.best = sols[s];
        rep.best_run = s;
        rep.best_step = step;
      }
    }
    auto ent = per_node_entropy(st.ensemble, m, opts.entropy);
    double mean = 0.0;
    for (double v : ent) mean += v;
    mean /= static_cast<double>(ent.size());
    rep.trace.push_back({step, gamma_at(opts.schedule, step), mean, rep.best.objective});
    return ent;
  };

  evaluate_all(0);
  for (long t = 1; t <= total; ++t) {
    qqa_step(st, m, opts.schedule, opts.entropy, opts.comm, t);
    if (t % every == 0 || t == total) {
      auto ent = evaluate_all(t);
      if (t == total) rep.final_entropy = std::move(ent);
    }
  }
  rep.final_mean_entropy = rep.trace.back().mean_entropy;
  rep.best_raw_objective = raw_objective(m, rep.best.assignment);
  rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

/// Greedy feasibility pass for MIS: while conflicts remain, deselect the
/// selected node with the most selected neighbors (lowest index on ties).
inline DiscreteSolution repair_mis(const DiscreteSolution& sol, const EnergyModel& m) {
  if (m.kind() != ProblemKind::MIS) throw ConfigError("repair_mis requires an MIS model");
  check_assignment(m, sol.assignment);
  const Graph& g = m.graph();
  Assignment x = sol.assignment;
  std::vector<std::size_t> sel_deg(x.size(), 0);
  for (const auto& e : g.edges()) {
    if (x[e.u] && x[e.v]) {
      ++sel_deg[e.u];
      ++sel_deg[e.v];
    }
  }
  while (true) {
    std::size_t worst = x.size();
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] && sel_deg[i] > 0 && (worst == x.size() || sel_deg[i] > sel_deg[worst])) worst = i;
    }
    if (worst == x.size()) break;
    x[worst] = 0;
    sel_deg[worst] = 0;
    for (const auto& nb : g.neighbors(static_cast<node_t>(worst))) {
      if (x[nb.node]) --sel_deg[nb.node];
    }
  }
  return evaluate(m, std::move(x));
}

}  // namespace pqqa
