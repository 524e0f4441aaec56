#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "pqqa/error.hpp"
#include "pqqa/problems.hpp"

namespace pqqa {

/// Global minimizer of the penalized energy by enumeration; ties resolve to
/// the lexicographically smallest assignment. Requires arity^N <= 2^24.
inline DiscreteSolution brute_force(const EnergyModel& m) {
  Assignment best;
  double best_e = std::numeric_limits<double>::infinity();
  for_each_assignment(m.num_nodes(), m.arity(), std::uint64_t{1} << 24, [&](std::span<const int> x) {
    double e = discrete_energy(m, x);
    if (e < best_e - 1e-9) {
      best_e = e;
      best.assign(x.begin(), x.end());
    }
  });
  return evaluate(m, std::move(best));
}

/// Random greedy MIS: repeatedly take a node of minimum residual degree
/// (uniform among ties), then delete it and its neighborhood.
inline DiscreteSolution greedy_mis(const Graph& graph, std::uint64_t seed) {
  const EnergyModel m = EnergyModel::mis(graph);
  const Graph& g = m.graph();
  const std::size_t n = g.num_nodes();
  std::mt19937_64 rng(seed);

  // Degree buckets with O(1) removal via position index.
  std::vector<std::size_t> deg(n), pos(n);
  std::vector<std::vector<node_t>> bucket(n + 1);
  std::vector<char> alive(n, 1);
  for (node_t i = 0; i < n; ++i) {
    deg[i] = g.degree(i);
    pos[i] = bucket[deg[i]].size();
    bucket[deg[i]].push_back(i);
  }
  auto unlink = [&](node_t v) {
    auto& b = bucket[deg[v]];
    node_t last = b.back();
    b[pos[v]] = last;
    pos[last] = pos[v];
    b.pop_back();
  };
  auto kill = [&](node_t v) {
    unlink(v);
    alive[v] = 0;
  };

  Assignment x(n, 0);
  std::size_t remaining = n;
  std::size_t low = 0;
  while (remaining > 0) {
    while (bucket[low].empty()) ++low;
    auto& b = bucket[low];
    node_t v = b[std::uniform_int_distribution<std::size_t>(0, b.size() - 1)(rng)];
    x[v] = 1;
    std::vector<node_t> removed{v};
    for (const auto& nb : g.neighbors(v)) {
      if (alive[nb.node]) removed.push_back(nb.node);
    }
    for (node_t r : removed) {
      kill(r);
      --remaining;
    }
    for (node_t r : removed) {
      for (const auto& nb : g.neighbors(r)) {
        node_t w = nb.node;
        if (!alive[w]) continue;
        unlink(w);
        --deg[w];
        pos[w] = bucket[deg[w]].size();
        bucket[deg[w]].push_back(w);
        if (deg[w] < low) low = deg[w];
      }
    }
  }
  return evaluate(m, std::move(x));
}

enum class SASchedule { Geometric, Linear };
enum class SAMove { Metropolis, Gibbs };

struct SAConfig {
  double t_start = 1.0;
  double t_end = 0.01;
  long steps = 100000;
  SASchedule schedule = SASchedule::Geometric;
  SAMove move = SAMove::Metropolis;
  std::uint64_t seed = 0;
  bool audit = false;  // recompute the full energy after every accepted move

  void validate() const {
    if (!(t_end > 0.0 && t_start >= t_end)) throw ConfigError("SA needs t_start >= t_end > 0");
    if (steps < 1) throw ConfigError("SA needs at least one step");
  }
};

inline double sa_temperature(const SAConfig& cfg, long k) {
  const double frac = static_cast<double>(k) / static_cast<double>(cfg.steps);
  if (cfg.schedule == SASchedule::Linear) return cfg.t_start + (cfg.t_end - cfg.t_start) * frac;
  return cfg.t_start * std::pow(cfg.t_end / cfg.t_start, frac);
}

/// Metropolis acceptance probability min(1, exp(-delta / T)).
inline double metropolis_accept(double delta, double temperature) {
  if (delta <= 0.0) return 1.0;
  if (temperature <= 0.0) return 0.0;
  return std::exp(-delta / temperature);
}

struct SAResult {
  DiscreteSolution best;
  long accepted = 0;
  std::vector<std::pair<long, double>> trace;  // (step, best energy) at ~100 points
};

/// Single-site simulated annealing from a uniformly random start. Metropolis
/// proposes one new label uniformly among the other arity-1 values; Gibbs
/// resamples the site from its conditional. Returns the best state seen.
inline SAResult sa_solve_traced(const EnergyModel& m, const SAConfig& cfg) {
  cfg.validate();
  std::mt19937_64 rng(cfg.seed);
  const std::size_t n = m.num_nodes();
  const int k = static_cast<int>(m.arity());
  SAResult res;
  if (n == 0) {
    res.best = evaluate(m, {});
    return res;
  }
  Assignment x0(n);
  std::uniform_int_distribution<int> label(0, k - 1);
  for (auto& v : x0) v = label(rng);
  LocalState state(m, std::move(x0));

  std::uniform_int_distribution<node_t> site(0, static_cast<node_t>(n - 1));
  std::uniform_int_distribution<int> other(1, k - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double best_e = state.energy();
  Assignment best_x = state.assignment_vector();
  const long every = std::max<long>(1, cfg.steps / 100);
  std::vector<double> weights(static_cast<std::size_t>(k));

  for (long step = 0; step < cfg.steps; ++step) {
    const double temp = sa_temperature(cfg, step);
    const node_t i = site(rng);
    const int cur = state.assignment()[i];
    int to = cur;
    double d = 0.0;
    if (cfg.move == SAMove::Metropolis) {
      to = (cur + other(rng)) % k;
      d = state.delta(i, to);
      if (!(d <= 0.0 || unit(rng) < metropolis_accept(d, temp))) to = cur;
    } else {
      double lo = 0.0;
      for (int v = 0; v < k; ++v) {
        weights[static_cast<std::size_t>(v)] = state.delta(i, v);
        lo = std::min(lo, weights[static_cast<std::size_t>(v)]);
      }
      double z = 0.0;
      for (double& w : weights) {
        w = std::exp(-(w - lo) / temp);
        z += w;
      }
      double r = unit(rng) * z;
      to = k - 1;
      for (int v = 0; v < k; ++v) {
        r -= weights[static_cast<std::size_t>(v)];
        if (r < 0.0) {
          to = v;
          break;
        }
      }
      d = state.delta(i, to);
    }
    if (to != cur) {
      state.apply(i, to, d);
      ++res.accepted;
      if (cfg.audit) {
        const double full = discrete_energy(m, state.assignment());
        if (std::abs(full - state.energy()) > 1e-6 * std::max(1.0, std::abs(full))) {
          throw SolverAbort("SA audit: incremental energy " + std::to_string(state.energy()) +
                            " != recomputed " + std::to_string(full) + " at step " + std::to_string(step));
        }
      }
      if (state.energy() < best_e - 1e-12) {
        best_e = state.energy();
        best_x = state.assignment_vector();
      }
    }
    if ((step + 1) % every == 0) res.trace.emplace_back(step + 1, best_e);
  }
  res.best = evaluate(m, std::move(best_x));
  return res;
}

inline DiscreteSolution sa_solve(const EnergyModel& m, const SAConfig& cfg) { return sa_solve_traced(m, cfg).best; }

/// Exact Boltzmann distribution exp(-l(x)/T)/Z over every assignment, in
/// lexicographic order (index = mixed-radix number, node 0 most significant).
struct BoltzmannTable {
  std::vector<double> energy;
  std::vector<double> probability;
  double min_energy = 0.0;
  double log_partition = 0.0;  // log Z
};

inline BoltzmannTable boltzmann_enumerate(const EnergyModel& m, double temperature) {
  if (!(temperature > 0.0)) throw ConfigError("temperature must be positive");
  BoltzmannTable t;
  for_each_assignment(m.num_nodes(), m.arity(), std::uint64_t{1} << 20,
                      [&](std::span<const int> x) { t.energy.push_back(discrete_energy(m, x)); });
  t.min_energy = *std::min_element(t.energy.begin(), t.energy.end());
  // Shift by the minimum so the largest weight is exactly 1.
  double z = 0.0;
  t.probability.resize(t.energy.size());
  for (std::size_t i = 0; i < t.energy.size(); ++i) {
    t.probability[i] = std::exp(-(t.energy[i] - t.min_energy) / temperature);
    z += t.probability[i];
  }
  for (double& p : t.probability) p /= z;
  t.log_partition = std::log(z) - t.min_energy / temperature;
  return t;
}

}  // namespace pqqa
