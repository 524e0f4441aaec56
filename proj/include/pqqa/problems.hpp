#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pqqa/error.hpp"
#include "pqqa/graph.hpp"

namespace pqqa {

enum class ProblemKind { MIS, MaxClique, MaxCut, Partition, Coloring };

inline std::string_view to_string(ProblemKind k) {
  switch (k) {
    case ProblemKind::MIS: return "mis";
    case ProblemKind::MaxClique: return "clique";
    case ProblemKind::MaxCut: return "maxcut";
    case ProblemKind::Partition: return "partition";
    case ProblemKind::Coloring: return "coloring";
  }
  return "mis";
}

inline ProblemKind parse_problem_kind(std::string_view s) {
  if (s == "mis") return ProblemKind::MIS;
  if (s == "clique" || s == "maxclique") return ProblemKind::MaxClique;
  if (s == "maxcut") return ProblemKind::MaxCut;
  if (s == "partition") return ProblemKind::Partition;
  if (s == "coloring") return ProblemKind::Coloring;
  throw ConfigError("unknown problem '" + std::string(s) + "'");
}

/// Discrete assignment: one label in [0, arity) per node.
using Assignment = std::vector<int>;

/// A penalized objective l(x; G, lambda) over a graph.
///
/// Binary problems (MIS, clique, max cut) relax to one value per node.
/// Categorical problems (partition, coloring) relax to an N x K row-major
/// matrix whose rows live on the probability simplex; `width()` is 1 or K
/// and `dim() = N * width()` is the length of a relaxed vector.
class EnergyModel {
 public:
  static EnergyModel mis(Graph g, double lambda = 2.0, std::vector<double> node_weights = {}) {
    return EnergyModel(ProblemKind::MIS, std::move(g), lambda, std::move(node_weights), 2);
  }
  static EnergyModel max_clique(Graph g, double lambda = 2.0, std::vector<double> node_weights = {}) {
    return EnergyModel(ProblemKind::MaxClique, std::move(g), lambda, std::move(node_weights), 2);
  }
  static EnergyModel max_cut(Graph g) { return EnergyModel(ProblemKind::MaxCut, std::move(g), 0.0, {}, 2); }
  static EnergyModel partition(Graph g, std::size_t parts, double lambda = 1.0) {
    if (parts < 2) throw ConfigError("partition needs at least 2 parts");
    return EnergyModel(ProblemKind::Partition, std::move(g), lambda, {}, parts);
  }
  static EnergyModel coloring(Graph g, std::size_t colors) {
    if (colors < 2) throw ConfigError("coloring needs at least 2 colors");
    return EnergyModel(ProblemKind::Coloring, std::move(g), 0.0, {}, colors);
  }

  ProblemKind kind() const noexcept { return kind_; }
  const Graph& graph() const noexcept { return *graph_; }
  double lambda() const noexcept { return lambda_; }
  std::span<const double> node_weights() const noexcept { return c_; }
  std::size_t arity() const noexcept { return arity_; }
  bool categorical() const noexcept { return kind_ == ProblemKind::Partition || kind_ == ProblemKind::Coloring; }
  std::size_t width() const noexcept { return categorical() ? arity_ : 1; }
  std::size_t num_nodes() const noexcept { return graph_->num_nodes(); }
  std::size_t dim() const noexcept { return num_nodes() * width(); }

  EnergyModel with_lambda(double lambda) const {
    if (lambda < 0) throw ConfigError("lambda must be non-negative");
    EnergyModel m = *this;
    m.lambda_ = lambda;
    return m;
  }

 private:
  EnergyModel(ProblemKind kind, Graph g, double lambda, std::vector<double> c, std::size_t arity)
      : kind_(kind), graph_(std::make_shared<const Graph>(std::move(g))), lambda_(lambda), c_(std::move(c)),
        arity_(arity) {
    if (lambda_ < 0) throw ConfigError("lambda must be non-negative");
    if (c_.empty()) c_.assign(graph_->num_nodes(), 1.0);
    if (c_.size() != graph_->num_nodes()) throw DimensionError("node weight vector length != node count");
  }

  ProblemKind kind_;
  std::shared_ptr<const Graph> graph_;
  double lambda_;
  std::vector<double> c_;
  std::size_t arity_;
};

struct DiscreteSolution {
  Assignment assignment;
  double objective = 0.0;  // penalized energy l(x)
  double penalty_violation = 0.0;
  bool feasible = true;
};

struct Metrics {
  double raw_objective = 0.0;
  std::optional<double> apr;
  std::optional<double> cut_ratio;
  std::optional<double> balanceness;
  std::optional<std::size_t> conflicts;
  std::optional<double> is_density;
};

// ---------------------------------------------------------------------------
// Discrete energies

inline void check_assignment(const EnergyModel& m, std::span<const int> x) {
  if (x.size() != m.num_nodes()) {
    throw DimensionError("assignment has " + std::to_string(x.size()) + " entries, model has " +
                         std::to_string(m.num_nodes()) + " nodes");
  }
  for (int v : x) {
    if (v < 0 || static_cast<std::size_t>(v) >= m.arity()) {
      throw DimensionError("assignment entry " + std::to_string(v) + " outside [0," + std::to_string(m.arity()) +
                           ")");
    }
  }
}

/// -c^T x + lambda * x^T A x / 2
inline double energy_mis(std::span<const int> x, const EnergyModel& m) {
  check_assignment(m, x);
  double e = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) e -= m.node_weights()[i] * x[i];
  double quad = 0.0;
  for (const auto& ed : m.graph().edges()) quad += ed.weight * x[ed.u] * x[ed.v];
  return e + m.lambda() * quad;
}

/// -c^T x + (lambda/2) (1^T x (1^T x - 1) - x^T A x)
inline double energy_clique(std::span<const int> x, const EnergyModel& m) {
  check_assignment(m, x);
  double e = 0.0;
  double sel = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    e -= m.node_weights()[i] * x[i];
    sel += x[i];
  }
  double quad = 0.0;
  for (const auto& ed : m.graph().edges()) quad += ed.weight * x[ed.u] * x[ed.v];
  return e + 0.5 * m.lambda() * (sel * (sel - 1.0) - 2.0 * quad);
}

/// Negative cut weight.
inline double energy_maxcut(std::span<const int> x, const EnergyModel& m) {
  check_assignment(m, x);
  double e = 0.0;
  for (const auto& ed : m.graph().edges()) {
    if (x[ed.u] != x[ed.v]) e -= ed.weight;
  }
  return e;
}

/// Cut term summed over parts (each cut edge counted once per incident part)
/// plus lambda * sum_s (N/k - n_s)^2.
inline double energy_partition(std::span<const int> x, const EnergyModel& m) {
  check_assignment(m, x);
  double cut = 0.0;
  for (const auto& ed : m.graph().edges()) {
    if (x[ed.u] != x[ed.v]) cut += 2.0 * ed.weight;
  }
  std::vector<double> count(m.arity(), 0.0);
  for (int v : x) count[static_cast<std::size_t>(v)] += 1.0;
  double ideal = static_cast<double>(m.num_nodes()) / static_cast<double>(m.arity());
  double balance = 0.0;
  for (double c : count) balance += (ideal - c) * (ideal - c);
  return cut + m.lambda() * balance;
}

/// Weighted number of monochromatic edges.
inline double energy_coloring(std::span<const int> x, const EnergyModel& m) {
  check_assignment(m, x);
  double e = 0.0;
  for (const auto& ed : m.graph().edges()) {
    if (x[ed.u] == x[ed.v]) e += ed.weight;
  }
  return e;
}

inline double discrete_energy(const EnergyModel& m, std::span<const int> x) {
  switch (m.kind()) {
    case ProblemKind::MIS: return energy_mis(x, m);
    case ProblemKind::MaxClique: return energy_clique(x, m);
    case ProblemKind::MaxCut: return energy_maxcut(x, m);
    case ProblemKind::Partition: return energy_partition(x, m);
    case ProblemKind::Coloring: return energy_coloring(x, m);
  }
  return 0.0;
}

namespace detail {

inline std::vector<std::size_t> part_sizes(const EnergyModel& m, std::span<const int> x) {
  std::vector<std::size_t> count(m.arity(), 0);
  for (int v : x) ++count[static_cast<std::size_t>(v)];
  return count;
}

inline std::size_t cut_edges(const Graph& g, std::span<const int> x) {
  std::size_t cut = 0;
  for (const auto& ed : g.edges()) cut += x[ed.u] != x[ed.v];
  return cut;
}

}  // namespace detail

/// Constraint violation in natural units: conflicting edges (MIS), missing
/// edges inside the set (clique), nodes outside the floor/ceil size band
/// (partition), monochromatic edges (coloring). Zero iff feasible.
inline double penalty_violation(const EnergyModel& m, std::span<const int> x) {
  check_assignment(m, x);
  const Graph& g = m.graph();
  switch (m.kind()) {
    case ProblemKind::MIS: {
      double v = 0;
      for (const auto& ed : g.edges()) v += x[ed.u] && x[ed.v];
      return v;
    }
    case ProblemKind::MaxClique: {
      double sel = 0, inside = 0;
      for (int v : x) sel += v;
      for (const auto& ed : g.edges()) inside += x[ed.u] && x[ed.v];
      return sel * (sel - 1) / 2 - inside;
    }
    case ProblemKind::MaxCut: return 0.0;
    case ProblemKind::Partition: {
      std::size_t lo = m.num_nodes() / m.arity();
      std::size_t hi = lo + (m.num_nodes() % m.arity() != 0);
      double v = 0;
      for (std::size_t c : detail::part_sizes(m, x)) {
        if (c > hi) v += static_cast<double>(c - hi);
        if (c < lo) v += static_cast<double>(lo - c);
      }
      return v;
    }
    case ProblemKind::Coloring: {
      double v = 0;
      for (const auto& ed : g.edges()) v += x[ed.u] == x[ed.v];
      return v;
    }
  }
  return 0.0;
}

/// Unpenalized objective in the problem's natural sense: selected weight
/// (MIS, clique), cut weight (max cut), single-counted cut edges
/// (partition), conflicts (coloring).
inline double raw_objective(const EnergyModel& m, std::span<const int> x) {
  check_assignment(m, x);
  switch (m.kind()) {
    case ProblemKind::MIS:
    case ProblemKind::MaxClique: {
      double s = 0;
      for (std::size_t i = 0; i < x.size(); ++i) s += m.node_weights()[i] * x[i];
      return s;
    }
    case ProblemKind::MaxCut: return -energy_maxcut(x, m);
    case ProblemKind::Partition: return static_cast<double>(detail::cut_edges(m.graph(), x));
    case ProblemKind::Coloring: return energy_coloring(x, m);
  }
  return 0.0;
}

inline DiscreteSolution evaluate(const EnergyModel& m, Assignment x) {
  DiscreteSolution s;
  s.objective = discrete_energy(m, x);
  s.penalty_violation = penalty_violation(m, x);
  s.feasible = s.penalty_violation == 0.0;
  s.assignment = std::move(x);
  return s;
}

// ---------------------------------------------------------------------------
// Relaxation

/// Integral point -> relaxed vector (0/1 values, or one-hot rows).
inline std::vector<double> embed(const EnergyModel& m, std::span<const int> x) {
  check_assignment(m, x);
  std::vector<double> p(m.dim(), 0.0);
  if (!m.categorical()) {
    for (std::size_t i = 0; i < x.size(); ++i) p[i] = x[i];
  } else {
    for (std::size_t i = 0; i < x.size(); ++i) p[i * m.width() + static_cast<std::size_t>(x[i])] = 1.0;
  }
  return p;
}

inline void check_relaxed(const EnergyModel& m, std::span<const double> p) {
  if (p.size() != m.dim()) {
    throw DimensionError("relaxed vector has " + std::to_string(p.size()) + " entries, expected " +
                         std::to_string(m.dim()));
  }
}

/// Polynomial relaxation l^(p). Exact at integral / one-hot points; defined
/// for any real p so it can be evaluated slightly outside [0,1].
inline double relaxed_energy(const EnergyModel& m, std::span<const double> p) {
  check_relaxed(m, p);
  const Graph& g = m.graph();
  const auto c = m.node_weights();
  const std::size_t n = m.num_nodes();
  switch (m.kind()) {
    case ProblemKind::MIS: {
      double e = 0.0, quad = 0.0;
      for (std::size_t i = 0; i < n; ++i) e -= c[i] * p[i];
      for (const auto& ed : g.edges()) quad += ed.weight * p[ed.u] * p[ed.v];
      return e + m.lambda() * quad;
    }
    case ProblemKind::MaxClique: {
      double e = 0.0, sel = 0.0, quad = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        e -= c[i] * p[i];
        sel += p[i];
      }
      for (const auto& ed : g.edges()) quad += ed.weight * p[ed.u] * p[ed.v];
      return e + 0.5 * m.lambda() * (sel * (sel - 1.0) - 2.0 * quad);
    }
    case ProblemKind::MaxCut: {
      double e = 0.0;
      for (const auto& ed : g.edges()) e -= ed.weight * 0.5 * (1.0 - (2.0 * p[ed.u] - 1.0) * (2.0 * p[ed.v] - 1.0));
      return e;
    }
    case ProblemKind::Partition: {
      const std::size_t k = m.width();
      double cut = 0.0;
      for (const auto& ed : g.edges()) {
        const double* pu = &p[ed.u * k];
        const double* pv = &p[ed.v * k];
        double t = 0.0;
        for (std::size_t s = 0; s < k; ++s) t += pu[s] * (1.0 - pv[s]) + pv[s] * (1.0 - pu[s]);
        cut += ed.weight * t;
      }
      const double ideal = static_cast<double>(n) / static_cast<double>(k);
      double balance = 0.0;
      for (std::size_t s = 0; s < k; ++s) {
        double col = 0.0;
        for (std::size_t i = 0; i < n; ++i) col += p[i * k + s];
        balance += (ideal - col) * (ideal - col);
      }
      return cut + m.lambda() * balance;
    }
    case ProblemKind::Coloring: {
      const std::size_t k = m.width();
      double e = 0.0;
      for (const auto& ed : g.edges()) {
        double t = 0.0;
        for (std::size_t s = 0; s < k; ++s) t += p[ed.u * k + s] * p[ed.v * k + s];
        e += ed.weight * t;
      }
      return e;
    }
  }
  return 0.0;
}

/// Exact gradient of relaxed_energy, written into `grad` (same length as p).
inline void relaxed_gradient(const EnergyModel& m, std::span<const double> p, std::span<double> grad) {
  check_relaxed(m, p);
  if (grad.size() != p.size()) throw DimensionError("gradient buffer length mismatch");
  const Graph& g = m.graph();
  const auto c = m.node_weights();
  const std::size_t n = m.num_nodes();
  const double lam = m.lambda();
  switch (m.kind()) {
    case ProblemKind::MIS: {
      for (node_t i = 0; i < n; ++i) {
        double ap = 0.0;
        for (const auto& nb : g.neighbors(i)) ap += nb.weight * p[nb.node];
        grad[i] = -c[i] + lam * ap;
      }
      return;
    }
    case ProblemKind::MaxClique: {
      double sel = 0.0;
      for (std::size_t i = 0; i < n; ++i) sel += p[i];
      const double common = 0.5 * lam * (2.0 * sel - 1.0);
      for (node_t i = 0; i < n; ++i) {
        double ap = 0.0;
        for (const auto& nb : g.neighbors(i)) ap += nb.weight * p[nb.node];
        grad[i] = -c[i] + common - lam * ap;
      }
      return;
    }
    case ProblemKind::MaxCut: {
      for (node_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (const auto& nb : g.neighbors(i)) s += nb.weight * (2.0 * p[nb.node] - 1.0);
        grad[i] = s;
      }
      return;
    }
    case ProblemKind::Partition: {
      const std::size_t k = m.width();
      const double ideal = static_cast<double>(n) / static_cast<double>(k);
      std::vector<double> col(k, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t s = 0; s < k; ++s) col[s] += p[i * k + s];
      }
      for (node_t i = 0; i < n; ++i) {
        double* gi = &grad[i * k];
        for (std::size_t s = 0; s < k; ++s) gi[s] = -2.0 * lam * (ideal - col[s]);
        for (const auto& nb : g.neighbors(i)) {
          const double* pj = &p[nb.node * k];
          for (std::size_t s = 0; s < k; ++s) gi[s] += nb.weight * (1.0 - 2.0 * pj[s]);
        }
      }
      return;
    }
    case ProblemKind::Coloring: {
      const std::size_t k = m.width();
      for (node_t i = 0; i < n; ++i) {
        double* gi = &grad[i * k];
        std::fill(gi, gi + k, 0.0);
        for (const auto& nb : g.neighbors(i)) {
          const double* pj = &p[nb.node * k];
          for (std::size_t s = 0; s < k; ++s) gi[s] += nb.weight * pj[s];
        }
      }
      return;
    }
  }
}

inline std::vector<double> relaxed_gradient(const EnergyModel& m, std::span<const double> p) {
  std::vector<double> g(p.size());
  relaxed_gradient(m, p, g);
  return g;
}

// ---------------------------------------------------------------------------
// Metrics

/// ApR is raw objective / reference when a nonzero reference is supplied.
inline Metrics compute_metrics(const DiscreteSolution& sol, const EnergyModel& m,
                               std::optional<double> reference = std::nullopt) {
  const auto& x = sol.assignment;
  Metrics out;
  out.raw_objective = raw_objective(m, x);
  if (reference && *reference != 0.0) out.apr = out.raw_objective / *reference;
  const double n = static_cast<double>(m.num_nodes());
  switch (m.kind()) {
    case ProblemKind::MIS:
      if (n > 0) out.is_density = static_cast<double>(std::count(x.begin(), x.end(), 1)) / n;
      break;
    case ProblemKind::MaxClique: break;
    case ProblemKind::MaxCut:
      if (n > 0) out.cut_ratio = static_cast<double>(detail::cut_edges(m.graph(), x)) / n;
      break;
    case ProblemKind::Partition: {
      if (m.graph().num_edges() > 0) {
        out.cut_ratio = static_cast<double>(detail::cut_edges(m.graph(), x)) /
                        static_cast<double>(m.graph().num_edges());
      }
      double dev = 0.0;
      const double k = static_cast<double>(m.arity());
      for (std::size_t c : detail::part_sizes(m, x)) {
        double d = 1.0 / k - static_cast<double>(c) / n;
        dev += d * d;
      }
      out.balanceness = n > 0 ? 1.0 - dev : 1.0;
      break;
    }
    case ProblemKind::Coloring:
      out.conflicts = static_cast<std::size_t>(penalty_violation(m, x));
      break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration and penalty selection

/// Visits every assignment in lexicographic order (node 0 most significant).
/// Throws InstanceTooLarge when arity^N exceeds `limit`.
template <typename Fn>
void for_each_assignment(std::size_t n, std::size_t arity, std::uint64_t limit, Fn&& fn) {
  double log_count = static_cast<double>(n) * std::log2(static_cast<double>(arity));
  if (log_count > std::log2(static_cast<double>(limit)) + 1e-9) {
    throw InstanceTooLarge("enumeration of " + std::to_string(arity) + "^" + std::to_string(n) +
                           " assignments exceeds limit " + std::to_string(limit));
  }
  Assignment x(n, 0);
  while (true) {
    fn(std::span<const int>(x));
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (static_cast<std::size_t>(++x[i]) < arity) break;
      x[i] = 0;
      if (i == 0) return;
    }
    if (n == 0) return;
  }
}

inline constexpr double kDefaultCliqueLambda = 2.0;
inline constexpr double kDefaultMisLambda = 2.0;
inline constexpr double kDefaultPartitionLambda = 1.0;

/// Smallest lambda on the grid {0.5, 1, ..., 10} for which every exhaustive
/// minimizer of l is feasible. Instances with N > 20 get the documented
/// defaults; problems without a penalty term get the grid minimum.
inline double select_lambda(const EnergyModel& m) {
  constexpr double kStep = 0.5;
  constexpr int kGridSize = 20;
  if (m.kind() == ProblemKind::MaxCut || m.kind() == ProblemKind::Coloring) return kStep;
  const bool small = m.num_nodes() <= 20 &&
                     static_cast<double>(m.num_nodes()) * std::log2(static_cast<double>(m.arity())) <= 20.0;
  if (!small) {
    if (m.kind() == ProblemKind::Partition) return kDefaultPartitionLambda;
    return m.kind() == ProblemKind::MIS ? kDefaultMisLambda : kDefaultCliqueLambda;
  }
  for (int g = 1; g <= kGridSize; ++g) {
    const EnergyModel cand = m.with_lambda(kStep * g);
    double best = std::numeric_limits<double>::infinity();
    bool all_feasible = true;
    for_each_assignment(m.num_nodes(), m.arity(), std::uint64_t{1} << 20, [&](std::span<const int> x) {
      double e = discrete_energy(cand, x);
      bool ok = penalty_violation(cand, x) == 0.0;
      if (e < best - 1e-9) {
        best = e;
        all_feasible = ok;
      } else if (e <= best + 1e-9) {
        all_feasible = all_feasible && ok;
      }
    });
    if (all_feasible) return kStep * g;
  }
  return kStep * kGridSize;
}

// ---------------------------------------------------------------------------
// Incremental single-site moves

/// Current assignment plus the aggregates needed to score a single-site
/// change in O(degree): the selected count for clique, part sizes for
/// partition.
class LocalState {
 public:
  LocalState(const EnergyModel& m, Assignment x) : m_(&m), x_(std::move(x)) {
    check_assignment(m, x_);
    energy_ = discrete_energy(m, x_);
    for (int v : x_) selected_ += v;
    if (m.kind() == ProblemKind::Partition) counts_ = detail::part_sizes(m, x_);
  }

  double energy() const noexcept { return energy_; }
  std::span<const int> assignment() const noexcept { return x_; }
  const Assignment& assignment_vector() const noexcept { return x_; }

  /// Energy change if node i takes label `to`.
  double delta(node_t i, int to) const {
    const int from = x_[i];
    if (from == to) return 0.0;
    const Graph& g = m_->graph();
    switch (m_->kind()) {
      case ProblemKind::MIS: {
        double ax = 0.0;
        for (const auto& nb : g.neighbors(i)) ax += nb.weight * x_[nb.node];
        return (to - from) * (-m_->node_weights()[i] + m_->lambda() * ax);
      }
      case ProblemKind::MaxClique: {
        double ax = 0.0;
        for (const auto& nb : g.neighbors(i)) ax += nb.weight * x_[nb.node];
        const double lam = m_->lambda();
        const double sel = static_cast<double>(selected_);
        if (to == 1) return -m_->node_weights()[i] + lam * sel - lam * ax;
        return m_->node_weights()[i] - lam * (sel - 1.0) + lam * ax;
      }
      case ProblemKind::MaxCut: {
        double d = 0.0;
        for (const auto& nb : g.neighbors(i)) {
          d -= nb.weight * (static_cast<double>(to != x_[nb.node]) - static_cast<double>(from != x_[nb.node]));
        }
        return d;
      }
      case ProblemKind::Partition: {
        double d = 0.0;
        for (const auto& nb : g.neighbors(i)) {
          d += 2.0 * nb.weight *
               (static_cast<double>(to != x_[nb.node]) - static_cast<double>(from != x_[nb.node]));
        }
        const double ideal = static_cast<double>(m_->num_nodes()) / static_cast<double>(m_->arity());
        const double na = static_cast<double>(counts_[static_cast<std::size_t>(from)]);
        const double nb_ = static_cast<double>(counts_[static_cast<std::size_t>(to)]);
        auto sq = [](double v) { return v * v; };
        d += m_->lambda() *
             (sq(ideal - (na - 1)) - sq(ideal - na) + sq(ideal - (nb_ + 1)) - sq(ideal - nb_));
        return d;
      }
      case ProblemKind::Coloring: {
        double d = 0.0;
        for (const auto& nb : g.neighbors(i)) {
          d += nb.weight * (static_cast<double>(to == x_[nb.node]) - static_cast<double>(from == x_[nb.node]));
        }
        return d;
      }
    }
    return 0.0;
  }

  void apply(node_t i, int to, double delta_value) {
    const int from = x_[i];
    if (from == to) return;
    energy_ += delta_value;
    selected_ += to - from;
    if (!counts_.empty()) {
      --counts_[static_cast<std::size_t>(from)];
      ++counts_[static_cast<std::size_t>(to)];
    }
    x_[i] = to;
  }

  void apply(node_t i, int to) { apply(i, to, delta(i, to)); }

 private:
  const EnergyModel* m_;
  Assignment x_;
  double energy_ = 0.0;
  long selected_ = 0;
  std::vector<std::size_t> counts_;
};

}  // namespace pqqa
