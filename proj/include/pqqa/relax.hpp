#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "pqqa/error.hpp"
#include "pqqa/problems.hpp"

// Entropy penalties, the clamp mapping and the cross-run diversity term.
// Together with problems.hpp these define the annealed objective
//   r(p)  = l(p) + gamma * s(p)                          (one run)
//   R(P)  = sum_s r(p_s) - S * comm * sum_i STD_i(P)     (S runs)

namespace pqqa {

struct EntropyConfig {
  int alpha = 4;  // even exponent

  void validate() const {
    if (alpha < 2 || alpha % 2 != 0) throw ConfigError("entropy exponent must be an even integer >= 2");
  }
};

struct CommConfig {
  double comm_strength = 0.0;
  double epsilon_std = 1e-12;

  void validate() const {
    if (!(comm_strength >= 0.0 && comm_strength <= 1.0)) throw ConfigError("comm_strength must lie in [0,1]");
    if (!(epsilon_std > 0.0)) throw ConfigError("epsilon_std must be positive");
  }
};

/// S relaxed vectors of length `dim`, stored run-major.
struct RelaxedEnsemble {
  std::size_t runs = 0;
  std::size_t dim = 0;
  std::size_t width = 1;  // 1 for binary problems, K for categorical rows
  double gamma = 0.0;
  std::vector<double> p;

  RelaxedEnsemble() = default;
  RelaxedEnsemble(std::size_t runs_, std::size_t dim_, std::size_t width_)
      : runs(runs_), dim(dim_), width(width_), p(runs_ * dim_, 0.0) {}

  std::span<double> run(std::size_t s) noexcept { return {p.data() + s * dim, dim}; }
  std::span<const double> run(std::size_t s) const noexcept { return {p.data() + s * dim, dim}; }
};

namespace detail {

inline double ipow(double x, int n) {
  double r = 1.0;
  while (n > 0) {
    if (n & 1) r *= x;
    x *= x;
    n >>= 1;
  }
  return r;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Mappings

inline void clamp_sigma_inplace(std::span<double> w) {
  for (double& v : w) v = std::clamp(v, 0.0, 1.0);
}

inline std::vector<double> clamp_sigma(std::span<const double> w) {
  std::vector<double> out(w.begin(), w.end());
  clamp_sigma_inplace(out);
  return out;
}

/// Row-wise clamp then normalize onto the simplex. A row with no positive
/// entry after clamping becomes uniform.
inline void kary_sigma_inplace(std::span<double> w, std::size_t k) {
  if (k == 0 || w.size() % k != 0) throw DimensionError("kary_sigma: length not a multiple of K");
  for (std::size_t r = 0; r < w.size(); r += k) {
    double sum = 0.0;
    for (std::size_t j = r; j < r + k; ++j) {
      w[j] = std::clamp(w[j], 0.0, 1.0);
      sum += w[j];
    }
    if (sum > 0.0) {
      for (std::size_t j = r; j < r + k; ++j) w[j] /= sum;
    } else {
      for (std::size_t j = r; j < r + k; ++j) w[j] = 1.0 / static_cast<double>(k);
    }
  }
}

inline std::vector<double> kary_sigma(std::span<const double> w, std::size_t k) {
  std::vector<double> out(w.begin(), w.end());
  kary_sigma_inplace(out, k);
  return out;
}

// ---------------------------------------------------------------------------
// Entropies

/// sum_i 1 - (2 p_i - 1)^alpha
inline double entropy_binary(std::span<const double> p, const EntropyConfig& cfg) {
  double s = 0.0;
  for (double v : p) s += 1.0 - detail::ipow(2.0 * v - 1.0, cfg.alpha);
  return s;
}

inline void entropy_binary_grad(std::span<const double> p, const EntropyConfig& cfg, std::span<double> out) {
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = -2.0 * cfg.alpha * detail::ipow(2.0 * p[i] - 1.0, cfg.alpha - 1);
}

/// Normalizer of the K-ary entropy: a one-hot row sums (K p - 1)^alpha to
/// exactly (K-1)((K-1)^(alpha-1) + 1).
inline double kary_entropy_scale(std::size_t k, int alpha) {
  const double km1 = static_cast<double>(k) - 1.0;
  return 1.0 / (km1 * (detail::ipow(km1, alpha - 1) + 1.0));
}

/// sum_i 1 - c_K sum_k (K P_ik - 1)^alpha over an N x K row-major matrix.
inline double entropy_kary(std::span<const double> P, std::size_t k, const EntropyConfig& cfg) {
  if (k < 2 || P.size() % k != 0) throw DimensionError("entropy_kary: bad shape");
  const double c = kary_entropy_scale(k, cfg.alpha);
  const double kk = static_cast<double>(k);
  double s = 0.0;
  for (std::size_t r = 0; r < P.size(); r += k) {
    double row = 0.0;
    for (std::size_t j = r; j < r + k; ++j) row += detail::ipow(kk * P[j] - 1.0, cfg.alpha);
    s += 1.0 - c * row;
  }
  return s;
}

inline void entropy_kary_grad(std::span<const double> P, std::size_t k, const EntropyConfig& cfg,
                              std::span<double> out) {
  const double c = kary_entropy_scale(k, cfg.alpha);
  const double kk = static_cast<double>(k);
  for (std::size_t j = 0; j < P.size(); ++j) out[j] = -c * cfg.alpha * kk * detail::ipow(kk * P[j] - 1.0, cfg.alpha - 1);
}

/// Binary or K-ary entropy depending on the row width.
inline double entropy(std::span<const double> p, std::size_t width, const EntropyConfig& cfg) {
  return width == 1 ? entropy_binary(p, cfg) : entropy_kary(p, width, cfg);
}

inline void entropy_grad(std::span<const double> p, std::size_t width, const EntropyConfig& cfg,
                         std::span<double> out) {
  if (width == 1) {
    entropy_binary_grad(p, cfg, out);
  } else {
    entropy_kary_grad(p, width, cfg, out);
  }
}

// ---------------------------------------------------------------------------
// Single-run annealed objective

inline double qqa_energy(std::span<const double> p, const EnergyModel& m, double gamma, const EntropyConfig& cfg) {
  return relaxed_energy(m, p) + gamma * entropy(p, m.width(), cfg);
}

/// Gradient of qqa_energy. `scratch` must have the same length as p.
inline void qqa_gradient(std::span<const double> p, const EnergyModel& m, double gamma, const EntropyConfig& cfg,
                         std::span<double> out, std::span<double> scratch) {
  relaxed_gradient(m, p, out);
  if (gamma == 0.0) return;
  entropy_grad(p, m.width(), cfg, scratch);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += gamma * scratch[i];
}

inline std::vector<double> qqa_gradient(std::span<const double> p, const EnergyModel& m, double gamma,
                                        const EntropyConfig& cfg) {
  std::vector<double> out(p.size()), scratch(p.size());
  qqa_gradient(p, m, gamma, cfg, out, scratch);
  return out;
}

// ---------------------------------------------------------------------------
// Communication across runs

/// Population mean and standard deviation of every coordinate across runs.
/// Each column is reduced in run order, so the result does not depend on
/// how callers split work.
struct ColumnStats {
  std::vector<double> mean;
  std::vector<double> stddev;
};

inline ColumnStats column_stats(const RelaxedEnsemble& e) {
  ColumnStats st{std::vector<double>(e.dim, 0.0), std::vector<double>(e.dim, 0.0)};
  if (e.runs == 0) return st;
  // Accumulate offsets from run 0 so identical columns give exactly zero.
  const auto first = e.run(0);
  const double n = static_cast<double>(e.runs);
  for (std::size_t s = 1; s < e.runs; ++s) {
    auto row = e.run(s);
    for (std::size_t i = 0; i < e.dim; ++i) st.mean[i] += row[i] - first[i];
  }
  for (std::size_t i = 0; i < e.dim; ++i) st.mean[i] = first[i] + st.mean[i] / n;
  for (std::size_t s = 0; s < e.runs; ++s) {
    auto row = e.run(s);
    for (std::size_t i = 0; i < e.dim; ++i) {
      double d = row[i] - st.mean[i];
      st.stddev[i] += d * d;
    }
  }
  for (double& v : st.stddev) v = std::sqrt(v / n);
  return st;
}

/// -S * comm * sum_i STD_i; zero for a single run.
inline double comm_term(const RelaxedEnsemble& e, const CommConfig& cfg) {
  if (e.runs < 2 || cfg.comm_strength == 0.0) return 0.0;
  const auto st = column_stats(e);
  double total = 0.0;
  for (double v : st.stddev) total += v;
  return -static_cast<double>(e.runs) * cfg.comm_strength * total;
}

/// Adds the gradient of comm_term for run `s` into `out`:
/// -comm * (p_si - mean_i) / max(STD_i, eps). Constant columns contribute 0.
inline void add_comm_gradient(const RelaxedEnsemble& e, const ColumnStats& st, std::size_t s, const CommConfig& cfg,
                              std::span<double> out) {
  if (e.runs < 2 || cfg.comm_strength == 0.0) return;
  auto row = e.run(s);
  for (std::size_t i = 0; i < e.dim; ++i) {
    const double d = row[i] - st.mean[i];
    if (d == 0.0) continue;
    out[i] -= cfg.comm_strength * d / std::max(st.stddev[i], cfg.epsilon_std);
  }
}

inline double ensemble_energy(const RelaxedEnsemble& e, const EnergyModel& m, double gamma,
                              const EntropyConfig& ecfg, const CommConfig& ccfg) {
  double total = 0.0;
  for (std::size_t s = 0; s < e.runs; ++s) total += qqa_energy(e.run(s), m, gamma, ecfg);
  return total + comm_term(e, ccfg);
}

/// Full S x dim gradient of ensemble_energy into `out` (run-major).
inline void ensemble_gradient(const RelaxedEnsemble& e, const EnergyModel& m, double gamma,
                              const EntropyConfig& ecfg, const CommConfig& ccfg, std::span<double> out) {
  if (out.size() != e.p.size()) throw DimensionError("ensemble gradient buffer length mismatch");
  ColumnStats st;
  const bool comm = e.runs >= 2 && ccfg.comm_strength != 0.0;
  if (comm) st = column_stats(e);
  const auto runs = static_cast<long>(e.runs);
#pragma omp parallel
  {
    std::vector<double> scratch(e.dim);
#pragma omp for schedule(static)
    for (long s = 0; s < runs; ++s) {
      auto g = out.subspan(static_cast<std::size_t>(s) * e.dim, e.dim);
      qqa_gradient(e.run(static_cast<std::size_t>(s)), m, gamma, ecfg, g, scratch);
      if (comm) add_comm_gradient(e, st, static_cast<std::size_t>(s), ccfg, g);
    }
  }
}

inline std::vector<double> ensemble_gradient(const RelaxedEnsemble& e, const EnergyModel& m, double gamma,
                                             const EntropyConfig& ecfg, const CommConfig& ccfg) {
  std::vector<double> out(e.p.size());
  ensemble_gradient(e, m, gamma, ecfg, ccfg, out);
  return out;
}

}  // namespace pqqa
