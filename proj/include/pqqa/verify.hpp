#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pqqa/baseline.hpp"
#include "pqqa/generators.hpp"
#include "pqqa/problems.hpp"
#include "pqqa/relax.hpp"

// Property suites over small instances: analytic gradients against finite
// differences, exactness at integral points, the K=2 entropy reduction, the
// diversity-term maximizers and the Boltzmann temperature limits.

namespace pqqa {

struct VerifyOptions {
  std::uint64_t seed = 7;
  int points = 50;           // random interior points per gradient check
  double grad_tol = 1e-5;    // |fd - analytic| / max(|analytic|, 1), 2-norm
  bool corrupt_gradient = false;  // negative control: perturbs analytic gradients
};

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::string detail;  // first failing invariant, or a short summary
  double seconds = 0.0;
};

namespace detail {

/// Records the first failure only.
struct Checker {
  SuiteResult& r;
  void fail(const std::string& what) {
    if (r.passed) r.detail = what;
    r.passed = false;
  }
};

inline double fd_relative_error(const std::function<double(std::span<const double>)>& f,
                                std::span<const double> x, std::span<const double> analytic) {
  constexpr double h = 1e-6;
  std::vector<double> y(x.begin(), x.end());
  double diff = 0.0, norm = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double keep = y[i];
    y[i] = keep + h;
    const double up = f(y);
    y[i] = keep - h;
    const double down = f(y);
    y[i] = keep;
    const double fd = (up - down) / (2.0 * h);
    diff += (fd - analytic[i]) * (fd - analytic[i]);
    norm += analytic[i] * analytic[i];
  }
  return std::sqrt(diff) / std::max(std::sqrt(norm), 1.0);
}

inline std::vector<double> interior_point(std::size_t dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.05, 0.95);
  std::vector<double> p(dim);
  for (double& v : p) v = u(rng);
  return p;
}

inline void maybe_corrupt(std::vector<double>& g, const VerifyOptions& opt) {
  if (opt.corrupt_gradient && !g.empty()) g[g.size() / 2] += 1e-2;
}

inline std::vector<EnergyModel> sample_models(std::uint64_t seed) {
  Graph g = gen_er(8, 0.4, seed);
  Graph gw = with_pm1_weights(gen_er(8, 0.5, seed + 1), seed + 1);
  return {EnergyModel::mis(g), EnergyModel::max_clique(g), EnergyModel::max_cut(gw),
          EnergyModel::partition(g, 3), EnergyModel::coloring(g, 4)};
}

template <typename Body>
SuiteResult timed_suite(const std::string& name, Body&& body) {
  SuiteResult r;
  r.name = name;
  const auto t0 = std::chrono::steady_clock::now();
  Checker c{r};
  body(c);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (r.passed && r.detail.empty()) r.detail = "ok";
  return r;
}

}  // namespace detail

/// Relaxed energies, both entropies and the diversity term against central
/// differences at random interior points.
inline SuiteResult verify_gradients(const VerifyOptions& opt = {}) {
  return detail::timed_suite("gradients", [&](detail::Checker& c) {
    std::mt19937_64 rng(opt.seed);
    double worst = 0.0;
    auto check = [&](const std::string& what, double err) {
      worst = std::max(worst, err);
      if (!(err <= opt.grad_tol)) {
        std::ostringstream os;
        os << what << ": relative gradient error " << err << " > " << opt.grad_tol;
        c.fail(os.str());
      }
    };
    for (const auto& m : detail::sample_models(opt.seed)) {
      for (int k = 0; k < opt.points; ++k) {
        auto p = detail::interior_point(m.dim(), rng);
        auto g = relaxed_gradient(m, p);
        detail::maybe_corrupt(g, opt);
        check(std::string("relaxed energy ") + std::string(to_string(m.kind())),
              detail::fd_relative_error([&](std::span<const double> q) { return relaxed_energy(m, q); }, p, g));
      }
    }
    const EntropyConfig ecfg;
    for (std::size_t width : {std::size_t{1}, std::size_t{3}}) {
      for (int k = 0; k < opt.points; ++k) {
        auto p = detail::interior_point(6 * width, rng);
        std::vector<double> g(p.size());
        entropy_grad(p, width, ecfg, g);
        detail::maybe_corrupt(g, opt);
        check(width == 1 ? "binary entropy" : "K-ary entropy",
              detail::fd_relative_error([&](std::span<const double> q) { return entropy(q, width, ecfg); }, p, g));
      }
    }
    const EnergyModel m = EnergyModel::mis(gen_er(5, 0.5, opt.seed));
    CommConfig ccfg;
    ccfg.comm_strength = 0.3;
    for (int k = 0; k < opt.points; ++k) {
      RelaxedEnsemble e(4, m.dim(), 1);
      e.p = detail::interior_point(e.p.size(), rng);
      const auto st = column_stats(e);
      std::vector<double> g(e.p.size(), 0.0);
      for (std::size_t s = 0; s < e.runs; ++s) add_comm_gradient(e, st, s, ccfg, std::span(g).subspan(s * e.dim, e.dim));
      detail::maybe_corrupt(g, opt);
      check("diversity term", detail::fd_relative_error(
                                  [&](std::span<const double> q) {
                                    RelaxedEnsemble f = e;
                                    f.p.assign(q.begin(), q.end());
                                    return comm_term(f, ccfg);
                                  },
                                  e.p, g));
    }
    if (c.r.passed) {
      std::ostringstream os;
      os << "worst relative error " << worst;
      c.r.detail = os.str();
    }
  });
}

/// relaxed_energy(embed(x)) == discrete_energy(x) for every assignment.
inline SuiteResult verify_exactness(const VerifyOptions& opt = {}) {
  return detail::timed_suite("exactness", [&](detail::Checker& c) {
    auto models = detail::sample_models(opt.seed);
    for (auto& m : models) {
      // Categorical models on 8 nodes are too many states; shrink them.
      const EnergyModel mm = m.categorical() ? (m.kind() == ProblemKind::Partition
                                                    ? EnergyModel::partition(gen_er(6, 0.5, opt.seed), 3)
                                                    : EnergyModel::coloring(gen_er(6, 0.5, opt.seed), 3))
                                             : m;
      for_each_assignment(mm.num_nodes(), mm.arity(), std::uint64_t{1} << 20, [&](std::span<const int> x) {
        const double d = discrete_energy(mm, x);
        double r = relaxed_energy(mm, embed(mm, x));
        if (opt.corrupt_gradient) r += 1e-3;
        if (std::abs(d - r) > 1e-9 * std::max(1.0, std::abs(d))) {
          c.fail(std::string("exactness ") + std::string(to_string(mm.kind())) + ": relaxed " + std::to_string(r) +
                 " != discrete " + std::to_string(d));
        }
      });
    }
  });
}

/// The K-ary entropy with K=2 equals the binary entropy of the first column.
inline SuiteResult verify_k2_reduction(const VerifyOptions& opt = {}) {
  return detail::timed_suite("k2_reduction", [&](detail::Checker& c) {
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const EntropyConfig ecfg;
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const double a = u(rng);
      const double row[2] = {a, 1.0 - a};
      const double col[1] = {a};
      const double d = std::abs(entropy_kary(row, 2, ecfg) - entropy_binary(col, ecfg));
      worst = std::max(worst, d);
      if (d > 1e-12) c.fail("K=2 reduction off by " + std::to_string(d));
    }
    if (c.r.passed) c.r.detail = "worst difference " + std::to_string(worst);
  });
}

/// Sum of column STDs over binary S x N ensembles: the maximizers are exactly
/// the ensembles whose columns hold floor(S/2) or ceil(S/2) ones.
inline SuiteResult verify_diversity_maximizers(const VerifyOptions& opt = {}) {
  (void)opt;
  return detail::timed_suite("diversity_maximizers", [&](detail::Checker& c) {
    for (auto [S, N] : {std::pair<std::size_t, std::size_t>{4, 2}, {5, 1}}) {
      const std::size_t bits = S * N;
      double best = -1.0;
      std::vector<std::uint32_t> argmax;
      for (std::uint32_t mask = 0; mask < (1u << bits); ++mask) {
        RelaxedEnsemble e(S, N, 1);
        for (std::size_t b = 0; b < bits; ++b) e.p[b] = (mask >> b) & 1u;
        const auto st = column_stats(e);
        double total = 0.0;
        for (double v : st.stddev) total += v;
        if (total > best + 1e-12) {
          best = total;
          argmax.assign(1, mask);
        } else if (total > best - 1e-12) {
          argmax.push_back(mask);
        }
      }
      const double sd2 = (S % 2 == 0) ? 0.25 : (static_cast<double>(S * S) - 1.0) / (4.0 * static_cast<double>(S * S));
      const double expected = static_cast<double>(N) * std::sqrt(sd2);
      if (std::abs(best - expected) > 1e-12) {
        c.fail("S=" + std::to_string(S) + ": max sum STD " + std::to_string(best) + " != " + std::to_string(expected));
      }
      for (std::uint32_t mask : argmax) {
        for (std::size_t i = 0; i < N; ++i) {
          std::size_t ones = 0;
          for (std::size_t s = 0; s < S; ++s) ones += (mask >> (s * N + i)) & 1u;
          if (ones != S / 2 && ones != (S + 1) / 2) c.fail("S=" + std::to_string(S) + ": unbalanced maximizer");
        }
      }
      // Every balanced ensemble must be among the maximizers.
      std::size_t balanced = 0;
      for (std::uint32_t mask = 0; mask < (1u << bits); ++mask) {
        bool ok = true;
        for (std::size_t i = 0; i < N && ok; ++i) {
          std::size_t ones = 0;
          for (std::size_t s = 0; s < S; ++s) ones += (mask >> (s * N + i)) & 1u;
          ok = ones == S / 2 || ones == (S + 1) / 2;
        }
        balanced += ok;
      }
      if (balanced != argmax.size()) c.fail("S=" + std::to_string(S) + ": maximizer count mismatch");
    }
  });
}

/// Low temperature concentrates uniformly on the optima; high temperature
/// flattens to uniform.
inline SuiteResult verify_boltzmann_limits(const VerifyOptions& opt = {}) {
  return detail::timed_suite("boltzmann_limits", [&](detail::Checker& c) {
    for (int inst = 0; inst < 10; ++inst) {
      const std::size_t n = 6 + static_cast<std::size_t>(inst % 5);
      const EnergyModel m = EnergyModel::mis(gen_er(n, 0.35, opt.seed + static_cast<std::uint64_t>(inst)), 2.0);
      const auto cold = boltzmann_enumerate(m, 1e-3);
      double mass = 0.0, lo = 1.0, hi = 0.0;
      for (std::size_t i = 0; i < cold.energy.size(); ++i) {
        if (cold.energy[i] <= cold.min_energy + 1e-9) {
          mass += cold.probability[i];
          lo = std::min(lo, cold.probability[i]);
          hi = std::max(hi, cold.probability[i]);
        }
      }
      if (mass < 0.999) c.fail("T=1e-3: mass on optima " + std::to_string(mass) + " < 0.999");
      if (hi - lo > 1e-6) c.fail("T=1e-3: optima not uniform");
      const auto hot = boltzmann_enumerate(m, 1e6);
      auto [mn, mx] = std::minmax_element(hot.probability.begin(), hot.probability.end());
      if (*mx - *mn > 1e-4) c.fail("T=1e6: distribution not uniform");
      double z = 0.0;
      for (double p : cold.probability) z += p;
      if (std::abs(z - 1.0) > 1e-12) c.fail("probabilities do not sum to 1");
    }
  });
}

inline std::vector<SuiteResult> verify_all(const VerifyOptions& opt = {}) {
  return {verify_gradients(opt), verify_exactness(opt), verify_k2_reduction(opt), verify_diversity_maximizers(opt),
          verify_boltzmann_limits(opt)};
}

}  // namespace pqqa
