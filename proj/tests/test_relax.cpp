#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "pqqa/generators.hpp"
#include "pqqa/relax.hpp"

using namespace pqqa;

namespace {

double fd_error(const std::function<double(const std::vector<double>&)>& f, const std::vector<double>& x,
                const std::vector<double>& g) {
  const double h = 1e-6;
  double diff = 0.0, norm = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto y = x;
    y[i] += h;
    double up = f(y);
    y[i] -= 2 * h;
    double fd = (up - f(y)) / (2 * h);
    diff += (fd - g[i]) * (fd - g[i]);
    norm += g[i] * g[i];
  }
  return std::sqrt(diff) / std::max(1.0, std::sqrt(norm));
}

}  // namespace

TEST(Clamp, Examples) {
  auto c = clamp_sigma(std::vector<double>{-0.3, 0.5, 1.7});
  EXPECT_EQ(c, (std::vector<double>{0.0, 0.5, 1.0}));
  std::vector<double> inside{0.0, 0.2, 1.0};
  EXPECT_EQ(clamp_sigma(inside), inside);
  EXPECT_EQ(clamp_sigma(c), c);
}

TEST(KarySigma, Examples) {
  // Entries are clamped to [0,1] before normalizing, so 2 counts as 1.
  EXPECT_EQ(kary_sigma(std::vector<double>{2, 1, -1}, 3), (std::vector<double>{0.5, 0.5, 0.0}));
  auto a = kary_sigma(std::vector<double>{0.6, 0.3, -0.1}, 3);
  EXPECT_DOUBLE_EQ(a[0], 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(a[1], 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(a[2], 0.0);
  std::vector<double> quarter(4, 0.25);
  EXPECT_EQ(kary_sigma(quarter, 4), quarter);
  EXPECT_EQ(kary_sigma(std::vector<double>{-1, -2}, 2), (std::vector<double>{0.5, 0.5}));
  EXPECT_THROW(kary_sigma(std::vector<double>{1, 2, 3}, 2), DimensionError);
}

TEST(EntropyBinary, Values) {
  EntropyConfig cfg;
  EXPECT_DOUBLE_EQ(entropy_binary(std::vector<double>(7, 0.5), cfg), 7.0);
  EXPECT_DOUBLE_EQ(entropy_binary(std::vector<double>{0, 1, 1, 0}, cfg), 0.0);
  EXPECT_DOUBLE_EQ(entropy_binary(std::vector<double>{0.75}, cfg), 0.9375);
  std::vector<double> g(1);
  entropy_binary_grad(std::vector<double>{0.75}, cfg, g);
  EXPECT_DOUBLE_EQ(g[0], -8.0 * 0.125);
}

TEST(EntropyBinary, RangeAndConvexity) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int alpha : {2, 4, 6}) {
    EntropyConfig cfg{alpha};
    for (int k = 0; k < 200; ++k) {
      std::vector<double> p(5);
      for (auto& v : p) v = u(rng);
      const double s = entropy_binary(p, cfg);
      EXPECT_GE(s, 0.0);
      EXPECT_LE(s, 5.0);
      // Second difference of the penalty 1 - (2p-1)^alpha: the function is
      // concave in p, so -s is convex.
      const double h = 1e-3, x = std::clamp(p[0], h, 1 - h);
      auto f = [&](double y) { return entropy_binary(std::vector<double>{y}, cfg); };
      EXPECT_LE(f(x + h) - 2 * f(x) + f(x - h), 1e-12);
    }
  }
  EXPECT_THROW(EntropyConfig{3}.validate(), ConfigError);
}

TEST(EntropyKary, Values) {
  EntropyConfig cfg;
  EXPECT_NEAR(entropy_kary(std::vector<double>{1, 0, 0}, 3, cfg), 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(kary_entropy_scale(3, 4), 1.0 / 18.0);
  EXPECT_NEAR(entropy_kary(std::vector<double>{0.2, 0.2, 0.2, 0.2, 0.2}, 5, cfg), 1.0, 1e-15);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    const double a = u(rng);
    EXPECT_NEAR(entropy_kary(std::vector<double>{a, 1 - a}, 2, cfg), entropy_binary(std::vector<double>{a}, cfg),
                1e-12);
  }
}

TEST(QqaEnergy, Examples) {
  auto m = EnergyModel::mis(Graph(2, {{0, 1, 1.0}}));
  EntropyConfig cfg;
  std::vector<double> half{0.5, 0.5};
  EXPECT_DOUBLE_EQ(qqa_energy(half, m, -2.0, cfg), -4.5);
  EXPECT_DOUBLE_EQ(qqa_energy(half, m, 0.0, cfg), relaxed_energy(m, half));
  std::vector<double> x{1, 0};
  EXPECT_DOUBLE_EQ(qqa_energy(x, m, 3.0, cfg), -1.0);
}

TEST(Comm, Examples) {
  RelaxedEnsemble e(4, 1, 1);
  e.p = {0, 0, 1, 1};
  auto st = column_stats(e);
  EXPECT_DOUBLE_EQ(st.stddev[0], 0.5);
  CommConfig cfg;
  cfg.comm_strength = 0.2;
  EXPECT_DOUBLE_EQ(comm_term(e, cfg), -4 * 0.2 * 0.5);

  RelaxedEnsemble same(3, 2, 1);
  same.p = {0.3, 0.6, 0.3, 0.6, 0.3, 0.6};
  EXPECT_DOUBLE_EQ(comm_term(same, cfg), 0.0);
  std::vector<double> g(2, 0.0);
  add_comm_gradient(same, column_stats(same), 1, cfg, g);
  EXPECT_EQ(g, (std::vector<double>{0.0, 0.0}));

  RelaxedEnsemble one(1, 3, 1);
  one.p = {0.1, 0.2, 0.3};
  EXPECT_DOUBLE_EQ(comm_term(one, cfg), 0.0);
  cfg.comm_strength = 1.5;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(Comm, HalfSplitMaximizesExhaustively) {
  const std::size_t S = 4, N = 2;
  double best = -1;
  for (unsigned mask = 0; mask < (1u << (S * N)); ++mask) {
    RelaxedEnsemble e(S, N, 1);
    for (std::size_t b = 0; b < S * N; ++b) e.p[b] = (mask >> b) & 1u;
    auto st = column_stats(e);
    best = std::max(best, st.stddev[0] + st.stddev[1]);
  }
  EXPECT_DOUBLE_EQ(best, 1.0);
}

TEST(Ensemble, ReducesToSingleRun) {
  auto m = EnergyModel::max_cut(gen_er(6, 0.5, 1));
  EntropyConfig ecfg;
  CommConfig ccfg;
  ccfg.comm_strength = 0.4;
  RelaxedEnsemble e(1, 6, 1);
  e.p = {0.1, 0.4, 0.5, 0.9, 0.3, 0.7};
  EXPECT_DOUBLE_EQ(ensemble_energy(e, m, -1.0, ecfg, ccfg), qqa_energy(e.p, m, -1.0, ecfg));
  EXPECT_EQ(ensemble_gradient(e, m, -1.0, ecfg, ccfg), qqa_gradient(e.p, m, -1.0, ecfg));

  RelaxedEnsemble two(2, 6, 1);
  two.p = {0.1, 0.4, 0.5, 0.9, 0.3, 0.7, 0.2, 0.2, 0.8, 0.6, 0.5, 0.1};
  ccfg.comm_strength = 0.0;
  const double sum = qqa_energy(two.run(0), m, 0.5, ecfg) + qqa_energy(two.run(1), m, 0.5, ecfg);
  EXPECT_DOUBLE_EQ(ensemble_energy(two, m, 0.5, ecfg, ccfg), sum);
}

TEST(Ensemble, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  EntropyConfig ecfg;
  CommConfig ccfg;
  ccfg.comm_strength = 0.3;
  const std::vector<EnergyModel> models{EnergyModel::mis(gen_er(4, 0.6, 2)), EnergyModel::coloring(gen_er(4, 0.6, 2), 3)};
  for (const auto& m : models) {
    for (int k = 0; k < 20; ++k) {
      RelaxedEnsemble e(3, m.dim(), m.width());
      for (auto& v : e.p) v = u(rng);
      auto g = ensemble_gradient(e, m, -0.7, ecfg, ccfg);
      double err = fd_error(
          [&](const std::vector<double>& q) {
            RelaxedEnsemble f = e;
            f.p = q;
            return ensemble_energy(f, m, -0.7, ecfg, ccfg);
          },
          e.p, g);
      EXPECT_LE(err, 1e-5);
    }
  }
}

TEST(Entropy, GradientsMatchFiniteDifferences) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  EntropyConfig cfg;
  for (std::size_t width : {std::size_t{1}, std::size_t{4}}) {
    for (int k = 0; k < 50; ++k) {
      std::vector<double> p(8 * width);
      for (auto& v : p) v = u(rng);
      std::vector<double> g(p.size());
      entropy_grad(p, width, cfg, g);
      EXPECT_LE(fd_error([&](const std::vector<double>& q) { return entropy(q, width, cfg); }, p, g), 1e-5);
    }
  }
}
