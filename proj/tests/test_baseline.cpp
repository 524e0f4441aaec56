#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "pqqa/baseline.hpp"
#include "pqqa/generators.hpp"

using namespace pqqa;

namespace {

Graph cycle(std::size_t n) {
  std::vector<Edge> es;
  for (std::size_t i = 0; i < n; ++i) es.push_back({static_cast<node_t>(i), static_cast<node_t>((i + 1) % n), 1.0});
  return Graph(n, es);
}

Graph star(std::size_t leaves) {
  std::vector<Edge> es;
  for (std::size_t i = 1; i <= leaves; ++i) es.push_back({0, static_cast<node_t>(i), 1.0});
  return Graph(leaves + 1, es);
}

}  // namespace

TEST(BruteForce, SmallOptima) {
  EXPECT_DOUBLE_EQ(brute_force(EnergyModel::mis(Graph(2, {{0, 1, 1.0}}))).objective, -1.0);
  EXPECT_DOUBLE_EQ(brute_force(EnergyModel::max_cut(cycle(3))).objective, -2.0);
  // An odd cycle cannot be 2-colored: one conflict is unavoidable.
  auto c5 = brute_force(EnergyModel::coloring(cycle(5), 2));
  EXPECT_DOUBLE_EQ(c5.objective, 1.0);
  EXPECT_FALSE(c5.feasible);
  EXPECT_DOUBLE_EQ(brute_force(EnergyModel::coloring(cycle(5), 3)).objective, 0.0);
  EXPECT_THROW(brute_force(EnergyModel::mis(Graph(30, {}))), InstanceTooLarge);
}

TEST(Greedy, KnownGraphs) {
  EXPECT_DOUBLE_EQ(greedy_mis(Graph(7, {}), 0).objective, -7.0);
  auto s = greedy_mis(star(5), 3);
  EXPECT_DOUBLE_EQ(s.objective, -5.0);
  EXPECT_DOUBLE_EQ(greedy_mis(Graph(2, {{0, 1, 1.0}}), 1).objective, -1.0);
}

TEST(Greedy, AlwaysIndependentAndNoBetterThanOptimum) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Graph g = gen_er(16, 0.25, seed);
    auto m = EnergyModel::mis(g);
    auto gr = greedy_mis(g, seed);
    EXPECT_TRUE(gr.feasible);
    EXPECT_GE(gr.objective, brute_force(m).objective);
  }
  Graph big = gen_er(2000, 0.005, 1);
  EXPECT_TRUE(greedy_mis(big, 1).feasible);
}

TEST(SA, SingleEdgeMisAlmostAlwaysOptimal) {
  auto m = EnergyModel::mis(Graph(2, {{0, 1, 1.0}}));
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SAConfig cfg;
    cfg.steps = 10000;
    cfg.seed = seed;
    hits += sa_solve(m, cfg).objective == -1.0;
  }
  EXPECT_GE(hits, 99);
}

TEST(SA, AuditAgreesWithIncrementalEnergy) {
  const std::vector<EnergyModel> models{
      EnergyModel::mis(gen_er(30, 0.2, 1)), EnergyModel::max_clique(gen_er(30, 0.4, 2)),
      EnergyModel::max_cut(with_pm1_weights(gen_er(30, 0.3, 3), 3)), EnergyModel::partition(gen_er(30, 0.2, 4), 3),
      EnergyModel::coloring(gen_er(30, 0.2, 5), 4)};
  for (const auto& m : models) {
    for (SAMove move : {SAMove::Metropolis, SAMove::Gibbs}) {
      SAConfig cfg;
      cfg.steps = 5000;
      cfg.audit = true;
      cfg.move = move;
      auto res = sa_solve_traced(m, cfg);
      EXPECT_GT(res.accepted, 0);
      EXPECT_NEAR(res.best.objective, discrete_energy(m, res.best.assignment), 1e-9);
    }
  }
}

TEST(SA, DeterministicPerSeed) {
  auto m = EnergyModel::max_cut(gen_er(50, 0.1, 1));
  SAConfig cfg;
  cfg.steps = 20000;
  cfg.seed = 5;
  EXPECT_EQ(sa_solve(m, cfg).assignment, sa_solve(m, cfg).assignment);
  cfg.schedule = SASchedule::Linear;
  EXPECT_EQ(sa_solve(m, cfg).assignment, sa_solve(m, cfg).assignment);
}

TEST(SA, ScheduleAndAcceptance) {
  SAConfig cfg;
  cfg.t_start = 2.0;
  cfg.t_end = 0.02;
  cfg.steps = 100;
  EXPECT_DOUBLE_EQ(sa_temperature(cfg, 0), 2.0);
  EXPECT_NEAR(sa_temperature(cfg, 50), 0.2, 1e-12);
  cfg.schedule = SASchedule::Linear;
  EXPECT_DOUBLE_EQ(sa_temperature(cfg, 50), 1.01);

  EXPECT_DOUBLE_EQ(metropolis_accept(-1.0, 0.5), 1.0);
  EXPECT_DOUBLE_EQ(metropolis_accept(1.0, 1.0), std::exp(-1.0));
  EXPECT_LT(metropolis_accept(1.0, 1e-3), 1e-300);
  EXPECT_NEAR(metropolis_accept(1.0, 1e9), 1.0, 1e-8);

  cfg.t_end = 3.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(Boltzmann, NormalizedWithCorrectLimits) {
  auto m = EnergyModel::mis(gen_er(8, 0.35, 2));
  auto cold = boltzmann_enumerate(m, 1e-3);
  EXPECT_NEAR(std::accumulate(cold.probability.begin(), cold.probability.end(), 0.0), 1.0, 1e-12);
  double ground = 0.0;
  std::size_t ground_count = 0;
  for (std::size_t i = 0; i < cold.energy.size(); ++i) {
    if (cold.energy[i] == cold.min_energy) {
      ground += cold.probability[i];
      ++ground_count;
    }
  }
  EXPECT_GE(ground, 0.999);
  for (std::size_t i = 0; i < cold.energy.size(); ++i) {
    if (cold.energy[i] == cold.min_energy) {
      EXPECT_NEAR(cold.probability[i], 1.0 / ground_count, 1e-6);
    }
  }
  auto hot = boltzmann_enumerate(m, 1e6);
  for (double p : hot.probability) EXPECT_NEAR(p, 1.0 / 256.0, 1e-4);
  EXPECT_THROW(boltzmann_enumerate(m, 0.0), ConfigError);
}
