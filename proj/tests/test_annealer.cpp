#include <gtest/gtest.h>

#include <cmath>

#include "pqqa/annealer.hpp"
#include "pqqa/generators.hpp"

using namespace pqqa;

namespace {

EnergyModel single_edge_mis() { return EnergyModel::mis(Graph(2, {{0, 1, 1.0}})); }

}  // namespace

TEST(Schedule, GammaRamp) {
  AnnealSchedule sch;
  sch.gamma_min = -2.0;
  sch.gamma_max = 0.1;
  sch.total_steps = 1000;
  EXPECT_DOUBLE_EQ(gamma_at(sch, 0), -2.0);
  EXPECT_DOUBLE_EQ(gamma_at(sch, 1000), 0.1);
  EXPECT_NEAR(gamma_at(sch, 500), -0.95, 1e-12);

  AnnealSchedule flat = sch;
  flat.gamma_min = flat.gamma_max = 0.0;
  EXPECT_NO_THROW(flat.validate());
  AnnealSchedule bad = sch;
  bad.gamma_min = 1.0;
  EXPECT_THROW(bad.validate(), ConfigError);
  bad = sch;
  bad.total_steps = 0;
  EXPECT_THROW(bad.validate(), ConfigError);
}

TEST(Init, NearUniformAndSeeded) {
  auto m = EnergyModel::mis(gen_er(100, 0.05, 1));
  auto st = init_ensemble(m, 4, 17);
  EntropyConfig ecfg;
  for (double e : per_node_entropy(st.ensemble, m, ecfg)) EXPECT_GE(e, 0.9984);
  for (double v : st.ensemble.p) {
    EXPECT_GE(v, 0.5 - kInitJitter);
    EXPECT_LE(v, 0.5 + kInitJitter);
  }
  EXPECT_EQ(init_ensemble(m, 4, 17).ensemble.p, st.ensemble.p);
  EXPECT_NE(init_ensemble(m, 4, 18).ensemble.p, st.ensemble.p);

  auto c = EnergyModel::coloring(gen_er(10, 0.3, 1), 4);
  auto cs = init_ensemble(c, 2, 3);
  for (std::size_t r = 0; r < 2 * 10; ++r) {
    double sum = 0.0;
    for (std::size_t j = 0; j < 4; ++j) sum += cs.ensemble.p[r * 4 + j];
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
}

TEST(Step, FirstAdaptiveStepHasUnitMagnitude) {
  // A constant gradient of +1 moves p by lr on the first bias-corrected step.
  auto m = EnergyModel::mis(Graph(1, {}));  // energy -p, gradient -1
  AnnealSchedule sch;
  sch.gamma_min = sch.gamma_max = 0.0;
  sch.total_steps = 10;
  sch.learning_rate = 0.1;
  sch.weight_decay = 0.0;
  sch.noise = false;
  auto st = init_ensemble(m, 1, 0);
  st.ensemble.p[0] = 0.5;
  qqa_step(st, m, sch, EntropyConfig{}, CommConfig{}, 1);
  EXPECT_NEAR(st.ensemble.p[0], 0.6, 1e-8);

  st.ensemble.p[0] = 0.95;
  qqa_step(st, m, sch, EntropyConfig{}, CommConfig{}, 2);
  EXPECT_DOUBLE_EQ(st.ensemble.p[0], 1.0);
}

TEST(Step, StaysInDomain) {
  EntropyConfig ecfg;
  CommConfig ccfg;
  ccfg.comm_strength = 0.3;
  AnnealSchedule sch;
  sch.total_steps = 200;
  for (const auto& m : {EnergyModel::mis(gen_er(30, 0.2, 1)), EnergyModel::coloring(gen_er(30, 0.2, 1), 3)}) {
    auto st = init_ensemble(m, 5, 2);
    for (long t = 1; t <= sch.total_steps; ++t) {
      qqa_step(st, m, sch, ecfg, ccfg, t);
      for (double v : st.ensemble.p) ASSERT_TRUE(v >= 0.0 && v <= 1.0);
      if (m.categorical()) {
        for (std::size_t r = 0; r < st.ensemble.p.size(); r += 3) {
          ASSERT_NEAR(st.ensemble.p[r] + st.ensemble.p[r + 1] + st.ensemble.p[r + 2], 1.0, 1e-12);
        }
      }
    }
  }
}

TEST(FaceProjection, RemovesSharedShiftAndPinsBoundary) {
  std::vector<double> p{0.5, 0.5, 0.0};
  std::vector<double> g{1.0, 3.0, 5.0};
  project_rows_to_face(p, g, 3);
  EXPECT_DOUBLE_EQ(g[0], -1.0);
  EXPECT_DOUBLE_EQ(g[1], 1.0);
  EXPECT_DOUBLE_EQ(g[2], 0.0);

  std::vector<double> q{0.2, 0.3, 0.5, 0.0, 1.0, 0.0};
  std::vector<double> h{2.0, 2.0, 2.0, -1.0, 0.0, 1.0};
  project_rows_to_face(q, h, 3);
  EXPECT_EQ(std::vector<double>(h.begin(), h.begin() + 3), (std::vector<double>{0.0, 0.0, 0.0}));
  EXPECT_DOUBLE_EQ(h[3], -0.5);
  EXPECT_DOUBLE_EQ(h[4], 0.5);
  EXPECT_DOUBLE_EQ(h[5], 0.0);
}

TEST(Rounding, ThresholdAndArgmax) {
  auto m = EnergyModel::mis(Graph(4, {}));
  EXPECT_EQ(round_run(m, std::vector<double>{0.5, 0.49, 0.0, 1.0}), (Assignment{1, 0, 0, 1}));
  auto c = EnergyModel::coloring(Graph(2, {}), 3);
  EXPECT_EQ(round_run(c, std::vector<double>{0.2, 0.5, 0.3, 0.4, 0.4, 0.2}), (Assignment{1, 0}));
  std::vector<double> onehot{0, 0, 1, 1, 0, 0};
  EXPECT_EQ(round_run(c, onehot), (Assignment{2, 0}));
}

TEST(Run, SingleEdgeMisReachesOptimum) {
  RunOptions opts;
  opts.runs = 4;
  opts.schedule.total_steps = 500;
  opts.seed = 1;
  auto rep = run(single_edge_mis(), opts);
  EXPECT_DOUBLE_EQ(rep.best.objective, -1.0);
  EXPECT_TRUE(rep.best.feasible);
}

TEST(Run, DeterministicAndMonotone) {
  auto m = EnergyModel::mis(gen_er(40, 0.1, 5));
  RunOptions opts;
  opts.runs = 3;
  opts.schedule.total_steps = 300;
  opts.comm.comm_strength = 0.2;
  opts.seed = 9;
  auto a = run(m, opts);
  auto b = run(m, opts);
  EXPECT_EQ(a.best.assignment, b.best.assignment);
  ASSERT_EQ(a.trace.size(), b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    EXPECT_EQ(a.trace[i].best_objective, b.trace[i].best_objective);
    EXPECT_EQ(a.trace[i].mean_entropy, b.trace[i].mean_entropy);
    if (i > 0) {
      EXPECT_LE(a.trace[i].best_objective, a.trace[i - 1].best_objective);
    }
  }
  EXPECT_EQ(a.trace.front().step, 0);
  EXPECT_EQ(a.trace.back().step, 300);
}

TEST(Run, UncoupledRunsDoNotDependOnEnsembleSize) {
  // Without the communication term each run follows its own seeded stream,
  // so run 0 is the same whether it has 0 or 3 siblings.
  auto m = EnergyModel::max_cut(gen_er(20, 0.3, 2));
  RunOptions opts;
  opts.schedule.total_steps = 200;
  opts.seed = 4;
  opts.runs = 1;
  auto alone = run(m, opts);
  opts.runs = 4;
  auto joined = run(m, opts);
  EXPECT_EQ(alone.run_best[0].assignment, joined.run_best[0].assignment);
  EXPECT_EQ(alone.final_entropy[0], joined.final_entropy[0]);
}

TEST(Run, EntropyVanishesAtTermination) {
  auto m = EnergyModel::mis(gen_er(100, 0.05, 3));
  RunOptions opts;
  opts.runs = 10;
  opts.seed = 2;
  auto rep = run(m, opts);
  EXPECT_LE(rep.final_mean_entropy, 0.01);
  EXPECT_TRUE(rep.best.feasible);
}

TEST(Run, RejectsBadOptions) {
  RunOptions opts;
  opts.runs = 0;
  EXPECT_THROW(run(single_edge_mis(), opts), ConfigError);
  opts.runs = 1;
  opts.comm.comm_strength = -0.1;
  EXPECT_THROW(run(single_edge_mis(), opts), ConfigError);
  opts.comm.comm_strength = 0.0;
  opts.entropy.alpha = 5;
  EXPECT_THROW(run(single_edge_mis(), opts), ConfigError);
}

TEST(StepsToFraction, FirstWithinTolerance) {
  std::vector<TracePoint> trace{{0, 0, 0, -10}, {10, 0, 0, -95}, {20, 0, 0, -99.5}, {30, 0, 0, -100}};
  EXPECT_EQ(steps_to_fraction(trace, 0.99), 20);
  EXPECT_EQ(steps_to_fraction(trace, 0.9), 10);
  EXPECT_EQ(steps_to_fraction({}, 0.99), 0);
}

TEST(RepairMis, DropsMostConflictedNodeFirst) {
  auto m = EnergyModel::mis(Graph(4, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}}));
  auto fixed = repair_mis(evaluate(m, {1, 1, 1, 1}), m);
  EXPECT_TRUE(fixed.feasible);
  EXPECT_EQ(fixed.assignment, (Assignment{1, 0, 0, 1}));
  auto kept = repair_mis(evaluate(m, {1, 0, 0, 1}), m);
  EXPECT_EQ(kept.assignment, (Assignment{1, 0, 0, 1}));
  EXPECT_THROW(repair_mis(kept, EnergyModel::max_cut(m.graph())), ConfigError);
}
