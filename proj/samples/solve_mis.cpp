// Maximum independent set on a random graph, checked against greedy and SA.
#include <cstdio>

#include "pqqa/pqqa.hpp"

int main() {
  const pqqa::Graph g = pqqa::gen_er(200, 0.05, 1);
  const auto model = pqqa::EnergyModel::mis(g);

  pqqa::RunOptions opts;
  opts.runs = 20;
  opts.schedule.total_steps = 2000;
  opts.comm.comm_strength = 0.2;
  const auto rep = pqqa::run(model, opts);

  const auto greedy = pqqa::greedy_mis(g, 1);
  pqqa::SAConfig sa;
  sa.steps = 200000;
  const auto annealed = pqqa::sa_solve(model, sa);

  std::printf("pqqa   size %.0f feasible %d entropy %.2g (%.2fs)\n", -rep.best.objective, rep.best.feasible,
              rep.final_mean_entropy, rep.wall_time_s);
  std::printf("greedy size %.0f\n", -greedy.objective);
  std::printf("sa     size %.0f feasible %d\n", -annealed.objective, annealed.feasible);
}
