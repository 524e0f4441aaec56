#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "pqqa/error.hpp"
#include "pqqa/graph.hpp"

// Synthetic instance families. Every generator is a pure function of its
// parameters and seed (std::mt19937_64, libstdc++ distributions).

namespace pqqa {

/// Erdős–Rényi G(n, p): each unordered pair independently with probability p.
inline Graph gen_er(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("gen_er: p must lie in [0,1]");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (node_t i = 0; i < n; ++i) {
    for (node_t j = i + 1; j < n; ++j) {
      if (coin(rng)) edges.push_back({i, j, 1.0});
    }
  }
  return Graph(n, std::move(edges));
}

/// Erdős–Rényi G(n, m): m distinct pairs drawn uniformly.
inline Graph gen_gnm(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n < 2 && m > 0) throw ConfigError("gen_gnm: need at least 2 nodes for an edge");
  if (m > n * (n - 1) / 2) throw ConfigError("gen_gnm: m exceeds the number of node pairs");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<node_t> pick(0, static_cast<node_t>(n - 1));
  std::unordered_set<std::uint64_t> seen;
  std::vector<Edge> edges;
  edges.reserve(m);
  while (edges.size() < m) {
    node_t a = pick(rng);
    node_t b = pick(rng);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    if (seen.insert(detail::pair_key(a, b)).second) edges.push_back({a, b, 1.0});
  }
  return Graph(n, std::move(edges));
}

/// Replaces every edge weight by a uniform draw from {-1, 0, 1}.
inline Graph with_pm1_weights(const Graph& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<int> pick(-1, 1);
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  for (auto& e : edges) e.weight = pick(rng);
  return Graph(g.num_nodes(), std::move(edges));
}

/// Barabási–Albert preferential attachment grown from an m-node clique.
/// Each new node attaches to m distinct existing nodes with probability
/// proportional to degree (uniform while all degrees are zero).
inline Graph gen_ba(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (m < 1 || m >= n) throw ConfigError("gen_ba: need 1 <= m < n");
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  std::vector<node_t> endpoints;  // one entry per edge endpoint
  for (node_t i = 0; i < m; ++i) {
    for (node_t j = i + 1; j < m; ++j) {
      edges.push_back({i, j, 1.0});
      endpoints.push_back(i);
      endpoints.push_back(j);
    }
  }
  std::vector<node_t> targets;
  for (auto v = static_cast<node_t>(m); v < n; ++v) {
    targets.clear();
    while (targets.size() < m) {
      node_t t;
      if (endpoints.empty()) {
        t = std::uniform_int_distribution<node_t>(0, v - 1)(rng);
      } else {
        t = endpoints[std::uniform_int_distribution<std::size_t>(0, endpoints.size() - 1)(rng)];
      }
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
    }
    for (node_t t : targets) {
      edges.push_back({t, v, 1.0});
      endpoints.push_back(t);
      endpoints.push_back(v);
    }
  }
  return Graph(n, std::move(edges));
}

/// d-regular random graph from the pairing model.
///
/// Stubs are paired one pair at a time, re-drawing any pair that would form
/// a loop or multi-edge; when no admissible pair remains the whole pairing
/// restarts (at most 1000 restarts).
inline Graph gen_rrg(std::size_t n, std::size_t d, std::uint64_t seed) {
  if ((n * d) % 2 != 0) throw ConfigError("gen_rrg: n*d must be even");
  if (d >= n) throw ConfigError("gen_rrg: need d < n");
  std::mt19937_64 rng(seed);
  constexpr int kMaxRestarts = 1000;

  for (int attempt = 0; attempt <= kMaxRestarts; ++attempt) {
    std::vector<node_t> stubs;
    stubs.reserve(n * d);
    for (node_t i = 0; i < n; ++i) stubs.insert(stubs.end(), d, i);
    std::unordered_set<std::uint64_t> seen;
    std::vector<Edge> edges;
    edges.reserve(n * d / 2);

    auto admissible = [&](node_t a, node_t b) {
      return a != b && !seen.count(detail::pair_key(std::min(a, b), std::max(a, b)));
    };
    auto take = [&](std::size_t i) {
      stubs[i] = stubs.back();
      stubs.pop_back();
    };

    bool stuck = false;
    while (!stubs.empty()) {
      bool paired = false;
      for (int tries = 0; tries < 64 && !paired; ++tries) {
        std::uniform_int_distribution<std::size_t> pick(0, stubs.size() - 1);
        std::size_t i = pick(rng);
        std::size_t j = pick(rng);
        if (i == j || !admissible(stubs[i], stubs[j])) continue;
        node_t a = std::min(stubs[i], stubs[j]);
        node_t b = std::max(stubs[i], stubs[j]);
        seen.insert(detail::pair_key(a, b));
        edges.push_back({a, b, 1.0});
        take(std::max(i, j));
        take(std::min(i, j));
        paired = true;
      }
      if (paired) continue;
      // Random draws keep failing: check whether any admissible pair is left.
      bool any = false;
      for (std::size_t i = 0; i < stubs.size() && !any; ++i) {
        for (std::size_t j = i + 1; j < stubs.size() && !any; ++j) any = admissible(stubs[i], stubs[j]);
      }
      if (!any) {
        stuck = true;
        break;
      }
    }
    if (!stuck) return Graph(n, std::move(edges));
  }
  throw GenerationError("gen_rrg: generation failed after 1000 restarts");
}

/// Queens graph on a rows x cols board: squares attack along rows, columns
/// and both diagonals. Node id = r * cols + c.
inline Graph gen_queen(std::size_t rows, std::size_t cols) {
  if (rows < 1 || cols < 1) throw ConfigError("gen_queen: board must be at least 1x1");
  std::vector<Edge> edges;
  auto id = [cols](std::size_t r, std::size_t c) { return static_cast<node_t>(r * cols + c); };
  for (std::size_t r1 = 0; r1 < rows; ++r1) {
    for (std::size_t c1 = 0; c1 < cols; ++c1) {
      for (std::size_t r2 = r1; r2 < rows; ++r2) {
        for (std::size_t c2 = 0; c2 < cols; ++c2) {
          if (r2 == r1 && c2 <= c1) continue;
          auto dr = static_cast<long>(r2) - static_cast<long>(r1);
          auto dc = static_cast<long>(c2) - static_cast<long>(c1);
          if (dr == 0 || dc == 0 || dr == dc || dr == -dc) edges.push_back({id(r1, c1), id(r2, c2), 1.0});
        }
      }
    }
  }
  return Graph(rows * cols, std::move(edges));
}

inline Graph gen_queen(std::size_t n) { return gen_queen(n, n); }

/// Mycielski graphs in COLOR-benchmark numbering: k = 1 is a single edge and
/// each step applies the Mycielski transformation, so myciel(k) is
/// triangle-free with chromatic number k + 1 (myciel5: 47 nodes, 236 edges).
inline Graph gen_mycielski(std::size_t k) {
  if (k < 1) throw ConfigError("gen_mycielski: need k >= 1");
  std::size_t n = 2;
  std::vector<Edge> edges{{0, 1, 1.0}};
  for (std::size_t step = 1; step < k; ++step) {
    std::vector<Edge> next = edges;
    for (const auto& e : edges) {
      next.push_back({static_cast<node_t>(e.u), static_cast<node_t>(e.v + n), 1.0});
      next.push_back({static_cast<node_t>(e.v), static_cast<node_t>(e.u + n), 1.0});
    }
    auto hub = static_cast<node_t>(2 * n);
    for (node_t i = 0; i < n; ++i) next.push_back({static_cast<node_t>(i + n), hub, 1.0});
    edges = std::move(next);
    n = 2 * n + 1;
  }
  return Graph(n, std::move(edges));
}

}  // namespace pqqa
