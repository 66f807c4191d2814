#pragma once

// Small hand-checkable models and random model generators shared by the
// unit and acceptance suites.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mrfbound/model.hpp"

namespace mrfbound::testing {

inline PotentialTable table2(double a, double b, double c, double d) {
  return PotentialTable(2, 2, {a, b, c, d});
}

/// Triangle 0-1-2 with every edge [[2,1],[1,2]].
inline ModelSpec triangle_spec() {
  ModelSpec spec;
  spec.cardinalities = {2, 2, 2};
  spec.edges = {{0, 1, table2(2, 1, 1, 2)}, {0, 2, table2(2, 1, 1, 2)}, {1, 2, table2(2, 1, 1, 2)}};
  return spec;
}

/// Triangle with unary [2,1] on vertex 0. Exact p(x_0) = [2/3, 1/3], Z = 42.
inline ModelSpec triangle_with_unary_spec() {
  ModelSpec spec = triangle_spec();
  spec.unaries = {{0, {2.0, 1.0}}};
  return spec;
}

/// Two binary variables joined by [[3,1],[1,1]]. p(x_0) = [2/3, 1/3], Z = 6.
inline ModelSpec pair_spec() {
  ModelSpec spec;
  spec.cardinalities = {2, 2};
  spec.edges = {{0, 1, table2(3, 1, 1, 1)}};
  return spec;
}

/// Cycle 0-1-...-(n-1)-0 with every edge [[2,1],[1,2]].
inline ModelSpec cycle_spec(int n) {
  ModelSpec spec;
  spec.cardinalities.assign(n, 2);
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    spec.edges.push_back({std::min(i, j), std::max(i, j), table2(2, 1, 1, 2)});
  }
  return spec;
}

/// Center 0 joined to `spokes` leaves.
inline ModelSpec star_spec(int spokes) {
  ModelSpec spec;
  spec.cardinalities.assign(spokes + 1, 2);
  for (int i = 1; i <= spokes; ++i) spec.edges.push_back({0, i, table2(2, 1, 1, 2)});
  return spec;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int integer(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool coin(double p = 0.5) { return uniform() < p; }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// Random positive table with d(ψ) equal to `target_d` (exactly 1 gives a
/// rank-1 table).
inline PotentialTable random_table(Rng& rng, int rows, int cols, double target_d) {
  std::vector<double> logs(static_cast<std::size_t>(rows) * cols);
  double cross = 0.0;
  // A nearly rank-1 draw cannot be rescaled to the target, so redraw it.
  while (cross < 0.5) {
    for (double& x : logs) x = rng.uniform(-1.0, 1.0);
    cross = 0.0;
    for (int a = 0; a < rows; ++a)
      for (int c = 0; c < rows; ++c)
        for (int b = 0; b < cols; ++b)
          for (int d = 0; d < cols; ++d)
            cross = std::max(cross, logs[a * cols + b] + logs[c * cols + d] - logs[a * cols + d] -
                                        logs[c * cols + b]);
  }
  // Rank-1 part, which does not change the strength.
  std::vector<double> row_bias(rows), col_bias(cols);
  for (double& x : row_bias) x = rng.uniform(-1.0, 1.0);
  for (double& x : col_bias) x = rng.uniform(-1.0, 1.0);

  const double scale = cross > 0.0 ? 4.0 * std::log(target_d) / cross : 0.0;
  std::vector<double> values(logs.size());
  for (int a = 0; a < rows; ++a)
    for (int b = 0; b < cols; ++b)
      values[a * cols + b] = std::exp(scale * logs[a * cols + b] + row_bias[a] + col_bias[b]);
  return PotentialTable(rows, cols, std::move(values));
}

enum class Topology { kTree, kCycle, kClique, kGrid, kRandom, kCycleWithPendant };

inline std::string to_string(Topology t) {
  switch (t) {
    case Topology::kTree: return "tree";
    case Topology::kCycle: return "cycle";
    case Topology::kClique: return "clique";
    case Topology::kGrid: return "grid";
    case Topology::kRandom: return "random";
    case Topology::kCycleWithPendant: return "cycle+pendant";
  }
  return "?";
}

/// Edge list (u < v) for a topology on n vertices.
inline std::vector<std::pair<int, int>> topology_edges(Rng& rng, Topology topology, int n) {
  std::set<std::pair<int, int>> edges;
  auto add = [&](int a, int b) {
    if (a != b) edges.emplace(std::min(a, b), std::max(a, b));
  };
  switch (topology) {
    case Topology::kTree:
      for (int v = 1; v < n; ++v) add(v, rng.integer(0, v - 1));
      break;
    case Topology::kCycle:
      for (int v = 0; v < n; ++v) add(v, (v + 1) % n);
      break;
    case Topology::kClique:
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) add(a, b);
      break;
    case Topology::kGrid: {
      const int cols = n >= 6 ? 3 : 2;
      for (int v = 0; v < n; ++v) {
        if ((v % cols) + 1 < cols && v + 1 < n) add(v, v + 1);
        if (v + cols < n) add(v, v + cols);
      }
      break;
    }
    case Topology::kRandom:
      for (int v = 1; v < n; ++v) add(v, rng.integer(0, v - 1));  // connected
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
          if (rng.coin(0.3)) add(a, b);
      break;
    case Topology::kCycleWithPendant:
      for (int v = 0; v + 1 < n; ++v) add(v, (v + 1) % (n - 1));
      add(n - 1, 0);
      break;
  }
  return {edges.begin(), edges.end()};
}

struct RandomModelOptions {
  int min_nodes = 3;
  int max_nodes = 8;
  std::vector<int> cardinalities = {2, 3};
  double min_strength = 1.0;
  double max_strength = 3.0;
  double unary_probability = 0.5;
  std::vector<Topology> topologies = {Topology::kTree,   Topology::kCycle,  Topology::kClique,
                                      Topology::kGrid,   Topology::kRandom, Topology::kCycleWithPendant};
};

struct RandomModel {
  ModelSpec spec;
  Topology topology;
};

inline RandomModel random_model(Rng& rng, const RandomModelOptions& opt = {}) {
  const int n = rng.integer(opt.min_nodes, opt.max_nodes);
  const Topology topology = opt.topologies[rng.integer(0, static_cast<int>(opt.topologies.size()) - 1)];
  RandomModel out{{}, topology};
  for (int v = 0; v < n; ++v) {
    out.spec.cardinalities.push_back(
        opt.cardinalities[rng.integer(0, static_cast<int>(opt.cardinalities.size()) - 1)]);
  }
  for (auto [u, v] : topology_edges(rng, topology, n)) {
    // Random orientation exercises transposed access.
    if (rng.coin()) std::swap(u, v);
    const double d = rng.uniform(opt.min_strength, opt.max_strength);
    out.spec.edges.push_back(
        {u, v, random_table(rng, out.spec.cardinalities[u], out.spec.cardinalities[v], d)});
  }
  for (int v = 0; v < n; ++v) {
    if (!rng.coin(opt.unary_probability)) continue;
    std::vector<double> values(out.spec.cardinalities[v]);
    for (double& x : values) x = std::exp(rng.uniform(-1.0, 1.0));
    out.spec.unaries.push_back({v, std::move(values)});
  }
  return out;
}

/// Eccentricity of `v` in edges; -1 entries mark unreachable vertices.
inline std::vector<int> bfs_distances(const Model& model, int v) {
  std::vector<int> dist(model.node_count(), -1);
  std::vector<int> queue{v};
  dist[v] = 0;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (const Neighbor& nb : model.neighbors(queue[i])) {
      if (dist[nb.vertex] < 0) {
        dist[nb.vertex] = dist[queue[i]] + 1;
        queue.push_back(nb.vertex);
      }
    }
  }
  return dist;
}

/// Longest shortest path, in edges.
inline int diameter(const Model& model) {
  int best = 0;
  for (int v = 0; v < model.node_count(); ++v) {
    for (int d : bfs_distances(model, v)) best = std::max(best, d);
  }
  return best;
}

}  // namespace mrfbound::testing
