#include "mrfbound/oracle.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <string>

namespace mrfbound {

namespace {

// Neumaier's compensated sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace

ExactMarginals exact_marginals_bruteforce(const Model& model, std::uint64_t cap) {
  const int n = model.node_count();
  std::uint64_t states = 1;
  for (int k : model.cardinalities()) {
    const auto factor = static_cast<std::uint64_t>(k);
    if (states > UINT64_MAX / factor) {
      states = UINT64_MAX;
      break;
    }
    states *= factor;
  }
  if (states > cap) throw StateSpaceTooLarge(states, cap);

  std::vector<std::vector<CompensatedSum>> mass(n);
  for (int v = 0; v < n; ++v) mass[v].resize(model.cardinality(v));
  CompensatedSum partition;

  std::vector<int> x(n, 0);
  for (std::uint64_t step = 0; step < states; ++step) {
    const double w = unnormalized_joint(model, x);
    partition.add(w);
    for (int v = 0; v < n; ++v) mass[v][x[v]].add(w);
    for (int v = n - 1; v >= 0; --v) {
      if (++x[v] < model.cardinality(v)) break;
      x[v] = 0;
    }
  }

  ExactMarginals out;
  out.partition = partition.value();
  out.marginals.resize(n);
  for (int v = 0; v < n; ++v) {
    for (const auto& s : mass[v]) out.marginals[v].push_back(s.value() / out.partition);
  }
  return out;
}

std::vector<double> weitz_exact_binary(const Model& model, int v, std::uint64_t budget) {
  for (int u = 0; u < model.node_count(); ++u) {
    if (model.cardinality(u) != 2) {
      throw PreconditionError("variable " + std::to_string(u) + " has cardinality " +
                              std::to_string(model.cardinality(u)) +
                              "; the SAW-tree construction is exact only for binary models");
    }
  }
  const UnrolledTree tree = build_saw_tree(model, v, budget);
  for (const TreeNode& n : tree.nodes()) {
    if (n.kind == NodeKind::kTruncated) {
      throw BudgetExceeded("complete SAW tree from vertex " + std::to_string(v) + " does not fit",
                           budget);
    }
  }

  // Pinned state per node, -1 when free.
  std::vector<int> pinned(tree.size(), -1);
  for (std::size_t id = 0; id < tree.size(); ++id) {
    const TreeNode& leaf = tree.node(id);
    if (leaf.kind != NodeKind::kCycleInduced) continue;
    const int closing = tree.node(leaf.parent).gamma;
    int below = leaf.parent;
    int at = tree.node(below).parent;
    while (tree.node(at).gamma != leaf.gamma) {
      below = at;
      at = tree.node(at).parent;
    }
    const int departing = tree.node(below).gamma;
    pinned[id] = closing < departing ? 0 : 1;
  }

  std::vector<std::array<double, 2>> incoming(tree.size(), {1.0, 1.0});
  for (std::size_t id = tree.size(); id-- > 1;) {
    const TreeNode& n = tree.node(id);
    std::array<double, 2> in = incoming[id];
    if (pinned[id] >= 0) in = {pinned[id] == 0 ? 1.0 : 0.0, pinned[id] == 1 ? 1.0 : 0.0};
    std::array<double, 2> msg{};
    for (int xp = 0; xp < 2; ++xp) {
      msg[xp] = model.psi(n.edge, n.gamma, 0, xp) * in[0] + model.psi(n.edge, n.gamma, 1, xp) * in[1];
    }
    const double total = msg[0] + msg[1];
    auto& parent = incoming[n.parent];
    parent[0] *= msg[0] / total;
    parent[1] *= msg[1] / total;
    // Keep the running product away from underflow on high-degree nodes.
    const double scale = parent[0] + parent[1];
    parent[0] /= scale;
    parent[1] /= scale;
  }

  std::vector<double> root{incoming[0][0], incoming[0][1]};
  if (auto prior = model.prior(v); !prior.empty()) {
    root[0] *= prior[0];
    root[1] *= prior[1];
  }
  const double total = root[0] + root[1];
  root[0] /= total;
  root[1] /= total;
  return root;
}

}  // namespace mrfbound
