#include "mrfbound/tree.hpp"

#include <algorithm>
#include <functional>
#include <ostream>
#include <string>

namespace mrfbound {

const char* to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::kRoot: return "root";
    case NodeKind::kInternal: return "internal";
    case NodeKind::kDeadEnd: return "dead_end";
    case NodeKind::kCycleInduced: return "cycle_induced";
    case NodeKind::kTruncated: return "truncated";
  }
  return "?";
}

int UnrolledTree::depth() const {
  int d = 0;
  for (const auto& n : nodes_) d = std::max(d, n.depth);
  return d;
}

std::vector<int> UnrolledTree::walk(std::size_t id) const {
  std::vector<int> out;
  for (int at = static_cast<int>(id); at >= 0; at = nodes_[at].parent) out.push_back(nodes_[at].gamma);
  std::reverse(out.begin(), out.end());
  return out;
}

namespace {

void check_root(const Model& model, int root) {
  if (root < 0 || root >= model.node_count()) {
    throw DomainError("no variable " + std::to_string(root));
  }
}

bool on_path(const std::vector<TreeNode>& nodes, int from, int gamma) {
  for (int at = from; at >= 0; at = nodes[at].parent) {
    if (nodes[at].gamma == gamma) return true;
  }
  return false;
}

// Non-backtracking continuations of node `id`.
int continuation_count(const Model& model, const std::vector<TreeNode>& nodes, int id) {
  const TreeNode& n = nodes[id];
  return n.parent < 0 ? model.degree(n.gamma) : model.degree(n.gamma) - 1;
}

void append_children(const Model& model, std::vector<TreeNode>& nodes, int id) {
  const int first = static_cast<int>(nodes.size());
  const int back = nodes[id].parent >= 0 ? nodes[nodes[id].parent].gamma : -1;
  const int depth = nodes[id].depth + 1;
  for (const Neighbor& nb : model.neighbors(nodes[id].gamma)) {
    if (nb.vertex == back) continue;
    nodes.push_back({nb.vertex, id, nb.edge, -1, 0, NodeKind::kInternal, depth});
  }
  nodes[id].first_child = first;
  nodes[id].child_count = static_cast<int>(nodes.size()) - first;
  nodes[id].kind = id == 0 ? NodeKind::kRoot : NodeKind::kInternal;
}

}  // namespace

UnrolledTree build_bethe_tree(const Model& model, int root, int walk_length, std::uint64_t budget) {
  check_root(model, root);
  if (walk_length < 1) throw PreconditionError("walk length must be at least 1");
  const int max_depth = walk_length - 1;

  std::vector<TreeNode> nodes{{root, -1, -1, -1, 0, NodeKind::kRoot, 0}};
  for (std::size_t id = 0; id < nodes.size(); ++id) {
    const int cont = continuation_count(model, nodes, static_cast<int>(id));
    if (cont == 0) {
      if (id != 0) nodes[id].kind = NodeKind::kDeadEnd;
      continue;
    }
    if (nodes[id].depth == max_depth) {
      nodes[id].kind = NodeKind::kTruncated;
      continue;
    }
    if (nodes.size() + cont > budget) {
      throw BudgetExceeded("Bethe tree of depth " + std::to_string(walk_length) + " from vertex " +
                               std::to_string(root) + " is too large",
                           budget);
    }
    append_children(model, nodes, static_cast<int>(id));
  }
  return UnrolledTree(model.node_count(), std::move(nodes));
}

UnrolledTree build_saw_tree(const Model& model, int root, std::uint64_t budget) {
  check_root(model, root);
  if (budget < 1) throw PreconditionError("budget must be at least 1");

  std::vector<TreeNode> nodes{{root, -1, -1, -1, 0, NodeKind::kRoot, 0}};
  bool exhausted = false;
  for (std::size_t id = 0; id < nodes.size(); ++id) {
    TreeNode& n = nodes[id];
    if (id != 0) {
      if (on_path(nodes, n.parent, n.gamma)) {
        n.kind = NodeKind::kCycleInduced;
        continue;
      }
    }
    const int cont = continuation_count(model, nodes, static_cast<int>(id));
    if (cont == 0) {
      if (id != 0) n.kind = NodeKind::kDeadEnd;
      continue;
    }
    if (exhausted || nodes.size() + cont > budget) {
      exhausted = true;
      n.kind = NodeKind::kTruncated;
      continue;
    }
    append_children(model, nodes, static_cast<int>(id));
  }
  return UnrolledTree(model.node_count(), std::move(nodes));
}

TreeStats classify_leaves(const UnrolledTree& tree) {
  TreeStats stats;
  stats.node_count = tree.size();
  stats.depth = tree.depth();
  stats.cycle_involved.assign(tree.vertex_count(), false);
  for (const TreeNode& n : tree.nodes()) {
    switch (n.kind) {
      case NodeKind::kRoot:
        if (n.child_count > 0) ++stats.internal;
        break;
      case NodeKind::kInternal: ++stats.internal; break;
      case NodeKind::kDeadEnd: ++stats.dead_end; break;
      case NodeKind::kCycleInduced:
        ++stats.cycle_induced;
        stats.cycle_involved[n.gamma] = true;
        break;
      case NodeKind::kTruncated: ++stats.truncated; break;
    }
  }
  return stats;
}

std::vector<int> cycle_involved_nodes(const Model& model) {
  // A vertex lies on a cycle iff one of its edges is not a bridge.
  const int n = model.node_count();
  std::vector<int> order(n, -1);
  std::vector<int> low(n, 0);
  std::vector<bool> bridge(model.edge_count(), false);
  int clock = 0;
  std::function<void(int, int)> visit = [&](int v, int via) {
    order[v] = low[v] = clock++;
    for (const Neighbor& nb : model.neighbors(v)) {
      if (nb.edge == via) continue;
      if (order[nb.vertex] < 0) {
        visit(nb.vertex, nb.edge);
        low[v] = std::min(low[v], low[nb.vertex]);
        if (low[nb.vertex] > order[v]) bridge[nb.edge] = true;
      } else {
        low[v] = std::min(low[v], order[nb.vertex]);
      }
    }
  };
  for (int v = 0; v < n; ++v) {
    if (order[v] < 0) visit(v, -1);
  }

  std::vector<int> out;
  for (int v = 0; v < n; ++v) {
    const auto adj = model.neighbors(v);
    if (std::any_of(adj.begin(), adj.end(), [&](const Neighbor& nb) { return !bridge[nb.edge]; })) {
      out.push_back(v);
    }
  }
  return out;
}

void dump_tree(const UnrolledTree& tree, std::ostream& out) {
  for (std::size_t id = 0; id < tree.size(); ++id) {
    const TreeNode& n = tree.node(id);
    out << id << ' ' << n.parent << ' ' << n.gamma << ' ' << to_string(n.kind) << ' ' << n.depth
        << '\n';
  }
}

}  // namespace mrfbound
