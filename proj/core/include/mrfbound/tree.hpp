#pragma once

// Tree unrollings of a loopy graph.
//
// Bethe tree T_B(G, v, n): every non-backtracking walk from v with at most n
// vertices. Self-avoiding-walk tree T_SAW(G, v): the non-backtracking walks
// whose vertices are distinct except possibly the last one; a walk that
// returns to a vertex already on it stops there as a cycle-induced leaf.
//
// Trees are stored breadth-first: every node's children are contiguous and
// come after it, so a reverse scan is a valid post-order.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "mrfbound/model.hpp"

namespace mrfbound {

inline constexpr std::uint64_t kDefaultTreeBudget = 1'000'000;

enum class NodeKind { kRoot, kInternal, kDeadEnd, kCycleInduced, kTruncated };

const char* to_string(NodeKind kind);

struct TreeNode {
  int gamma;         // original vertex
  int parent;        // -1 at the root
  int edge;          // model edge to the parent, -1 at the root
  int first_child;
  int child_count;
  NodeKind kind;
  int depth;         // edges from the root
};

class UnrolledTree {
 public:
  UnrolledTree(int vertex_count, std::vector<TreeNode> nodes)
      : vertex_count_(vertex_count), nodes_(std::move(nodes)) {}

  std::size_t size() const { return nodes_.size(); }
  const TreeNode& node(std::size_t id) const { return nodes_[id]; }
  std::span<const TreeNode> nodes() const { return nodes_; }
  int root_vertex() const { return nodes_.front().gamma; }
  int vertex_count() const { return vertex_count_; }
  bool is_leaf(std::size_t id) const { return nodes_[id].child_count == 0; }
  int depth() const;

  /// Gammas from the root down to `id`, inclusive.
  std::vector<int> walk(std::size_t id) const;

 private:
  int vertex_count_;
  std::vector<TreeNode> nodes_;
};

struct TreeStats {
  std::size_t node_count = 0;
  int depth = 0;
  std::size_t internal = 0;  // root included when it has children
  std::size_t dead_end = 0;
  std::size_t cycle_induced = 0;
  std::size_t truncated = 0;
  std::vector<bool> cycle_involved;  // per original vertex
};

/// Non-backtracking walks with at most `walk_length` vertices (edge depth
/// walk_length - 1). Leaves that could continue are truncated; leaves that
/// cannot are dead ends. Throws BudgetExceeded above `budget` nodes.
UnrolledTree build_bethe_tree(const Model& model, int root, int walk_length,
                              std::uint64_t budget = kDefaultTreeBudget);

/// Breadth-first SAW expansion. A node is expanded only when all of its
/// children fit within `budget`; once one does not, it and the remaining
/// frontier become truncated leaves. Children follow ascending neighbour index.
UnrolledTree build_saw_tree(const Model& model, int root,
                            std::uint64_t budget = kDefaultTreeBudget);

TreeStats classify_leaves(const UnrolledTree& tree);

/// Vertices lying on at least one cycle, ascending.
std::vector<int> cycle_involved_nodes(const Model& model);

/// `<id> <parent> <gamma> <kind> <depth>` per node.
void dump_tree(const UnrolledTree& tree, std::ostream& out);

}  // namespace mrfbound
