#pragma once

// Dynamic-range accuracy bounds for loopy BP beliefs.
//
// A convolution with ψ contracts the dynamic range of a message error:
//
//   d(e) ≤ (d(ψ)² d(E) + 1) / (d(ψ)² + d(E))
//
// Propagating this bound up a tree from a set S of nodes with unknown
// external forces gives δ_root. On the self-avoiding-walk tree, with S the
// cycle-induced leaves, δ_root bounds d(p(x_v) / belief_v).

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mrfbound/bp.hpp"
#include "mrfbound/model.hpp"
#include "mrfbound/tree.hpp"

namespace mrfbound {

/// A dynamic-range value in [1, ∞], stored as its logarithm.
class DeltaBound {
 public:
  constexpr DeltaBound() = default;

  static constexpr DeltaBound one() { return DeltaBound(0.0); }
  static constexpr DeltaBound infinity() {
    return DeltaBound(std::numeric_limits<double>::infinity());
  }
  static DeltaBound from_value(double value);
  static DeltaBound from_log(double log_value);

  double value() const { return std::exp(log_); }
  double log_value() const { return log_; }
  bool is_infinite() const { return std::isinf(log_); }

  friend DeltaBound operator*(DeltaBound a, DeltaBound b) { return DeltaBound(a.log_ + b.log_); }
  DeltaBound& operator*=(DeltaBound other) {
    log_ += other.log_;
    return *this;
  }
  friend auto operator<=>(const DeltaBound&, const DeltaBound&) = default;

 private:
  explicit constexpr DeltaBound(double log_value) : log_(log_value) {}
  double log_ = 0.0;
};

std::string to_string(DeltaBound delta);

/// (d_psi² d_E + 1) / (d_psi² + d_E); d_psi² when d_E is infinite.
DeltaBound contract(double d_psi, DeltaBound d_e);

/// δ of the tree root. Nodes flagged in `in_s` carry δ = ∞ (their subtrees
/// are ignored); other leaves carry δ = 1; an interior node multiplies
/// contract(d(ψ_edge), δ_child) over its children.
DeltaBound tree_delta_recursion(const Model& model, const UnrolledTree& tree,
                                const std::vector<bool>& in_s);

/// Vertices whose influence is treated as unknown.
struct ForcingSpec {
  std::vector<int> unknown;
};

/// Bound on d(p(x_v) / belief_v) from the SAW tree rooted at v, with S the
/// cycle-induced leaves, the truncated leaves, and every copy of a vertex in
/// `forcing.unknown`.
DeltaBound saw_accuracy_bound(const Model& model, int v, std::uint64_t budget = kDefaultTreeBudget,
                              const ForcingSpec& forcing = {});

/// Bound on d(belief_v / belief'_v) for two BP runs from arbitrary
/// initializations, using the Bethe tree with `walk_length` vertices per walk.
DeltaBound bethe_convergence_bound(const Model& model, int v, int walk_length,
                                   std::uint64_t budget = kDefaultTreeBudget);

struct Interval {
  double lower;
  double upper;
};

/// Interval on p(j) given belief m(j) and d(p/m) ≤ δ. With D = δ²:
///   m / (D + (1 - D) m)  ≤  p(j)  ≤  D m / (1 + (D - 1) m)
/// The square is needed because d(·) takes the square root of the ratio range.
Interval interval_from_bound(double belief, DeltaBound delta);

struct IntervalRow {
  int node;
  int state;
  double belief;
  double lower;
  double upper;
  DeltaBound delta;
  std::optional<double> exact;
};

struct IntervalReport {
  std::vector<IntervalRow> rows;
  std::vector<int> roots;
  std::vector<DeltaBound> deltas;  // parallel to roots
  /// When false the beliefs depend on the iteration BP stopped at.
  bool bp_converged = true;
};

struct IntervalOptions {
  std::uint64_t budget = kDefaultTreeBudget;
  ForcingSpec forcing;
  std::vector<int> roots;  // empty: every vertex
};

IntervalReport marginal_intervals(const Model& model, const BpReport& bp,
                                  const IntervalOptions& options = {});

/// Fills each row's exact column from per-node marginals.
void attach_exact(IntervalReport& report, const std::vector<std::vector<double>>& marginals);

/// `node,state,belief,lower,upper,delta,exact`, LF line endings.
void write_csv(const IntervalReport& report, std::ostream& out);

}  // namespace mrfbound
