#pragma once

// Discrete pairwise Markov random fields.
//
//   p(x) ∝ ∏_{(u,v) ∈ E} ψ_uv(x_u, x_v)
//
// Unary tables are accepted on input and folded into the lowest-indexed
// incident edge, so the stored model is purely pairwise. Isolated vertices
// keep their unary as a prior.

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mrfbound/error.hpp"

namespace mrfbound {

/// Row-major table of strictly positive reals.
class PotentialTable {
 public:
  PotentialTable() = default;
  PotentialTable(int rows, int cols, std::vector<double> values);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double operator()(int i, int j) const { return values_[static_cast<std::size_t>(i) * cols_ + j]; }
  std::span<const double> values() const { return values_; }
  PotentialTable transposed() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> values_;
};

/// d(ψ): fourth root of the largest cross ratio ψ(a,b)ψ(c,d) / (ψ(a,d)ψ(c,b)).
/// Always ≥ 1; equals 1 exactly for rank-1 tables. Evaluated in log space.
double potential_strength(const PotentialTable& table);

// Unvalidated model description, as read from a file or assembled by hand.
struct EdgeSpec {
  int u = 0;
  int v = 0;
  PotentialTable table;  // cardinality(u) x cardinality(v)
  int line = 0;
};

struct UnarySpec {
  int node = 0;
  std::vector<double> values;
  int line = 0;
};

struct ModelSpec {
  std::vector<int> cardinalities;
  std::vector<EdgeSpec> edges;
  std::vector<UnarySpec> unaries;
};

/// Checks every model invariant and returns all violations found.
std::vector<Violation> validate_model(const ModelSpec& spec);

struct Edge {
  int u;
  int v;
};

struct Neighbor {
  int vertex;
  int edge;
};

/// Per-node observed states; node -> state.
using Evidence = std::vector<std::pair<int, int>>;

class Model {
 public:
  /// Validates and folds unaries. Throws ModelError listing every violation.
  explicit Model(const ModelSpec& spec);

  int node_count() const { return static_cast<int>(cardinalities_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int cardinality(int v) const { return cardinalities_.at(v); }
  std::span<const int> cardinalities() const { return cardinalities_; }

  const Edge& edge(int e) const { return edges_.at(e); }
  const PotentialTable& potential(int e) const { return tables_.at(e); }

  /// ψ read in the direction from -> other endpoint: value(x_from, x_to).
  double psi(int e, int from, int x_from, int x_to) const {
    const Edge& ed = edges_[e];
    return from == ed.u ? tables_[e](x_from, x_to) : tables_[e](x_to, x_from);
  }

  /// Cached d(ψ) of edge e.
  double strength(int e) const { return strengths_.at(e); }

  /// Neighbours in ascending vertex order.
  std::span<const Neighbor> neighbors(int v) const { return adjacency_.at(v); }
  int degree(int v) const { return static_cast<int>(adjacency_.at(v).size()); }
  std::optional<int> edge_between(int a, int b) const;

  /// Unary prior of an isolated vertex; empty when the vertex has edges or no unary.
  std::span<const double> prior(int v) const { return priors_.at(v); }

  /// Pairwise form of the model (unaries folded; isolated priors kept).
  ModelSpec to_spec() const;

 private:
  std::vector<int> cardinalities_;
  std::vector<Edge> edges_;
  std::vector<PotentialTable> tables_;
  std::vector<double> strengths_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<std::vector<double>> priors_;
};

/// ∏ ψ_uv(x_u, x_v) over all edges, times isolated-vertex priors.
double unnormalized_joint(const Model& model, std::span<const int> assignment);

/// Slices each observed variable's domain to its observed state.
Model restrict_evidence(const Model& model, const Evidence& evidence);

}  // namespace mrfbound
