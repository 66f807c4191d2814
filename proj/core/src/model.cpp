#include "mrfbound/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

namespace mrfbound {

PotentialTable::PotentialTable(int rows, int cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (rows < 0 || cols < 0 || values_.size() != static_cast<std::size_t>(rows) * cols) {
    throw DomainError("potential table has " + std::to_string(values_.size()) +
                      " entries, expected " + std::to_string(rows) + "x" + std::to_string(cols));
  }
}

PotentialTable PotentialTable::transposed() const {
  std::vector<double> t(values_.size());
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) t[static_cast<std::size_t>(j) * rows_ + i] = (*this)(i, j);
  }
  return PotentialTable(cols_, rows_, std::move(t));
}

double potential_strength(const PotentialTable& table) {
  const int rows = table.rows();
  const int cols = table.cols();
  std::vector<double> logs(table.values().size());
  for (std::size_t k = 0; k < logs.size(); ++k) {
    const double x = table.values()[k];
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw ModelError({{Violation::Kind::kPositivity,
                         "potential entry " + std::to_string(x) + " is not strictly positive"}});
    }
    logs[k] = std::log(x);
  }
  auto at = [&](int i, int j) { return logs[static_cast<std::size_t>(i) * cols + j]; };

  // sup over (a,b,c,d) splits into a max over row pairs (a,c) of
  // max_b [L(a,b) - L(c,b)] + max_d [L(c,d) - L(a,d)].
  double best = 0.0;
  for (int a = 0; a < rows; ++a) {
    for (int c = a + 1; c < rows; ++c) {
      double up = -std::numeric_limits<double>::infinity();
      double down = -std::numeric_limits<double>::infinity();
      for (int j = 0; j < cols; ++j) {
        const double diff = at(a, j) - at(c, j);
        up = std::max(up, diff);
        down = std::max(down, -diff);
      }
      best = std::max(best, up + down);
    }
  }
  return std::exp(best / 4.0);
}

namespace {

bool positive_finite(double x) { return x > 0.0 && std::isfinite(x); }

std::string edge_name(std::size_t index, const EdgeSpec& e) {
  return "edge " + std::to_string(index) + " (" + std::to_string(e.u) + "," + std::to_string(e.v) +
         ")";
}

}  // namespace

std::vector<Violation> validate_model(const ModelSpec& spec) {
  using Kind = Violation::Kind;
  std::vector<Violation> out;
  const int n = static_cast<int>(spec.cardinalities.size());
  if (n == 0) out.push_back({Kind::kCount, "model has no variables"});
  for (int v = 0; v < n; ++v) {
    if (spec.cardinalities[v] < 1) {
      out.push_back({Kind::kDomain, "variable " + std::to_string(v) + " has cardinality " +
                                        std::to_string(spec.cardinalities[v])});
    }
  }
  auto in_range = [&](int v) { return v >= 0 && v < n; };

  std::set<std::pair<int, int>> seen;
  for (std::size_t i = 0; i < spec.edges.size(); ++i) {
    const EdgeSpec& e = spec.edges[i];
    const std::string name = edge_name(i, e);
    if (!in_range(e.u) || !in_range(e.v)) {
      out.push_back({Kind::kGraph, name + " references a missing vertex", e.line});
      continue;
    }
    if (e.u == e.v) {
      out.push_back({Kind::kGraph, name + " is a self-loop", e.line});
      continue;
    }
    if (!seen.emplace(std::min(e.u, e.v), std::max(e.u, e.v)).second) {
      out.push_back({Kind::kGraph, name + " duplicates an earlier edge", e.line});
    }
    const int ku = spec.cardinalities[e.u];
    const int kv = spec.cardinalities[e.v];
    if (e.table.rows() != ku || e.table.cols() != kv) {
      out.push_back({Kind::kShape,
                     name + " table is " + std::to_string(e.table.rows()) + "x" +
                         std::to_string(e.table.cols()) + ", expected " + std::to_string(ku) + "x" +
                         std::to_string(kv),
                     e.line});
    }
    for (int r = 0; r < e.table.rows(); ++r) {
      for (int c = 0; c < e.table.cols(); ++c) {
        if (!positive_finite(e.table(r, c))) {
          out.push_back({Kind::kPositivity,
                         name + " entry (" + std::to_string(r) + "," + std::to_string(c) +
                             ") = " + std::to_string(e.table(r, c)) + " is not strictly positive",
                         e.line});
        }
      }
    }
  }

  std::set<int> unary_nodes;
  for (const UnarySpec& u : spec.unaries) {
    const std::string name = "unary on variable " + std::to_string(u.node);
    if (!in_range(u.node)) {
      out.push_back({Kind::kGraph, name + " references a missing vertex", u.line});
      continue;
    }
    if (!unary_nodes.insert(u.node).second) {
      out.push_back({Kind::kGraph, name + " is declared twice", u.line});
    }
    if (static_cast<int>(u.values.size()) != spec.cardinalities[u.node]) {
      out.push_back({Kind::kShape,
                     name + " has " + std::to_string(u.values.size()) + " entries, expected " +
                         std::to_string(spec.cardinalities[u.node]),
                     u.line});
    }
    for (double x : u.values) {
      if (!positive_finite(x)) {
        out.push_back(
            {Kind::kPositivity, name + " entry " + std::to_string(x) + " is not strictly positive",
             u.line});
        break;
      }
    }
  }
  return out;
}

Model::Model(const ModelSpec& spec) {
  if (auto violations = validate_model(spec); !violations.empty()) {
    throw ModelError(std::move(violations));
  }
  cardinalities_ = spec.cardinalities;
  adjacency_.resize(cardinalities_.size());
  priors_.resize(cardinalities_.size());
  for (const EdgeSpec& e : spec.edges) {
    const int index = static_cast<int>(edges_.size());
    edges_.push_back({e.u, e.v});
    tables_.push_back(e.table);
    adjacency_[e.u].push_back({e.v, index});
    adjacency_[e.v].push_back({e.u, index});
  }
  for (auto& adj : adjacency_) {
    std::sort(adj.begin(), adj.end(),
              [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });
  }

  for (const UnarySpec& u : spec.unaries) {
    const auto& adj = adjacency_[u.node];
    if (adj.empty()) {
      priors_[u.node] = u.values;
      continue;
    }
    const int e = std::min_element(adj.begin(), adj.end(), [](const Neighbor& a, const Neighbor& b) {
                    return a.edge < b.edge;
                  })->edge;
    const PotentialTable& old = tables_[e];
    std::vector<double> scaled(old.values().begin(), old.values().end());
    for (int r = 0; r < old.rows(); ++r) {
      for (int c = 0; c < old.cols(); ++c) {
        const double factor = edges_[e].u == u.node ? u.values[r] : u.values[c];
        scaled[static_cast<std::size_t>(r) * old.cols() + c] *= factor;
      }
    }
    tables_[e] = PotentialTable(old.rows(), old.cols(), std::move(scaled));
  }

  strengths_.reserve(tables_.size());
  for (const auto& t : tables_) strengths_.push_back(potential_strength(t));
}

std::optional<int> Model::edge_between(int a, int b) const {
  if (a < 0 || a >= node_count()) return std::nullopt;
  const auto& adj = adjacency_[a];
  auto it = std::lower_bound(adj.begin(), adj.end(), b,
                             [](const Neighbor& n, int vertex) { return n.vertex < vertex; });
  if (it == adj.end() || it->vertex != b) return std::nullopt;
  return it->edge;
}

ModelSpec Model::to_spec() const {
  ModelSpec spec;
  spec.cardinalities = cardinalities_;
  for (int e = 0; e < edge_count(); ++e) {
    spec.edges.push_back({edges_[e].u, edges_[e].v, tables_[e]});
  }
  for (int v = 0; v < node_count(); ++v) {
    if (!priors_[v].empty()) spec.unaries.push_back({v, priors_[v]});
  }
  return spec;
}

double unnormalized_joint(const Model& model, std::span<const int> assignment) {
  if (static_cast<int>(assignment.size()) != model.node_count()) {
    throw DomainError("assignment has " + std::to_string(assignment.size()) + " values for " +
                      std::to_string(model.node_count()) + " variables");
  }
  for (int v = 0; v < model.node_count(); ++v) {
    if (assignment[v] < 0 || assignment[v] >= model.cardinality(v)) {
      throw DomainError("state " + std::to_string(assignment[v]) + " out of domain for variable " +
                        std::to_string(v));
    }
  }
  double p = 1.0;
  for (int e = 0; e < model.edge_count(); ++e) {
    const Edge& ed = model.edge(e);
    p *= model.potential(e)(assignment[ed.u], assignment[ed.v]);
  }
  for (int v = 0; v < model.node_count(); ++v) {
    if (auto prior = model.prior(v); !prior.empty()) p *= prior[assignment[v]];
  }
  return p;
}

Model restrict_evidence(const Model& model, const Evidence& evidence) {
  std::vector<int> observed(model.node_count(), -1);
  for (const auto& [node, state] : evidence) {
    if (node < 0 || node >= model.node_count()) {
      throw DomainError("evidence on missing variable " + std::to_string(node));
    }
    if (state < 0 || state >= model.cardinality(node)) {
      throw DomainError("evidence state " + std::to_string(state) + " out of domain for variable " +
                        std::to_string(node));
    }
    if (observed[node] >= 0 && observed[node] != state) {
      throw DomainError("conflicting evidence on variable " + std::to_string(node));
    }
    observed[node] = state;
  }

  ModelSpec spec = model.to_spec();
  // Observed variable: keep only the row/column of its state.
  auto keep = [&](int v, int x) { return observed[v] < 0 || observed[v] == x; };
  for (EdgeSpec& e : spec.edges) {
    std::vector<double> values;
    int rows = 0;
    int cols = 0;
    for (int r = 0; r < e.table.rows(); ++r) {
      if (!keep(e.u, r)) continue;
      ++rows;
      cols = 0;
      for (int c = 0; c < e.table.cols(); ++c) {
        if (!keep(e.v, c)) continue;
        ++cols;
        values.push_back(e.table(r, c));
      }
    }
    e.table = PotentialTable(rows, cols, std::move(values));
  }
  for (UnarySpec& u : spec.unaries) {
    if (observed[u.node] >= 0) u.values = {u.values[observed[u.node]]};
  }
  for (int v = 0; v < model.node_count(); ++v) {
    if (observed[v] >= 0) spec.cardinalities[v] = 1;
  }
  return Model(spec);
}

}  // namespace mrfbound
