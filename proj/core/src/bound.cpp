#include "mrfbound/bound.hpp"

#include <algorithm>
#include <ostream>

#include "mrfbound/model_io.hpp"

namespace mrfbound {

DeltaBound DeltaBound::from_value(double value) {
  if (!(value >= 1.0)) throw PreconditionError("dynamic range " + std::to_string(value) + " < 1");
  return DeltaBound(std::log(value));
}

DeltaBound DeltaBound::from_log(double log_value) {
  if (!(log_value >= 0.0)) {
    throw PreconditionError("log dynamic range " + std::to_string(log_value) + " < 0");
  }
  return DeltaBound(log_value);
}

std::string to_string(DeltaBound delta) { return format_double(delta.value()); }

DeltaBound contract(double d_psi, DeltaBound d_e) {
  if (!(d_psi >= 1.0)) throw PreconditionError("potential strength " + std::to_string(d_psi) + " < 1");
  const double a = 2.0 * std::log(d_psi);
  if (d_e.is_infinite()) return DeltaBound::from_log(a);
  const double b = d_e.log_value();
  // log((e^{a+b} + 1) / (e^a + e^b)), arranged so nothing overflows.
  const double out =
      std::min(a, b) + std::log1p(std::exp(-(a + b))) - std::log1p(std::exp(-std::abs(a - b)));
  return DeltaBound::from_log(std::clamp(out, 0.0, std::min(a, b)));
}

DeltaBound tree_delta_recursion(const Model& model, const UnrolledTree& tree,
                                const std::vector<bool>& in_s) {
  if (in_s.size() != tree.size()) {
    throw PreconditionError("membership mask has " + std::to_string(in_s.size()) +
                            " entries for a tree of " + std::to_string(tree.size()) + " nodes");
  }
  std::vector<DeltaBound> delta(tree.size(), DeltaBound::one());
  for (std::size_t id = tree.size(); id-- > 0;) {
    const TreeNode& n = tree.node(id);
    if (in_s[id]) {
      delta[id] = DeltaBound::infinity();
      continue;
    }
    DeltaBound product = DeltaBound::one();
    for (int c = n.first_child; c < n.first_child + n.child_count; ++c) {
      product *= contract(model.strength(tree.node(c).edge), delta[c]);
    }
    delta[id] = product;
  }
  return delta.front();
}

DeltaBound saw_accuracy_bound(const Model& model, int v, std::uint64_t budget,
                              const ForcingSpec& forcing) {
  const UnrolledTree tree = build_saw_tree(model, v, budget);
  std::vector<bool> unknown(model.node_count(), false);
  for (int a : forcing.unknown) {
    if (a < 0 || a >= model.node_count()) throw DomainError("no variable " + std::to_string(a));
    unknown[a] = true;
  }
  std::vector<bool> in_s(tree.size(), false);
  for (std::size_t id = 0; id < tree.size(); ++id) {
    const TreeNode& n = tree.node(id);
    in_s[id] = n.kind == NodeKind::kCycleInduced || n.kind == NodeKind::kTruncated ||
               unknown[n.gamma];
  }
  return tree_delta_recursion(model, tree, in_s);
}

DeltaBound bethe_convergence_bound(const Model& model, int v, int walk_length,
                                   std::uint64_t budget) {
  const UnrolledTree tree = build_bethe_tree(model, v, walk_length, budget);
  std::vector<bool> in_s(tree.size(), false);
  for (std::size_t id = 0; id < tree.size(); ++id) {
    in_s[id] = tree.node(id).kind == NodeKind::kTruncated;
  }
  return tree_delta_recursion(model, tree, in_s);
}

Interval interval_from_bound(double belief, DeltaBound delta) {
  if (delta.is_infinite()) return {0.0, 1.0};
  const double d2 = std::exp(2.0 * delta.log_value());
  if (std::isinf(d2)) return {0.0, 1.0};
  const double m = std::clamp(belief, 0.0, 1.0);
  double lower = m / (d2 + (1.0 - d2) * m);
  double upper = d2 * m / (1.0 + (d2 - 1.0) * m);
  lower = std::clamp(std::min(lower, m), 0.0, 1.0);
  upper = std::clamp(std::max(upper, m), 0.0, 1.0);
  return {lower, upper};
}

IntervalReport marginal_intervals(const Model& model, const BpReport& bp,
                                  const IntervalOptions& options) {
  IntervalReport report;
  report.bp_converged = bp.converged;
  if (options.roots.empty()) {
    for (int v = 0; v < model.node_count(); ++v) report.roots.push_back(v);
  } else {
    report.roots = options.roots;
  }
  for (int v : report.roots) {
    if (v < 0 || v >= model.node_count()) throw DomainError("no variable " + std::to_string(v));
    const DeltaBound delta = saw_accuracy_bound(model, v, options.budget, options.forcing);
    report.deltas.push_back(delta);
    const auto& b = bp.beliefs.at(v);
    for (int j = 0; j < model.cardinality(v); ++j) {
      const Interval iv = interval_from_bound(b[j], delta);
      report.rows.push_back({v, j, b[j], iv.lower, iv.upper, delta, std::nullopt});
    }
  }
  return report;
}

void attach_exact(IntervalReport& report, const std::vector<std::vector<double>>& marginals) {
  for (auto& row : report.rows) row.exact = marginals.at(row.node).at(row.state);
}

void write_csv(const IntervalReport& report, std::ostream& out) {
  out << "node,state,belief,lower,upper,delta,exact\n";
  for (const auto& r : report.rows) {
    out << r.node << ',' << r.state << ',' << format_double(r.belief) << ','
        << format_double(r.lower) << ',' << format_double(r.upper) << ','
        << format_double(r.delta.value()) << ',';
    if (r.exact) out << format_double(*r.exact);
    out << '\n';
  }
}

}  // namespace mrfbound
