#pragma once

// Synchronous sum-product belief propagation on a pairwise Model.
//
//   m_ts(x_s) ∝ Σ_{x_t} ψ_ts(x_t, x_s) ∏_{u ∈ Γ_t \ s} m_ut(x_t)
//
// Messages live in linear space and are renormalized on every update.

#include <cstddef>
#include <span>
#include <vector>

#include "mrfbound/model.hpp"

namespace mrfbound {

/// One normalized, strictly positive vector per directed edge.
class MessageSet {
 public:
  /// Uniform messages on every directed edge.
  explicit MessageSet(const Model& model);

  /// Message from `from` along edge e (toward the other endpoint).
  std::span<const double> message(int e, int from) const;
  std::span<double> message(int e, int from);

  /// Directed edge id: 2e for u->v, 2e+1 for v->u.
  static int directed(const Model& model, int e, int from) {
    return 2 * e + (model.edge(e).u == from ? 0 : 1);
  }
  std::span<const double> by_id(int id) const {
    return {values_.data() + offsets_[id], offsets_[id + 1] - offsets_[id]};
  }
  std::span<double> by_id(int id) {
    return {values_.data() + offsets_[id], offsets_[id + 1] - offsets_[id]};
  }
  int directed_count() const { return static_cast<int>(offsets_.size()) - 1; }

 private:
  std::vector<int> first_endpoint_;  // edge(e).u
  std::vector<std::size_t> offsets_;
  std::vector<double> values_;
};

using BeliefSet = std::vector<std::vector<double>>;

struct BpOptions {
  int max_iters = 1000;
  double tolerance = 1e-8;
};

struct BpReport {
  MessageSet messages;
  BeliefSet beliefs;
  int iterations_run = 0;
  bool converged = false;
  /// max over directed edges of log dynamic_range(m_new, m_old) in the last sweep.
  double residual = 0.0;
};

/// Scales `v` to sum to one.
void normalize(std::span<double> v);

/// Σ_{x_t} ψ_ts(x_t, x_s) · partial(x_t), normalized. `partial` has length card(t).
std::vector<double> propagate(const Model& model, int t, int s, std::span<const double> partial);

/// Normalized ∏_{u ∈ Γ_t \ s} m_ut; uniform when t has no other neighbour.
std::vector<double> partial_product(const Model& model, const MessageSet& messages, int t, int s);

/// New message t -> s from the current incoming messages.
std::vector<double> update_message(const Model& model, const MessageSet& messages, int t, int s);

/// Normalized ∏_{u ∈ Γ_t} m_ut, times the prior of an isolated vertex.
std::vector<double> belief(const Model& model, const MessageSet& messages, int t);
BeliefSet beliefs(const Model& model, const MessageSet& messages);

/// Jacobi sweeps until the residual drops to `tolerance` or `max_iters` is hit.
/// Non-convergence is reported, never thrown.
BpReport run_bp(const Model& model, const BpOptions& options = {});
BpReport run_bp(const Model& model, const BpOptions& options, MessageSet init);

/// max_{a,b} sqrt( (f(a)/g(a)) / (f(b)/g(b)) ). 1 iff f ∝ g.
double dynamic_range(std::span<const double> f, std::span<const double> g);

}  // namespace mrfbound
