#include "mrfbound/bp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace mrfbound {

MessageSet::MessageSet(const Model& model) {
  offsets_.reserve(2 * static_cast<std::size_t>(model.edge_count()) + 1);
  offsets_.push_back(0);
  for (int e = 0; e < model.edge_count(); ++e) {
    const Edge& ed = model.edge(e);
    first_endpoint_.push_back(ed.u);
    offsets_.push_back(offsets_.back() + model.cardinality(ed.v));  // u -> v
    offsets_.push_back(offsets_.back() + model.cardinality(ed.u));  // v -> u
  }
  values_.resize(offsets_.back());
  for (int id = 0; id < directed_count(); ++id) {
    auto m = by_id(id);
    std::fill(m.begin(), m.end(), 1.0 / static_cast<double>(m.size()));
  }
}

std::span<const double> MessageSet::message(int e, int from) const {
  return by_id(2 * e + (first_endpoint_.at(e) == from ? 0 : 1));
}

std::span<double> MessageSet::message(int e, int from) {
  return by_id(2 * e + (first_endpoint_.at(e) == from ? 0 : 1));
}

void normalize(std::span<double> v) {
  const double total = std::accumulate(v.begin(), v.end(), 0.0);
  for (double& x : v) x /= total;
}

namespace {

int require_edge(const Model& model, int t, int s) {
  auto e = model.edge_between(t, s);
  if (!e) {
    throw DomainError("(" + std::to_string(t) + "," + std::to_string(s) + ") is not an edge");
  }
  return *e;
}

}  // namespace

std::vector<double> propagate(const Model& model, int t, int s, std::span<const double> partial) {
  const int e = require_edge(model, t, s);
  const int kt = model.cardinality(t);
  const int ks = model.cardinality(s);
  if (static_cast<int>(partial.size()) != kt) {
    throw DomainError("partial product has length " + std::to_string(partial.size()) +
                      ", expected " + std::to_string(kt));
  }
  std::vector<double> out(ks, 0.0);
  for (int xs = 0; xs < ks; ++xs) {
    double sum = 0.0;
    for (int xt = 0; xt < kt; ++xt) sum += model.psi(e, t, xt, xs) * partial[xt];
    out[xs] = sum;
  }
  normalize(out);
  return out;
}

std::vector<double> partial_product(const Model& model, const MessageSet& messages, int t, int s) {
  require_edge(model, t, s);
  std::vector<double> out(model.cardinality(t), 1.0);
  for (const Neighbor& n : model.neighbors(t)) {
    if (n.vertex == s) continue;
    auto m = messages.message(n.edge, n.vertex);
    for (std::size_t x = 0; x < out.size(); ++x) out[x] *= m[x];
  }
  normalize(out);
  return out;
}

std::vector<double> update_message(const Model& model, const MessageSet& messages, int t, int s) {
  return propagate(model, t, s, partial_product(model, messages, t, s));
}

std::vector<double> belief(const Model& model, const MessageSet& messages, int t) {
  if (t < 0 || t >= model.node_count()) throw DomainError("no variable " + std::to_string(t));
  std::vector<double> out(model.cardinality(t), 1.0);
  if (auto prior = model.prior(t); !prior.empty()) out.assign(prior.begin(), prior.end());
  for (const Neighbor& n : model.neighbors(t)) {
    auto m = messages.message(n.edge, n.vertex);
    for (std::size_t x = 0; x < out.size(); ++x) out[x] *= m[x];
  }
  normalize(out);
  return out;
}

BeliefSet beliefs(const Model& model, const MessageSet& messages) {
  BeliefSet out;
  out.reserve(model.node_count());
  for (int t = 0; t < model.node_count(); ++t) out.push_back(belief(model, messages, t));
  return out;
}

BpReport run_bp(const Model& model, const BpOptions& options) {
  return run_bp(model, options, MessageSet(model));
}

BpReport run_bp(const Model& model, const BpOptions& options, MessageSet init) {
  if (options.max_iters < 1) throw PreconditionError("max_iters must be at least 1");
  if (!(options.tolerance > 0.0)) throw PreconditionError("tolerance must be positive");
  if (init.directed_count() != 2 * model.edge_count()) {
    throw PreconditionError("initial messages do not match the model");
  }

  MessageSet current = std::move(init);
  MessageSet next = current;
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
  while (iterations < options.max_iters) {
    residual = 0.0;
    for (int e = 0; e < model.edge_count(); ++e) {
      const Edge& ed = model.edge(e);
      for (auto [t, s] : {std::pair{ed.u, ed.v}, std::pair{ed.v, ed.u}}) {
        auto fresh = update_message(model, current, t, s);
        auto slot = next.message(e, t);
        residual = std::max(residual, std::log(dynamic_range(fresh, current.message(e, t))));
        std::copy(fresh.begin(), fresh.end(), slot.begin());
      }
    }
    std::swap(current, next);
    ++iterations;
    if (residual <= options.tolerance) {
      converged = true;
      break;
    }
  }

  BpReport report{current, {}, iterations, converged, residual};
  report.beliefs = beliefs(model, report.messages);
  return report;
}

double dynamic_range(std::span<const double> f, std::span<const double> g) {
  if (f.size() != g.size()) {
    throw DomainError("dynamic_range of vectors with lengths " + std::to_string(f.size()) +
                      " and " + std::to_string(g.size()));
  }
  if (f.empty()) return 1.0;
  double lo = std::log(f[0]) - std::log(g[0]);
  double hi = lo;
  for (std::size_t i = 1; i < f.size(); ++i) {
    const double r = std::log(f[i]) - std::log(g[i]);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  return std::exp(0.5 * (hi - lo));
}

}  // namespace mrfbound
