#include "mrfbound/cli/commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <ostream>
#include <string>

#include "mrfbound/cli/grid.hpp"
#include "mrfbound/model_io.hpp"

namespace mrfbound::cli {

std::uint64_t default_budget() {
  if (const char* env = std::getenv("MRFBOUND_BUDGET"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (end != nullptr && *end == '\0' && value > 0) return value;
  }
  return kDefaultTreeBudget;
}

BoundOutcome run_bound(const Model& model, const RunConfig& config) {
  BpReport bp = run_bp(model, {config.max_iters, config.tolerance});
  IntervalReport intervals =
      marginal_intervals(model, bp, {config.budget, ForcingSpec{}, config.roots});

  BoundOutcome out{std::move(bp), std::move(intervals), 0.0, 0.0, std::nullopt, 0};
  if (config.compute_exact) {
    const ExactMarginals exact = exact_marginals_bruteforce(model, config.state_cap);
    attach_exact(out.intervals, exact.marginals);
    out.contained = true;
    for (const auto& row : out.intervals.rows) {
      if (*row.exact < row.lower - kContainmentSlack || *row.exact > row.upper + kContainmentSlack) {
        out.contained = false;
        ++out.violations;
      }
    }
  }
  double total = 0.0;
  for (const auto& row : out.intervals.rows) {
    const double width = row.upper - row.lower;
    out.max_width = std::max(out.max_width, width);
    total += width;
  }
  if (!out.intervals.rows.empty()) out.mean_width = total / out.intervals.rows.size();
  return out;
}

namespace {

void describe_bp(const BpReport& bp, std::ostream& summary) {
  if (bp.converged) {
    summary << "bp: converged after " << bp.iterations_run << " iterations (residual "
            << format_double(bp.residual) << ")\n";
  } else {
    summary << "bp: NOT converged after " << bp.iterations_run << " iterations (residual "
            << format_double(bp.residual) << "); beliefs are from the last iteration\n";
  }
}

}  // namespace

int cmd_bound(const RunConfig& config, std::ostream& csv, std::ostream& summary) {
  const Model model = load_model_file(config.model_path);
  const BoundOutcome outcome = run_bound(model, config);
  write_csv(outcome.intervals, csv);

  describe_bp(outcome.bp, summary);
  summary << "rows: " << outcome.intervals.rows.size() << "\n";
  summary << "max width: " << format_double(outcome.max_width) << "\n";
  summary << "mean width: " << format_double(outcome.mean_width) << "\n";
  if (outcome.contained) {
    if (*outcome.contained) {
      summary << "containment: PASS (" << outcome.intervals.rows.size() << " rows)\n";
    } else {
      summary << "containment: FAIL (" << outcome.violations << " of "
              << outcome.intervals.rows.size() << " rows outside their interval)\n";
      return kContainmentViolated;
    }
  }
  return 0;
}

int cmd_bp(const RunConfig& config, std::ostream& out, std::ostream& summary) {
  const Model model = load_model_file(config.model_path);
  const BpReport bp = run_bp(model, {config.max_iters, config.tolerance});
  out << "node,state,belief\n";
  for (int v = 0; v < model.node_count(); ++v) {
    for (int j = 0; j < model.cardinality(v); ++j) {
      out << v << ',' << j << ',' << format_double(bp.beliefs[v][j]) << '\n';
    }
  }
  describe_bp(bp, summary);
  return 0;
}

int cmd_exact(const RunConfig& config, std::ostream& out, std::ostream& summary) {
  const Model model = load_model_file(config.model_path);
  const ExactMarginals exact = exact_marginals_bruteforce(model, config.state_cap);
  out << "node,state,exact\n";
  for (int v = 0; v < model.node_count(); ++v) {
    for (int j = 0; j < model.cardinality(v); ++j) {
      out << v << ',' << j << ',' << format_double(exact.marginals[v][j]) << '\n';
    }
  }
  summary << "partition: " << format_double(exact.partition) << "\n";
  return 0;
}

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
  std::vector<double> ds = config.d_values;
  for (double d : ds) {
    if (!(d >= 1.0)) throw PreconditionError("sweep strengths must be at least 1");
  }
  std::sort(ds.begin(), ds.end());

  std::vector<SweepRow> rows;
  RunConfig run;
  run.budget = config.budget;
  run.max_iters = config.max_iters;
  run.tolerance = config.tolerance;
  run.compute_exact = true;
  for (double d : ds) {
    for (int seed = 0; seed < config.seeds; ++seed) {
      const Model model(gen_grid(config.rows, config.cols, d, static_cast<std::uint64_t>(seed)));
      const BoundOutcome outcome = run_bound(model, run);
      for (int v = 0; v < model.node_count(); ++v) {
        SweepRow row{d, static_cast<std::uint64_t>(seed), v, 0.0, true};
        for (const auto& r : outcome.intervals.rows) {
          if (r.node != v) continue;
          row.width = std::max(row.width, r.upper - r.lower);
          if (*r.exact < r.lower - kContainmentSlack || *r.exact > r.upper + kContainmentSlack) {
            row.contains_truth = false;
          }
        }
        rows.push_back(row);
      }
    }
  }
  return rows;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << "d_target,seed,node,width,contains_truth\n";
  for (const auto& r : rows) {
    out << format_double(r.d_target) << ',' << r.seed << ',' << r.node << ','
        << format_double(r.width) << ',' << (r.contains_truth ? "true" : "false") << '\n';
  }
}

int cmd_sweep(const SweepConfig& config, std::ostream& csv, std::ostream& summary) {
  const auto rows = run_sweep(config);
  write_sweep_csv(rows, csv);

  struct Tally {
    double width = 0.0;
    std::size_t count = 0;
    std::size_t contained = 0;
  };
  std::map<double, Tally> by_d;
  bool all_contained = true;
  for (const auto& r : rows) {
    auto& t = by_d[r.d_target];
    t.width += r.width;
    ++t.count;
    if (r.contains_truth) ++t.contained;
    all_contained = all_contained && r.contains_truth;
  }
  for (const auto& [d, t] : by_d) {
    summary << "d=" << format_double(d) << " mean width " << format_double(t.width / t.count)
            << ", truth contained " << t.contained << "/" << t.count << "\n";
  }
  return all_contained ? 0 : kContainmentViolated;
}

}  // namespace mrfbound::cli
