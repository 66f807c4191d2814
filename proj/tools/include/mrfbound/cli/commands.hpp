#pragma once

// Command implementations behind the `mrfbound` executable. Each command
// takes explicit streams so tests can drive it without a process.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mrfbound/bound.hpp"
#include "mrfbound/bp.hpp"
#include "mrfbound/model.hpp"
#include "mrfbound/oracle.hpp"

namespace mrfbound::cli {

/// Containment slack when checking exact marginals against intervals.
inline constexpr double kContainmentSlack = 1e-9;

/// Exit status when an exact marginal escapes its interval.
inline constexpr int kContainmentViolated = 3;

/// MRFBOUND_BUDGET when set to a positive integer, otherwise 10^6.
std::uint64_t default_budget();

struct RunConfig {
  std::string model_path;
  std::vector<int> roots;  // empty: all
  std::uint64_t budget = kDefaultTreeBudget;
  int max_iters = 1000;
  double tolerance = 1e-8;
  bool compute_exact = false;
  std::uint64_t state_cap = kDefaultStateSpaceCap;
};

struct BoundOutcome {
  BpReport bp;
  IntervalReport intervals;
  double max_width = 0.0;
  double mean_width = 0.0;
  /// Set only when exact marginals were computed.
  std::optional<bool> contained;
  std::size_t violations = 0;
};

BoundOutcome run_bound(const Model& model, const RunConfig& config);

/// Writes the interval CSV to `csv` and a human summary to `summary`.
/// Returns kContainmentViolated when --exact finds a violation, else 0.
int cmd_bound(const RunConfig& config, std::ostream& csv, std::ostream& summary);

/// `node,state,belief` plus a convergence line on `summary`.
int cmd_bp(const RunConfig& config, std::ostream& out, std::ostream& summary);

/// `node,state,exact` plus the partition value on `summary`.
int cmd_exact(const RunConfig& config, std::ostream& out, std::ostream& summary);

struct SweepConfig {
  int rows = 3;
  int cols = 3;
  std::vector<double> d_values;
  int seeds = 1;  // seeds 0..seeds-1
  std::uint64_t budget = kDefaultTreeBudget;
  int max_iters = 1000;
  double tolerance = 1e-8;
};

struct SweepRow {
  double d_target;
  std::uint64_t seed;
  int node;
  double width;  // widest state interval at the node
  bool contains_truth;
};

/// Rows sorted by (d, seed, node).
std::vector<SweepRow> run_sweep(const SweepConfig& config);
void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out);
int cmd_sweep(const SweepConfig& config, std::ostream& csv, std::ostream& summary);

}  // namespace mrfbound::cli
