#include <benchmark/benchmark.h>

#include "mrfbound/bound.hpp"
#include "mrfbound/bp.hpp"
#include "mrfbound/cli/grid.hpp"
#include "mrfbound/oracle.hpp"
#include "mrfbound/tree.hpp"

namespace {

using namespace mrfbound;

Model grid(int side, double d = 1.9) { return Model(cli::gen_grid(side, side, d, 7, 0.5)); }

void BM_RunBp(benchmark::State& state) {
  const Model model = grid(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    const BpReport report = run_bp(model);
    benchmark::DoNotOptimize(report.beliefs.data());
  }
  state.counters["edges"] = model.edge_count();
}
BENCHMARK(BM_RunBp)->Arg(3)->Arg(8)->Arg(32);

void BM_BuildSawTree(benchmark::State& state) {
  const Model model = grid(static_cast<int>(state.range(0)));
  std::size_t nodes = 0;
  for (auto _ : state) {
    const UnrolledTree tree = build_saw_tree(model, 0);
    nodes = tree.size();
    benchmark::DoNotOptimize(nodes);
  }
  state.counters["tree_nodes"] = static_cast<double>(nodes);
  state.counters["nodes_per_s"] =
      benchmark::Counter(static_cast<double>(nodes), benchmark::Counter::kIsIterationInvariantRate);
}
BENCHMARK(BM_BuildSawTree)->Arg(3)->Arg(4)->Unit(benchmark::kMicrosecond);

void BM_DeltaRecursion(benchmark::State& state) {
  const Model model = grid(4);
  const UnrolledTree tree = build_saw_tree(model, 5);
  std::vector<bool> in_s(tree.size());
  for (std::size_t id = 0; id < tree.size(); ++id) {
    in_s[id] = tree.node(id).kind == NodeKind::kCycleInduced;
  }
  for (auto _ : state) benchmark::DoNotOptimize(tree_delta_recursion(model, tree, in_s));
  state.counters["tree_nodes"] = static_cast<double>(tree.size());
}
BENCHMARK(BM_DeltaRecursion)->Unit(benchmark::kMicrosecond);

void BM_SawBoundTruncated(benchmark::State& state) {
  const Model model = grid(6);
  const auto budget = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(saw_accuracy_bound(model, 14, budget));
}
BENCHMARK(BM_SawBoundTruncated)->RangeMultiplier(10)->Range(100, 1'000'000)->Unit(benchmark::kMillisecond);

void BM_BruteForce(benchmark::State& state) {
  const Model model(cli::gen_grid(static_cast<int>(state.range(0)), 4, 1.9, 7, 0.5));
  for (auto _ : state) benchmark::DoNotOptimize(exact_marginals_bruteforce(model).partition);
  state.counters["states"] = static_cast<double>(1u << model.node_count());
}
BENCHMARK(BM_BruteForce)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_WeitzExact(benchmark::State& state) {
  const Model model = grid(3);
  for (auto _ : state) benchmark::DoNotOptimize(weitz_exact_binary(model, 4));
}
BENCHMARK(BM_WeitzExact)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
