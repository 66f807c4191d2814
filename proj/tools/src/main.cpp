#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mrfbound/cli/commands.hpp"
#include "mrfbound/cli/grid.hpp"
#include "mrfbound/model_io.hpp"
#include "mrfbound/tree.hpp"

namespace {

using namespace mrfbound;

std::vector<int> parse_roots(const std::string& text) {
  if (text == "all") return {};
  std::vector<int> roots;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    try {
      std::size_t used = 0;
      roots.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error("bad root list '" + text + "'; expected 'all' or comma-separated indices");
    }
  }
  return roots;
}

// Runs `body` with the CSV stream (file or stdout) and the summary stream
// (stdout when CSV goes to a file, stderr otherwise).
template <class Body>
int with_output(const std::string& path, Body body) {
  if (path.empty() || path == "-") return body(std::cout, std::cerr);
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot write '" + path + "'");
  const int status = body(file, std::cout);
  file.flush();
  if (!file) throw Error("write to '" + path + "' failed");
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Loopy BP marginals with certified confidence intervals"};
  app.require_subcommand(1);

  cli::RunConfig run;
  run.budget = cli::default_budget();
  std::string roots = "all";
  std::string output;

  auto add_model = [&](CLI::App* cmd) {
    cmd->add_option("--model", run.model_path, "Model file")->required()->check(CLI::ExistingFile);
  };
  auto add_bp = [&](CLI::App* cmd) {
    cmd->add_option("--max-iters", run.max_iters, "BP iteration cap")->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--tol", run.tolerance, "Log dynamic-range convergence tolerance")
        ->capture_default_str()->check(CLI::PositiveNumber);
  };

  // gen grid
  auto* gen = app.add_subcommand("gen", "Generate a model file");
  gen->require_subcommand(1);
  auto* grid = gen->add_subcommand("grid", "Binary grid with symmetric exponential couplings");
  int grid_rows = 3;
  int grid_cols = 3;
  std::string strength = "weak";
  std::uint64_t seed = 0;
  double field = 0.0;
  grid->add_option("--rows", grid_rows)->required()->check(CLI::PositiveNumber);
  grid->add_option("--cols", grid_cols)->required()->check(CLI::PositiveNumber);
  grid->add_option("--strength", strength, "weak | stronger | very-strong | <d>")
      ->capture_default_str();
  grid->add_option("--seed", seed)->capture_default_str();
  grid->add_option("--field", field, "Random unary field range (0: none)")->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  grid->add_option("-o,--output", output, "Output file (default stdout)");

  auto* bp = app.add_subcommand("bp", "Run loopy BP and print beliefs");
  add_model(bp);
  add_bp(bp);
  bp->add_option("-o,--output", output, "CSV output (default stdout)");

  auto* bound = app.add_subcommand("bound", "BP beliefs with certified marginal intervals");
  add_model(bound);
  add_bp(bound);
  bound->add_option("--roots", roots, "all or comma-separated vertex indices")->capture_default_str();
  bound->add_option("--budget", run.budget, "SAW tree node budget (env MRFBOUND_BUDGET)")
      ->capture_default_str()->check(CLI::PositiveNumber);
  bound->add_flag("--exact", run.compute_exact, "Also enumerate exact marginals and check them");
  bound->add_option("-o,--output", output, "CSV output (default stdout)");

  auto* exact = app.add_subcommand("exact", "Exact marginals by enumeration");
  add_model(exact);
  exact->add_option("-o,--output", output, "CSV output (default stdout)");

  auto* sweep = app.add_subcommand("sweep", "Interval width versus coupling strength on grids");
  cli::SweepConfig sweep_config;
  sweep_config.budget = run.budget;
  sweep->add_option("--rows", sweep_config.rows)->required()->check(CLI::PositiveNumber);
  sweep->add_option("--cols", sweep_config.cols)->required()->check(CLI::PositiveNumber);
  sweep->add_option("--d", sweep_config.d_values, "Target strengths")->required()->delimiter(',');
  sweep->add_option("--seeds", sweep_config.seeds, "Seeds 0..K-1")->capture_default_str()
      ->check(CLI::PositiveNumber);
  sweep->add_option("-o,--output", output, "CSV output (default stdout)");

  auto* tree = app.add_subcommand("tree", "Dump a SAW or Bethe tree");
  int tree_root = 0;
  int bethe_length = 0;
  add_model(tree);
  tree->add_option("--root", tree_root)->capture_default_str();
  tree->add_option("--bethe", bethe_length, "Bethe tree with walks of N vertices instead of SAW");
  tree->add_option("--budget", run.budget)->capture_default_str()->check(CLI::PositiveNumber);
  tree->add_option("-o,--output", output, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) {
      const auto preset = cli::parse_strength(strength);
      const Model model(cli::gen_grid(grid_rows, grid_cols, preset.target_d, seed, field));
      return with_output(output, [&](std::ostream& out, std::ostream&) {
        save_model(model, out);
        return 0;
      });
    }
    if (bp->parsed()) {
      return with_output(output, [&](std::ostream& out, std::ostream& summary) {
        return cli::cmd_bp(run, out, summary);
      });
    }
    if (bound->parsed()) {
      run.roots = parse_roots(roots);
      return with_output(output, [&](std::ostream& out, std::ostream& summary) {
        return cli::cmd_bound(run, out, summary);
      });
    }
    if (exact->parsed()) {
      return with_output(output, [&](std::ostream& out, std::ostream& summary) {
        return cli::cmd_exact(run, out, summary);
      });
    }
    if (sweep->parsed()) {
      sweep_config.max_iters = run.max_iters;
      sweep_config.tolerance = run.tolerance;
      return with_output(output, [&](std::ostream& out, std::ostream& summary) {
        return cli::cmd_sweep(sweep_config, out, summary);
      });
    }
    if (tree->parsed()) {
      const Model model = load_model_file(run.model_path);
      const UnrolledTree t = bethe_length > 0
                                 ? build_bethe_tree(model, tree_root, bethe_length, run.budget)
                                 : build_saw_tree(model, tree_root, run.budget);
      return with_output(output, [&](std::ostream& out, std::ostream& summary) {
        dump_tree(t, out);
        const TreeStats stats = classify_leaves(t);
        summary << "nodes " << stats.node_count << ", depth " << stats.depth << ", dead_end "
                << stats.dead_end << ", cycle_induced " << stats.cycle_induced << ", truncated "
                << stats.truncated << "\n";
        return 0;
      });
    }
  } catch (const mrfbound::Error& e) {
    std::cerr << "mrfbound: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
