#include "tdsqaoa/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <thread>

#include "tdsqaoa/errors.hpp"
#include "tdsqaoa/harness.hpp"
#include "tdsqaoa/io.hpp"
#include "tdsqaoa/qubo.hpp"
#include "tdsqaoa/spin_model.hpp"

namespace tdsqaoa {

namespace {

std::string set_string(const VertexSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

int default_workers() {
  if (const char* env = std::getenv("TDS_QAOA_WORKERS")) {
    try {
      const int w = std::stoi(env);
      if (w > 0) return w;
    } catch (const std::exception&) {
    }
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
  return f;
}

struct CellFlags {
  std::string graph = "builtin:paper6";
  int q = 5;
  double p_abs = 0.0;
  double p_mult = 0.0;
  int maxiter = 500;
  int shots = 100000;
  std::uint64_t seed = 0;
  bool sampled = false;
  int objective_shots = 0;
  double gamma_scale = 1.0;
  double beta_scale = 1.0;
  double init_jitter = RunConfig{}.init_jitter;
  double initial_radius = 0.0;
  bool raw_ramp = false;
  std::string out_dir = ".";
  CLI::Option* p_opt = nullptr;
  CLI::Option* p_mult_opt = nullptr;

  RunConfig to_config() const {
    RunConfig c;
    c.graph_source = graph;
    c.layers = q;
    if (p_opt && p_opt->count()) c.penalty = p_abs;
    if (p_mult_opt && p_mult_opt->count()) c.penalty_multiplier = p_mult;
    c.max_iterations = maxiter;
    c.shots = shots;
    c.seed = seed;
    c.exact_metrics = !sampled;
    c.objective_shots = objective_shots;
    c.gamma_scale = gamma_scale;
    c.beta_scale = beta_scale;
    c.init_jitter = init_jitter;
    c.initial_radius = initial_radius;
    c.reflect_ramp_betas = !raw_ramp;
    return c;
  }
};

void add_graph_flag(CLI::App* app, std::string& graph) {
  app->add_option("--graph", graph, "graph file or builtin:paper6")->capture_default_str();
}

void add_penalty_flags(CLI::App* app, CellFlags& f) {
  f.p_opt = app->add_option("--P", f.p_abs, "absolute punishment coefficient");
  f.p_mult_opt = app->add_option("--P-mult", f.p_mult, "punishment coefficient as a multiple of |V|");
  f.p_opt->excludes(f.p_mult_opt);
}

void add_cell_flags(CLI::App* app, CellFlags& f, bool with_cell) {
  add_graph_flag(app, f.graph);
  if (with_cell) {
    app->add_option("--q", f.q, "QAOA layers")->check(CLI::PositiveNumber)->capture_default_str();
    add_penalty_flags(app, f);
    app->add_option("--maxiter", f.maxiter, "objective-evaluation budget")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  }
  app->add_option("--shots", f.shots, "final sampling shots")->check(CLI::PositiveNumber)->capture_default_str();
  app->add_option("--seed", f.seed, "seed")->capture_default_str();
  auto* exact = app->add_flag("--exact", "metrics from exact probabilities (default)");
  auto* sampled = app->add_flag("--sampled", f.sampled, "metrics from sampled shots");
  exact->excludes(sampled);
  app->add_option("--objective-shots", f.objective_shots,
                  "optimize a shot-based expectation estimate with this many shots (0 = exact)")
      ->check(CLI::NonNegativeNumber);
  app->add_option("--gamma-scale", f.gamma_scale, "ramp scale for initial gammas")->capture_default_str();
  app->add_option("--beta-scale", f.beta_scale, "ramp scale for initial betas")->capture_default_str();
  app->add_option("--init-jitter", f.init_jitter, "seeded perturbation of the ramp start (radians)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app->add_option("--initial-radius", f.initial_radius, "initial trust-region radius (0 = 0.1 x bound width)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app->add_flag("--raw-ramp", f.raw_ramp, "start from the ramp betas as written instead of pi - beta");
}

void print_run_summary(std::ostream& out, const RunResult& r) {
  out << "q=" << r.config.layers << " P=" << r.penalty << " maxiter=" << r.config.max_iterations
      << " seed=" << r.config.seed << '\n'
      << "evaluations=" << r.trace.evaluations.size() << " ("
      << to_string(r.trace.termination) << ") final_cost=" << r.final_cost << '\n'
      << "z_star=" << r.metrics.z_star << " tds=" << (r.metrics.z_star_is_tds ? "yes" : "no")
      << " minimal=" << (r.metrics.z_star_is_minimal_tds ? "yes" : "no") << '\n'
      << "correct_probability=" << r.metrics.correct_probability
      << " optimal_probability=" << r.metrics.optimal_probability << '\n';
}

}  // namespace

int cli_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Total domination via QUBO compilation and simulated QAOA", "tds_qaoa"};
  app.require_subcommand(1);

  CellFlags f;

  auto* compile = app.add_subcommand("compile", "print the QUBO model as JSON");
  add_graph_flag(compile, f.graph);
  add_penalty_flags(compile, f);
  std::string table_path;
  compile->add_option("--table", table_path, "also write the energy table CSV here");

  auto* bound = app.add_subcommand("bound", "qubit counts and the qubit upper bound");
  add_graph_flag(bound, f.graph);

  auto* oracle = app.add_subcommand("oracle", "exhaustive minimum TDS and DS");
  add_graph_flag(oracle, f.graph);

  auto* run = app.add_subcommand("run", "optimize and sample one parameter cell");
  add_cell_flags(run, f, true);
  run->add_option("--out", f.out_dir, "output directory")->capture_default_str();

  auto* trace = app.add_subcommand("trace", "print the optimizer cost trace of one cell as CSV");
  add_cell_flags(trace, f, true);

  auto* sweep = app.add_subcommand("sweep", "run a parameter grid");
  add_cell_flags(sweep, f, false);
  SweepGrid grid = reference_grid();
  int replicates = 1;
  int workers = 0;
  sweep->add_option("--q-list", grid.layers, "layer counts")->delimiter(',');
  sweep->add_option("--P-mult-list", grid.penalty_multipliers, "P multipliers of |V|")->delimiter(',');
  sweep->add_option("--maxiter-list", grid.max_iterations, "evaluation budgets")->delimiter(',');
  sweep->add_option("--seeds", replicates, "replicates per cell")->check(CLI::NonNegativeNumber)->capture_default_str();
  sweep->add_option("--workers", workers, "worker threads (default: $TDS_QAOA_WORKERS or all cores)");
  sweep->add_option("--out", f.out_dir, "output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    if (compile->parsed()) {
      const Graph g = load_graph(f.graph);
      RunConfig c = f.to_config();
      const QuboModel m = compile_tdp_qubo(g, resolve_penalty(c, g));
      out << to_json(m).dump(2) << '\n';
      if (!table_path.empty()) {
        auto file = open_out(table_path);
        write_energy_table_csv(file, build_energy_table(m));
      }
    } else if (bound->parsed()) {
      const Graph g = load_graph(f.graph);
      const QubitCounts c = qubit_counts(g);
      const DegreePartition part = degree_partition(g);
      out << "q_tdp=" << c.q_tdp << "\nq_dp=" << c.q_dp << "\ngap=" << c.gap << '\n'
          << "gap_interval=[" << 2 * part.v2.size() << ", " << 2 * part.v2.size() + part.v_ge3.size()
          << "]\n";
      try {
        out << "qubit_upper_bound=" << std::fixed << std::setprecision(4) << qubit_upper_bound(g) << '\n';
      } catch (const DomainError& e) {
        out << "qubit_upper_bound=undefined (" << e.what() << ")\n";
      }
    } else if (oracle->parsed()) {
      const Graph g = load_graph(f.graph);
      const MinimumSets tds = minimum_tds_bruteforce(g);
      out << "minimum_tds_size=" << tds.size << '\n';
      for (const auto& s : tds.sets) out << "tds " << set_string(s) << '\n';
      const MinimumSets ds = minimum_ds_bruteforce(g);
      out << "minimum_ds_size=" << ds.size << '\n';
      for (const auto& s : ds.sets) out << "ds " << set_string(s) << '\n';
    } else if (run->parsed()) {
      const RunResult r = run_single(f.to_config());
      const std::filesystem::path dir(f.out_dir);
      std::filesystem::create_directories(dir);
      open_out(dir / "run_result.json") << to_json(r).dump(2) << '\n';
      auto dist = open_out(dir / "distribution.csv");
      write_distribution_csv(dist, r);
      auto tr = open_out(dir / "trace.csv");
      write_trace_csv(tr, r.trace);
      print_run_summary(out, r);
    } else if (trace->parsed()) {
      const RunResult r = run_single(f.to_config());
      write_trace_csv(out, r.trace);
    } else if (sweep->parsed()) {
      SweepOptions opts;
      opts.grid = grid;
      opts.replicates = replicates;
      opts.base = f.to_config();
      opts.workers = workers > 0 ? workers : default_workers();
      const Graph g = load_graph(f.graph);
      const SweepTable t = run_sweep(g, opts);
      const std::filesystem::path dir(f.out_dir);
      std::filesystem::create_directories(dir);
      auto rows = open_out(dir / "sweep_rows.csv");
      write_sweep_rows_csv(rows, t);
      auto summary = open_out(dir / "sweep_summary.csv");
      write_sweep_summary_csv(summary, t);
      open_out(dir / "sweep.json") << to_json(t).dump(2) << '\n';
      int failures = 0;
      for (const auto& row : t.rows) failures += !row.ok();
      out << "cells=" << t.summaries.size() << " rows=" << t.rows.size() << " failures=" << failures
          << '\n'
          << "tds_cells=" << t.tds_cells << " min_tds_cells=" << t.min_tds_cells
          << " (reference values for builtin:paper6 on the default grid: 93 and 12 of 128)\n";
    }
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kOk;
}

}  // namespace tdsqaoa
