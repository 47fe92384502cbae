#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tdsqaoa/graph.hpp"
#include "tdsqaoa/optimizer.hpp"
#include "tdsqaoa/qaoa.hpp"

namespace tdsqaoa {

struct RunConfig {
  std::string graph_source = "builtin:paper6";
  int layers = 5;
  std::optional<double> penalty;             // absolute P; takes precedence
  std::optional<double> penalty_multiplier;  // P = multiplier * |V|
  int max_iterations = 500;
  int shots = 100000;
  std::uint64_t seed = 0;
  bool exact_metrics = true;
  int objective_shots = 0;  // > 0 optimizes a shot-noise estimate instead of the exact expectation
  double function_tolerance = 1e-8;
  double gamma_scale = 1.0;
  double beta_scale = 1.0;
  // The mixer e^{-i beta X} starts in its highest eigenstate, so the raw ramp anneals
  // toward the cost maximum; reflecting betas to pi - beta (same unitary up to sign of
  // the generator) anneals toward the minimum instead.
  bool reflect_ramp_betas = true;
  double init_jitter = 0.1;     // seeded uniform perturbation of the ramp start, radians
  double initial_radius = 0.0;  // <= 0: optimizer default
  int top_k = 10;
};

/// Absolute punishment coefficient for this config; defaults to 1.5 * |V|.
double resolve_penalty(const RunConfig& config, const Graph& g);

struct Metrics {
  double correct_probability = 0.0;
  double optimal_probability = 0.0;
  std::string z_star;
  bool z_star_is_tds = false;
  bool z_star_is_minimal_tds = false;
};

/// Metrics of a vertex-string distribution (leftmost character = vertex 0).
/// `min_tds_size` avoids re-running the exhaustive oracle when already known.
/// Throws DomainError unless the probabilities sum to 1 within 1e-6.
Metrics compute_metrics(const std::map<std::string, double>& dist, const Graph& g,
                        std::optional<int> min_tds_size = std::nullopt);

struct VertexOutcome {
  std::string bits;
  double probability = 0.0;   // exact or sampled, per RunConfig::exact_metrics
  std::int64_t count = 0;     // shots landing on this vertex string
};

struct RunResult {
  RunConfig config;
  double penalty = 0.0;
  int n_qubits = 0;
  int n_vertices = 0;
  std::vector<double> gammas;
  std::vector<double> betas;
  OptimizationTrace trace;
  double final_cost = 0.0;  // expectation at the returned angles
  Metrics metrics;
  std::vector<VertexOutcome> distribution;  // descending probability, then bits
  double runtime_ms = 0.0;

  std::vector<VertexOutcome> top(int k) const;
};

/// compile -> energy table -> ramp start -> minimize <H_c> -> evolve -> marginalize -> metrics.
/// Throws InfeasibleError for graphs with isolated vertices.
RunResult run_single(const Graph& g, const RunConfig& config);
RunResult run_single(const RunConfig& config);

struct SweepGrid {
  std::vector<int> layers;
  std::vector<double> penalty_multipliers;
  std::vector<int> max_iterations;

  std::size_t cells() const {
    return layers.size() * penalty_multipliers.size() * max_iterations.size();
  }
};

/// q in {2,5,10,20}, P in {0.8..1.5} x |V|, maxiter in {50,100,200,500}.
SweepGrid reference_grid();

struct SweepOptions {
  SweepGrid grid;
  int replicates = 1;
  RunConfig base;  // graph, shots, metric mode, ramp scales
  int workers = 1;
};

struct SweepRow {
  int layers = 0;
  double penalty = 0.0;
  int max_iterations = 0;
  int replicate = 0;
  std::uint64_t seed = 0;
  std::string z_star;
  bool is_tds = false;
  bool is_min_tds = false;
  double correct_probability = 0.0;
  double optimal_probability = 0.0;
  double final_cost = 0.0;
  int evaluations = 0;
  double runtime_ms = 0.0;
  std::string error;  // nonempty when the cell failed

  bool ok() const { return error.empty(); }
};

struct SweepSummary {
  int layers = 0;
  double penalty = 0.0;
  int max_iterations = 0;
  int runs = 0;
  int failures = 0;
  int tds_runs = 0;
  int min_tds_runs = 0;
  double median_correct = 0.0;
  double median_optimal = 0.0;
};

struct SweepTable {
  std::vector<SweepRow> rows;            // grid order, replicates innermost
  std::vector<SweepSummary> summaries;   // one per cell, grid order
  int tds_cells = 0;       // cells where more than half the runs give a TDS z_star
  int min_tds_cells = 0;   // same, for a minimal TDS
};

/// Per-run seed mixed from the base seed and the cell coordinates.
std::uint64_t derive_seed(std::uint64_t base, int layers, double penalty, int max_iterations,
                          int replicate);

/// Runs every (cell, replicate) pair on `workers` threads. Failures are recorded
/// on their row and do not stop the sweep.
SweepTable run_sweep(const Graph& g, const SweepOptions& options);

}  // namespace tdsqaoa
