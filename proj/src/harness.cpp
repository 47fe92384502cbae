#include "tdsqaoa/harness.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>

#include "tdsqaoa/errors.hpp"
#include "tdsqaoa/io.hpp"
#include "tdsqaoa/qubo.hpp"
#include "tdsqaoa/spin_model.hpp"

namespace tdsqaoa {

double resolve_penalty(const RunConfig& config, const Graph& g) {
  double p = default_penalty(g);
  if (config.penalty) {
    p = *config.penalty;
  } else if (config.penalty_multiplier) {
    p = *config.penalty_multiplier * g.n_vertices();
  }
  if (!(p > 0.0)) throw DomainError("punishment coefficient must be positive");
  return p;
}

namespace {

std::uint64_t vertex_mask(const std::string& bits) {
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') mask |= std::uint64_t{1} << i;
  }
  return mask;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double median(std::vector<double> v) {
  if (v.empty()) return std::nan("");
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

Metrics compute_metrics(const std::map<std::string, double>& dist, const Graph& g,
                        std::optional<int> min_tds_size) {
  double total = 0.0;
  for (const auto& [bits, p] : dist) {
    if (static_cast<int>(bits.size()) != g.n_vertices()) {
      throw DomainError("vertex string '" + bits + "' does not match the graph size");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-6) throw DomainError("distribution is not normalized");
  const int min_size = min_tds_size ? *min_tds_size : minimum_tds_bruteforce(g).size;

  Metrics m;
  double best_p = -1.0;
  for (const auto& [bits, p] : dist) {
    const std::uint64_t mask = vertex_mask(bits);
    const bool tds = is_total_dominating_mask(g, mask);
    const bool minimal = tds && std::popcount(mask) == min_size;
    if (tds) m.correct_probability += p;
    if (minimal) m.optimal_probability += p;
    // Map iteration is lexicographic, so strict > keeps the smallest string on ties.
    if (p > best_p) {
      best_p = p;
      m.z_star = bits;
      m.z_star_is_tds = tds;
      m.z_star_is_minimal_tds = minimal;
    }
  }
  return m;
}

std::vector<VertexOutcome> RunResult::top(int k) const {
  const auto n = std::min<std::size_t>(std::max(k, 0), distribution.size());
  return {distribution.begin(), distribution.begin() + static_cast<std::ptrdiff_t>(n)};
}

RunResult run_single(const Graph& g, const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  if (config.layers < 1) throw DomainError("layer count must be >= 1");
  if (config.shots < 1) throw DomainError("shots must be positive");
  if (g.has_isolated_vertex()) throw InfeasibleError("infeasible: no TDS exists, graph has an isolated vertex");

  RunResult result;
  result.config = config;
  result.penalty = resolve_penalty(config, g);
  result.n_vertices = g.n_vertices();

  const QuboModel model = compile_tdp_qubo(g, result.penalty);
  const EnergyTable table = build_energy_table(model);
  result.n_qubits = model.n_vars();

  const std::uint64_t sample_seed = splitmix64(config.seed ^ 0x5a5a5a5a5a5a5a5aULL);
  std::uint64_t objective_calls = 0;
  Objective objective = [&](std::span<const double> params) {
    const StateVector state = evolve(table, AngleSchedule::unflatten(params));
    if (config.objective_shots > 0) {
      return sampled_expectation(state, table, config.objective_shots,
                                 splitmix64(sample_seed + ++objective_calls));
    }
    return expectation(state, table);
  };

  OptimizerConfig opt;
  opt.max_iterations = config.max_iterations;
  opt.function_tolerance = config.function_tolerance;
  opt.seed = config.seed;
  opt.initial_radius = config.initial_radius;
  opt.bounds.assign(config.layers, Interval{0.0, 2.0 * std::numbers::pi});
  opt.bounds.resize(2 * config.layers, Interval{0.0, std::numbers::pi});

  const AngleSchedule start_angles = initial_angles(config.layers, config.gamma_scale, config.beta_scale);
  std::vector<double> x0 = start_angles.flatten();
  if (config.reflect_ramp_betas) {
    for (int k = 0; k < config.layers; ++k) x0[config.layers + k] = std::numbers::pi - x0[config.layers + k];
  }
  if (config.init_jitter > 0.0) {
    std::mt19937_64 rng(splitmix64(config.seed ^ 0xa0761d6478bd642fULL));
    std::uniform_real_distribution<double> noise(-config.init_jitter, config.init_jitter);
    for (std::size_t i = 0; i < x0.size(); ++i) {
      x0[i] = std::clamp(x0[i] + noise(rng), opt.bounds[i].lower, opt.bounds[i].upper);
    }
  }
  result.trace = minimize(objective, std::move(x0), opt);

  const AngleSchedule best = AngleSchedule::unflatten(result.trace.best_point);
  result.gammas = best.gammas();
  result.betas = best.betas();
  const StateVector state = evolve(table, best);
  result.final_cost = expectation(state, table);

  const auto exact = marginalize_vertices(state.probabilities(), result.n_qubits, g.n_vertices());
  const Counts counts = sample(state, config.shots, sample_seed);
  std::map<std::string, std::int64_t> vertex_counts;
  for (const auto& [k, c] : counts) {
    vertex_counts[bits_to_string(bits_from_index(k, result.n_qubits)).substr(0, g.n_vertices())] += c;
  }
  std::map<std::string, double> sampled;
  for (const auto& [bits, c] : vertex_counts) {
    sampled[bits] = static_cast<double>(c) / config.shots;
  }

  const auto& dist = config.exact_metrics ? exact : sampled;
  result.metrics = compute_metrics(dist, g, minimum_tds_bruteforce(g).size);

  for (const auto& [bits, p] : exact) {
    const auto it = vertex_counts.find(bits);
    const std::int64_t c = it == vertex_counts.end() ? 0 : it->second;
    const auto sp = sampled.find(bits);
    const double shown = config.exact_metrics ? p : (sp == sampled.end() ? 0.0 : sp->second);
    result.distribution.push_back({bits, shown, c});
  }
  std::stable_sort(result.distribution.begin(), result.distribution.end(),
                   [](const VertexOutcome& a, const VertexOutcome& b) {
                     return a.probability > b.probability;
                   });

  result.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

RunResult run_single(const RunConfig& config) {
  return run_single(load_graph(config.graph_source), config);
}

SweepGrid reference_grid() {
  return {{2, 5, 10, 20}, {0.8, 0.9, 1.0, 1.1, 1.2, 1.3, 1.4, 1.5}, {50, 100, 200, 500}};
}

std::uint64_t derive_seed(std::uint64_t base, int layers, double penalty, int max_iterations,
                          int replicate) {
  std::uint64_t h = splitmix64(base);
  h = splitmix64(h ^ static_cast<std::uint64_t>(layers));
  h = splitmix64(h ^ std::bit_cast<std::uint64_t>(penalty));
  h = splitmix64(h ^ static_cast<std::uint64_t>(max_iterations));
  return splitmix64(h ^ static_cast<std::uint64_t>(replicate));
}

SweepTable run_sweep(const Graph& g, const SweepOptions& options) {
  SweepTable table;
  const auto& grid = options.grid;
  const int reps = std::max(options.replicates, 0);
  for (int q : grid.layers) {
    for (double mult : grid.penalty_multipliers) {
      for (int maxiter : grid.max_iterations) {
        const double penalty = mult * g.n_vertices();
        for (int r = 0; r < reps; ++r) {
          SweepRow row;
          row.layers = q;
          row.penalty = penalty;
          row.max_iterations = maxiter;
          row.replicate = r;
          row.seed = derive_seed(options.base.seed, q, penalty, maxiter, r);
          table.rows.push_back(row);
        }
      }
    }
  }

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < table.rows.size(); i = next++) {
      SweepRow& row = table.rows[i];
      RunConfig cfg = options.base;
      cfg.layers = row.layers;
      cfg.penalty = row.penalty;
      cfg.penalty_multiplier.reset();
      cfg.max_iterations = row.max_iterations;
      cfg.seed = row.seed;
      try {
        const RunResult r = run_single(g, cfg);
        row.z_star = r.metrics.z_star;
        row.is_tds = r.metrics.z_star_is_tds;
        row.is_min_tds = r.metrics.z_star_is_minimal_tds;
        row.correct_probability = r.metrics.correct_probability;
        row.optimal_probability = r.metrics.optimal_probability;
        row.final_cost = r.final_cost;
        row.evaluations = static_cast<int>(r.trace.evaluations.size());
        row.runtime_ms = r.runtime_ms;
      } catch (const std::exception& e) {
        row.error = e.what();
      }
    }
  };
  const int workers = std::max(1, options.workers);
  std::vector<std::jthread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  pool.clear();

  for (std::size_t start = 0; start < table.rows.size(); start += reps) {
    SweepSummary s;
    const SweepRow& first = table.rows[start];
    s.layers = first.layers;
    s.penalty = first.penalty;
    s.max_iterations = first.max_iterations;
    std::vector<double> correct;
    std::vector<double> optimal;
    for (int r = 0; r < reps; ++r) {
      const SweepRow& row = table.rows[start + r];
      ++s.runs;
      if (!row.ok()) {
        ++s.failures;
        continue;
      }
      s.tds_runs += row.is_tds;
      s.min_tds_runs += row.is_min_tds;
      correct.push_back(row.correct_probability);
      optimal.push_back(row.optimal_probability);
    }
    s.median_correct = median(correct);
    s.median_optimal = median(optimal);
    if (2 * s.tds_runs > s.runs) ++table.tds_cells;
    if (2 * s.min_tds_runs > s.runs) ++table.min_tds_cells;
    table.summaries.push_back(s);
  }
  return table;
}

}  // namespace tdsqaoa
