#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "oracles.hpp"
#include "tdsqaoa/cli.hpp"
#include "tdsqaoa/errors.hpp"
#include "tdsqaoa/harness.hpp"
#include "tdsqaoa/io.hpp"

using namespace tdsqaoa;
namespace fs = std::filesystem;

namespace {

std::map<std::string, double> uniform_over(int n) {
  std::map<std::string, double> d;
  for (std::uint64_t k = 0; k < (1ULL << n); ++k) {
    std::string s;
    for (int i = n - 1; i >= 0; --i) s += ((k >> i) & 1) ? '1' : '0';
    d[s] = 1.0 / static_cast<double>(1ULL << n);
  }
  return d;
}

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult cli(std::vector<std::string> args) {
  args.insert(args.begin(), "tds_qaoa");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("tdsqaoa_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

RunConfig quick_config(int layers, int maxiter) {
  RunConfig c;
  c.layers = layers;
  c.max_iterations = maxiter;
  c.shots = 2000;
  return c;
}

}  // namespace

TEST_CASE("metrics of point masses") {
  const Graph g = benchmark_graph();
  const Metrics m = compute_metrics({{"100011", 1.0}}, g);
  CHECK(m.z_star == "100011");
  CHECK(m.correct_probability == 1.0);
  CHECK(m.optimal_probability == 1.0);
  CHECK(m.z_star_is_tds);
  CHECK(m.z_star_is_minimal_tds);

  const Metrics all = compute_metrics({{"111111", 1.0}}, g, 3);
  CHECK(all.correct_probability == 1.0);
  CHECK(all.optimal_probability == 0.0);
  CHECK(all.z_star_is_tds);
  CHECK_FALSE(all.z_star_is_minimal_tds);

  const Metrics none = compute_metrics({{"000000", 0.6}, {"111000", 0.4}}, g);
  CHECK(none.z_star == "000000");
  CHECK_FALSE(none.z_star_is_tds);
  CHECK(none.correct_probability == doctest::Approx(0.4));
  CHECK(none.optimal_probability == doctest::Approx(0.4));
}

TEST_CASE("metrics of the uniform distribution") {
  const Graph g = benchmark_graph();
  int tds = 0;
  int minimal = 0;
  for (std::uint64_t k = 0; k < 64; ++k) {
    const std::vector<int> in = oracle::bits_of(k, 6);
    if (oracle::is_tds_naive(g, in)) {
      ++tds;
      if (std::count(in.begin(), in.end(), 1) == 3) ++minimal;
    }
  }
  const Metrics m = compute_metrics(uniform_over(6), g);
  CHECK(m.correct_probability == doctest::Approx(tds / 64.0));
  CHECK(m.optimal_probability == doctest::Approx(minimal / 64.0));
  CHECK(minimal == 4);
  CHECK(m.z_star == "000000");  // ties resolve to the lexicographically smallest string
}

TEST_CASE("metrics reject bad distributions") {
  const Graph g = benchmark_graph();
  CHECK_THROWS_AS(compute_metrics({{"100011", 0.5}}, g), DomainError);
  CHECK_THROWS_AS(compute_metrics({{"10001", 1.0}}, g), DomainError);
}

TEST_CASE("single-edge run") {
  const Graph edge(2, {{0, 1}});
  RunConfig c = quick_config(2, 500);
  c.penalty = 3.0;
  const RunResult r = run_single(edge, c);
  CHECK(r.n_qubits == 2);
  CHECK(r.penalty == 3.0);
  CHECK(r.metrics.z_star == "11");
  CHECK(r.metrics.correct_probability >= r.metrics.optimal_probability);
  double p11 = 0.0;
  double total = 0.0;
  for (const auto& o : r.distribution) {
    total += o.probability;
    if (o.bits == "11") p11 = o.probability;
  }
  CHECK(total == doctest::Approx(1.0));
  CHECK(r.metrics.optimal_probability == doctest::Approx(p11));
  CHECK(r.trace.evaluations.size() <= 500);
  CHECK(r.metrics.optimal_probability > 0.99);
  CHECK(r.gammas.size() == 2);
  CHECK(r.final_cost >= 2.0 - 1e-9);
}

TEST_CASE("run bookkeeping on the benchmark graph") {
  RunConfig c = quick_config(2, 40);
  c.seed = 5;
  const RunResult r = run_single(c);
  CHECK(r.n_qubits == 10);
  CHECK(r.n_vertices == 6);
  CHECK(r.penalty == 9.0);
  CHECK(r.distribution.size() == 64);
  for (std::size_t i = 1; i < r.distribution.size(); ++i)
    CHECK(r.distribution[i - 1].probability >= r.distribution[i].probability);
  CHECK(r.top(3).size() == 3);
  CHECK(r.metrics.z_star == r.distribution.front().bits);
  for (double gm : r.gammas) CHECK((gm >= 0.0 && gm <= 2 * std::numbers::pi));
  for (double b : r.betas) CHECK((b >= 0.0 && b <= std::numbers::pi));

  const RunResult again = run_single(c);
  CHECK(again.gammas == r.gammas);
  CHECK(again.metrics.z_star == r.metrics.z_star);

  RunConfig mult = c;
  mult.penalty_multiplier = 0.8;
  CHECK(resolve_penalty(mult, benchmark_graph()) == doctest::Approx(4.8));
  mult.penalty = 2.0;
  CHECK(resolve_penalty(mult, benchmark_graph()) == 2.0);

  CHECK_THROWS_AS(run_single(Graph(3, {{0, 1}}), c), InfeasibleError);

  // Without jitter the first evaluation is the ramp, betas reflected unless disabled.
  RunConfig plain = quick_config(2, 5);
  plain.init_jitter = 0.0;
  const auto first = run_single(plain).trace.evaluations.front().point;
  CHECK(first == std::vector<double>{0.25, 0.75, std::numbers::pi - 0.75, std::numbers::pi - 0.25});
  plain.reflect_ramp_betas = false;
  CHECK(run_single(plain).trace.evaluations.front().point == initial_angles(2).flatten());
}

TEST_CASE("sampled metrics") {
  RunConfig c = quick_config(2, 30);
  c.exact_metrics = false;
  c.shots = 500;
  const RunResult r = run_single(c);
  std::int64_t total = 0;
  for (const auto& o : r.distribution) total += o.count;
  CHECK(total == 500);
}

TEST_CASE("sweep counting") {
  const Graph g = benchmark_graph();
  SweepOptions empty;
  empty.base = quick_config(1, 10);
  const SweepTable none = run_sweep(g, empty);
  CHECK(none.rows.empty());
  CHECK(none.summaries.empty());
  CHECK(none.tds_cells == 0);

  SweepOptions o;
  o.grid = {{1, 2}, {1.5}, {20}};
  o.replicates = 3;
  o.base = quick_config(1, 10);
  o.workers = 2;
  const SweepTable t = run_sweep(g, o);
  REQUIRE(t.rows.size() == 6);
  REQUIRE(t.summaries.size() == 2);
  CHECK(t.rows[0].layers == 1);
  CHECK(t.rows[3].layers == 2);
  CHECK(t.rows[2].replicate == 2);
  int tds_cells = 0;
  for (const auto& s : t.summaries) {
    CHECK(s.runs == 3);
    CHECK(s.failures == 0);
    if (2 * s.tds_runs > s.runs) ++tds_cells;
  }
  CHECK(t.tds_cells == tds_cells);
  for (const auto& row : t.rows) {
    CHECK(row.ok());
    CHECK(row.penalty == 9.0);
    CHECK(row.evaluations <= 20);
  }
  CHECK(t.rows[0].seed != t.rows[1].seed);

  o.workers = 1;
  const SweepTable again = run_sweep(g, o);
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    CHECK(again.rows[i].seed == t.rows[i].seed);
    CHECK(again.rows[i].z_star == t.rows[i].z_star);
    CHECK(again.rows[i].final_cost == t.rows[i].final_cost);
  }

  CHECK(reference_grid().cells() == 128);
  CHECK(derive_seed(0, 2, 4.8, 50, 0) != derive_seed(0, 2, 4.8, 50, 1));
}

TEST_CASE("sweep records failing cells") {
  SweepOptions o;
  o.grid = {{1}, {1.0}, {10}};
  o.base = quick_config(1, 10);
  const SweepTable t = run_sweep(Graph(3, {{0, 1}}), o);
  REQUIRE(t.rows.size() == 1);
  CHECK_FALSE(t.rows[0].ok());
  CHECK(t.summaries[0].failures == 1);
}

TEST_CASE("graph file parsing") {
  std::istringstream ok("# triangle\n3 3\n0 1\n\n1 2\n2 0\n");
  const Graph g = parse_graph(ok);
  CHECK(g.n_vertices() == 3);
  CHECK(g.degree(0) == 2);

  std::istringstream short_file("3 3\n0 1\n");
  CHECK_THROWS_AS(parse_graph(short_file), DomainError);
  std::istringstream extra("2 1\n0 1\n1 0\n");
  CHECK_THROWS_AS(parse_graph(extra), DomainError);
  std::istringstream junk("2 1\n0 x\n");
  CHECK_THROWS_AS(parse_graph(junk), DomainError);
  std::istringstream range("2 1\n0 2\n");
  CHECK_THROWS_AS(parse_graph(range), DomainError);

  CHECK(load_graph("builtin:paper6").edges().size() == 7);
  CHECK_THROWS_AS(load_graph("builtin:nope"), DomainError);
}

TEST_CASE("QUBO json") {
  const nlohmann::json j = to_json(compile_tdp_qubo(benchmark_graph(), 9.0));
  CHECK(j["n_vars"] == 10);
  CHECK(j["n_vertex_vars"] == 6);
  CHECK(j["penalty"] == 9.0);
  REQUIRE(j["slack_groups"].size() == 2);
  CHECK(j["slack_groups"][0]["vertex"] == 2);
  CHECK(j["slack_groups"][0]["indices"] == nlohmann::json::array({6, 7}));
  CHECK(j["slack_groups"][1]["indices"] == nlohmann::json::array({8, 9}));
  CHECK(j["slack_groups"][1]["coefficients"] == nlohmann::json::array({1, 1}));
}

TEST_CASE("cli subcommands") {
  const CliResult oracle = cli({"oracle", "--graph", "builtin:paper6"});
  CHECK(oracle.code == 0);
  CHECK(oracle.out.find("minimum_tds_size=3") != std::string::npos);
  CHECK(oracle.out.find("tds {0,4,5}") != std::string::npos);
  CHECK(oracle.out.find("minimum_ds_size=2") != std::string::npos);

  const CliResult bound = cli({"bound"});
  CHECK(bound.code == 0);
  CHECK(bound.out.find("q_tdp=10\nq_dp=18\ngap=8\n") != std::string::npos);
  CHECK(bound.out.find("qubit_upper_bound=14.4902") != std::string::npos);

  const CliResult compile = cli({"compile", "--P-mult", "1.5"});
  CHECK(compile.code == 0);
  CHECK(nlohmann::json::parse(compile.out)["penalty"] == 9.0);

  CHECK(cli({}).code == 1);
  CHECK(cli({"run", "--bogus"}).code == 1);
  CHECK(cli({"compile", "--P", "2", "--P-mult", "1"}).code == 1);
  CHECK(cli({"run", "--graph", "/nonexistent/graph.txt"}).code == 1);

  const fs::path dir = scratch_dir("cli");
  const fs::path isolated = dir / "isolated.txt";
  std::ofstream(isolated) << "3 1\n0 1\n";
  const CliResult inf = cli({"run", "--graph", isolated.string(), "--q", "1", "--maxiter", "5"});
  CHECK(inf.code == 2);
  CHECK(inf.err.find("infeasible") != std::string::npos);

  const CliResult run = cli({"run", "--q", "1", "--maxiter", "15", "--shots", "100", "--out", dir.string()});
  CHECK(run.code == 0);
  CHECK(fs::exists(dir / "run_result.json"));
  CHECK(fs::exists(dir / "distribution.csv"));
  CHECK(fs::exists(dir / "trace.csv"));
  std::ifstream rj(dir / "run_result.json");
  const nlohmann::json result = nlohmann::json::parse(rj);
  CHECK(result["config"]["q"] == 1);
  CHECK(result["n_qubits"] == 10);

  const CliResult trace = cli({"trace", "--q", "1", "--maxiter", "7"});
  CHECK(trace.code == 0);
  CHECK(trace.out.rfind("evaluation_index,value\n", 0) == 0);
  CHECK(std::count(trace.out.begin(), trace.out.end(), '\n') == 8);

  const CliResult sweep = cli({"sweep", "--q-list", "1", "--P-mult-list", "1.0,1.5", "--maxiter-list", "5",
                               "--seeds", "1", "--workers", "1", "--out", dir.string()});
  CHECK(sweep.code == 0);
  CHECK(fs::exists(dir / "sweep_rows.csv"));
  CHECK(fs::exists(dir / "sweep_summary.csv"));
  fs::remove_all(dir);
}
