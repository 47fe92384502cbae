#include "tdsqaoa/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "tdsqaoa/errors.hpp"

namespace tdsqaoa {

namespace {

bool next_content_line(std::istream& in, std::string& line, int& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

}  // namespace

Graph parse_graph(std::istream& in) {
  std::string line;
  int line_no = 0;
  if (!next_content_line(in, line, line_no)) throw DomainError("graph file: missing header");
  std::istringstream header(line);
  long n = -1;
  long m = -1;
  if (!(header >> n >> m) || n < 0 || m < 0) {
    throw DomainError("graph file line " + std::to_string(line_no) + ": expected 'n m'");
  }
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (long e = 0; e < m; ++e) {
    if (!next_content_line(in, line, line_no)) {
      throw DomainError("graph file: expected " + std::to_string(m) + " edges, found " +
                        std::to_string(e));
    }
    std::istringstream row(line);
    long u = -1;
    long v = -1;
    if (!(row >> u >> v)) {
      throw DomainError("graph file line " + std::to_string(line_no) + ": expected 'u v'");
    }
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  if (next_content_line(in, line, line_no)) {
    throw DomainError("graph file line " + std::to_string(line_no) + ": more edges than declared");
  }
  return Graph(static_cast<int>(n), edges);
}

Graph load_graph(const std::string& source) {
  if (source == "builtin:paper6") return benchmark_graph();
  if (source.rfind("builtin:", 0) == 0) throw DomainError("unknown builtin graph '" + source + "'");
  std::ifstream in(source);
  if (!in) throw DomainError("cannot open graph file '" + source + "'");
  return parse_graph(in);
}

nlohmann::json to_json(const QuboModel& m) {
  using nlohmann::json;
  json linear = json::array();
  for (const auto& [i, c] : m.linear()) linear.push_back({i, c});
  json quadratic = json::array();
  for (const auto& [key, c] : m.quadratic()) quadratic.push_back({key.first, key.second, c});
  json groups = json::array();
  for (const auto& g : m.registry().slack_groups) {
    json indices = json::array();
    for (int k = 0; k < g.size(); ++k) indices.push_back(g.first_index + k);
    groups.push_back({{"vertex", g.vertex}, {"indices", indices}, {"coefficients", g.coefficients}});
  }
  return {{"n_vars", m.n_vars()},
          {"constant", m.constant()},
          {"linear", linear},
          {"quadratic", quadratic},
          {"penalty", m.penalty()},
          {"n_vertex_vars", m.registry().n_vertex_vars},
          {"slack_groups", groups}};
}

nlohmann::json to_json(const RunResult& r) {
  using nlohmann::json;
  const RunConfig& c = r.config;
  json top = json::array();
  for (const auto& o : r.top(c.top_k)) {
    top.push_back({{"bits", o.bits}, {"probability", o.probability}, {"count", o.count}});
  }
  return {{"config",
           {{"graph", c.graph_source},
            {"q", c.layers},
            {"P", r.penalty},
            {"maxiter", c.max_iterations},
            {"shots", c.shots},
            {"seed", c.seed},
            {"exact_metrics", c.exact_metrics},
            {"objective_shots", c.objective_shots},
            {"function_tolerance", c.function_tolerance},
            {"gamma_scale", c.gamma_scale},
            {"beta_scale", c.beta_scale},
            {"reflect_ramp_betas", c.reflect_ramp_betas},
            {"init_jitter", c.init_jitter},
            {"initial_radius", c.initial_radius}}},
          {"n_qubits", r.n_qubits},
          {"gammas", r.gammas},
          {"betas", r.betas},
          {"cost_trace",
           {{"evaluations", r.trace.evaluations.size()},
            {"best_value", r.trace.best_value},
            {"termination", to_string(r.trace.termination)}}},
          {"final_cost", r.final_cost},
          {"z_star", r.metrics.z_star},
          {"z_star_is_tds", r.metrics.z_star_is_tds},
          {"z_star_is_minimal_tds", r.metrics.z_star_is_minimal_tds},
          {"correct_probability", r.metrics.correct_probability},
          {"optimal_probability", r.metrics.optimal_probability},
          {"top_k", top},
          {"runtime_ms", r.runtime_ms}};
}

nlohmann::json to_json(const SweepTable& t) {
  using nlohmann::json;
  json rows = json::array();
  for (const auto& r : t.rows) {
    json row = {{"q", r.layers},
                {"P", r.penalty},
                {"maxiter", r.max_iterations},
                {"replicate", r.replicate},
                {"seed", r.seed},
                {"z_star", r.z_star},
                {"is_tds", r.is_tds},
                {"is_min_tds", r.is_min_tds},
                {"correct_prob", r.correct_probability},
                {"optimal_prob", r.optimal_probability},
                {"final_cost", r.final_cost},
                {"evals", r.evaluations},
                {"runtime_ms", r.runtime_ms}};
    if (!r.ok()) row["error"] = r.error;
    rows.push_back(std::move(row));
  }
  json summaries = json::array();
  for (const auto& s : t.summaries) {
    summaries.push_back({{"q", s.layers},
                         {"P", s.penalty},
                         {"maxiter", s.max_iterations},
                         {"runs", s.runs},
                         {"failures", s.failures},
                         {"tds_runs", s.tds_runs},
                         {"min_tds_runs", s.min_tds_runs},
                         {"median_correct", s.median_correct},
                         {"median_optimal", s.median_optimal}});
  }
  return {{"rows", rows},
          {"summaries", summaries},
          {"cells", t.summaries.size()},
          {"tds_cells", t.tds_cells},
          {"min_tds_cells", t.min_tds_cells}};
}

void write_energy_table_csv(std::ostream& out, const EnergyTable& table) {
  out << "index,bits,energy\n";
  for (std::uint64_t k = 0; k < table.size(); ++k) {
    out << k << ',' << bits_to_string(bits_from_index(k, table.n_vars())) << ','
        << fmt(table[k]) << '\n';
  }
}

void write_distribution_csv(std::ostream& out, const RunResult& r) {
  out << "bits,probability,count\n";
  for (const auto& o : r.distribution) {
    out << o.bits << ',' << fmt(o.probability) << ',' << o.count << '\n';
  }
}

void write_trace_csv(std::ostream& out, const OptimizationTrace& trace) {
  out << "evaluation_index,value\n";
  for (std::size_t i = 0; i < trace.evaluations.size(); ++i) {
    out << i << ',' << fmt(trace.evaluations[i].value) << '\n';
  }
}

void write_sweep_rows_csv(std::ostream& out, const SweepTable& t) {
  out << "q,P,maxiter,seed,z_star,is_tds,is_min_tds,correct_prob,optimal_prob,final_cost,evals,"
         "runtime_ms,error\n";
  for (const auto& r : t.rows) {
    std::string error = r.error;
    for (char& ch : error) {
      if (ch == ',' || ch == '\n') ch = ';';
    }
    out << r.layers << ',' << fmt(r.penalty) << ',' << r.max_iterations << ',' << r.seed << ','
        << r.z_star << ',' << (r.is_tds ? 1 : 0) << ',' << (r.is_min_tds ? 1 : 0) << ','
        << fmt(r.correct_probability) << ',' << fmt(r.optimal_probability) << ','
        << fmt(r.final_cost) << ',' << r.evaluations << ',' << fmt(r.runtime_ms) << ',' << error
        << '\n';
  }
}

void write_sweep_summary_csv(std::ostream& out, const SweepTable& t) {
  out << "q,P,maxiter,runs,failures,tds_runs,min_tds_runs,median_correct,median_optimal\n";
  for (const auto& s : t.summaries) {
    out << s.layers << ',' << fmt(s.penalty) << ',' << s.max_iterations << ',' << s.runs << ','
        << s.failures << ',' << s.tds_runs << ',' << s.min_tds_runs << ','
        << fmt(s.median_correct) << ',' << fmt(s.median_optimal) << '\n';
  }
}

}  // namespace tdsqaoa
