#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "tdsqaoa/graph.hpp"
#include "tdsqaoa/harness.hpp"
#include "tdsqaoa/qubo.hpp"
#include "tdsqaoa/spin_model.hpp"

namespace tdsqaoa {

/// Plain-text graph: header "n m", then m lines "u v". Blank lines and lines
/// starting with '#' are skipped. Throws DomainError on malformed input.
Graph parse_graph(std::istream& in);

/// "builtin:paper6" or a path to a graph file.
Graph load_graph(const std::string& source);

nlohmann::json to_json(const QuboModel& m);
nlohmann::json to_json(const RunResult& r);
nlohmann::json to_json(const SweepTable& t);

/// index,bits,energy
void write_energy_table_csv(std::ostream& out, const EnergyTable& table);
/// bits,probability,count
void write_distribution_csv(std::ostream& out, const RunResult& r);
/// evaluation_index,value
void write_trace_csv(std::ostream& out, const OptimizationTrace& trace);
/// q,P,maxiter,seed,z_star,is_tds,is_min_tds,correct_prob,optimal_prob,final_cost,evals,runtime_ms,error
void write_sweep_rows_csv(std::ostream& out, const SweepTable& t);
void write_sweep_summary_csv(std::ostream& out, const SweepTable& t);

}  // namespace tdsqaoa
