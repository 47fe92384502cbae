#include "tdsqaoa/qubo.hpp"

#include <bit>
#include <cmath>
#include <limits>

#include "tdsqaoa/errors.hpp"

namespace tdsqaoa {

int VariableRegistry::total_vars() const {
  int total = n_vertex_vars;
  for (const auto& group : slack_groups) total += group.size();
  return total;
}

QuboModel::QuboModel(int n_vars, double constant, std::map<int, double> linear,
                     std::map<Pair, double> quadratic, double penalty, VariableRegistry registry)
    : n_vars_(n_vars),
      constant_(constant),
      linear_(std::move(linear)),
      quadratic_(std::move(quadratic)),
      penalty_(penalty),
      registry_(std::move(registry)) {
  if (n_vars_ < 0) throw DomainError("negative variable count");
  for (const auto& [i, c] : linear_) {
    if (i < 0 || i >= n_vars_) throw DomainError("linear term index out of range");
    linear_terms_.emplace_back(i, c);
  }
  for (const auto& [key, c] : quadratic_) {
    if (key.first >= key.second || key.first < 0 || key.second >= n_vars_) {
      throw DomainError("quadratic term indices must satisfy 0 <= i < j < n_vars");
    }
    quad_terms_.push_back({key.first, key.second, c});
  }
}

double QuboModel::evaluate(std::span<const std::uint8_t> x) const {
  if (static_cast<int>(x.size()) != n_vars_) {
    throw DomainError("assignment has " + std::to_string(x.size()) + " bits, model has " +
                      std::to_string(n_vars_) + " variables");
  }
  double value = constant_;
  for (const auto& [i, c] : linear_terms_) {
    if (x[i]) value += c;
  }
  for (const auto& t : quad_terms_) {
    if (x[t.i] && x[t.j]) value += t.c;
  }
  return value;
}

double QuboModel::evaluate_index(std::uint64_t index) const {
  const int top = n_vars_ - 1;
  auto bit = [&](int i) { return (index >> (top - i)) & 1U; };
  double value = constant_;
  for (const auto& [i, c] : linear_terms_) {
    if (bit(i)) value += c;
  }
  for (const auto& t : quad_terms_) {
    if (bit(t.i) && bit(t.j)) value += t.c;
  }
  return value;
}

void QuboBuilder::check(int i) const {
  if (i < 0 || i >= n_vars_) {
    throw DomainError("variable " + std::to_string(i) + " outside [0, " + std::to_string(n_vars_) +
                      ")");
  }
}

void QuboBuilder::add_linear(int i, double c) {
  check(i);
  linear_[i] += c;
}

void QuboBuilder::add_quadratic(int i, int j, double c) {
  check(i);
  check(j);
  if (i == j) {
    linear_[i] += c;  // x^2 = x
    return;
  }
  quadratic_[std::minmax(i, j)] += c;
}

void QuboBuilder::add_squared_form(double weight, double offset,
                                   const std::vector<std::pair<int, double>>& terms) {
  add_constant(weight * offset * offset);
  for (std::size_t a = 0; a < terms.size(); ++a) {
    const auto [i, ci] = terms[a];
    add_linear(i, weight * (2.0 * offset * ci + ci * ci));
    for (std::size_t b = a + 1; b < terms.size(); ++b) {
      const auto [j, cj] = terms[b];
      add_quadratic(i, j, weight * 2.0 * ci * cj);
    }
  }
}

QuboModel QuboBuilder::build(double penalty, VariableRegistry registry) const {
  std::map<int, double> linear;
  for (const auto& [i, c] : linear_) {
    if (c != 0.0) linear.emplace(i, c);
  }
  std::map<QuboModel::Pair, double> quadratic;
  for (const auto& [key, c] : quadratic_) {
    if (c != 0.0) quadratic.emplace(key, c);
  }
  return QuboModel(n_vars_, constant_, std::move(linear), std::move(quadratic), penalty,
                   std::move(registry));
}

std::vector<int> slack_coefficients(int n) {
  if (n < 3) throw DomainError("slack expansion needs a neighborhood of size >= 3");
  const int range = n - 1;
  const int length = std::bit_width(static_cast<unsigned>(range));  // floor(log2(n-1)) + 1
  std::vector<int> coeffs;
  int partial = 0;
  for (int i = 1; i < length; ++i) {
    coeffs.push_back(1 << (i - 1));
    partial += 1 << (i - 1);
  }
  coeffs.push_back(range - partial);
  return coeffs;
}

QuboModel compile_tdp_qubo(const Graph& g, double penalty) {
  const int n = g.n_vertices();
  VariableRegistry registry;
  registry.n_vertex_vars = n;
  int next_var = n;
  for (Vertex i = 0; i < n; ++i) {
    const int deg = g.degree(i);
    if (deg == 0) {
      throw InfeasibleError("infeasible: no TDS exists, vertex " + std::to_string(i) +
                            " is isolated");
    }
    if (deg >= 3) {
      SlackGroup group{i, next_var, slack_coefficients(deg)};
      next_var += group.size();
      registry.slack_groups.push_back(std::move(group));
    }
  }

  QuboBuilder builder(next_var);
  for (Vertex i = 0; i < n; ++i) builder.add_linear(i, 1.0);

  auto group = registry.slack_groups.begin();
  for (Vertex i = 0; i < n; ++i) {
    const auto& nbrs = g.neighbors(i);
    if (nbrs.size() == 1) {
      // P (x_j - 1)^2
      builder.add_squared_form(penalty, -1.0, {{nbrs[0], 1.0}});
    } else if (nbrs.size() == 2) {
      // P (1 - x_j - x_k + x_j x_k)
      builder.add_constant(penalty);
      builder.add_linear(nbrs[0], -penalty);
      builder.add_linear(nbrs[1], -penalty);
      builder.add_quadratic(nbrs[0], nbrs[1], penalty);
    } else {
      // P (sum_j x_j - S_i - 1)^2
      std::vector<std::pair<int, double>> terms;
      for (Vertex j : nbrs) terms.emplace_back(j, 1.0);
      for (int k = 0; k < group->size(); ++k) {
        terms.emplace_back(group->first_index + k, -static_cast<double>(group->coefficients[k]));
      }
      builder.add_squared_form(penalty, -1.0, terms);
      ++group;
    }
  }
  return builder.build(penalty, std::move(registry));
}

double default_penalty(const Graph& g) { return 1.5 * g.n_vertices(); }

double qubit_upper_bound(const Graph& g) {
  const double v = g.n_vertices();
  if (v == 0) throw DomainError("qubit bound undefined for the empty graph");
  for (Vertex i = 0; i < g.n_vertices(); ++i) {
    if (g.degree(i) < 2) {
      throw DomainError("qubit bound requires minimum degree >= 2 (vertex " + std::to_string(i) +
                        " has degree " + std::to_string(g.degree(i)) + ")");
    }
  }
  const double arg = 2.0 * g.n_edges() / v - 1.0;
  if (arg <= 0.0) throw DomainError("qubit bound undefined: 2|E|/|V| - 1 <= 0");
  return 2.0 * v + v * std::log2(arg);
}

QubitCounts qubit_counts(const Graph& g) {
  const DegreePartition part = degree_partition(g);
  QubitCounts counts;
  counts.q_tdp = g.n_vertices();
  counts.q_dp = g.n_vertices() + 2 * static_cast<int>(part.v2.size());
  for (Vertex v : part.v_ge3) {
    const auto d = static_cast<unsigned>(g.degree(v));
    counts.q_tdp += std::bit_width(d - 1);  // floor(log2(d - 1)) + 1
    counts.q_dp += std::bit_width(d);       // floor(log2(d)) + 1
  }
  counts.gap = counts.q_dp - counts.q_tdp;
  return counts;
}

QuboMinimum qubo_min_bruteforce(const QuboModel& m) {
  const int n = m.n_vars();
  if (n > kMaxDenseVars) {
    throw ResourceError("exhaustive QUBO scan limited to " + std::to_string(kMaxDenseVars) +
                        " variables");
  }
  const std::uint64_t dim = std::uint64_t{1} << n;
  std::vector<double> values(dim);
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t k = 0; k < dim; ++k) {
    values[k] = m.evaluate_index(k);
    best = std::min(best, values[k]);
  }
  QuboMinimum result;
  result.min_value = best;
  for (std::uint64_t k = 0; k < dim; ++k) {
    if (values[k] - best <= 1e-9) result.argmins.push_back(bits_from_index(k, n));
  }
  return result;
}

Bits bits_from_index(std::uint64_t index, int n) {
  Bits x(n);
  for (int i = 0; i < n; ++i) x[i] = static_cast<std::uint8_t>((index >> (n - 1 - i)) & 1U);
  return x;
}

std::uint64_t index_from_bits(std::span<const std::uint8_t> x) {
  std::uint64_t index = 0;
  for (std::uint8_t b : x) index = (index << 1) | (b ? 1U : 0U);
  return index;
}

std::string bits_to_string(std::span<const std::uint8_t> x) {
  std::string s;
  s.reserve(x.size());
  for (std::uint8_t b : x) s.push_back(b ? '1' : '0');
  return s;
}

}  // namespace tdsqaoa
