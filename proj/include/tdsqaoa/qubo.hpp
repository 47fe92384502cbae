#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tdsqaoa/graph.hpp"

namespace tdsqaoa {

/// Assignment of 0/1 values; element i is variable i.
using Bits = std::vector<std::uint8_t>;

/// Binary expansion of one constraint's slack S_i in [0, |N(i)| - 1].
struct SlackGroup {
  Vertex vertex = 0;
  int first_index = 0;             // slack variables are [first_index, first_index + size)
  std::vector<int> coefficients;   // weight of each slack bit

  int size() const { return static_cast<int>(coefficients.size()); }
};

/// Variables 0..n_vertex_vars-1 are vertices; slack groups follow in ascending vertex order.
struct VariableRegistry {
  int n_vertex_vars = 0;
  std::vector<SlackGroup> slack_groups;

  int total_vars() const;
};

/// Quadratic pseudo-Boolean polynomial: constant + sum c_i x_i + sum c_ij x_i x_j (i < j).
class QuboModel {
 public:
  using Pair = std::pair<int, int>;

  QuboModel() = default;
  QuboModel(int n_vars, double constant, std::map<int, double> linear,
            std::map<Pair, double> quadratic, double penalty, VariableRegistry registry);

  int n_vars() const { return n_vars_; }
  double constant() const { return constant_; }
  const std::map<int, double>& linear() const { return linear_; }
  const std::map<Pair, double>& quadratic() const { return quadratic_; }
  double penalty() const { return penalty_; }
  const VariableRegistry& registry() const { return registry_; }

  /// Throws DomainError when x.size() != n_vars().
  double evaluate(std::span<const std::uint8_t> x) const;

  /// Value at the basis state with the given integer index (leftmost bit = variable 0).
  double evaluate_index(std::uint64_t index) const;

 private:
  struct QuadTerm {
    int i;
    int j;
    double c;
  };

  int n_vars_ = 0;
  double constant_ = 0.0;
  std::map<int, double> linear_;
  std::map<Pair, double> quadratic_;
  double penalty_ = 0.0;
  VariableRegistry registry_;

  // Flattened copies of linear_/quadratic_ in key order, used by evaluate().
  std::vector<std::pair<int, double>> linear_terms_;
  std::vector<QuadTerm> quad_terms_;
};

/// Accumulates terms and merges like terms; x_i * x_i is folded into x_i.
class QuboBuilder {
 public:
  explicit QuboBuilder(int n_vars) : n_vars_(n_vars) {}

  void add_constant(double c) { constant_ += c; }
  void add_linear(int i, double c);
  void add_quadratic(int i, int j, double c);

  /// Adds weight * (offset + sum_k coeff_k x_{var_k})^2, expanded.
  void add_squared_form(double weight, double offset,
                        const std::vector<std::pair<int, double>>& terms);

  QuboModel build(double penalty = 0.0, VariableRegistry registry = {}) const;

 private:
  void check(int i) const;

  int n_vars_;
  double constant_ = 0.0;
  std::map<int, double> linear_;
  std::map<QuboModel::Pair, double> quadratic_;
};

/// Binary weights encoding a slack in [0, n - 1]; n >= 3.
std::vector<int> slack_coefficients(int n);

/// Penalty form of the TDS covering constraints. Throws InfeasibleError on isolated vertices.
QuboModel compile_tdp_qubo(const Graph& g, double penalty);

/// Default punishment coefficient, 1.5 * |V|.
double default_penalty(const Graph& g);

/// 2|V| + |V| log2(2|E|/|V| - 1). Throws DomainError when min degree < 2
/// or the log argument is nonpositive.
double qubit_upper_bound(const Graph& g);

struct QubitCounts {
  int q_tdp = 0;
  int q_dp = 0;
  int gap = 0;
};

QubitCounts qubit_counts(const Graph& g);

struct QuboMinimum {
  double min_value = 0.0;
  std::vector<Bits> argmins;  // ascending basis index
};

/// Exhaustive scan over all 2^n assignments; n <= 24. Values within 1e-9 of the
/// minimum count as ties.
QuboMinimum qubo_min_bruteforce(const QuboModel& m);

Bits bits_from_index(std::uint64_t index, int n);
std::uint64_t index_from_bits(std::span<const std::uint8_t> x);

/// "100011" style rendering, leftmost character = variable 0.
std::string bits_to_string(std::span<const std::uint8_t> x);

}  // namespace tdsqaoa
