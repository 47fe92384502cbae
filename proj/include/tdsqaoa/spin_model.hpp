#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "tdsqaoa/qubo.hpp"

namespace tdsqaoa {

/// Ising form offset + sum h_i s_i + sum J_ij s_i s_j over spins s_i = 2 x_i - 1.
struct SpinModel {
  int n_vars = 0;
  double offset = 0.0;
  std::map<int, double> fields;                    // h
  std::map<std::pair<int, int>, double> couplings; // J, keys i < j
};

SpinModel qubo_to_spin(const QuboModel& m);

/// Energy of a spin configuration, each entry +1 or -1.
double ising_energy(const SpinModel& model, std::span<const std::int8_t> spins);

/// Spins for a 0/1 assignment under s = 2x - 1.
std::vector<std::int8_t> spins_from_bits(std::span<const std::uint8_t> x);

/// Diagonal of the cost Hamiltonian: one energy per computational basis state.
class EnergyTable {
 public:
  EnergyTable() = default;
  EnergyTable(int n_vars, std::vector<double> energies);

  int n_vars() const { return n_vars_; }
  std::size_t size() const { return energies_.size(); }
  std::span<const double> energies() const { return energies_; }
  double operator[](std::uint64_t index) const { return energies_[index]; }
  double min() const;
  double mean() const;

 private:
  int n_vars_ = 0;
  std::vector<double> energies_;
};

/// Evaluates the model at every basis state; index k holds the value at
/// bits_from_index(k, n). n_vars <= 24, else ResourceError.
EnergyTable build_energy_table(const QuboModel& m);

/// Same table built by Gray-code traversal with incremental single-bit updates.
EnergyTable build_energy_table_gray(const QuboModel& m);

}  // namespace tdsqaoa
