#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "tdsqaoa/spin_model.hpp"

namespace tdsqaoa {

using Amplitude = std::complex<double>;

/// Dense n-qubit state. Basis index k has qubit 0 as its most significant bit.
class StateVector {
 public:
  StateVector() = default;
  StateVector(int n_qubits, std::vector<Amplitude> amplitudes);

  int n_qubits() const { return n_qubits_; }
  std::size_t dimension() const { return amplitudes_.size(); }
  std::span<const Amplitude> amplitudes() const { return amplitudes_; }
  std::span<Amplitude> amplitudes() { return amplitudes_; }
  const Amplitude& operator[](std::uint64_t k) const { return amplitudes_[k]; }

  double norm_squared() const;
  std::vector<double> probabilities() const;

  /// amplitude[k] *= exp(-i gamma E_k)
  void apply_cost_layer(const EnergyTable& table, double gamma);

  /// exp(-i beta X) on every qubit.
  void apply_mixer_layer(double beta);

 private:
  int n_qubits_ = 0;
  std::vector<Amplitude> amplitudes_;
};

/// Per-layer angles; gammas in [0, 2pi], betas in [0, pi], equal nonzero length.
class AngleSchedule {
 public:
  AngleSchedule(std::vector<double> gammas, std::vector<double> betas);

  int layers() const { return static_cast<int>(gammas_.size()); }
  const std::vector<double>& gammas() const { return gammas_; }
  const std::vector<double>& betas() const { return betas_; }

  /// [gamma_1..gamma_q, beta_1..beta_q]
  std::vector<double> flatten() const;
  static AngleSchedule unflatten(std::span<const double> params);

 private:
  std::vector<double> gammas_;
  std::vector<double> betas_;
};

/// Hadamard on every qubit of |0...0>; 1 <= n <= 24.
StateVector uniform_state(int n);

/// Uniform state followed by q (cost, mixer) layer pairs.
StateVector evolve(const EnergyTable& table, const AngleSchedule& schedule);

/// <psi| H_c |psi> computed from the exact amplitudes.
double expectation(const StateVector& state, const EnergyTable& table);

/// Shot-noise estimate of the expectation from `shots` measurements.
double sampled_expectation(const StateVector& state, const EnergyTable& table, int shots,
                           std::uint64_t seed);

using Counts = std::map<std::uint64_t, std::int64_t>;

/// Multinomial measurement record; deterministic for a fixed seed.
Counts sample(const StateVector& state, int shots, std::uint64_t seed);

/// Vertex-string distribution with slack bits summed out. Keys are strings of
/// length n_vertex_vars, leftmost character = vertex 0. Output is normalized.
std::map<std::string, double> marginalize_vertices(std::span<const double> probabilities,
                                                   int n_qubits, int n_vertex_vars);
std::map<std::string, double> marginalize_vertices(const Counts& counts, int n_qubits,
                                                   int n_vertex_vars);

}  // namespace tdsqaoa
