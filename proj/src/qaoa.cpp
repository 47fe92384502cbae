#include "tdsqaoa/qaoa.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "tdsqaoa/errors.hpp"

namespace tdsqaoa {

StateVector::StateVector(int n_qubits, std::vector<Amplitude> amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
  if (n_qubits_ < 0 || n_qubits_ > kMaxDenseVars) {
    throw ResourceError("statevector limited to " + std::to_string(kMaxDenseVars) + " qubits");
  }
  if (amplitudes_.size() != (std::size_t{1} << n_qubits_)) {
    throw DomainError("statevector must hold exactly 2^n amplitudes");
  }
}

double StateVector::norm_squared() const {
  double s = 0.0;
  for (const auto& a : amplitudes_) s += std::norm(a);
  return s;
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> p(amplitudes_.size());
  for (std::size_t k = 0; k < p.size(); ++k) p[k] = std::norm(amplitudes_[k]);
  return p;
}

void StateVector::apply_cost_layer(const EnergyTable& table, double gamma) {
  if (table.n_vars() != n_qubits_) {
    throw DomainError("energy table has " + std::to_string(table.n_vars()) +
                      " variables, state has " + std::to_string(n_qubits_) + " qubits");
  }
  if (gamma == 0.0) return;
  const auto energies = table.energies();
  for (std::size_t k = 0; k < amplitudes_.size(); ++k) {
    const double phase = -gamma * energies[k];
    amplitudes_[k] *= Amplitude(std::cos(phase), std::sin(phase));
  }
}

void StateVector::apply_mixer_layer(double beta) {
  if (beta == 0.0) return;
  const double c = std::cos(beta);
  const Amplitude mis(0.0, -std::sin(beta));
  const std::size_t dim = amplitudes_.size();
  for (int q = 0; q < n_qubits_; ++q) {
    const std::size_t stride = std::size_t{1} << (n_qubits_ - 1 - q);
    for (std::size_t block = 0; block < dim; block += 2 * stride) {
      for (std::size_t k = block; k < block + stride; ++k) {
        const Amplitude a0 = amplitudes_[k];
        const Amplitude a1 = amplitudes_[k + stride];
        amplitudes_[k] = c * a0 + mis * a1;
        amplitudes_[k + stride] = mis * a0 + c * a1;
      }
    }
  }
}

AngleSchedule::AngleSchedule(std::vector<double> gammas, std::vector<double> betas)
    : gammas_(std::move(gammas)), betas_(std::move(betas)) {
  if (gammas_.empty() || gammas_.size() != betas_.size()) {
    throw DomainError("angle schedule needs equal, nonzero numbers of gammas and betas");
  }
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (double g : gammas_) {
    if (!(g >= 0.0 && g <= two_pi)) throw DomainError("gamma outside [0, 2pi]");
  }
  for (double b : betas_) {
    if (!(b >= 0.0 && b <= std::numbers::pi)) throw DomainError("beta outside [0, pi]");
  }
}

std::vector<double> AngleSchedule::flatten() const {
  std::vector<double> params(gammas_);
  params.insert(params.end(), betas_.begin(), betas_.end());
  return params;
}

AngleSchedule AngleSchedule::unflatten(std::span<const double> params) {
  if (params.size() % 2 != 0) throw DomainError("parameter vector length must be even");
  const std::size_t q = params.size() / 2;
  return AngleSchedule({params.begin(), params.begin() + q}, {params.begin() + q, params.end()});
}

StateVector uniform_state(int n) {
  if (n < 1) throw DomainError("uniform state needs at least one qubit");
  if (n > kMaxDenseVars) {
    throw ResourceError("statevector limited to " + std::to_string(kMaxDenseVars) + " qubits");
  }
  const std::size_t dim = std::size_t{1} << n;
  const double a = std::pow(2.0, -0.5 * n);
  return StateVector(n, std::vector<Amplitude>(dim, Amplitude(a, 0.0)));
}

StateVector evolve(const EnergyTable& table, const AngleSchedule& schedule) {
  StateVector state = uniform_state(table.n_vars());
  for (int layer = 0; layer < schedule.layers(); ++layer) {
    state.apply_cost_layer(table, schedule.gammas()[layer]);
    state.apply_mixer_layer(schedule.betas()[layer]);
  }
  return state;
}

double expectation(const StateVector& state, const EnergyTable& table) {
  if (table.n_vars() != state.n_qubits()) throw DomainError("dimension mismatch");
  const auto amps = state.amplitudes();
  const auto energies = table.energies();
  double e = 0.0;
  for (std::size_t k = 0; k < amps.size(); ++k) e += std::norm(amps[k]) * energies[k];
  return e;
}

double sampled_expectation(const StateVector& state, const EnergyTable& table, int shots,
                           std::uint64_t seed) {
  if (table.n_vars() != state.n_qubits()) throw DomainError("dimension mismatch");
  double e = 0.0;
  for (const auto& [k, count] : sample(state, shots, seed)) e += count * table[k];
  return e / shots;
}

Counts sample(const StateVector& state, int shots, std::uint64_t seed) {
  if (shots < 1) throw DomainError("shots must be positive");
  const auto p = state.probabilities();
  std::discrete_distribution<std::uint64_t> dist(p.begin(), p.end());
  std::mt19937_64 rng(seed);
  Counts counts;
  for (int s = 0; s < shots; ++s) ++counts[dist(rng)];
  return counts;
}

namespace {

std::string prefix_string(std::uint64_t index, int n_qubits, int n_vertex_vars) {
  const std::uint64_t prefix = index >> (n_qubits - n_vertex_vars);
  std::string s(n_vertex_vars, '0');
  for (int i = 0; i < n_vertex_vars; ++i) {
    if ((prefix >> (n_vertex_vars - 1 - i)) & 1U) s[i] = '1';
  }
  return s;
}

void check_widths(int n_qubits, int n_vertex_vars) {
  if (n_vertex_vars < 0 || n_vertex_vars > n_qubits) {
    throw DomainError("vertex register wider than the state");
  }
}

void normalize(std::map<std::string, double>& dist) {
  double total = 0.0;
  for (const auto& [_, p] : dist) total += p;
  if (total <= 0.0) throw DomainError("distribution has no mass");
  for (auto& [_, p] : dist) p /= total;
}

}  // namespace

std::map<std::string, double> marginalize_vertices(std::span<const double> probabilities,
                                                   int n_qubits, int n_vertex_vars) {
  check_widths(n_qubits, n_vertex_vars);
  if (probabilities.size() != (std::size_t{1} << n_qubits)) {
    throw DomainError("probability vector length must be 2^n_qubits");
  }
  std::vector<double> by_prefix(std::size_t{1} << n_vertex_vars, 0.0);
  const int shift = n_qubits - n_vertex_vars;
  for (std::size_t k = 0; k < probabilities.size(); ++k) by_prefix[k >> shift] += probabilities[k];
  std::map<std::string, double> dist;
  for (std::size_t prefix = 0; prefix < by_prefix.size(); ++prefix) {
    dist.emplace(prefix_string(prefix, n_vertex_vars, n_vertex_vars), by_prefix[prefix]);
  }
  normalize(dist);
  return dist;
}

std::map<std::string, double> marginalize_vertices(const Counts& counts, int n_qubits,
                                                   int n_vertex_vars) {
  check_widths(n_qubits, n_vertex_vars);
  std::map<std::string, double> dist;
  for (const auto& [k, c] : counts) {
    dist[prefix_string(k, n_qubits, n_vertex_vars)] += static_cast<double>(c);
  }
  normalize(dist);
  return dist;
}

}  // namespace tdsqaoa
