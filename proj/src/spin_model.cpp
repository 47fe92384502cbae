#include "tdsqaoa/spin_model.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

#include "tdsqaoa/errors.hpp"

namespace tdsqaoa {

SpinModel qubo_to_spin(const QuboModel& m) {
  SpinModel s;
  s.n_vars = m.n_vars();
  s.offset = m.constant();
  // c x_i = c/2 s_i + c/2
  for (const auto& [i, c] : m.linear()) {
    s.fields[i] += c / 2.0;
    s.offset += c / 2.0;
  }
  // c x_i x_j = c/4 (s_i s_j + s_i + s_j + 1)
  for (const auto& [key, c] : m.quadratic()) {
    s.couplings[key] += c / 4.0;
    s.fields[key.first] += c / 4.0;
    s.fields[key.second] += c / 4.0;
    s.offset += c / 4.0;
  }
  return s;
}

double ising_energy(const SpinModel& model, std::span<const std::int8_t> spins) {
  if (static_cast<int>(spins.size()) != model.n_vars) {
    throw DomainError("spin configuration length does not match the model");
  }
  double e = model.offset;
  for (const auto& [i, h] : model.fields) e += h * spins[i];
  for (const auto& [key, j] : model.couplings) e += j * spins[key.first] * spins[key.second];
  return e;
}

std::vector<std::int8_t> spins_from_bits(std::span<const std::uint8_t> x) {
  std::vector<std::int8_t> s(x.size());
  std::transform(x.begin(), x.end(), s.begin(),
                 [](std::uint8_t b) { return static_cast<std::int8_t>(b ? 1 : -1); });
  return s;
}

EnergyTable::EnergyTable(int n_vars, std::vector<double> energies)
    : n_vars_(n_vars), energies_(std::move(energies)) {
  if (n_vars_ < 0 || n_vars_ > kMaxDenseVars ||
      energies_.size() != (std::size_t{1} << n_vars_)) {
    throw DomainError("energy table must hold exactly 2^n_vars entries");
  }
}

double EnergyTable::min() const { return *std::min_element(energies_.begin(), energies_.end()); }

double EnergyTable::mean() const {
  return std::accumulate(energies_.begin(), energies_.end(), 0.0) /
         static_cast<double>(energies_.size());
}

namespace {

void check_size(const QuboModel& m) {
  if (m.n_vars() > kMaxDenseVars) {
    throw ResourceError("energy table needs 2^" + std::to_string(m.n_vars()) +
                        " entries; limit is 2^" + std::to_string(kMaxDenseVars));
  }
}

}  // namespace

EnergyTable build_energy_table(const QuboModel& m) {
  check_size(m);
  const std::uint64_t dim = std::uint64_t{1} << m.n_vars();
  std::vector<double> energies(dim);
  for (std::uint64_t k = 0; k < dim; ++k) energies[k] = m.evaluate_index(k);
  return EnergyTable(m.n_vars(), std::move(energies));
}

EnergyTable build_energy_table_gray(const QuboModel& m) {
  check_size(m);
  const int n = m.n_vars();
  const std::uint64_t dim = std::uint64_t{1} << n;

  std::vector<double> lin(n, 0.0);
  for (const auto& [i, c] : m.linear()) lin[i] = c;
  std::vector<std::vector<std::pair<int, double>>> nbrs(n);
  for (const auto& [key, c] : m.quadratic()) {
    nbrs[key.first].emplace_back(key.second, c);
    nbrs[key.second].emplace_back(key.first, c);
  }

  std::vector<double> energies(dim);
  Bits x(n, 0);
  double e = m.constant();
  energies[0] = e;
  for (std::uint64_t step = 1; step < dim; ++step) {
    // Gray code g(step) differs from g(step - 1) in bit position ctz(step).
    const int pos = std::countr_zero(step);
    const int var = n - 1 - pos;
    double delta = lin[var];
    for (const auto& [other, c] : nbrs[var]) {
      if (x[other]) delta += c;
    }
    if (x[var]) {
      e -= delta;
      x[var] = 0;
    } else {
      e += delta;
      x[var] = 1;
    }
    energies[step ^ (step >> 1)] = e;
  }
  return EnergyTable(n, std::move(energies));
}

}  // namespace tdsqaoa
