#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "tdsqaoa/errors.hpp"
#include "tdsqaoa/spin_model.hpp"

using namespace tdsqaoa;

namespace {

QuboModel random_model(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coef(-5.0, 5.0);
  std::bernoulli_distribution keep(0.5);
  QuboBuilder b(n);
  b.add_constant(coef(rng));
  for (int i = 0; i < n; ++i) {
    if (keep(rng)) b.add_linear(i, coef(rng));
    for (int j = i + 1; j < n; ++j) if (keep(rng)) b.add_quadratic(i, j, coef(rng));
  }
  return b.build();
}

}  // namespace

TEST_CASE("spin substitution of single terms") {
  QuboBuilder lin(1);
  lin.add_linear(0, 1.0);
  const SpinModel s1 = qubo_to_spin(lin.build());
  CHECK(s1.offset == 0.5);
  CHECK(s1.fields.at(0) == 0.5);
  CHECK(s1.couplings.empty());

  QuboBuilder quad(2);
  quad.add_quadratic(0, 1, 1.0);
  const SpinModel s2 = qubo_to_spin(quad.build());
  CHECK(s2.offset == 0.25);
  CHECK(s2.fields.at(0) == 0.25);
  CHECK(s2.fields.at(1) == 0.25);
  CHECK(s2.couplings.at({0, 1}) == 0.25);
}

TEST_CASE("spin energy equals QUBO energy on the benchmark") {
  const QuboModel m = compile_tdp_qubo(benchmark_graph(), 9.0);
  const SpinModel s = qubo_to_spin(m);
  for (std::uint64_t k = 0; k < 1024; ++k) {
    const Bits x = bits_from_index(k, 10);
    CHECK(std::abs(ising_energy(s, spins_from_bits(x)) - m.evaluate(x)) < 1e-9);
  }
}

TEST_CASE("spin equivalence on random models") {
  std::mt19937_64 rng(3);
  for (int n = 1; n <= 12; ++n) {
    const QuboModel m = random_model(n, rng);
    const SpinModel s = qubo_to_spin(m);
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k) {
      const Bits x = bits_from_index(k, n);
      REQUIRE(std::abs(ising_energy(s, spins_from_bits(x)) - m.evaluate(x)) < 1e-9);
    }
  }
  CHECK_THROWS_AS(ising_energy(qubo_to_spin(random_model(3, rng)), std::vector<std::int8_t>{1}),
                  DomainError);
}

TEST_CASE("energy table") {
  QuboBuilder one(1);
  one.add_linear(0, 1.0);
  const EnergyTable t1 = build_energy_table(one.build());
  CHECK(t1.size() == 2);
  CHECK(t1[0] == 0.0);
  CHECK(t1[1] == 1.0);

  const QuboModel m = compile_tdp_qubo(benchmark_graph(), 9.0);
  const EnergyTable t = build_energy_table(m);
  CHECK(t[0b1000110000] == 3.0);
  CHECK(t.min() == 3.0);

  std::vector<std::uint64_t> minima;
  for (std::uint64_t k = 0; k < t.size(); ++k) if (t[k] == t.min()) minima.push_back(k);
  std::vector<std::uint64_t> brute;
  for (const Bits& x : qubo_min_bruteforce(m).argmins) brute.push_back(index_from_bits(x));
  CHECK(minima == brute);
  // Four minimum sets; slack value 1 has two encodings for each degree-3 vertex in the set.
  std::set<std::uint64_t> projections;
  for (std::uint64_t k : minima) projections.insert(k >> 4);
  CHECK(projections == std::set<std::uint64_t>{0b111000, 0b100011, 0b011010, 0b001011});
}

TEST_CASE("gray-code table agrees with direct evaluation") {
  std::mt19937_64 rng(9);
  for (int n = 1; n <= 12; ++n) {
    const QuboModel m = random_model(n, rng);
    const EnergyTable a = build_energy_table(m);
    const EnergyTable b = build_energy_table_gray(m);
    for (std::uint64_t k = 0; k < a.size(); ++k) REQUIRE(std::abs(a[k] - b[k]) < 1e-9);
  }
  const QuboModel p = compile_tdp_qubo(benchmark_graph(), 9.0);
  const EnergyTable a = build_energy_table(p);
  const EnergyTable b = build_energy_table_gray(p);
  CHECK(std::equal(a.energies().begin(), a.energies().end(), b.energies().begin()));
}

TEST_CASE("oversized tables are refused") {
  QuboBuilder b(25);
  CHECK_THROWS_AS(build_energy_table(b.build()), ResourceError);
}
