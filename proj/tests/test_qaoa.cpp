#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "roa/qaoa.hpp"

namespace {

roa::QuboModel identity_model() {
  roa::QuboModel q;
  q.n_vars = 1;
  q.linear[0] = 1.0;
  return q;
}

}  // namespace

TEST_CASE("one-layer single-qubit expectation matches the closed form") {
  // E = x from |+>: <E>(gamma, beta) = (1 + sin(2 beta) sin(gamma)) / 2.
  roa::CircuitSpec spec;
  spec.num_qubits = 1;
  spec.energies = {0.0, 1.0};
  spec.initial = roa::StateVector::uniform(1);
  for (int gi = 0; gi <= 20; ++gi) {
    for (int bi = 0; bi <= 20; ++bi) {
      const double gamma = -3.2 + 0.32 * gi, beta = -1.6 + 0.16 * bi;
      const double g[] = {gamma}, b[] = {beta};
      const double got = roa::expectation(roa::run_circuit(spec, g, b), spec.energies);
      CHECK(std::abs(got - 0.5 * (1.0 + std::sin(2.0 * beta) * std::sin(gamma))) <= 1e-6);
    }
  }
}

TEST_CASE("zero layers leave the uniform state") {
  const roa::Instance inst = oracle::seeded(2, 0);
  const roa::QuboModel q = roa::build_qubo(inst, roa::default_penalties(inst));
  roa::CircuitSpec spec;
  spec.num_qubits = q.n_vars;
  spec.energies = roa::all_energies(q);
  spec.initial = roa::StateVector::uniform(q.n_vars);
  const roa::StateVector s = roa::run_circuit(spec, {}, {});
  const double p = 1.0 / static_cast<double>(s.dimension());
  for (std::size_t b = 0; b < s.dimension(); ++b) CHECK(s.probability(b) == doctest::Approx(p));

  roa::QaoaParams params;
  params.layers = 0;
  const roa::QaoaResult r = roa::solve_qaoa(q, params);
  CHECK(r.evaluations == 0);
  CHECK(r.optimized_expectation == r.initial_expectation);
  // A uniform 4096-shot sample of this size almost surely hits a low state.
  CHECK(*r.solve.energy <= roa::energy(q, roa::Bits(q.n_vars, 0)));
}

TEST_CASE("QAOA improves on zero angles and reports consistent data") {
  const roa::Instance inst = oracle::seeded(2, 3);
  const roa::PenaltyWeights pw = roa::default_penalties(inst);
  const roa::QuboModel q = roa::build_qubo(inst, pw);
  roa::QaoaParams params;
  params.seed = 3;
  const roa::QaoaResult r = roa::solve_qaoa(q, params);
  CHECK(r.optimized_expectation <= r.initial_expectation);
  CHECK(r.max_norm_drift <= 1e-9);
  CHECK(r.gammas.size() == 3);
  CHECK(r.betas.size() == 3);
  CHECK(r.evaluations <= params.max_evals);
  CHECK(r.samples == params.shots);
  CHECK(std::abs(*r.solve.energy - roa::energy(q, *r.solve.bits)) <= 1e-9);
  CHECK(r.solve.assignment == roa::decode(*r.solve.bits, q.layout));
  const roa::QaoaResult again = roa::solve_qaoa(q, params);
  CHECK(again.solve.bits == r.solve.bits);
  CHECK(again.optimized_expectation == r.optimized_expectation);
}

TEST_CASE("QAOAnsatz samples stay one-hot") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const roa::Instance inst = oracle::seeded(2, seed);
    roa::QaoaParams params;
    params.seed = seed;
    params.max_evals = 40;
    const roa::QaoaResult r = roa::solve_qaoansatz(inst, roa::default_penalties(inst), params);
    CHECK(r.leakage <= 1e-9);
    CHECK(r.one_hot_samples == r.samples);
    for (std::size_t j = 0; j < 2; ++j) {
      CHECK(r.solve.assignment(0, j) + r.solve.assignment(1, j) == 1);
    }
  }
}

TEST_CASE("one-hot product state") {
  const std::vector<std::vector<std::size_t>> regs{{0, 1, 2}};
  const std::vector<std::size_t> free{3};
  const roa::StateVector s = roa::one_hot_product_state(4, regs, free);
  for (std::size_t b = 0; b < 16; ++b) {
    const bool one_hot = std::popcount(b & 7U) == 1;
    CHECK(s.probability(b) == doctest::Approx(one_hot ? 1.0 / 6.0 : 0.0));
  }
  CHECK_THROWS_AS(roa::one_hot_product_state(4, regs, {}), roa::InvalidInput);
}

TEST_CASE("parameter and size errors") {
  roa::QaoaParams params;
  params.max_qubits = 3;
  const roa::Instance inst = oracle::seeded(2, 0);
  const roa::QuboModel q = roa::build_qubo(inst, roa::default_penalties(inst));
  CHECK_THROWS_AS(roa::solve_qaoa(q, params), roa::InvalidInput);
  CHECK_THROWS_AS(roa::solve_qaoansatz(inst, roa::default_penalties(inst), params),
                  roa::InvalidInput);
  roa::QaoaParams bad;
  bad.gammas = {0.1};
  CHECK_THROWS_AS(roa::solve_qaoa(identity_model(), bad), roa::InvalidConfig);
}

TEST_CASE("a model without a layout still solves") {
  roa::QaoaParams params;
  params.layers = 1;
  const roa::QaoaResult r = roa::solve_qaoa(identity_model(), params);
  CHECK(*r.solve.energy == 0.0);
  CHECK(r.solve.bits == roa::Bits{0});
}
