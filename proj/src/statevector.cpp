#include "roa/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "roa/errors.hpp"
#include "roa/rng.hpp"

namespace roa {

namespace {

void check_qubit(const StateVector& state, std::size_t q) {
  if (q >= state.num_qubits()) {
    throw InvalidInput("qubit " + std::to_string(q) + " out of range for " +
                       std::to_string(state.num_qubits()) + "-qubit state");
  }
}

void rx_like(std::span<Amplitude> amps, std::size_t q, double c, Amplitude minus_i_s) {
  const std::size_t stride = std::size_t{1} << q;
  for (std::size_t base = 0; base < amps.size(); base += 2 * stride) {
    for (std::size_t k = base; k < base + stride; ++k) {
      const Amplitude a0 = amps[k];
      const Amplitude a1 = amps[k + stride];
      amps[k] = c * a0 + minus_i_s * a1;
      amps[k + stride] = minus_i_s * a0 + c * a1;
    }
  }
}

}  // namespace

StateVector::StateVector(std::size_t num_qubits) : StateVector(basis(num_qubits, 0)) {}

StateVector::StateVector(std::size_t num_qubits, std::vector<Amplitude> amplitudes)
    : num_qubits_(num_qubits), amps_(std::move(amplitudes)) {
  if (num_qubits > 30) throw InvalidInput("statevector limited to 30 qubits");
  if (amps_.size() != (std::size_t{1} << num_qubits)) {
    throw InvalidInput("amplitude count does not match 2^N");
  }
}

StateVector StateVector::uniform(std::size_t num_qubits) {
  const std::size_t dim = std::size_t{1} << num_qubits;
  return StateVector(num_qubits,
                     std::vector<Amplitude>(dim, Amplitude(1.0 / std::sqrt(double(dim)), 0.0)));
}

StateVector StateVector::basis(std::size_t num_qubits, std::size_t index) {
  if (num_qubits > 30) throw InvalidInput("statevector limited to 30 qubits");
  std::vector<Amplitude> amps(std::size_t{1} << num_qubits);
  if (index >= amps.size()) throw InvalidInput("basis index out of range");
  amps[index] = 1.0;
  return StateVector(num_qubits, std::move(amps));
}

double StateVector::norm() const {
  double total = 0.0;
  for (const auto& a : amps_) total += std::norm(a);
  return std::sqrt(total);
}

void apply_cost_phase(StateVector& state, std::span<const double> energies, double gamma) {
  if (energies.size() != state.dimension()) {
    throw InvalidInput("energy table does not match the state dimension");
  }
  auto amps = state.amplitudes();
  for (std::size_t b = 0; b < amps.size(); ++b) amps[b] *= std::polar(1.0, -gamma * energies[b]);
}

void apply_cost_phase(StateVector& state, const QuboModel& qubo, double gamma) {
  if (qubo.n_vars != state.num_qubits()) {
    throw InvalidInput("QUBO has " + std::to_string(qubo.n_vars) + " variables, state has " +
                       std::to_string(state.num_qubits()) + " qubits");
  }
  apply_cost_phase(state, all_energies(qubo), gamma);
}

void apply_x_mixer(StateVector& state, double beta) {
  const double c = std::cos(beta);
  const Amplitude mis(0.0, -std::sin(beta));
  for (std::size_t q = 0; q < state.num_qubits(); ++q) rx_like(state.amplitudes(), q, c, mis);
}

void apply_x_mixer(StateVector& state, double beta, std::span<const std::size_t> qubits) {
  const double c = std::cos(beta);
  const Amplitude mis(0.0, -std::sin(beta));
  for (std::size_t q : qubits) {
    check_qubit(state, q);
    rx_like(state.amplitudes(), q, c, mis);
  }
}

void apply_xy_rotation(StateVector& state, double beta, std::size_t a, std::size_t b) {
  check_qubit(state, a);
  check_qubit(state, b);
  if (a == b) throw InvalidInput("XY rotation needs two distinct qubits");
  const std::size_t ma = std::size_t{1} << a;
  const std::size_t mb = std::size_t{1} << b;
  const double c = std::cos(beta);
  const Amplitude mis(0.0, -std::sin(beta));
  auto amps = state.amplitudes();
  for (std::size_t k = 0; k < amps.size(); ++k) {
    // Visit each (|..1_a..0_b..>, |..0_a..1_b..>) pair once.
    if ((k & ma) && !(k & mb)) {
      const std::size_t partner = (k ^ ma) | mb;
      const Amplitude u = amps[k];
      const Amplitude v = amps[partner];
      amps[k] = c * u + mis * v;
      amps[partner] = mis * u + c * v;
    }
  }
}

void apply_xy_mixer(StateVector& state, double beta,
                    const std::vector<std::vector<std::size_t>>& registers) {
  std::vector<bool> used(state.num_qubits(), false);
  for (const auto& reg : registers) {
    for (std::size_t q : reg) {
      check_qubit(state, q);
      if (used[q]) throw InvalidInput("XY mixer registers overlap at qubit " + std::to_string(q));
      used[q] = true;
    }
  }
  for (const auto& reg : registers) {
    if (reg.size() < 2) continue;
    if (reg.size() == 2) {
      apply_xy_rotation(state, beta, reg[0], reg[1]);
      continue;
    }
    for (std::size_t k = 0; k < reg.size(); ++k) {
      apply_xy_rotation(state, beta, reg[k], reg[(k + 1) % reg.size()]);
    }
  }
}

double expectation(const StateVector& state, std::span<const double> energies) {
  if (energies.size() != state.dimension()) {
    throw InvalidInput("energy table does not match the state dimension");
  }
  double total = 0.0;
  const auto amps = state.amplitudes();
  for (std::size_t b = 0; b < amps.size(); ++b) total += std::norm(amps[b]) * energies[b];
  return total;
}

double expectation(const StateVector& state, const QuboModel& qubo) {
  if (qubo.n_vars != state.num_qubits()) throw InvalidInput("QUBO and state sizes differ");
  return expectation(state, all_energies(qubo));
}

double one_hot_leakage(const StateVector& state,
                       const std::vector<std::vector<std::size_t>>& registers) {
  std::vector<std::size_t> masks;
  for (const auto& reg : registers) {
    std::size_t mask = 0;
    for (std::size_t q : reg) {
      check_qubit(state, q);
      mask |= std::size_t{1} << q;
    }
    masks.push_back(mask);
  }
  double leaked = 0.0;
  const auto amps = state.amplitudes();
  for (std::size_t b = 0; b < amps.size(); ++b) {
    const bool feasible = std::all_of(masks.begin(), masks.end(),
                                      [b](std::size_t m) { return std::popcount(b & m) == 1; });
    if (!feasible) leaked += std::norm(amps[b]);
  }
  return leaked;
}

std::vector<std::size_t> sample(const StateVector& state, std::size_t shots, std::uint64_t seed) {
  std::vector<std::size_t> out;
  if (shots == 0) return out;
  std::vector<double> cumulative(state.dimension());
  double running = 0.0;
  for (std::size_t b = 0; b < cumulative.size(); ++b) {
    running += state.probability(b);
    cumulative[b] = running;
  }
  Rng rng(seed);
  out.reserve(shots);
  for (std::size_t s = 0; s < shots; ++s) {
    const double u = rng.uniform() * running;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    std::size_t idx = it - cumulative.begin();
    // Rounding can push u onto the final total; take the last populated state.
    if (idx == cumulative.size()) {
      do {
        --idx;
      } while (idx > 0 && state.probability(idx) == 0.0);
    }
    out.push_back(idx);
  }
  return out;
}

Bits index_to_bits(std::size_t index, std::size_t num_qubits) {
  Bits bits(num_qubits);
  for (std::size_t q = 0; q < num_qubits; ++q) bits[q] = (index >> q) & 1U;
  return bits;
}

std::size_t bits_to_index(std::span<const std::uint8_t> bits) {
  std::size_t index = 0;
  for (std::size_t q = 0; q < bits.size(); ++q) {
    if (bits[q]) index |= std::size_t{1} << q;
  }
  return index;
}

}  // namespace roa
