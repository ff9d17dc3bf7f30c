#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "roa/qubo.hpp"

namespace roa {

using Amplitude = std::complex<double>;

// Dense 2^N amplitude vector. Basis index bit q holds qubit (= QUBO
// variable) q.
class StateVector {
 public:
  // |0...0>
  explicit StateVector(std::size_t num_qubits);
  StateVector(std::size_t num_qubits, std::vector<Amplitude> amplitudes);

  static StateVector uniform(std::size_t num_qubits);
  static StateVector basis(std::size_t num_qubits, std::size_t index);

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return amps_.size(); }
  std::span<Amplitude> amplitudes() { return amps_; }
  std::span<const Amplitude> amplitudes() const { return amps_; }
  double probability(std::size_t index) const { return std::norm(amps_[index]); }
  double norm() const;

 private:
  std::size_t num_qubits_;
  std::vector<Amplitude> amps_;
};

// Multiplies amplitude b by exp(-i gamma E(b)).
void apply_cost_phase(StateVector& state, std::span<const double> energies, double gamma);
void apply_cost_phase(StateVector& state, const QuboModel& qubo, double gamma);

// exp(-i beta X) on every qubit, or only on the listed qubits.
void apply_x_mixer(StateVector& state, double beta);
void apply_x_mixer(StateVector& state, double beta, std::span<const std::size_t> qubits);

// exp(-i beta (X_a X_b + Y_a Y_b) / 2) on one qubit pair: swaps |01> and
// |10> with amplitudes cos(beta), -i sin(beta); leaves |00>, |11> alone.
void apply_xy_rotation(StateVector& state, double beta, std::size_t a, std::size_t b);

// For each register, XY rotations on the ring (r0,r1), (r1,r2), ...,
// (r_last,r0). A two-qubit register gets a single rotation. Throws
// InvalidInput when registers overlap or name a qubit out of range.
void apply_xy_mixer(StateVector& state, double beta,
                    const std::vector<std::vector<std::size_t>>& registers);

double expectation(const StateVector& state, std::span<const double> energies);
double expectation(const StateVector& state, const QuboModel& qubo);

// Probability mass on basis states where some register is not one-hot.
double one_hot_leakage(const StateVector& state,
                       const std::vector<std::vector<std::size_t>>& registers);

// Draws basis indices from |amp|^2; deterministic in seed.
std::vector<std::size_t> sample(const StateVector& state, std::size_t shots, std::uint64_t seed);

Bits index_to_bits(std::size_t index, std::size_t num_qubits);
std::size_t bits_to_index(std::span<const std::uint8_t> bits);

}  // namespace roa
