#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "roa/cobyla.hpp"
#include "roa/qubo.hpp"
#include "roa/solve_result.hpp"
#include "roa/statevector.hpp"

namespace roa {

struct QaoaParams {
  int layers = 3;
  // Starting angles; empty means all zero. Gammas are in units of
  // 1 / energy_scale (see QaoaResult).
  std::vector<double> gammas;
  std::vector<double> betas;
  int max_evals = 150;
  std::size_t shots = 4096;
  std::uint64_t seed = 0;
  std::size_t max_qubits = 24;
  double rho_begin = 0.5;
  double rho_end = 1e-4;
};

struct QaoaResult {
  // bits, energy and (when the model carries a layout) assignment are set.
  SolveResult solve;
  std::vector<double> gammas;  // optimised, in scaled units
  std::vector<double> betas;
  // Cost-phase angles are gamma / energy_scale, where energy_scale is the
  // standard deviation of the basis energies over the starting state.
  double energy_scale = 1.0;
  double initial_expectation = 0.0;
  double optimized_expectation = 0.0;
  int evaluations = 0;
  // Largest |norm - 1| over every circuit run.
  double max_norm_drift = 0.0;
  // Probability outside the one-hot-per-order subspace of the final state.
  double leakage = 0.0;
  // Sampled bitstrings whose order registers are all one-hot.
  std::size_t one_hot_samples = 0;
  std::size_t samples = 0;
};

enum class MixerKind { kTransverseField, kXyRing };

// Problem-specific pieces of a layered circuit.
struct CircuitSpec {
  std::size_t num_qubits = 0;
  std::vector<double> energies;  // basis-state energies
  MixerKind mixer = MixerKind::kTransverseField;
  std::vector<std::vector<std::size_t>> registers;  // XY registers
  std::vector<std::size_t> free_qubits;             // X-mixed when mixer is XY
  StateVector initial{0};
};

// Prepares the initial state, then applies p alternating (cost phase,
// mixer) layers with the raw angles given.
StateVector run_circuit(const CircuitSpec& spec, std::span<const double> gammas,
                        std::span<const double> betas);

// Tensor product over registers of the uniform one-hot (W) state, with |+>
// on every free qubit.
StateVector one_hot_product_state(std::size_t num_qubits,
                                  const std::vector<std::vector<std::size_t>>& registers,
                                  std::span<const std::size_t> free_qubits);

std::vector<std::vector<std::size_t>> order_registers(const VarLayout& layout);

// Standard QAOA from |+>^N with the transverse-field mixer. Throws
// InvalidInput when the model exceeds params.max_qubits.
QaoaResult solve_qaoa(const QuboModel& qubo, const QaoaParams& params);

// QAOAnsatz: assignment penalty dropped from the QUBO, one-hot initial
// state on every order register, XY ring mixer on the registers and a
// transverse-field mixer on the slack qubits.
QaoaResult solve_qaoansatz(const Instance& instance, const PenaltyWeights& penalties,
                           const QaoaParams& params);

}  // namespace roa
