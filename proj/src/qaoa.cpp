#include "roa/qaoa.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <string>

namespace roa {

namespace {

void check_budget(std::size_t n_vars, const QaoaParams& params) {
  if (n_vars > params.max_qubits) {
    throw InvalidInput("QUBO needs " + std::to_string(n_vars) + " qubits, limit is " +
                       std::to_string(params.max_qubits));
  }
  if (params.layers < 0) throw InvalidConfig("QAOA layer count must be non-negative");
  const auto p = static_cast<std::size_t>(params.layers);
  if ((!params.gammas.empty() && params.gammas.size() != p) ||
      (!params.betas.empty() && params.betas.size() != p)) {
    throw InvalidConfig("QAOA needs one gamma and one beta per layer");
  }
}

double energy_spread(const StateVector& state, std::span<const double> energies) {
  const double mean = expectation(state, energies);
  double var = 0.0;
  for (std::size_t b = 0; b < energies.size(); ++b) {
    const double d = energies[b] - mean;
    var += state.probability(b) * d * d;
  }
  const double sd = std::sqrt(var);
  return sd > 0.0 ? sd : 1.0;
}

bool registers_one_hot(std::size_t index, const std::vector<std::size_t>& masks) {
  for (std::size_t m : masks) {
    if (std::popcount(index & m) != 1) return false;
  }
  return true;
}

QaoaResult optimise_and_sample(const CircuitSpec& spec, const QaoaParams& params,
                               const VarLayout* layout) {
  const auto start = std::chrono::steady_clock::now();
  const auto p = static_cast<std::size_t>(params.layers);
  QaoaResult out;
  out.energy_scale = energy_spread(spec.initial, spec.energies);

  std::vector<double> x0(2 * p, 0.0);
  for (std::size_t l = 0; l < p; ++l) {
    if (!params.gammas.empty()) x0[l] = params.gammas[l];
    if (!params.betas.empty()) x0[p + l] = params.betas[l];
  }

  auto circuit = [&](std::span<const double> x) {
    std::vector<double> gammas(p), betas(p);
    for (std::size_t l = 0; l < p; ++l) {
      gammas[l] = x[l] / out.energy_scale;
      betas[l] = x[p + l];
    }
    StateVector state = run_circuit(spec, gammas, betas);
    out.max_norm_drift = std::max(out.max_norm_drift, std::abs(state.norm() - 1.0));
    return state;
  };

  out.initial_expectation = expectation(circuit(x0), spec.energies);
  std::vector<double> best = x0;
  double best_value = out.initial_expectation;
  if (p > 0) {
    const CobylaResult opt = minimize_cobyla(
        [&](std::span<const double> x) { return expectation(circuit(x), spec.energies); }, x0,
        CobylaOptions{params.rho_begin, params.rho_end, params.max_evals});
    out.evaluations = opt.evaluations;
    if (opt.value <= best_value) {
      best = opt.x;
      best_value = opt.value;
    }
  }
  out.optimized_expectation = best_value;
  out.gammas.assign(best.begin(), best.begin() + p);
  out.betas.assign(best.begin() + p, best.end());

  const StateVector final_state = circuit(best);
  out.leakage = layout ? one_hot_leakage(final_state, order_registers(*layout)) : 0.0;

  std::vector<std::size_t> masks;
  if (layout) {
    for (const auto& reg : order_registers(*layout)) {
      std::size_t m = 0;
      for (std::size_t q : reg) m |= std::size_t{1} << q;
      masks.push_back(m);
    }
  }
  const auto shots = sample(final_state, params.shots, params.seed);
  out.samples = shots.size();
  std::size_t chosen = shots.empty() ? 0 : shots.front();
  for (std::size_t idx : shots) {
    if (layout && registers_one_hot(idx, masks)) ++out.one_hot_samples;
    const double e = spec.energies[idx];
    if (e < spec.energies[chosen] || (e == spec.energies[chosen] && idx < chosen)) chosen = idx;
  }
  out.solve.bits = index_to_bits(chosen, spec.num_qubits);
  out.solve.energy = spec.energies[chosen];
  if (layout) out.solve.assignment = decode(*out.solve.bits, *layout);
  out.solve.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

bool has_layout(const QuboModel& qubo) {
  return qubo.layout.total_bits == qubo.n_vars && qubo.layout.assignment_bits() > 0;
}

}  // namespace

StateVector run_circuit(const CircuitSpec& spec, std::span<const double> gammas,
                        std::span<const double> betas) {
  StateVector state = spec.initial;
  for (std::size_t l = 0; l < gammas.size(); ++l) {
    apply_cost_phase(state, spec.energies, gammas[l]);
    if (spec.mixer == MixerKind::kTransverseField) {
      apply_x_mixer(state, betas[l]);
    } else {
      apply_xy_mixer(state, betas[l], spec.registers);
      apply_x_mixer(state, betas[l], spec.free_qubits);
    }
  }
  return state;
}

StateVector one_hot_product_state(std::size_t num_qubits,
                                  const std::vector<std::vector<std::size_t>>& registers,
                                  std::span<const std::size_t> free_qubits) {
  std::vector<std::size_t> masks;
  double amplitude = 1.0;
  std::size_t covered = 0;
  for (const auto& reg : registers) {
    std::size_t m = 0;
    for (std::size_t q : reg) m |= std::size_t{1} << q;
    masks.push_back(m);
    covered |= m;
    amplitude /= std::sqrt(static_cast<double>(reg.size()));
  }
  for (std::size_t q : free_qubits) covered |= std::size_t{1} << q;
  amplitude /= std::sqrt(std::ldexp(1.0, static_cast<int>(free_qubits.size())));
  const std::size_t dim = std::size_t{1} << num_qubits;
  if (covered != dim - 1) {
    throw InvalidInput("registers and free qubits must cover every qubit");
  }
  std::vector<Amplitude> amps(dim);
  for (std::size_t b = 0; b < dim; ++b) {
    if (registers_one_hot(b, masks)) amps[b] = amplitude;
  }
  return StateVector(num_qubits, std::move(amps));
}

std::vector<std::vector<std::size_t>> order_registers(const VarLayout& layout) {
  std::vector<std::vector<std::size_t>> regs;
  for (std::size_t j = 0; j < layout.num_orders; ++j) regs.push_back(layout.order_register(j));
  return regs;
}

QaoaResult solve_qaoa(const QuboModel& qubo, const QaoaParams& params) {
  check_budget(qubo.n_vars, params);
  CircuitSpec spec;
  spec.num_qubits = qubo.n_vars;
  spec.energies = all_energies(qubo);
  spec.mixer = MixerKind::kTransverseField;
  spec.initial = StateVector::uniform(qubo.n_vars);
  return optimise_and_sample(spec, params, has_layout(qubo) ? &qubo.layout : nullptr);
}

QaoaResult solve_qaoansatz(const Instance& instance, const PenaltyWeights& penalties,
                           const QaoaParams& params) {
  const QuboModel qubo = build_qubo(instance, penalties, true);
  check_budget(qubo.n_vars, params);
  CircuitSpec spec;
  spec.num_qubits = qubo.n_vars;
  spec.energies = all_energies(qubo);
  spec.mixer = MixerKind::kXyRing;
  spec.registers = order_registers(qubo.layout);
  for (std::size_t q = qubo.layout.assignment_bits(); q < qubo.n_vars; ++q) {
    spec.free_qubits.push_back(q);
  }
  spec.initial = one_hot_product_state(qubo.n_vars, spec.registers, spec.free_qubits);
  return optimise_and_sample(spec, params, &qubo.layout);
}

}  // namespace roa
