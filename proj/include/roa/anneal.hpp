#pragma once

#include <cstdint>
#include <vector>

#include "roa/qubo.hpp"
#include "roa/solve_result.hpp"

namespace roa {

struct SqaParams {
  int replicas = 20;          // Trotter slices P
  double temperature = 1.0;   // T, energy units
  double gamma_initial = 40;  // transverse field at the first sweep
  double gamma_final = 0.4;   // transverse field at the last sweep
  int sweeps = 1000;
  std::uint64_t seed = 0;
};

struct SaSchedule {
  double t_initial = 1.0;
  double t_final = 1e-3;
  int sweeps = 1000;
};

// T = 0.05 * (max|h| + max|J|), P = 20, Gamma_0 = 2 T P, Gamma_f = Gamma_0 / 100,
// 200 sweeps per spin.
SqaParams default_sqa_params(const IsingModel& ising, std::uint64_t seed = 0);
// Geometric cooling from max|h| + max|J| down to a thousandth of it.
SaSchedule default_sa_schedule(const IsingModel& ising);

// Throws InvalidConfig on P < 1, T <= 0, sweeps < 1 or a Gamma schedule that
// is not strictly decreasing and positive.
void validate(const SqaParams& params);

struct AnnealStats {
  std::uint64_t proposals = 0;
  std::uint64_t accepted = 0;
  // Proposals whose inter-replica coupling term changed the energy.
  std::uint64_t transverse_nonzero = 0;
};

struct AnnealResult {
  // bits and energy are set; assignment is left empty because an Ising model
  // carries no layout (decode with the QUBO layout).
  SolveResult solve;
  Spins spins;
  // Best classical energy seen so far, one entry per sweep.
  std::vector<double> best_trace;
  AnnealStats stats;
};

// Path-integral Monte Carlo: P replicas on a periodic
// imaginary-time ring, single-spin Metropolis moves at temperature T on
// dE_classical / P + dE_coupling with
// J_perp = -(P T / 2) ln tanh(Gamma / (P T)). Returns the replica
// configuration with the lowest classical energy seen during the run.
AnnealResult solve_sqa(const IsingModel& ising, const SqaParams& params);

AnnealResult solve_sa(const IsingModel& ising, const SaSchedule& schedule, std::uint64_t seed);

}  // namespace roa
