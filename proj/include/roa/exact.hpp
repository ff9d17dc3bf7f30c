#pragma once

#include <cstdint>
#include <vector>

#include "roa/solve_result.hpp"

namespace roa {

struct ExactResult {
  SolveResult solve;
  bool optimal = false;
  // Penalized objective of the incumbent (objective + soft-weighted excess).
  double objective = 0.0;
  // Valid lower bound on the penalized optimum; equals objective when optimal.
  double lower_bound = 0.0;
  std::uint64_t nodes = 0;
  // Incumbent value after each improvement, in discovery order.
  std::vector<double> incumbent_trace;
};

// Depth-first branch-and-bound over orders: each node assigns one order to
// one rider, with orders branched most-constrained first and children tried
// by ascending incremental cost. Soft constraints enter the pair costs with
// the given weights. Stops at time_limit_s and reports the best incumbent and
// the smallest bound over unexplored subtrees.
ExactResult solve_exact(const Instance& instance, SoftWeights soft, double time_limit_s);

}  // namespace roa
