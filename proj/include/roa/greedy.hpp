#pragma once

#include "roa/solve_result.hpp"

namespace roa {

// Orders in index order; each goes to the admissible rider (load < k and
// enough remaining capacity) with the smallest pickup distance, lowest index
// on ties. Throws Infeasible if some order has no admissible rider.
SolveResult solve_greedy(const Instance& instance);

}  // namespace roa
