#pragma once

#include "roa/model.hpp"

namespace roa {

struct RepairStats {
  int multi_trims = 0;
  int load_trims = 0;
  int capacity_trims = 0;
  int mutual_fixes = 0;
  int greedy_fixes = 0;
  bool changed = false;
};

struct RepairResult {
  Assignment assignment;
  RepairStats stats;
};

// Turns any assignment into a hard-feasible one:
//   1. multi-assigned orders keep only their cheapest rider;
//   2. overloaded / over-capacity riders drop their most expensive orders;
//   3-4. hanging orders and riders that are each other's cheapest admissible
//        partner are bound first;
//   5. the rest are placed greedily by ascending pair cost.
// Costs are penalized pair costs (no fairness term). Hard-feasible input is
// returned unchanged. Throws Infeasible naming the order that cannot be
// placed.
RepairResult repair(const Instance& instance, const Assignment& x, SoftWeights soft);

}  // namespace roa
