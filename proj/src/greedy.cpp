#include "roa/greedy.hpp"

#include <chrono>
#include <limits>
#include <string>

namespace roa {

SolveResult solve_greedy(const Instance& instance) {
  const auto start = std::chrono::steady_clock::now();
  validate(instance);
  const std::size_t m = instance.num_riders();
  const std::size_t n = instance.num_orders();
  SolveResult result{zero_assignment(instance), std::nullopt, std::nullopt, 0.0};
  std::vector<int> load(m, 0);
  std::vector<int> room(m);
  for (std::size_t i = 0; i < m; ++i) room[i] = instance.riders[i].capacity;

  for (std::size_t j = 0; j < n; ++j) {
    const int size = instance.orders[j].size;
    std::size_t best = m;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      if (load[i] >= instance.max_load || room[i] < size) continue;
      const double d = instance.costs.pickup_dist(i, j);
      if (d < best_dist) {
        best_dist = d;
        best = i;
      }
    }
    if (best == m) throw Infeasible("greedy: no admissible rider for order " + std::to_string(j));
    result.assignment(best, j) = 1;
    ++load[best];
    room[best] -= size;
  }
  result.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace roa
