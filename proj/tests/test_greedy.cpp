#include <doctest.h>

#include <numeric>
#include <random>

#include "oracles.hpp"
#include "roa/greedy.hpp"

namespace {

roa::Instance distances(const roa::Matrix<double>& rd, int capacity = 8, int k = 2) {
  roa::Instance inst;
  const std::size_t m = rd.rows(), n = rd.cols();
  for (std::size_t i = 0; i < m; ++i) inst.riders.push_back({int(i), {}, capacity, 0});
  for (std::size_t j = 0; j < n; ++j) inst.orders.push_back({int(j), {}, {}, 1, 0.0, 100.0});
  inst.costs.pickup_dist = rd;
  inst.costs.pickup_time = roa::Matrix<double>(m, n, 0.0);
  inst.costs.deliver_time = roa::Matrix<double>(m, n, 0.0);
  inst.costs.wait_time = roa::Matrix<double>(m, n, 0.0);
  inst.geofence = 10.0;
  inst.max_load = k;
  return inst;
}

roa::Matrix<double> matrix(std::size_t m, std::size_t n, std::initializer_list<double> values) {
  roa::Matrix<double> out(m, n);
  std::copy(values.begin(), values.end(), out.flat().begin());
  return out;
}

}  // namespace

TEST_CASE("each order goes to its nearest rider") {
  const roa::Instance inst = distances(matrix(2, 2, {1, 5, 4, 2}));
  const roa::Assignment x = roa::solve_greedy(inst).assignment;
  CHECK(x(0, 0) == 1);
  CHECK(x(1, 1) == 1);
  CHECK(x(1, 0) == 0);
  CHECK(x(0, 1) == 0);
}

TEST_CASE("ties go to the lowest rider index") {
  const roa::Instance inst = distances(matrix(3, 3, {2, 2, 2, 2, 2, 2, 2, 2, 2}));
  CHECK(roa::solve_greedy(inst).assignment(0, 0) == 1);
}

TEST_CASE("a full rider is skipped") {
  const roa::Instance inst = distances(matrix(2, 2, {1, 1, 3, 2}), 8, 1);
  const roa::Assignment x = roa::solve_greedy(inst).assignment;
  CHECK(x(0, 0) == 1);
  CHECK(x(1, 1) == 1);
}

TEST_CASE("remaining capacity filters riders") {
  roa::Instance inst = distances(matrix(2, 2, {1, 1, 3, 2}), 3, 2);
  inst.orders[0].size = 2;
  inst.orders[1].size = 2;
  const roa::Assignment x = roa::solve_greedy(inst).assignment;
  CHECK(x(0, 0) == 1);
  CHECK(x(1, 1) == 1);
}

TEST_CASE("no admissible rider is an infeasibility error") {
  // Order 0 takes the only rider big enough for order 1.
  roa::Instance inst = distances(matrix(2, 2, {5, 1, 1, 1}), 3, 1);
  inst.riders[0].capacity = 1;
  inst.orders[1].size = 3;
  try {
    roa::solve_greedy(inst);
    FAIL("expected an infeasibility error");
  } catch (const roa::Infeasible& e) {
    CHECK(std::string(e.what()).find("order 1") != std::string::npos);
  }
}

TEST_CASE("greedy output is hard-feasible on generated instances") {
  for (int n : {1, 2, 3, 5, 10, 20}) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const roa::Instance inst = oracle::seeded(n, seed);
      const roa::SolveResult r = roa::solve_greedy(inst);
      CHECK(oracle::hard_feasible(inst, r.assignment));
      CHECK_FALSE(r.bits.has_value());
    }
  }
}

TEST_CASE("permuting riders permutes the greedy solution") {
  std::mt19937_64 gen(3);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const roa::Instance inst = oracle::seeded(6, seed);
    std::vector<std::size_t> perm(6);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), gen);
    roa::Instance p = inst;
    for (std::size_t i = 0; i < 6; ++i) {
      p.riders[perm[i]] = inst.riders[i];
      for (std::size_t j = 0; j < 6; ++j) {
        p.costs.pickup_dist(perm[i], j) = inst.costs.pickup_dist(i, j);
        p.costs.pickup_time(perm[i], j) = inst.costs.pickup_time(i, j);
        p.costs.deliver_time(perm[i], j) = inst.costs.deliver_time(i, j);
        p.costs.wait_time(perm[i], j) = inst.costs.wait_time(i, j);
      }
    }
    const roa::Assignment x = roa::solve_greedy(inst).assignment;
    const roa::Assignment px = roa::solve_greedy(p).assignment;
    // Continuous distances make ties vanishingly unlikely.
    for (std::size_t i = 0; i < 6; ++i) {
      for (std::size_t j = 0; j < 6; ++j) CHECK(px(perm[i], j) == x(i, j));
    }
  }
}
