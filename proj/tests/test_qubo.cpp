#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "roa/exact.hpp"
#include "roa/qubo.hpp"

namespace {

roa::Instance single_pair() {
  roa::Instance inst;
  inst.riders = {{0, {}, 4, 0}};
  inst.orders = {{0, {}, {}, 1, 0.0, 10.0}};
  inst.costs.pickup_dist = roa::Matrix<double>(1, 1, 1.0);
  inst.costs.pickup_time = roa::Matrix<double>(1, 1, 0.5);
  inst.costs.deliver_time = roa::Matrix<double>(1, 1, 1.5);
  inst.costs.wait_time = roa::Matrix<double>(1, 1, 1.0);
  inst.geofence = 5.0;
  inst.max_load = 1;
  inst.weights.delta = 0.0;
  return inst;
}

roa::QuboModel random_model(std::size_t n, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> c(-3.0, 3.0);
  roa::QuboModel q;
  q.n_vars = n;
  q.offset = c(gen);
  for (std::size_t a = 0; a < n; ++a) {
    if (gen() % 3) q.linear[a] = c(gen);
    for (std::size_t b = a + 1; b < n; ++b) {
      if (gen() % 2) q.quadratic[{a, b}] = c(gen);
    }
  }
  return q;
}

// Squared residual of order j's assignment row.
double assignment_residual(const roa::Bits& bits, const roa::VarLayout& layout) {
  double total = 0.0;
  for (std::size_t j = 0; j < layout.num_orders; ++j) {
    double s = -1.0;
    for (std::size_t i = 0; i < layout.num_riders; ++i) s += bits[layout.x_index(i, j)];
    total += s * s;
  }
  return total;
}

}  // namespace

TEST_CASE("slack place values cover exactly [0, max]") {
  CHECK(roa::slack_place_values(1) == std::vector<int>{1});
  CHECK(roa::slack_place_values(2) == std::vector<int>{1, 1});
  CHECK(roa::slack_place_values(4) == std::vector<int>{1, 2, 1});
  CHECK(roa::slack_place_values(7) == std::vector<int>{1, 2, 4});
  CHECK(roa::slack_place_values(8) == std::vector<int>{1, 2, 4, 1});
  CHECK_THROWS_AS(roa::slack_place_values(0), roa::InvalidInput);
  for (int max = 1; max <= 40; ++max) {
    const roa::SlackGroup g{0, 0, roa::slack_place_values(max)};
    std::vector<bool> seen(max + 1, false);
    for (std::size_t mask = 0; mask < (std::size_t{1} << g.width()); ++mask) {
      const roa::Bits bits = oracle::bits_of(mask, g.width());
      const int v = roa::decode_slack(bits, g);
      REQUIRE(v >= 0);
      REQUIRE(v <= max);
      seen[v] = true;
    }
    for (int v = 0; v <= max; ++v) {
      CHECK(seen[v]);
      roa::Bits bits(g.width(), 0);
      roa::encode_slack(v, g, bits);
      CHECK(roa::decode_slack(bits, g) == v);
    }
    roa::Bits bits(g.width(), 0);
    CHECK_THROWS_AS(roa::encode_slack(max + 1, g, bits), roa::InvalidInput);
  }
}

TEST_CASE("single pair instance uses five bits") {
  const roa::Instance inst = single_pair();
  const roa::VarLayout layout = roa::make_layout(inst);
  CHECK(layout.total_bits == 5);
  CHECK(layout.load_slack[0].first == 1);
  CHECK(layout.capacity_slack[0].first == 2);
  CHECK(layout.capacity_slack[0].width() == 3);
}

TEST_CASE("layout blocks are disjoint and contiguous") {
  const roa::Instance inst = oracle::seeded(4, 3);
  const roa::VarLayout layout = roa::make_layout(inst);
  std::size_t next = 16;
  for (const auto& g : layout.load_slack) {
    CHECK(g.first == next);
    next += g.width();
  }
  for (const auto& g : layout.capacity_slack) {
    CHECK(g.first == next);
    CHECK(g.max_value() == inst.riders[g.rider].capacity);
    next += g.width();
  }
  CHECK(layout.total_bits == next);
  CHECK(layout.order_register(2) == std::vector<std::size_t>{2, 6, 10, 14});
}

TEST_CASE("complete_slacks fills residual room") {
  roa::Instance inst = oracle::seeded(2, 5);
  inst.riders[0].capacity = 8;
  inst.orders[0].size = 1;
  inst.orders[1].size = 3;
  const roa::VarLayout layout = roa::make_layout(inst);
  roa::Assignment x(2, 2, 0);
  x(0, 0) = x(0, 1) = 1;
  const roa::Bits bits = roa::complete_slacks(inst, x, layout);
  CHECK(roa::decode_slack(bits, layout.load_slack[0]) == 0);
  CHECK(roa::decode_slack(bits, layout.capacity_slack[0]) == 4);
  CHECK(roa::decode_slack(bits, layout.load_slack[1]) == 2);
  CHECK(roa::decode(bits, layout) == x);

  roa::Assignment one(2, 2, 0);
  one(0, 0) = one(1, 1) = 1;
  CHECK(roa::decode_slack(roa::complete_slacks(inst, one, layout), layout.load_slack[0]) == 1);
}

TEST_CASE("complete_slacks rejects infeasible assignments by name") {
  const roa::Instance inst = oracle::seeded(3, 0);
  const roa::VarLayout layout = roa::make_layout(inst);
  roa::Assignment x(3, 3, 0);
  x(0, 0) = x(1, 1) = 1;
  try {
    roa::complete_slacks(inst, x, layout);
    FAIL("expected an infeasibility error");
  } catch (const roa::Infeasible& e) {
    CHECK(std::string(e.what()).find("order 2") != std::string::npos);
  }
  x(0, 2) = x(0, 1) = 1;
  x(1, 1) = 0;
  CHECK_THROWS_AS(roa::complete_slacks(inst, x, layout), roa::Infeasible);
}

TEST_CASE("hard penalties vanish on completed slacks") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const roa::Instance inst = oracle::seeded(3, seed);
    roa::PenaltyWeights only_hard{5.0, 7.0, 11.0, 0.0, 0.0};
    roa::Instance no_cost = inst;
    no_cost.weights = {0.0, 0.0, 0.0, 0.0};
    const roa::QuboModel q = roa::build_qubo(no_cost, only_hard);
    const auto feasible = oracle::enumerate(inst).feasible;
    for (const auto& x : feasible) {
      CHECK(std::abs(roa::energy(q, roa::complete_slacks(inst, x, q.layout))) <= 1e-12);
    }
  }
}

TEST_CASE("energy of simple models") {
  roa::QuboModel q;
  q.n_vars = 3;
  q.offset = 1.5;
  CHECK(roa::energy(q, roa::Bits{0, 0, 0}) == 1.5);
  q.linear[0] = 2.0;
  CHECK(roa::energy(q, roa::Bits{1, 0, 0}) == 3.5);
  CHECK_THROWS_AS(roa::energy(q, roa::Bits{1, 0}), roa::InvalidInput);
}

TEST_CASE("energy and all_energies agree with the double-loop oracle") {
  std::mt19937_64 gen(12);
  for (int t = 0; t < 5; ++t) {
    const roa::QuboModel q = random_model(10, gen);
    const auto all = roa::all_energies(q);
    for (std::size_t b = 0; b < all.size(); ++b) {
      const roa::Bits bits = oracle::bits_of(b, 10);
      const double want = oracle::qubo_energy(q, bits);
      CHECK(std::abs(roa::energy(q, bits) - want) <= 1e-12);
      CHECK(std::abs(all[b] - want) <= 1e-11);
    }
  }
}

TEST_CASE("slack-completed energy equals the penalised objective") {
  for (int n : {2, 3, 4}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const roa::Instance inst = oracle::seeded(n, seed);
      roa::PenaltyWeights pw = roa::default_penalties(inst);
      pw.geofence = 1.7;
      pw.sla = 0.3;
      const roa::QuboModel q = roa::build_qubo(inst, pw);
      for (const auto& x : oracle::enumerate(inst).feasible) {
        const double e = roa::energy(q, roa::complete_slacks(inst, x, q.layout));
        CHECK(std::abs(e - oracle::penalized(inst, x, 1.7, 0.3)) <= 1e-9);
      }
    }
  }
}

TEST_CASE("decode extracts the assignment block") {
  const roa::Instance inst = oracle::seeded(3, 4);
  const roa::VarLayout layout = roa::make_layout(inst);
  CHECK(roa::decode(roa::Bits(layout.total_bits, 0), layout) == roa::zero_assignment(inst));
  std::mt19937_64 gen(4);
  for (int t = 0; t < 50; ++t) {
    roa::Bits bits(layout.total_bits);
    for (auto& b : bits) b = static_cast<std::uint8_t>(gen() & 1U);
    const roa::Assignment x = roa::decode(bits, layout);
    for (std::size_t k = 0; k < 9; ++k) CHECK(x.flat()[k] == bits[k]);
  }
  CHECK_THROWS_AS(roa::decode(roa::Bits(3, 0), layout), roa::InvalidInput);
}

TEST_CASE("Ising conversion") {
  SUBCASE("single linear term") {
    roa::QuboModel q;
    q.n_vars = 1;
    q.linear[0] = 1.0;
    const roa::IsingModel s = roa::to_ising(q);
    CHECK(s.h.at(0) == 0.5);
    CHECK(s.offset == 0.5);
    CHECK(s.J.empty());
  }
  SUBCASE("empty model keeps its offset") {
    roa::QuboModel q;
    q.offset = -2.25;
    const roa::IsingModel s = roa::to_ising(q);
    CHECK(s.n_spins == 0);
    CHECK(s.h.empty());
    CHECK(s.offset == -2.25);
  }
  SUBCASE("random six-variable models match on all 64 states") {
    std::mt19937_64 gen(6);
    for (int t = 0; t < 20; ++t) {
      const roa::QuboModel q = random_model(6, gen);
      const roa::IsingModel s = roa::to_ising(q);
      for (std::size_t b = 0; b < 64; ++b) {
        const roa::Bits bits = oracle::bits_of(b, 6);
        CHECK(std::abs(roa::energy(q, bits) - roa::energy(s, roa::bits_to_spins(bits))) <= 1e-12);
      }
      for (const auto& [key, c] : s.J) {
        CHECK(key.first < key.second);
        CHECK(c != 0.0);
      }
    }
  }
  SUBCASE("spin convention") {
    CHECK(roa::bits_to_spins(roa::Bits{1, 0}) == roa::Spins{1, -1});
    CHECK(roa::spins_to_bits(roa::Spins{-1, 1}) == roa::Bits{0, 1});
  }
}

TEST_CASE("default penalties follow the spread rule") {
  const roa::Instance inst = single_pair();
  CHECK(roa::objective_spread_bound(inst) == doctest::Approx(3.5).epsilon(1e-15));
  const roa::PenaltyWeights pw = roa::default_penalties(inst);
  CHECK(pw.assignment == doctest::Approx(7.0).epsilon(1e-15));
  CHECK(pw.load == pw.assignment);
  CHECK(pw.capacity == pw.assignment);
  CHECK(pw.geofence == 1.0);
  CHECK(pw.sla == 1.0);
}

TEST_CASE("penalty rule is homogeneous in the costs") {
  const roa::Instance inst = oracle::seeded(4, 6);
  roa::Instance scaled = inst;
  const double t = 3.0;
  for (auto* mat : {&scaled.costs.pickup_dist, &scaled.costs.pickup_time,
                    &scaled.costs.deliver_time, &scaled.costs.wait_time}) {
    for (double& v : mat->flat()) v *= t;
  }
  scaled.geofence *= t;
  for (auto& o : scaled.orders) {
    o.prepare_time *= t;
    o.promised_time *= t;
  }
  scaled.weights.delta *= t;
  CHECK(roa::default_penalties(scaled).assignment ==
        doctest::Approx(t * roa::default_penalties(inst).assignment).epsilon(1e-12));
}

TEST_CASE("default penalties dominate every infeasible bitstring at n = 2") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const roa::Instance inst = oracle::seeded(2, seed);
    const roa::QuboModel q = roa::build_qubo(inst, roa::default_penalties(inst));
    REQUIRE(q.n_vars <= 16);
    const auto all = roa::all_energies(q);
    const double feasible_best = oracle::enumerate(inst).best;
    for (std::size_t b = 0; b < all.size(); ++b) {
      const roa::Bits bits = oracle::bits_of(b, q.n_vars);
      const roa::Assignment x = roa::decode(bits, q.layout);
      bool zero_residual = oracle::hard_feasible(inst, x);
      if (zero_residual) {
        const auto loads = roa::rider_loads(x);
        const auto sizes = roa::rider_sizes(inst, x);
        for (std::size_t i = 0; i < 2; ++i) {
          zero_residual = zero_residual &&
                          roa::decode_slack(bits, q.layout.load_slack[i]) + loads[i] ==
                              inst.max_load &&
                          roa::decode_slack(bits, q.layout.capacity_slack[i]) + sizes[i] ==
                              inst.riders[i].capacity;
        }
      }
      if (!oracle::hard_feasible(inst, x)) CHECK(all[b] > feasible_best);
      if (zero_residual) CHECK(all[b] >= feasible_best - 1e-9);
    }
  }
}

TEST_CASE("dropping the assignment penalty removes exactly that term") {
  std::mt19937_64 gen(9);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const roa::Instance inst = oracle::seeded(3, seed);
    const roa::PenaltyWeights pw = roa::default_penalties(inst);
    const roa::QuboModel full = roa::build_qubo(inst, pw);
    const roa::QuboModel dropped = roa::build_qubo(inst, pw, true);
    REQUIRE(full.n_vars == dropped.n_vars);
    for (int t = 0; t < 200; ++t) {
      roa::Bits bits(full.n_vars);
      for (auto& b : bits) b = static_cast<std::uint8_t>(gen() & 1U);
      const double diff = roa::energy(full, bits) - roa::energy(dropped, bits);
      CHECK(std::abs(diff - pw.assignment * assignment_residual(bits, full.layout)) <= 1e-9);
    }
  }
}

TEST_CASE("no zero coefficients are stored") {
  roa::Instance inst = oracle::seeded(3, 2);
  inst.weights = {0.0, 0.0, 0.0, 0.0};
  const roa::QuboModel q = roa::build_qubo(inst, {0.0, 1.0, 0.0, 0.0, 0.0});
  for (const auto& [v, c] : q.linear) CHECK(c != 0.0);
  for (const auto& [key, c] : q.quadratic) {
    CHECK(c != 0.0);
    CHECK(key.first < key.second);
  }
}

TEST_CASE("QUBO JSON round-trips") {
  const roa::Instance inst = oracle::seeded(2, 3);
  const roa::QuboModel q = roa::build_qubo(inst, roa::default_penalties(inst));
  const roa::QuboModel back = roa::qubo_from_json(roa::to_json(q));
  CHECK(back.n_vars == q.n_vars);
  CHECK(back.linear == q.linear);
  CHECK(back.quadratic == q.quadratic);
  CHECK(back.offset == q.offset);
  CHECK(back.layout.total_bits == q.layout.total_bits);
  CHECK(back.layout.capacity_slack[1].place_values == q.layout.capacity_slack[1].place_values);
}
