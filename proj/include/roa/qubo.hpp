#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include <json.hpp>

#include "roa/model.hpp"

namespace roa {

using Bits = std::vector<std::uint8_t>;
using Spins = std::vector<std::int8_t>;

struct PenaltyWeights {
  double assignment = 0.0;  // lambda_A
  double load = 0.0;        // lambda_L
  double capacity = 0.0;    // lambda_Cap
  double geofence = 1.0;    // lambda_GF
  double sla = 1.0;         // lambda_P

  SoftWeights soft() const { return {geofence, sla}; }
};

// Place values of a bounded-binary slack encoding of [0, max_value]:
// 1, 2, 4, ... with the top place clipped so the group sums to max_value.
std::vector<int> slack_place_values(int max_value);

struct SlackGroup {
  std::size_t rider = 0;
  std::size_t first = 0;          // index of the lowest-place bit
  std::vector<int> place_values;  // one per bit

  int max_value() const;
  std::size_t width() const { return place_values.size(); }
};

// Variable layout: [x_{i,j} at i*n + j | load slack r_i | capacity slack s_i].
struct VarLayout {
  std::size_t num_riders = 0;
  std::size_t num_orders = 0;
  std::vector<SlackGroup> load_slack;
  std::vector<SlackGroup> capacity_slack;
  std::size_t total_bits = 0;

  std::size_t assignment_bits() const { return num_riders * num_orders; }
  std::size_t x_index(std::size_t rider, std::size_t order) const {
    return rider * num_orders + order;
  }
  // Bits of one order's one-hot register, rider-major.
  std::vector<std::size_t> order_register(std::size_t order) const;
};

VarLayout make_layout(const Instance& instance);

int decode_slack(std::span<const std::uint8_t> bits, const SlackGroup& group);
// Throws InvalidInput when value is outside [0, group.max_value()].
void encode_slack(int value, const SlackGroup& group, std::span<std::uint8_t> bits);

struct QuboModel {
  std::size_t n_vars = 0;
  std::map<std::size_t, double> linear;
  std::map<std::pair<std::size_t, std::size_t>, double> quadratic;  // key.first < key.second
  double offset = 0.0;
  VarLayout layout;
};

struct IsingModel {
  std::size_t n_spins = 0;
  std::map<std::size_t, double> h;
  std::map<std::pair<std::size_t, std::size_t>, double> J;
  double offset = 0.0;
};

// Upper bound on the spread of the penalized objective: the sum over orders
// of the largest penalized pair cost plus the fairness spread
// delta * sum_i [(CO_i + k)^2 - CO_i^2]. Hard multipliers are 2 * bound;
// soft multipliers are 1.
double objective_spread_bound(const Instance& instance);
PenaltyWeights default_penalties(const Instance& instance);

// With drop_assignment_penalty the lambda_A term is omitted; the caller is
// expected to enforce one-hot order registers some other way.
QuboModel build_qubo(const Instance& instance, const PenaltyWeights& penalties,
                     bool drop_assignment_penalty = false);

double energy(const QuboModel& model, std::span<const std::uint8_t> bits);
double energy(const IsingModel& model, std::span<const std::int8_t> spins);

// Energy of every basis state; index bit q is variable q. Requires
// n_vars <= 30.
std::vector<double> all_energies(const QuboModel& model);

// Sets r_i and s_i to the residual room. Throws Infeasible naming the first
// violated hard constraint.
Bits complete_slacks(const Instance& instance, const Assignment& x, const VarLayout& layout);

Assignment decode(std::span<const std::uint8_t> bits, const VarLayout& layout);

// Substitutes x = (1 + s) / 2 (bit 1 <-> spin +1).
IsingModel to_ising(const QuboModel& model);
Spins bits_to_spins(std::span<const std::uint8_t> bits);
Bits spins_to_bits(std::span<const std::int8_t> spins);

nlohmann::json to_json(const QuboModel& model);
QuboModel qubo_from_json(const nlohmann::json& doc);

}  // namespace roa
