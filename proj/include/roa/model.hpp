#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "roa/errors.hpp"
#include "roa/matrix.hpp"

namespace roa {

struct GeoPoint {
  double lat = 0.0;
  double lon = 0.0;
  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

struct Rider {
  int id = 0;
  GeoPoint location;
  int capacity = 1;          // size units
  int completed_orders = 0;  // orders delivered before this batch
  friend bool operator==(const Rider&, const Rider&) = default;
};

struct Order {
  int id = 0;
  GeoPoint pickup;
  GeoPoint dropoff;
  int size = 1;
  double prepare_time = 0.0;   // minutes
  double promised_time = 1.0;  // minutes
  friend bool operator==(const Order&, const Order&) = default;
};

// Pairwise rider x order cost data. The delivery-time matrix plays both the
// RT^d role (SLA) and the OT^d role (objective).
struct PairCosts {
  Matrix<double> pickup_dist;
  Matrix<double> pickup_time;
  Matrix<double> deliver_time;
  Matrix<double> wait_time;
  friend bool operator==(const PairCosts&, const PairCosts&) = default;
};

struct Weights {
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 1.0;
  double delta = 0.1;
  friend bool operator==(const Weights&, const Weights&) = default;
};

struct Instance {
  std::vector<Rider> riders;
  std::vector<Order> orders;
  PairCosts costs;
  double geofence = 0.0;
  int max_load = 2;
  Weights weights;
  std::uint64_t seed = 0;
  int size = 0;

  std::size_t num_riders() const { return riders.size(); }
  std::size_t num_orders() const { return orders.size(); }
  friend bool operator==(const Instance&, const Instance&) = default;
};

using Assignment = Matrix<std::uint8_t>;

// Weights applied to the soft-constraint excesses when a single penalized
// yardstick is needed (exact solver, repair, benchmark metrics).
struct SoftWeights {
  double geofence = 1.0;
  double sla = 1.0;
};

struct ViolationReport {
  std::vector<std::size_t> unassigned_orders;
  std::vector<std::pair<std::size_t, int>> multi_assigned_orders;
  std::vector<std::size_t> overloaded_riders;
  std::vector<std::size_t> overcapacity_riders;
  int gf_violations = 0;
  int sla_violations = 0;

  bool hard_feasible() const {
    return unassigned_orders.empty() && multi_assigned_orders.empty() &&
           overloaded_riders.empty() && overcapacity_riders.empty();
  }
  // Number of violated hard constraint rows.
  int hard_count() const {
    return static_cast<int>(unassigned_orders.size() + multi_assigned_orders.size() +
                            overloaded_riders.size() + overcapacity_riders.size());
  }
};

struct SoftExcess {
  Matrix<double> geofence;
  Matrix<double> sla;
};

// Throws InvalidInput when an instance breaks a structural invariant
// (matrix shapes, positive sizes/capacities, promised > prepare, k >= 1).
void validate(const Instance& instance);

// Throws InvalidInput when x does not have the instance's m x n shape.
void check_dimensions(const Instance& instance, const Assignment& x);

Assignment zero_assignment(const Instance& instance);

double evaluate_objective(const Instance& instance, const Assignment& x);

ViolationReport check_hard(const Instance& instance, const Assignment& x);

// Full report: hard lists plus soft violation counts.
ViolationReport check_all(const Instance& instance, const Assignment& x);

// P^coeff_{i,j} = max(RT^p_{i,j}, PT_j) + RT^d_{i,j}
double sla_completion_time(const Instance& instance, std::size_t rider, std::size_t order);

SoftExcess soft_excess(const Instance& instance);

std::pair<int, int> count_soft_violations(const Instance& instance, const Assignment& x);

// Per-pair cost alpha*RD + beta*RT^d + gamma*WT + soft-weighted excesses.
// The fairness term is not pair-separable and is excluded.
Matrix<double> penalized_pair_costs(const Instance& instance, SoftWeights soft);

// Sum of soft-weighted excesses over assigned pairs.
double soft_penalty(const Instance& instance, const Assignment& x, SoftWeights soft);

// evaluate_objective + soft_penalty.
double penalized_objective(const Instance& instance, const Assignment& x, SoftWeights soft);

std::vector<int> rider_loads(const Assignment& x);
std::vector<int> rider_sizes(const Instance& instance, const Assignment& x);

}  // namespace roa
