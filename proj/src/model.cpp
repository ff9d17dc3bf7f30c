#include "roa/model.hpp"

#include <algorithm>
#include <string>
#include <tuple>

namespace roa {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidInput(what);
}

void require_shape(const Matrix<double>& mat, std::size_t m, std::size_t n, const char* name) {
  require(mat.same_shape(m, n), std::string("cost matrix '") + name + "' is not " +
                                    std::to_string(m) + "x" + std::to_string(n));
  for (double v : mat.flat()) {
    require(v >= 0.0, std::string("cost matrix '") + name + "' has a negative entry");
  }
}

}  // namespace

void validate(const Instance& instance) {
  const std::size_t m = instance.num_riders();
  const std::size_t n = instance.num_orders();
  require(m == n, "instance must have as many riders as orders");
  require(instance.max_load >= 1, "max_load must be >= 1");
  require(instance.geofence >= 0.0, "geofence must be non-negative");
  const Weights& w = instance.weights;
  require(w.alpha >= 0 && w.beta >= 0 && w.gamma >= 0 && w.delta >= 0,
          "objective weights must be non-negative");
  int max_capacity = 0;
  for (const Rider& r : instance.riders) {
    require(r.capacity >= 1, "rider capacity must be >= 1");
    require(r.completed_orders >= 0, "completed_orders must be >= 0");
    max_capacity = std::max(max_capacity, r.capacity);
  }
  for (const Order& o : instance.orders) {
    require(o.size >= 1, "order size must be >= 1");
    require(o.prepare_time >= 0.0, "prepare_time must be >= 0");
    require(o.promised_time > o.prepare_time, "promised_time must exceed prepare_time");
    require(o.size <= max_capacity, "order " + std::to_string(o.id) + " fits no rider");
  }
  require_shape(instance.costs.pickup_dist, m, n, "pickup_dist");
  require_shape(instance.costs.pickup_time, m, n, "pickup_time");
  require_shape(instance.costs.deliver_time, m, n, "deliver_time");
  require_shape(instance.costs.wait_time, m, n, "wait_time");
}

void check_dimensions(const Instance& instance, const Assignment& x) {
  if (!x.same_shape(instance.num_riders(), instance.num_orders())) {
    throw InvalidInput("assignment is " + std::to_string(x.rows()) + "x" +
                       std::to_string(x.cols()) + ", instance is " +
                       std::to_string(instance.num_riders()) + "x" +
                       std::to_string(instance.num_orders()));
  }
}

Assignment zero_assignment(const Instance& instance) {
  return Assignment(instance.num_riders(), instance.num_orders(), 0);
}

double evaluate_objective(const Instance& instance, const Assignment& x) {
  check_dimensions(instance, x);
  const Weights& w = instance.weights;
  const PairCosts& c = instance.costs;
  double dist = 0.0, deliver = 0.0, wait = 0.0, fairness = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    int load = 0;
    for (std::size_t j = 0; j < x.cols(); ++j) {
      if (!x(i, j)) continue;
      dist += c.pickup_dist(i, j);
      deliver += c.deliver_time(i, j);
      wait += c.wait_time(i, j);
      ++load;
    }
    const double total = instance.riders[i].completed_orders + load;
    fairness += total * total;
  }
  return w.alpha * dist + w.beta * deliver + w.gamma * wait + w.delta * fairness;
}

std::vector<int> rider_loads(const Assignment& x) {
  std::vector<int> loads(x.rows(), 0);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < x.cols(); ++j) loads[i] += x(i, j) ? 1 : 0;
  }
  return loads;
}

std::vector<int> rider_sizes(const Instance& instance, const Assignment& x) {
  std::vector<int> sizes(x.rows(), 0);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < x.cols(); ++j) {
      if (x(i, j)) sizes[i] += instance.orders[j].size;
    }
  }
  return sizes;
}

ViolationReport check_hard(const Instance& instance, const Assignment& x) {
  check_dimensions(instance, x);
  ViolationReport report;
  for (std::size_t j = 0; j < x.cols(); ++j) {
    int count = 0;
    for (std::size_t i = 0; i < x.rows(); ++i) count += x(i, j) ? 1 : 0;
    if (count == 0) report.unassigned_orders.push_back(j);
    if (count > 1) report.multi_assigned_orders.emplace_back(j, count);
  }
  const auto loads = rider_loads(x);
  const auto sizes = rider_sizes(instance, x);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    if (loads[i] > instance.max_load) report.overloaded_riders.push_back(i);
    if (sizes[i] > instance.riders[i].capacity) report.overcapacity_riders.push_back(i);
  }
  return report;
}

ViolationReport check_all(const Instance& instance, const Assignment& x) {
  ViolationReport report = check_hard(instance, x);
  std::tie(report.gf_violations, report.sla_violations) = count_soft_violations(instance, x);
  return report;
}

double sla_completion_time(const Instance& instance, std::size_t rider, std::size_t order) {
  const PairCosts& c = instance.costs;
  return std::max(c.pickup_time(rider, order), instance.orders[order].prepare_time) +
         c.deliver_time(rider, order);
}

SoftExcess soft_excess(const Instance& instance) {
  const std::size_t m = instance.num_riders();
  const std::size_t n = instance.num_orders();
  SoftExcess out{Matrix<double>(m, n), Matrix<double>(m, n)};
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out.geofence(i, j) = std::max(instance.costs.pickup_dist(i, j) - instance.geofence, 0.0);
      out.sla(i, j) =
          std::max(sla_completion_time(instance, i, j) - instance.orders[j].promised_time, 0.0);
    }
  }
  return out;
}

std::pair<int, int> count_soft_violations(const Instance& instance, const Assignment& x) {
  check_dimensions(instance, x);
  const SoftExcess excess = soft_excess(instance);
  int gf = 0, sla = 0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < x.cols(); ++j) {
      if (!x(i, j)) continue;
      gf += excess.geofence(i, j) > 0.0 ? 1 : 0;
      sla += excess.sla(i, j) > 0.0 ? 1 : 0;
    }
  }
  return {gf, sla};
}

Matrix<double> penalized_pair_costs(const Instance& instance, SoftWeights soft) {
  const Weights& w = instance.weights;
  const PairCosts& c = instance.costs;
  const SoftExcess excess = soft_excess(instance);
  Matrix<double> out(instance.num_riders(), instance.num_orders());
  for (std::size_t i = 0; i < out.rows(); ++i) {
    for (std::size_t j = 0; j < out.cols(); ++j) {
      out(i, j) = w.alpha * c.pickup_dist(i, j) + w.beta * c.deliver_time(i, j) +
                  w.gamma * c.wait_time(i, j) + soft.geofence * excess.geofence(i, j) +
                  soft.sla * excess.sla(i, j);
    }
  }
  return out;
}

double soft_penalty(const Instance& instance, const Assignment& x, SoftWeights soft) {
  check_dimensions(instance, x);
  const SoftExcess excess = soft_excess(instance);
  double total = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < x.cols(); ++j) {
      if (x(i, j)) total += soft.geofence * excess.geofence(i, j) + soft.sla * excess.sla(i, j);
    }
  }
  return total;
}

double penalized_objective(const Instance& instance, const Assignment& x, SoftWeights soft) {
  return evaluate_objective(instance, x) + soft_penalty(instance, x, soft);
}

}  // namespace roa
