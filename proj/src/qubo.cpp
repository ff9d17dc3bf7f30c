#include "roa/qubo.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace roa {

namespace {

// Neumaier summation.
class CompensatedSum {
 public:
  explicit CompensatedSum(double start) : sum_(start) {}
  CompensatedSum& operator+=(double v) {
    const double t = sum_ + v;
    comp_ += std::abs(sum_) >= std::abs(v) ? (sum_ - t) + v : (v - t) + sum_;
    sum_ = t;
    return *this;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_;
  double comp_ = 0.0;
};

struct Term {
  std::size_t var;
  double coef;
};

class QuboBuilder {
 public:
  explicit QuboBuilder(QuboModel& model) : model_(model) {}

  void add_linear(std::size_t var, double coef) { model_.linear[var] += coef; }

  void add_quadratic(std::size_t a, std::size_t b, double coef) {
    if (a > b) std::swap(a, b);
    model_.quadratic[{a, b}] += coef;
  }

  // weight * (constant + sum_v a_v x_v)^2 over distinct binary variables,
  // using x_v^2 = x_v.
  void add_square(const std::vector<Term>& terms, double constant, double weight) {
    if (weight == 0.0) return;
    model_.offset += weight * constant * constant;
    for (std::size_t u = 0; u < terms.size(); ++u) {
      const Term& a = terms[u];
      add_linear(a.var, weight * (a.coef * a.coef + 2.0 * constant * a.coef));
      for (std::size_t v = u + 1; v < terms.size(); ++v) {
        add_quadratic(a.var, terms[v].var, weight * 2.0 * a.coef * terms[v].coef);
      }
    }
  }

  void prune() {
    std::erase_if(model_.linear, [](const auto& kv) { return kv.second == 0.0; });
    std::erase_if(model_.quadratic, [](const auto& kv) { return kv.second == 0.0; });
  }

 private:
  QuboModel& model_;
};

void append_slack(std::vector<Term>& terms, const SlackGroup& group) {
  for (std::size_t b = 0; b < group.width(); ++b) {
    terms.push_back({group.first + b, static_cast<double>(group.place_values[b])});
  }
}

nlohmann::json group_json(const SlackGroup& g) {
  return {{"rider", g.rider}, {"first", g.first}, {"place_values", g.place_values}};
}

SlackGroup group_from(const nlohmann::json& doc) {
  return {doc.at("rider").get<std::size_t>(), doc.at("first").get<std::size_t>(),
          doc.at("place_values").get<std::vector<int>>()};
}

}  // namespace

std::vector<int> slack_place_values(int max_value) {
  if (max_value < 1) throw InvalidInput("slack range must contain a positive value");
  const int width = std::bit_width(static_cast<unsigned>(max_value));
  std::vector<int> places;
  places.reserve(width);
  for (int b = 0; b + 1 < width; ++b) places.push_back(1 << b);
  places.push_back(max_value - ((1 << (width - 1)) - 1));
  return places;
}

int SlackGroup::max_value() const {
  int total = 0;
  for (int p : place_values) total += p;
  return total;
}

std::vector<std::size_t> VarLayout::order_register(std::size_t order) const {
  std::vector<std::size_t> reg(num_riders);
  for (std::size_t i = 0; i < num_riders; ++i) reg[i] = x_index(i, order);
  return reg;
}

VarLayout make_layout(const Instance& instance) {
  VarLayout layout;
  layout.num_riders = instance.num_riders();
  layout.num_orders = instance.num_orders();
  std::size_t next = layout.assignment_bits();
  for (std::size_t i = 0; i < layout.num_riders; ++i) {
    SlackGroup g{i, next, slack_place_values(instance.max_load)};
    next += g.width();
    layout.load_slack.push_back(std::move(g));
  }
  for (std::size_t i = 0; i < layout.num_riders; ++i) {
    SlackGroup g{i, next, slack_place_values(instance.riders[i].capacity)};
    next += g.width();
    layout.capacity_slack.push_back(std::move(g));
  }
  layout.total_bits = next;
  return layout;
}

int decode_slack(std::span<const std::uint8_t> bits, const SlackGroup& group) {
  int value = 0;
  for (std::size_t b = 0; b < group.width(); ++b) {
    if (bits[group.first + b]) value += group.place_values[b];
  }
  return value;
}

void encode_slack(int value, const SlackGroup& group, std::span<std::uint8_t> bits) {
  if (value < 0 || value > group.max_value()) {
    throw InvalidInput("slack value " + std::to_string(value) + " outside [0, " +
                       std::to_string(group.max_value()) + "]");
  }
  const std::size_t low = group.width() - 1;
  const int low_max = (1 << low) - 1;
  const bool use_top = value > low_max;
  bits[group.first + low] = use_top ? 1 : 0;
  int rest = use_top ? value - group.place_values[low] : value;
  for (std::size_t b = 0; b < low; ++b) {
    bits[group.first + b] = static_cast<std::uint8_t>((rest >> b) & 1);
  }
}

double objective_spread_bound(const Instance& instance) {
  const Matrix<double> cost = penalized_pair_costs(instance, SoftWeights{1.0, 1.0});
  double bound = 0.0;
  for (std::size_t j = 0; j < cost.cols(); ++j) {
    double worst = 0.0;
    for (std::size_t i = 0; i < cost.rows(); ++i) worst = std::max(worst, cost(i, j));
    bound += worst;
  }
  double fairness = 0.0;
  for (const Rider& r : instance.riders) {
    const double co = r.completed_orders;
    const double top = co + instance.max_load;
    fairness += top * top - co * co;
  }
  return bound + instance.weights.delta * fairness;
}

PenaltyWeights default_penalties(const Instance& instance) {
  constexpr double kHardFactor = 2.0;
  const double hard = kHardFactor * objective_spread_bound(instance);
  return PenaltyWeights{hard, hard, hard, 1.0, 1.0};
}

QuboModel build_qubo(const Instance& instance, const PenaltyWeights& penalties,
                     bool drop_assignment_penalty) {
  validate(instance);
  QuboModel model;
  model.layout = make_layout(instance);
  model.n_vars = model.layout.total_bits;
  const VarLayout& layout = model.layout;
  const std::size_t m = layout.num_riders;
  const std::size_t n = layout.num_orders;
  QuboBuilder q(model);

  const Matrix<double> pair = penalized_pair_costs(instance, penalties.soft());
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) q.add_linear(layout.x_index(i, j), pair(i, j));
  }

  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Term> row;
    for (std::size_t j = 0; j < n; ++j) row.push_back({layout.x_index(i, j), 1.0});
    q.add_square(row, instance.riders[i].completed_orders, instance.weights.delta);
  }

  if (!drop_assignment_penalty) {
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Term> column;
      for (std::size_t i = 0; i < m; ++i) column.push_back({layout.x_index(i, j), 1.0});
      q.add_square(column, -1.0, penalties.assignment);
    }
  }

  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Term> load;
    for (std::size_t j = 0; j < n; ++j) load.push_back({layout.x_index(i, j), 1.0});
    append_slack(load, layout.load_slack[i]);
    q.add_square(load, -static_cast<double>(instance.max_load), penalties.load);

    std::vector<Term> cap;
    for (std::size_t j = 0; j < n; ++j) {
      cap.push_back({layout.x_index(i, j), static_cast<double>(instance.orders[j].size)});
    }
    append_slack(cap, layout.capacity_slack[i]);
    q.add_square(cap, -static_cast<double>(instance.riders[i].capacity), penalties.capacity);
  }

  q.prune();
  return model;
}

double energy(const QuboModel& model, std::span<const std::uint8_t> bits) {
  if (bits.size() != model.n_vars) {
    throw InvalidInput("bitstring has " + std::to_string(bits.size()) + " bits, model has " +
                       std::to_string(model.n_vars));
  }
  CompensatedSum e(model.offset);
  for (const auto& [v, c] : model.linear) {
    if (bits[v]) e += c;
  }
  for (const auto& [key, c] : model.quadratic) {
    if (bits[key.first] && bits[key.second]) e += c;
  }
  return e.value();
}

double energy(const IsingModel& model, std::span<const std::int8_t> spins) {
  if (spins.size() != model.n_spins) {
    throw InvalidInput("spin vector has " + std::to_string(spins.size()) +
                       " entries, model has " + std::to_string(model.n_spins));
  }
  CompensatedSum e(model.offset);
  for (const auto& [v, c] : model.h) e += spins[v] > 0 ? c : -c;
  for (const auto& [key, c] : model.J) e += spins[key.first] == spins[key.second] ? c : -c;
  return e.value();
}

std::vector<double> all_energies(const QuboModel& model) {
  const std::size_t n = model.n_vars;
  if (n > 30) throw InvalidInput("all_energies supports at most 30 variables");
  std::vector<double> lin(n, 0.0);
  for (const auto& [v, c] : model.linear) lin[v] = c;
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
  for (const auto& [key, c] : model.quadratic) {
    adj[key.first].emplace_back(key.second, c);
    adj[key.second].emplace_back(key.first, c);
  }
  // Walk the reflected Gray code so each step flips one bit and costs
  // O(degree) instead of O(terms).
  const std::size_t count = std::size_t{1} << n;
  std::vector<double> out(count);
  std::size_t state = 0;
  double e = model.offset;
  out[0] = e;
  for (std::size_t step = 1; step < count; ++step) {
    const auto q = static_cast<std::size_t>(std::countr_zero(step));
    const bool was_set = (state >> q) & 1U;
    double field = lin[q];
    for (const auto& [r, c] : adj[q]) {
      if ((state >> r) & 1U) field += c;
    }
    e += was_set ? -field : field;
    state ^= std::size_t{1} << q;
    out[state] = e;
  }
  return out;
}

Bits complete_slacks(const Instance& instance, const Assignment& x, const VarLayout& layout) {
  check_dimensions(instance, x);
  const ViolationReport report = check_hard(instance, x);
  if (!report.unassigned_orders.empty()) {
    throw Infeasible("order " + std::to_string(report.unassigned_orders.front()) +
                     " is unassigned");
  }
  if (!report.multi_assigned_orders.empty()) {
    throw Infeasible("order " + std::to_string(report.multi_assigned_orders.front().first) +
                     " is assigned to several riders");
  }
  if (!report.overloaded_riders.empty()) {
    throw Infeasible("rider " + std::to_string(report.overloaded_riders.front()) +
                     " exceeds the load limit");
  }
  if (!report.overcapacity_riders.empty()) {
    throw Infeasible("rider " + std::to_string(report.overcapacity_riders.front()) +
                     " exceeds its capacity");
  }

  Bits bits(layout.total_bits, 0);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < x.cols(); ++j) bits[layout.x_index(i, j)] = x(i, j);
  }
  const auto loads = rider_loads(x);
  const auto sizes = rider_sizes(instance, x);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    encode_slack(instance.max_load - loads[i], layout.load_slack[i], bits);
    encode_slack(instance.riders[i].capacity - sizes[i], layout.capacity_slack[i], bits);
  }
  return bits;
}

Assignment decode(std::span<const std::uint8_t> bits, const VarLayout& layout) {
  if (bits.size() != layout.total_bits) {
    throw InvalidInput("bitstring has " + std::to_string(bits.size()) + " bits, layout has " +
                       std::to_string(layout.total_bits));
  }
  Assignment x(layout.num_riders, layout.num_orders, 0);
  for (std::size_t i = 0; i < layout.num_riders; ++i) {
    for (std::size_t j = 0; j < layout.num_orders; ++j) x(i, j) = bits[layout.x_index(i, j)];
  }
  return x;
}

IsingModel to_ising(const QuboModel& model) {
  IsingModel out;
  out.n_spins = model.n_vars;
  // Accumulate in extended precision; penalty-sized coefficients cancel.
  long double offset = model.offset;
  std::map<std::size_t, long double> h;
  for (const auto& [v, c] : model.linear) {
    offset += c / 2.0L;
    h[v] += c / 2.0L;
  }
  for (const auto& [key, c] : model.quadratic) {
    offset += c / 4.0L;
    h[key.first] += c / 4.0L;
    h[key.second] += c / 4.0L;
    out.J[key] = c / 4.0;
  }
  out.offset = static_cast<double>(offset);
  for (const auto& [v, c] : h) {
    if (c != 0.0L) out.h[v] = static_cast<double>(c);
  }
  std::erase_if(out.J, [](const auto& kv) { return kv.second == 0.0; });
  return out;
}

Spins bits_to_spins(std::span<const std::uint8_t> bits) {
  Spins s(bits.size());
  for (std::size_t q = 0; q < bits.size(); ++q) s[q] = bits[q] ? 1 : -1;
  return s;
}

Bits spins_to_bits(std::span<const std::int8_t> spins) {
  Bits b(spins.size());
  for (std::size_t q = 0; q < spins.size(); ++q) b[q] = spins[q] > 0 ? 1 : 0;
  return b;
}

nlohmann::json to_json(const QuboModel& model) {
  using nlohmann::json;
  json linear = json::array();
  for (const auto& [v, c] : model.linear) linear.push_back({v, c});
  json quadratic = json::array();
  for (const auto& [key, c] : model.quadratic) quadratic.push_back({key.first, key.second, c});
  json load = json::array();
  for (const auto& g : model.layout.load_slack) load.push_back(group_json(g));
  json cap = json::array();
  for (const auto& g : model.layout.capacity_slack) cap.push_back(group_json(g));
  return {{"n_vars", model.n_vars},
          {"linear", std::move(linear)},
          {"quadratic", std::move(quadratic)},
          {"offset", model.offset},
          {"layout",
           {{"num_riders", model.layout.num_riders},
            {"num_orders", model.layout.num_orders},
            {"load_slack", std::move(load)},
            {"capacity_slack", std::move(cap)},
            {"total_bits", model.layout.total_bits}}}};
}

QuboModel qubo_from_json(const nlohmann::json& doc) {
  QuboModel model;
  try {
    model.n_vars = doc.at("n_vars").get<std::size_t>();
    model.offset = doc.at("offset").get<double>();
    for (const auto& t : doc.at("linear")) {
      const auto v = t.at(0).get<std::size_t>();
      if (v >= model.n_vars) throw InvalidInput("linear term index out of range");
      model.linear[v] += t.at(1).get<double>();
    }
    for (const auto& t : doc.at("quadratic")) {
      auto a = t.at(0).get<std::size_t>();
      auto b = t.at(1).get<std::size_t>();
      if (a == b || a >= model.n_vars || b >= model.n_vars) {
        throw InvalidInput("quadratic term indices invalid");
      }
      if (a > b) std::swap(a, b);
      model.quadratic[{a, b}] += t.at(2).get<double>();
    }
    if (doc.contains("layout")) {
      const auto& l = doc.at("layout");
      model.layout.num_riders = l.at("num_riders").get<std::size_t>();
      model.layout.num_orders = l.at("num_orders").get<std::size_t>();
      for (const auto& g : l.at("load_slack")) model.layout.load_slack.push_back(group_from(g));
      for (const auto& g : l.at("capacity_slack")) {
        model.layout.capacity_slack.push_back(group_from(g));
      }
      model.layout.total_bits = l.at("total_bits").get<std::size_t>();
    } else {
      model.layout.total_bits = model.n_vars;
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed QUBO document: ") + e.what());
  }
  std::erase_if(model.linear, [](const auto& kv) { return kv.second == 0.0; });
  std::erase_if(model.quadratic, [](const auto& kv) { return kv.second == 0.0; });
  return model;
}

}  // namespace roa
