#include "roa/exact.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <numeric>

#include "roa/greedy.hpp"

namespace roa {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class BranchAndBound {
 public:
  BranchAndBound(const Instance& instance, SoftWeights soft, double time_limit_s)
      : inst_(instance),
        soft_(soft),
        cost_(penalized_pair_costs(instance, soft)),
        m_(instance.num_riders()),
        n_(instance.num_orders()),
        deadline_(std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(std::clamp(time_limit_s, 0.0, 1e6)))),
        load_(m_, 0),
        room_(m_),
        owner_(n_, m_),
        best_owner_(n_, m_) {
    for (std::size_t i = 0; i < m_; ++i) room_[i] = inst_.riders[i].capacity;
    base_ = 0.0;
    for (const Rider& r : inst_.riders) {
      base_ += inst_.weights.delta * r.completed_orders * r.completed_orders;
    }
    order_sequence();
  }

  void seed_incumbent(const Assignment& x) {
    incumbent_ = penalized_objective(inst_, x, soft_);
    for (std::size_t j = 0; j < n_; ++j) {
      for (std::size_t i = 0; i < m_; ++i) {
        if (x(i, j)) best_owner_[j] = i;
      }
    }
    trace_.push_back(incumbent_);
  }

  ExactResult run() {
    const double open = search(0, base_);
    ExactResult out;
    out.nodes = nodes_;
    out.incumbent_trace = trace_;
    if (incumbent_ == kInf) {
      throw Infeasible(timed_out_ ? "exact: no feasible assignment found within the time limit"
                                  : "exact: instance has no hard-feasible assignment");
    }
    Assignment x(m_, n_, 0);
    for (std::size_t j = 0; j < n_; ++j) x(best_owner_[j], j) = 1;
    out.solve.assignment = x;
    out.objective = penalized_objective(inst_, x, soft_);
    out.optimal = !timed_out_;
    out.lower_bound = out.optimal ? out.objective : std::min(open, out.objective);
    return out;
  }

 private:
  double fairness_step(std::size_t rider) const {
    const double current = inst_.riders[rider].completed_orders + load_[rider];
    return inst_.weights.delta * (2.0 * current + 1.0);
  }

  bool admissible(std::size_t rider, std::size_t order) const {
    return load_[rider] < inst_.max_load && room_[rider] >= inst_.orders[order].size;
  }

  double increment(std::size_t rider, std::size_t order) const {
    return cost_(rider, order) + fairness_step(rider);
  }

  // Partial cost plus, for every unplaced order, its cheapest admissible
  // increment at the current loads. Increments only grow with load, so this
  // never overestimates. Infinite when some order has no admissible rider.
  double bound(std::size_t depth, double partial) const {
    double total = partial;
    for (std::size_t d = depth; d < n_; ++d) {
      const std::size_t j = sequence_[d];
      double best = kInf;
      for (std::size_t i = 0; i < m_; ++i) {
        if (admissible(i, j)) best = std::min(best, increment(i, j));
      }
      if (best == kInf) return kInf;
      total += best;
    }
    return total;
  }

  bool out_of_time() {
    if (timed_out_) return true;
    if ((nodes_ & 0x3FF) == 0 && std::chrono::steady_clock::now() >= deadline_) {
      timed_out_ = true;
    }
    return timed_out_;
  }

  // Returns the smallest bound among subtrees left unexplored below this
  // node (infinity when the subtree was fully explored or pruned).
  double search(std::size_t depth, double partial) {
    ++nodes_;
    if (depth == n_) {
      if (partial < incumbent_) {
        incumbent_ = partial;
        best_owner_ = owner_;
        trace_.push_back(incumbent_);
      }
      return kInf;
    }
    const double node_bound = bound(depth, partial);
    if (node_bound >= incumbent_) return kInf;
    if (out_of_time()) return node_bound;

    const std::size_t j = sequence_[depth];
    std::vector<std::pair<double, std::size_t>> children;
    children.reserve(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      if (admissible(i, j)) children.emplace_back(increment(i, j), i);
    }
    std::stable_sort(children.begin(), children.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });

    double open = kInf;
    for (const auto& [step, i] : children) {
      const int size = inst_.orders[j].size;
      ++load_[i];
      room_[i] -= size;
      owner_[j] = i;
      if (timed_out_) {
        const double child_bound = bound(depth + 1, partial + step);
        if (child_bound < incumbent_) open = std::min(open, child_bound);
      } else {
        open = std::min(open, search(depth + 1, partial + step));
      }
      --load_[i];
      room_[i] += size;
      owner_[j] = m_;
    }
    return open;
  }

  void order_sequence() {
    std::vector<double> regret(n_, 0.0);
    for (std::size_t j = 0; j < n_; ++j) {
      double lo = kInf, second = kInf;
      for (std::size_t i = 0; i < m_; ++i) {
        const double c = cost_(i, j);
        if (c < lo) {
          second = lo;
          lo = c;
        } else if (c < second) {
          second = c;
        }
      }
      regret[j] = second == kInf ? 0.0 : second - lo;
    }
    sequence_.resize(n_);
    std::iota(sequence_.begin(), sequence_.end(), std::size_t{0});
    std::stable_sort(sequence_.begin(), sequence_.end(),
                     [&](std::size_t a, std::size_t b) { return regret[a] > regret[b]; });
  }

  const Instance& inst_;
  SoftWeights soft_;
  Matrix<double> cost_;
  std::size_t m_;
  std::size_t n_;
  std::chrono::steady_clock::time_point deadline_;
  double base_ = 0.0;
  std::vector<int> load_;
  std::vector<int> room_;
  std::vector<std::size_t> sequence_;
  std::vector<std::size_t> owner_;
  std::vector<std::size_t> best_owner_;
  double incumbent_ = kInf;
  std::vector<double> trace_;
  std::uint64_t nodes_ = 0;
  bool timed_out_ = false;
};

}  // namespace

ExactResult solve_exact(const Instance& instance, SoftWeights soft, double time_limit_s) {
  const auto start = std::chrono::steady_clock::now();
  validate(instance);
  BranchAndBound bnb(instance, soft, time_limit_s);
  try {
    bnb.seed_incumbent(solve_greedy(instance).assignment);
  } catch (const Infeasible&) {
    // Greedy can fail where a feasible assignment still exists.
  }
  ExactResult result = bnb.run();
  result.solve.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace roa
