#include "roa/repair.hpp"

#include <limits>
#include <string>

namespace roa {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

class Repairer {
 public:
  Repairer(const Instance& instance, const Assignment& x, SoftWeights soft)
      : inst_(instance),
        x_(x),
        cost_(penalized_pair_costs(instance, soft)),
        m_(instance.num_riders()),
        n_(instance.num_orders()) {}

  RepairResult run() {
    trim_multi_assigned();
    trim_riders();
    refresh_residuals();
    fix_mutual_pairs();
    place_remaining();
    stats_.changed = true;
    return {x_, stats_};
  }

 private:
  void trim_multi_assigned() {
    for (std::size_t j = 0; j < n_; ++j) {
      std::size_t keep = kNone;
      int count = 0;
      for (std::size_t i = 0; i < m_; ++i) {
        if (!x_(i, j)) continue;
        ++count;
        if (keep == kNone || cost_(i, j) < cost_(keep, j)) keep = i;
      }
      if (count <= 1) continue;
      for (std::size_t i = 0; i < m_; ++i) {
        if (x_(i, j) && i != keep) {
          x_(i, j) = 0;
          ++stats_.multi_trims;
        }
      }
    }
  }

  void trim_riders() {
    for (std::size_t i = 0; i < m_; ++i) {
      for (;;) {
        int load = 0, size = 0;
        for (std::size_t j = 0; j < n_; ++j) {
          if (!x_(i, j)) continue;
          ++load;
          size += inst_.orders[j].size;
        }
        const bool overloaded = load > inst_.max_load;
        const bool overfull = size > inst_.riders[i].capacity;
        if (!overloaded && !overfull) break;
        std::size_t drop = kNone;
        for (std::size_t j = 0; j < n_; ++j) {
          if (x_(i, j) && (drop == kNone || cost_(i, j) >= cost_(i, drop))) drop = j;
        }
        x_(i, drop) = 0;
        ++(overloaded ? stats_.load_trims : stats_.capacity_trims);
      }
    }
  }

  void refresh_residuals() {
    load_room_.assign(m_, inst_.max_load);
    size_room_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) size_room_[i] = inst_.riders[i].capacity;
    hanging_.assign(n_, true);
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        if (!x_(i, j)) continue;
        --load_room_[i];
        size_room_[i] -= inst_.orders[j].size;
        hanging_[j] = false;
      }
    }
  }

  bool admissible(std::size_t i, std::size_t j) const {
    return load_room_[i] > 0 && size_room_[i] >= inst_.orders[j].size;
  }

  bool hanging_rider(std::size_t i) const { return load_room_[i] > 0 && size_room_[i] > 0; }

  void bind(std::size_t i, std::size_t j) {
    x_(i, j) = 1;
    --load_room_[i];
    size_room_[i] -= inst_.orders[j].size;
    hanging_[j] = false;
  }

  std::size_t cheapest_rider_for(std::size_t j) const {
    std::size_t best = kNone;
    for (std::size_t i = 0; i < m_; ++i) {
      if (hanging_rider(i) && admissible(i, j) && (best == kNone || cost_(i, j) < cost_(best, j))) {
        best = i;
      }
    }
    return best;
  }

  std::size_t cheapest_order_for(std::size_t i) const {
    std::size_t best = kNone;
    for (std::size_t j = 0; j < n_; ++j) {
      if (hanging_[j] && admissible(i, j) && (best == kNone || cost_(i, j) < cost_(i, best))) {
        best = j;
      }
    }
    return best;
  }

  void fix_mutual_pairs() {
    bool progress = true;
    while (progress) {
      progress = false;
      for (std::size_t j = 0; j < n_ && !progress; ++j) {
        if (!hanging_[j]) continue;
        const std::size_t i = cheapest_rider_for(j);
        if (i != kNone && cheapest_order_for(i) == j) {
          bind(i, j);
          ++stats_.mutual_fixes;
          progress = true;
        }
      }
    }
  }

  void place_remaining() {
    for (;;) {
      std::size_t best_i = kNone, best_j = kNone;
      for (std::size_t j = 0; j < n_; ++j) {
        if (!hanging_[j]) continue;
        const std::size_t i = cheapest_rider_for(j);
        if (i == kNone) throw Infeasible("repair: no rider can take order " + std::to_string(j));
        if (best_j == kNone || cost_(i, j) < cost_(best_i, best_j)) {
          best_i = i;
          best_j = j;
        }
      }
      if (best_j == kNone) return;
      bind(best_i, best_j);
      ++stats_.greedy_fixes;
    }
  }

  const Instance& inst_;
  Assignment x_;
  Matrix<double> cost_;
  std::size_t m_;
  std::size_t n_;
  std::vector<int> load_room_;
  std::vector<int> size_room_;
  std::vector<bool> hanging_;
  RepairStats stats_;
};

}  // namespace

RepairResult repair(const Instance& instance, const Assignment& x, SoftWeights soft) {
  if (check_hard(instance, x).hard_feasible()) return {x, RepairStats{}};
  return Repairer(instance, x, soft).run();
}

}  // namespace roa
