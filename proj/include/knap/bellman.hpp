#ifndef KNAP_BELLMAN_HPP
#define KNAP_BELLMAN_HPP

#include <algorithm>
#include <numeric>
#include <vector>

#include "knap/instance.hpp"
#include "knap/util.hpp"

namespace knap {

/// An item with multiplicity u splits into ceil(log2(u+1)) aggregated 0/1
/// groups of 1, 2, 4, ... copies whose counts sum to u; every count in
/// [0, u] is a subset of groups.
struct BinaryGroup {
  i64 item = 0;    // index into the source item list
  i64 copies = 0;  // copies this group stands for
};

inline std::vector<BinaryGroup> binary_split(const std::vector<Item>& items) {
  std::vector<BinaryGroup> groups;
  for (size_t i = 0; i < items.size(); ++i) {
    i64 left = items[i].mult;
    i64 chunk = 1;
    while (left > 0) {
      const i64 take = std::min(chunk, left);
      groups.push_back({static_cast<i64>(i), take});
      left -= take;
      chunk <<= 1;
    }
  }
  return groups;
}

/// Reference dynamic-programming profile over all capacities 0..t with full
/// witness recovery. Cost is Theta(groups * t); guarded by a cell budget.
class BellmanProfile {
 public:
  BellmanProfile(const KnapsackInstance& inst, i64 cell_budget = kDefaultBudget)
      : items_(inst.items), capacity_(inst.capacity) {
    groups_ = binary_split(items_);
    const i64 cells =
        checked_i64(static_cast<i128>(groups_.size()) * (capacity_ + 1), "dp cells");
    if (cells > cell_budget)
      throw BudgetError("bellman dp budget exceeded; use the main solvers");
    values_.assign(static_cast<size_t>(capacity_) + 1, 0);
    take_.reserve(groups_.size());
    for (const BinaryGroup& g : groups_) {
      const i64 w = g.copies * items_[static_cast<size_t>(g.item)].size;
      const i64 v = g.copies * items_[static_cast<size_t>(g.item)].value;
      BitVec taken(capacity_ + 1);
      for (i64 c = capacity_; c >= w; --c) {
        const i64 cand = values_[static_cast<size_t>(c - w)] + v;
        if (cand > values_[static_cast<size_t>(c)]) {  // strict: deterministic
          values_[static_cast<size_t>(c)] = cand;
          taken.set(c);
        }
      }
      take_.push_back(std::move(taken));
    }
  }

  static constexpr i64 kDefaultBudget = 100'000'000;

  /// values()[c] = max total value with total size <= c.
  const std::vector<i64>& values() const { return values_; }
  i64 capacity() const { return capacity_; }
  i64 optimum() const { return values_.empty() ? 0 : values_.back(); }

  /// Recovers a feasible optimal solution for capacity c.
  SolutionVector recover(i64 c) const {
    if (c < 0 || c > capacity_) throw InputError("capacity out of range");
    std::vector<i64> counts(items_.size(), 0);
    for (i64 g = static_cast<i64>(groups_.size()) - 1; g >= 0; --g) {
      if (take_[static_cast<size_t>(g)].test(c)) {
        const BinaryGroup& grp = groups_[static_cast<size_t>(g)];
        counts[static_cast<size_t>(grp.item)] += grp.copies;
        c -= grp.copies * items_[static_cast<size_t>(grp.item)].size;
      }
    }
    KnapsackInstance view;
    view.items = items_;
    return make_solution(view, std::move(counts));
  }

 private:
  std::vector<Item> items_;
  i64 capacity_;
  std::vector<BinaryGroup> groups_;
  std::vector<i64> values_;
  std::vector<BitVec> take_;  // take_[g].test(c): group g used at state c
};

inline BellmanProfile bellman_oracle(const KnapsackInstance& inst,
                                     i64 cell_budget = BellmanProfile::kDefaultBudget) {
  return BellmanProfile(inst, cell_budget);
}

/// Folklore pruning: for each size class x keep only the floor(t/x) most
/// profitable copies (ties to the lower item index). Preserves the optimal
/// value for every capacity <= t and leaves N = O(t log t) copies.
inline KnapsackInstance harmonic_prune(const KnapsackInstance& inst) {
  std::vector<size_t> order(inst.items.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    const Item& x = inst.items[a];
    const Item& y = inst.items[b];
    if (x.size != y.size) return x.size < y.size;
    if (x.value != y.value) return x.value > y.value;
    return a < b;
  });
  KnapsackInstance out;
  out.capacity = inst.capacity;
  std::vector<i64> kept(inst.items.size(), 0);
  size_t i = 0;
  while (i < order.size()) {
    size_t j = i;
    const i64 size = inst.items[order[i]].size;
    i64 quota = inst.capacity / size;
    while (j < order.size() && inst.items[order[j]].size == size) {
      if (quota > 0) {
        const i64 take = std::min(quota, inst.items[order[j]].mult);
        kept[order[j]] = take;
        quota -= take;
      }
      ++j;
    }
    i = j;
  }
  for (size_t idx = 0; idx < inst.items.size(); ++idx)
    if (kept[idx] > 0) {
      Item it = inst.items[idx];
      it.mult = kept[idx];
      out.items.push_back(it);
    }
  detail::recompute_stats(out);
  return out;
}

}  // namespace knap

#endif  // KNAP_BELLMAN_HPP
