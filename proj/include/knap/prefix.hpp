#ifndef KNAP_PREFIX_HPP
#define KNAP_PREFIX_HPP

#include <algorithm>
#include <numeric>
#include <vector>

#include "knap/instance.hpp"
#include "knap/util.hpp"

namespace knap {

/// Greedy-by-efficiency prefix filling. `counts` is a prefix under
/// `efficiency_order`: full multiplicities up to a boundary item, a partial
/// count there, zeros after. If any item is not fully taken, slack < max size.
struct PrefixSolution {
  std::vector<i64> counts;
  i64 slack = 0;  // t - total size of the prefix
  std::vector<i64> efficiency_order;
  i64 total_size = 0;
  i64 total_value = 0;

  bool takes_everything(const std::vector<Item>& items) const {
    for (size_t i = 0; i < items.size(); ++i)
      if (counts[i] != items[i].mult) return false;
    return true;
  }
};

namespace detail {

/// Exact efficiency comparison v_a/s_a > v_b/s_b by cross-multiplication;
/// ties broken by smaller item index.
inline bool more_efficient(const std::vector<Item>& items, i64 a, i64 b) {
  const i128 lhs = static_cast<i128>(items[static_cast<size_t>(a)].value) *
                   items[static_cast<size_t>(b)].size;
  const i128 rhs = static_cast<i128>(items[static_cast<size_t>(b)].value) *
                   items[static_cast<size_t>(a)].size;
  if (lhs != rhs) return lhs > rhs;
  return a < b;
}

struct PrefixState {
  const std::vector<Item>& items;
  std::vector<i64>& idx;
  std::vector<i64>& counts;
  i64 remaining;
  i128 value_sum;
  bool stopped;
  bool deterministic;
  Rng rng;
};

inline void insertion_sort(PrefixState& st, i64 lo, i64 hi) {
  for (i64 i = lo + 1; i < hi; ++i)
    for (i64 j = i;
         j > lo && more_efficient(st.items, st.idx[static_cast<size_t>(j)],
                                  st.idx[static_cast<size_t>(j - 1)]);
         --j)
      std::swap(st.idx[static_cast<size_t>(j)], st.idx[static_cast<size_t>(j - 1)]);
}

/// Median-of-medians (groups of 5). Used only with deterministic selection.
inline i64 mom_pivot(PrefixState& st, i64 lo, i64 hi) {
  if (hi - lo <= 5) {
    insertion_sort(st, lo, hi);
    return st.idx[static_cast<size_t>(lo + (hi - lo) / 2)];
  }
  i64 dst = lo;
  for (i64 i = lo; i < hi; i += 5) {
    const i64 end = std::min(i + 5, hi);
    insertion_sort(st, i, end);
    std::swap(st.idx[static_cast<size_t>(dst)],
              st.idx[static_cast<size_t>(i + (end - i) / 2)]);
    ++dst;
  }
  return mom_pivot(st, lo, dst);
}

/// Takes c copies of item `id`; returns false when the greedy must stop
/// (the next copy of `id` would not fit).
inline bool take_item(PrefixState& st, i64 id) {
  const Item& it = st.items[static_cast<size_t>(id)];
  const i64 c = std::min(it.mult, st.remaining / it.size);
  st.counts[static_cast<size_t>(id)] = c;
  st.value_sum += static_cast<i128>(it.value) * c;
  st.remaining -= c * it.size;
  return c == it.mult;
}

inline void prefix_fill(PrefixState& st, i64 lo, i64 hi) {
  while (lo < hi && !st.stopped) {
    if (hi - lo <= 8) {
      insertion_sort(st, lo, hi);
      for (i64 i = lo; i < hi; ++i)
        if (!take_item(st, st.idx[static_cast<size_t>(i)])) {
          st.stopped = true;
          break;
        }
      return;
    }
    i64 pivot;
    if (st.deterministic) {
      pivot = mom_pivot(st, lo, hi);
    } else {
      pivot = st.idx[static_cast<size_t>(
          lo + static_cast<i64>(st.rng.below(static_cast<u64>(hi - lo))))];
    }
    // Partition: strictly more efficient than pivot | pivot | rest.
    i64 mid = lo;
    i64 ppos = -1;
    for (i64 i = lo; i < hi; ++i) {
      const i64 id = st.idx[static_cast<size_t>(i)];
      if (id == pivot) {
        ppos = i;
      } else if (more_efficient(st.items, id, pivot)) {
        if (ppos == mid) ppos = i;  // pivot displaced by this swap
        std::swap(st.idx[static_cast<size_t>(i)], st.idx[static_cast<size_t>(mid)]);
        ++mid;
      }
    }
    std::swap(st.idx[static_cast<size_t>(mid)], st.idx[static_cast<size_t>(ppos)]);

    i128 head_size = 0;
    for (i64 i = lo; i < mid; ++i) {
      const Item& it = st.items[static_cast<size_t>(st.idx[static_cast<size_t>(i)])];
      head_size += static_cast<i128>(it.size) * it.mult;
    }
    if (head_size > st.remaining) {
      // The greedy stops inside the more-efficient half.
      prefix_fill(st, lo, mid);
      st.stopped = true;
      return;
    }
    // The whole half fits; take it, then the pivot, then continue right.
    for (i64 i = lo; i < mid; ++i) {
      const i64 id = st.idx[static_cast<size_t>(i)];
      const Item& it = st.items[static_cast<size_t>(id)];
      st.counts[static_cast<size_t>(id)] = it.mult;
      st.value_sum += static_cast<i128>(it.value) * it.mult;
    }
    st.remaining -= static_cast<i64>(head_size);
    if (!take_item(st, pivot)) {
      st.stopped = true;
      return;
    }
    lo = mid + 1;
  }
}

}  // namespace detail

/// Computes the maximal prefix solution in expected O(n): items are taken in
/// decreasing efficiency order (exact rational comparison, ties by index)
/// until the next copy would overflow the capacity. A selection recursion
/// halves the candidate set around a pivot efficiency instead of sorting.
inline PrefixSolution maximal_prefix(const KnapsackInstance& inst,
                                     bool deterministic_select = false,
                                     u64 select_seed = 0x9e3779b9u) {
  const i64 n = inst.n();
  PrefixSolution sol;
  sol.counts.assign(static_cast<size_t>(n), 0);
  sol.efficiency_order.resize(static_cast<size_t>(n));
  std::iota(sol.efficiency_order.begin(), sol.efficiency_order.end(), i64{0});

  detail::PrefixState st{inst.items,        sol.efficiency_order,
                         sol.counts,        inst.capacity,
                         0,                 false,
                         deterministic_select, Rng(select_seed)};
  detail::prefix_fill(st, 0, n);
  sol.slack = st.remaining;
  sol.total_size = inst.capacity - st.remaining;
  sol.total_value = checked_i64(st.value_sum, "prefix value");
  return sol;
}

/// Output of the proximity-based multiplicity cap. Any solution x' of
/// `instance` lifts to baseline + x' on the original instance; some optimal
/// original solution is reachable this way.
struct ReducedInstance {
  KnapsackInstance instance;    // multiplicities capped
  std::vector<i64> orig_index;  // reduced item -> original item
  std::vector<i64> baseline;    // pre-committed copies, length n of original
  i64 baseline_size = 0;
  i64 baseline_value = 0;

  SolutionVector lift(const KnapsackInstance& original,
                      const std::vector<i64>& reduced_counts) const {
    std::vector<i64> counts = baseline;
    for (size_t i = 0; i < reduced_counts.size(); ++i)
      counts[static_cast<size_t>(orig_index[i])] += reduced_counts[i];
    return make_solution(original, std::move(counts));
  }
};

/// Fixes baseline_i = max(0, p_i - slack) copies of each item and caps the
/// remaining multiplicity at 2 * slack. With the default slack = 2s this is
/// the standard cap at 4s; the capacity-window solver passes a wider slack
/// because its anchor prefix can be further from the per-target optima.
inline ReducedInstance proximity_reduce(const KnapsackInstance& inst,
                                        i64 slack = -1,
                                        bool deterministic_select = false) {
  if (slack < 0) slack = 2 * inst.max_size;
  const PrefixSolution p = maximal_prefix(inst, deterministic_select);
  ReducedInstance red;
  red.baseline.assign(static_cast<size_t>(inst.n()), 0);
  i128 bsize = 0, bvalue = 0;
  for (i64 i = 0; i < inst.n(); ++i) {
    const Item& it = inst.items[static_cast<size_t>(i)];
    const i64 b = std::max<i64>(0, p.counts[static_cast<size_t>(i)] - slack);
    red.baseline[static_cast<size_t>(i)] = b;
    bsize += static_cast<i128>(it.size) * b;
    bvalue += static_cast<i128>(it.value) * b;
    const i64 cap = std::min(it.mult - b, 2 * slack);
    if (cap > 0) {
      Item capped = it;
      capped.mult = cap;
      red.instance.items.push_back(capped);
      red.orig_index.push_back(i);
    }
  }
  red.baseline_size = checked_i64(bsize, "baseline size");
  red.baseline_value = checked_i64(bvalue, "baseline value");
  red.instance.capacity = inst.capacity - red.baseline_size;
  detail::recompute_stats(red.instance);
  return red;
}

}  // namespace knap

#endif  // KNAP_PREFIX_HPP
