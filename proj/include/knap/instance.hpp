#ifndef KNAP_INSTANCE_HPP
#define KNAP_INSTANCE_HPP

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "knap/util.hpp"

namespace knap {

/// One distinct item: `mult` binary-encoded copies of a (size, value) pair.
/// Within an instance, (size, value) pairs are pairwise distinct.
struct Item {
  i64 size = 0;   // >= 1
  i64 value = 0;  // >= 0
  i64 mult = 0;   // >= 1
};

/// Knapsack instance after validate_and_normalize: duplicates merged,
/// multiplicities clamped to floor(t/size), oversize items dropped, and
/// derived stats cached. Immutable after construction; safe to share.
struct KnapsackInstance {
  std::vector<Item> items;
  i64 capacity = 0;

  // Cached derived quantities, consistent with `items`.
  i64 max_size = 0;     // s
  i64 max_value = 0;    // v
  i64 max_mult = 0;     // u
  i64 total_count = 0;  // N = sum of multiplicities
  i64 sigma_size = 0;   // sum size * mult
  i64 sigma_value = 0;  // sum value * mult

  i64 n() const { return static_cast<i64>(items.size()); }
};

/// Subset Sum instance; value is implicitly equal to size.
struct SubsetSumItem {
  i64 size = 0;
  i64 mult = 0;
};

struct SubsetSumInstance {
  std::vector<SubsetSumItem> items;
  i64 target = 0;

  i64 max_size = 0;
  i64 max_mult = 0;
  i64 total_count = 0;
  i64 sigma = 0;

  i64 n() const { return static_cast<i64>(items.size()); }
};

/// Per-item chosen counts with recomputed totals.
struct SolutionVector {
  std::vector<i64> counts;
  i64 total_size = 0;
  i64 total_value = 0;
};

namespace detail {

inline void recompute_stats(KnapsackInstance& inst) {
  inst.max_size = inst.max_value = inst.max_mult = 0;
  i128 count = 0, ssum = 0, vsum = 0;
  for (const Item& it : inst.items) {
    inst.max_size = std::max(inst.max_size, it.size);
    inst.max_value = std::max(inst.max_value, it.value);
    inst.max_mult = std::max(inst.max_mult, it.mult);
    count += it.mult;
    ssum += static_cast<i128>(it.size) * it.mult;
    vsum += static_cast<i128>(it.value) * it.mult;
  }
  inst.sigma_size = checked_i64(ssum, "total size");
  inst.sigma_value = checked_i64(vsum, "total value");
  inst.total_count = checked_i64(count, "total item count");
}

}  // namespace detail

/// Builds a normalized instance from a raw item list. Merges duplicate
/// (size, value) pairs, drops zero multiplicities and items larger than t,
/// clamps each multiplicity to floor(t/size). Rejects size = 0, negative
/// fields, and sums that overflow the 63-bit word. Idempotent.
inline KnapsackInstance validate_and_normalize(std::vector<Item> raw, i64 t) {
  if (t < 0) throw InputError("capacity must be non-negative");
  std::map<std::pair<i64, i64>, size_t> seen;  // (size, value) -> merged slot
  KnapsackInstance inst;
  inst.capacity = t;
  for (const Item& it : raw) {
    if (it.size <= 0) throw InputError("item size must be positive");
    if (it.value < 0) throw InputError("item value must be non-negative");
    if (it.mult < 0) throw InputError("item multiplicity must be non-negative");
    if (it.mult == 0 || it.size > t) continue;
    auto [pos, inserted] = seen.try_emplace({it.size, it.value}, inst.items.size());
    if (inserted) {
      inst.items.push_back(it);
    } else {
      Item& dst = inst.items[pos->second];
      dst.mult = checked_i64(static_cast<i128>(dst.mult) + it.mult, "multiplicity");
    }
  }
  for (Item& it : inst.items) it.mult = std::min(it.mult, t / it.size);
  std::erase_if(inst.items, [](const Item& it) { return it.mult == 0; });
  detail::recompute_stats(inst);
  return inst;
}

inline SubsetSumInstance validate_and_normalize(std::vector<SubsetSumItem> raw,
                                                i64 t) {
  std::vector<Item> as_items;
  as_items.reserve(raw.size());
  for (const SubsetSumItem& it : raw)
    as_items.push_back({it.size, it.size, it.mult});
  KnapsackInstance k = validate_and_normalize(std::move(as_items), t);
  SubsetSumInstance inst;
  inst.target = t;
  inst.items.reserve(k.items.size());
  for (const Item& it : k.items) inst.items.push_back({it.size, it.mult});
  inst.max_size = k.max_size;
  inst.max_mult = k.max_mult;
  inst.total_count = k.total_count;
  inst.sigma = k.sigma_size;
  return inst;
}

/// Views a Subset Sum instance as Knapsack with value = size.
inline KnapsackInstance as_knapsack(const SubsetSumInstance& ss) {
  KnapsackInstance k;
  k.capacity = ss.target;
  k.items.reserve(ss.items.size());
  for (const SubsetSumItem& it : ss.items) k.items.push_back({it.size, it.size, it.mult});
  detail::recompute_stats(k);
  return k;
}

/// Builds a SolutionVector from counts, recomputing totals in 128-bit.
inline SolutionVector make_solution(const KnapsackInstance& inst,
                                    std::vector<i64> counts) {
  if (counts.size() != inst.items.size())
    throw InputError("solution length does not match instance");
  i128 ssum = 0, vsum = 0;
  for (size_t i = 0; i < counts.size(); ++i) {
    ssum += static_cast<i128>(counts[i]) * inst.items[i].size;
    vsum += static_cast<i128>(counts[i]) * inst.items[i].value;
  }
  SolutionVector sol;
  sol.counts = std::move(counts);
  sol.total_size = checked_i64(ssum, "solution size");
  sol.total_value = checked_i64(vsum, "solution value");
  return sol;
}

struct VerifyReport {
  bool feasible = false;
  i64 value = 0;
  i64 size = 0;
};

namespace detail {

inline VerifyReport verify_counts(const std::vector<Item>& items, i64 capacity,
                                  const std::vector<i64>& counts,
                                  bool size_equality) {
  if (counts.size() != items.size())
    throw InputError("solution length does not match instance");
  VerifyReport rep;
  bool bounds_ok = true;
  i128 ssum = 0, vsum = 0;
  for (size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] < 0 || counts[i] > items[i].mult) bounds_ok = false;
    ssum += static_cast<i128>(counts[i]) * items[i].size;
    vsum += static_cast<i128>(counts[i]) * items[i].value;
  }
  rep.size = checked_i64(ssum, "solution size");
  rep.value = checked_i64(vsum, "solution value");
  rep.feasible =
      bounds_ok && (size_equality ? rep.size == capacity : rep.size <= capacity);
  return rep;
}

}  // namespace detail

/// Recomputes all sums from scratch; trusts nothing cached in `sol`.
inline VerifyReport verify_solution(const KnapsackInstance& inst,
                                    const SolutionVector& sol) {
  return detail::verify_counts(inst.items, inst.capacity, sol.counts, false);
}

/// Subset Sum verification requires total size exactly equal to the target.
inline VerifyReport verify_solution(const SubsetSumInstance& inst,
                                    const std::vector<i64>& counts) {
  std::vector<Item> items;
  items.reserve(inst.items.size());
  for (const SubsetSumItem& it : inst.items)
    items.push_back({it.size, it.size, it.mult});
  return detail::verify_counts(items, inst.target, counts, true);
}

}  // namespace knap

#endif  // KNAP_INSTANCE_HPP
