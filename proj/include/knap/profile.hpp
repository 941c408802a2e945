#ifndef KNAP_PROFILE_HPP
#define KNAP_PROFILE_HPP

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "knap/instance.hpp"
#include "knap/smawk.hpp"
#include "knap/util.hpp"

namespace knap {

// Items handled here may carry NEGATIVE values (the signed v-bar of the
// equality-constrained program); Item is reused structurally.

/// w^(h) in sparse form: prefix[m] is the total value of the m most valuable
/// copies of size h (only ceil(cap/h)+1 entries materialized), copy_item maps
/// each copy to its source item.
struct SizeClassPlan {
  i64 h = 0;
  std::vector<i64> prefix;     // length copies+1, prefix[0] = 0
  std::vector<i64> copy_item;  // length copies, value-descending order
};

/// Builds the size-class profile for size h from (value, mult, item) triples.
/// Copies are expanded lazily: never more than floor(cap/h) of them.
inline SizeClassPlan size_class_profile(
    i64 h, std::vector<std::pair<i64, std::pair<i64, i64>>> values_mult_item,
    i64 cap) {
  SizeClassPlan plan;
  plan.h = h;
  plan.prefix.push_back(0);
  if (h <= 0 || h > cap) return plan;
  std::sort(values_mult_item.begin(), values_mult_item.end(),
            [](const auto& a, const auto& b) {
              if (a.first != b.first) return a.first > b.first;
              return a.second.second < b.second.second;
            });
  i64 quota = cap / h;
  for (const auto& [value, rest] : values_mult_item) {
    const auto& [mult, item] = rest;
    const i64 take = std::min(mult, quota);
    for (i64 c = 0; c < take; ++c) {
      plan.prefix.push_back(plan.prefix.back() + value);
      plan.copy_item.push_back(item);
    }
    quota -= take;
    if (quota == 0) break;
  }
  return plan;
}

struct ProfileOptions {
  // Keep per-layer argmax arrays (O(s * cap) ints) so recovery is O(s + t').
  // When false, recovery recomputes the layers transiently.
  bool store_witnesses = true;
};

/// Optimal values of the equality-constrained program for every capacity
/// 0..cap: values()[c] = max sum of item values over count vectors x with
/// sum size_i * x_i = c exactly and 0 <= x_i <= mult_i; kNegInf when no such
/// x exists. Layer h folds w^(h) into the running profile with one SMAWK
/// row-maxima pass per remainder class mod h.
class ValueProfile {
 public:
  ValueProfile(std::vector<Item> items, i64 cap, ProfileOptions opts = {})
      : items_(std::move(items)), cap_(cap), opts_(opts) {
    values_.assign(static_cast<size_t>(cap_) + 1, kNegInf);
    values_[0] = 0;
    build_classes();
    run_layers(opts_.store_witnesses ? &take_ : nullptr, values_);
  }

  const std::vector<i64>& values() const { return values_; }
  i64 cap() const { return cap_; }
  const std::vector<Item>& items() const { return items_; }

  /// Counts x with size-weighted sum exactly t' and value values()[t'].
  SolutionVector recover_counts(i64 t) const {
    if (t < 0 || t > cap_ || !is_finite(values_[static_cast<size_t>(t)]))
      throw InputError("recover_counts: capacity unreachable");
    std::vector<i64> counts(items_.size(), 0);
    const std::vector<std::vector<int32_t>>* take = &take_;
    std::vector<std::vector<int32_t>> transient;
    if (!opts_.store_witnesses) {
      std::vector<i64> scratch(static_cast<size_t>(cap_) + 1, kNegInf);
      scratch[0] = 0;
      run_layers(&transient, scratch);
      take = &transient;
    }
    i64 c = t;
    for (i64 layer = static_cast<i64>(classes_.size()) - 1; layer >= 0; --layer) {
      const SizeClassPlan& plan = classes_[static_cast<size_t>(layer)];
      const i64 m = (*take)[static_cast<size_t>(layer)][static_cast<size_t>(c)];
      for (i64 k = 0; k < m; ++k)
        ++counts[static_cast<size_t>(plan.copy_item[static_cast<size_t>(k)])];
      c -= m * plan.h;
    }
    if (c != 0) throw InternalError("profile witness walk did not close");
    KnapsackInstance view;
    view.items = items_;
    SolutionVector sol = make_solution(view, std::move(counts));
    if (sol.total_size != t || sol.total_value != values_[static_cast<size_t>(t)])
      throw InternalError("profile witness mismatch");
    return sol;
  }

 private:
  void build_classes() {
    const i64 s = cap_ > 0 ? std::min<i64>(cap_, max_size()) : 0;
    std::vector<std::vector<std::pair<i64, std::pair<i64, i64>>>> buckets(
        static_cast<size_t>(s) + 1);
    for (size_t i = 0; i < items_.size(); ++i) {
      const Item& it = items_[i];
      if (it.size <= s)
        buckets[static_cast<size_t>(it.size)].push_back(
            {it.value, {it.mult, static_cast<i64>(i)}});
    }
    for (i64 h = 1; h <= s; ++h)
      if (!buckets[static_cast<size_t>(h)].empty())
        classes_.push_back(
            size_class_profile(h, std::move(buckets[static_cast<size_t>(h)]), cap_));
  }

  i64 max_size() const {
    i64 s = 0;
    for (const Item& it : items_) s = std::max(s, it.size);
    return s;
  }

  // Folds every size class into `w`; when `take` is non-null, records the
  // per-capacity copy counts chosen at each layer. One band_row_maxima pass
  // per remainder class handles the -inf entries of `w`.
  void run_layers(std::vector<std::vector<int32_t>>* take, std::vector<i64>& w) const {
    if (take) {
      take->clear();
      take->reserve(classes_.size());
    }
    std::vector<i64> column;
    for (const SizeClassPlan& plan : classes_) {
      const i64 h = plan.h;
      std::vector<int32_t> layer_take;
      if (take) layer_take.assign(static_cast<size_t>(cap_) + 1, 0);
      for (i64 r = 0; r < h && r <= cap_; ++r) {
        const i64 rows = (cap_ - r) / h + 1;
        column.resize(static_cast<size_t>(rows));
        for (i64 j = 0; j < rows; ++j)
          column[static_cast<size_t>(j)] = w[static_cast<size_t>(j * h + r)];
        const auto maxima = band_row_maxima(column, plan.prefix);
        for (i64 i = 0; i < rows; ++i) {
          const auto& [j, val] = maxima[static_cast<size_t>(i)];
          const i64 c = i * h + r;
          w[static_cast<size_t>(c)] = val;
          if (take)
            layer_take[static_cast<size_t>(c)] =
                is_finite(val) ? static_cast<int32_t>(i - j) : 0;
        }
      }
      if (take) take->push_back(std::move(layer_take));
    }
  }

  std::vector<Item> items_;
  i64 cap_;
  ProfileOptions opts_;
  std::vector<SizeClassPlan> classes_;
  std::vector<i64> values_;
  std::vector<std::vector<int32_t>> take_;
};

/// Convenience entry point matching the underlying program: all-capacities
/// equality-constrained optimal values for possibly negative item values.
inline ValueProfile equality_profiles(std::vector<Item> items, i64 cap,
                                      ProfileOptions opts = {}) {
  return ValueProfile(std::move(items), cap, opts);
}

}  // namespace knap

#endif  // KNAP_PROFILE_HPP
