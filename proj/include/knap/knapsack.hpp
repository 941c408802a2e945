#ifndef KNAP_KNAPSACK_HPP
#define KNAP_KNAPSACK_HPP

#include <algorithm>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "knap/instance.hpp"
#include "knap/prefix.hpp"
#include "knap/profile.hpp"
#include "knap/util.hpp"

namespace knap {

struct KnapsackOptions {
  bool deterministic_select = false;
  bool store_witnesses = true;
};

namespace detail {

/// Inequality (<=) transform of an equality profile: running maximum over
/// capacities with the attaining equality capacity carried forward.
struct IneqTransform {
  std::vector<i64> values;
  std::vector<i64> pick;

  explicit IneqTransform(const std::vector<i64>& eq) {
    values.resize(eq.size());
    pick.resize(eq.size());
    i64 best = kNegInf, best_at = -1;
    for (size_t c = 0; c < eq.size(); ++c) {
      if (eq[c] > best) {
        best = eq[c];
        best_at = static_cast<i64>(c);
      }
      values[c] = best;
      pick[c] = best_at;
    }
  }

  i64 value_at(i64 c) const {
    c = std::min<i64>(c, static_cast<i64>(values.size()) - 1);
    return c < 0 ? kNegInf : values[static_cast<size_t>(c)];
  }
};

/// The two per-k solution families around a prefix anchor: x_plus solves the
/// inequality-constrained gain program over residual multiplicities u_i - p_i
/// and x_minus the equality-constrained removal program over p_i (maximizing
/// the negated values, so value(x_minus(k)) = -cost of removing size k).
struct TwoSidedCorrection {
  std::vector<Item> minus_items, plus_items;  // carry reduced-instance indices
  std::vector<i64> minus_map, plus_map;
  std::unique_ptr<ValueProfile> minus_prof, plus_prof;
  IneqTransform plus_ineq{std::vector<i64>{0}};
  i64 k_max = 0;

  TwoSidedCorrection(const KnapsackInstance& red, const PrefixSolution& p,
                     i64 k_max_in, i64 plus_cap, const KnapsackOptions& opts) {
    k_max = k_max_in;
    for (i64 i = 0; i < red.n(); ++i) {
      const Item& it = red.items[static_cast<size_t>(i)];
      const i64 pi = p.counts[static_cast<size_t>(i)];
      if (pi > 0) {
        minus_items.push_back({it.size, -it.value, pi});
        minus_map.push_back(i);
      }
      if (it.mult - pi > 0) {
        plus_items.push_back({it.size, it.value, it.mult - pi});
        plus_map.push_back(i);
      }
    }
    ProfileOptions popts{opts.store_witnesses};
    minus_prof = std::make_unique<ValueProfile>(minus_items, k_max, popts);
    plus_prof = std::make_unique<ValueProfile>(plus_items, plus_cap, popts);
    plus_ineq = IneqTransform(plus_prof->values());
  }

  /// Best achievable value for residual slack delta, over k in [0, k_max].
  /// Ties break toward smaller k.
  std::pair<i64, i64> best_for_slack(i64 delta, i64 prefix_value) const {
    i64 best = kNegInf, best_k = -1;
    const auto& mv = minus_prof->values();
    for (i64 k = 0; k <= k_max; ++k) {
      const i64 m = mv[static_cast<size_t>(k)];
      if (!is_finite(m) || k + delta < 0) continue;
      const i64 pl = plus_ineq.value_at(k + delta);
      if (!is_finite(pl)) continue;
      const i64 cand = prefix_value + m + pl;
      if (cand > best) {
        best = cand;
        best_k = k;
      }
    }
    return {best, best_k};
  }

  /// Reduced-instance counts of the solution p - x_minus(k) + x_plus(k+delta).
  std::vector<i64> assemble(const KnapsackInstance& red, const PrefixSolution& p,
                            i64 k, i64 delta) const {
    std::vector<i64> x(p.counts);
    const SolutionVector xm = minus_prof->recover_counts(k);
    for (size_t i = 0; i < minus_map.size(); ++i)
      x[static_cast<size_t>(minus_map[i])] -= xm.counts[i];
    const i64 plus_at = plus_ineq.pick[static_cast<size_t>(std::min<i64>(
        k + delta, static_cast<i64>(plus_ineq.pick.size()) - 1))];
    const SolutionVector xp = plus_prof->recover_counts(plus_at);
    for (size_t i = 0; i < plus_map.size(); ++i)
      x[static_cast<size_t>(plus_map[i])] += xp.counts[i];
    for (i64 i = 0; i < red.n(); ++i)
      if (x[static_cast<size_t>(i)] < 0 ||
          x[static_cast<size_t>(i)] > red.items[static_cast<size_t>(i)].mult)
        throw InternalError("assembled correction out of bounds");
    return x;
  }
};

inline SolutionVector checked_result(const KnapsackInstance& inst,
                                     SolutionVector sol, i64 capacity) {
  const VerifyReport rep =
      detail::verify_counts(inst.items, capacity, sol.counts, false);
  if (!rep.feasible) throw InternalError("solver produced infeasible solution");
  return sol;
}

}  // namespace detail

/// Optimal solutions for every capacity t' in a window [t_low, t], sharing a
/// single prefix anchor and one pair of correction profiles. Witnesses are
/// recovered on demand.
class WindowSolutions {
 public:
  WindowSolutions(const KnapsackInstance& inst, i64 window_low,
                  KnapsackOptions opts = {})
      : inst_(inst), opts_(opts) {
    const i64 t = inst.capacity;
    t_low_ = std::clamp<i64>(window_low, 0, t);
    const i64 width = t - t_low_;
    const i64 s_hint = std::max<i64>(inst.max_size, 1);

    // The anchor prefix for t sits further from the per-target optima than
    // the single-capacity proximity bound: greedy prefixes across the window
    // differ by fewer than width + s copies, so the corrections range over
    // k < s * (3s + width) and the baseline keeps slack 3s + width per item.
    red_ = proximity_reduce(inst, 3 * s_hint + width, opts.deterministic_select);
    const KnapsackInstance& R = red_.instance;
    values_.assign(static_cast<size_t>(width) + 1, 0);
    best_k_.assign(static_cast<size_t>(width) + 1, -1);
    if (R.items.empty()) {
      for (i64 i = 0; i <= width; ++i)
        values_[static_cast<size_t>(i)] = red_.baseline_value;
      return;
    }
    prefix_ = maximal_prefix(R, opts.deterministic_select);
    const i64 s = std::max<i64>(R.max_size, 1);
    const i64 k_max = s * (3 * s + width);
    if (k_max > (i64{1} << 28))
      throw BudgetError("window too wide for the correction profiles");
    const i64 delta = prefix_.slack;
    const i64 plus_cap =
        std::min(k_max + std::max<i64>(delta, 0),
                 R.sigma_size - prefix_.total_size);
    corr_ = std::make_unique<detail::TwoSidedCorrection>(R, prefix_, k_max,
                                                         std::max<i64>(plus_cap, 0),
                                                         opts);
    for (i64 i = 0; i <= width; ++i) {
      const i64 t_red = (t_low_ + i) - red_.baseline_size;
      const i64 dslack = t_red - prefix_.total_size;
      const auto [best, k] = corr_->best_for_slack(dslack, prefix_.total_value);
      if (!is_finite(best)) throw InternalError("window combination found no candidate");
      values_[static_cast<size_t>(i)] = red_.baseline_value + best;
      best_k_[static_cast<size_t>(i)] = k;
    }
  }

  i64 t_low() const { return t_low_; }
  i64 t_high() const { return inst_.capacity; }
  const std::vector<i64>& values() const { return values_; }

  i64 value_at(i64 t_prime) const {
    check_range(t_prime);
    return values_[static_cast<size_t>(t_prime - t_low_)];
  }

  SolutionVector recover(i64 t_prime) const {
    check_range(t_prime);
    const i64 k = best_k_[static_cast<size_t>(t_prime - t_low_)];
    if (k < 0) {
      SolutionVector sol = make_solution(inst_, red_.baseline);
      return detail::checked_result(inst_, std::move(sol), t_prime);
    }
    const i64 t_red = t_prime - red_.baseline_size;
    const std::vector<i64> x =
        corr_->assemble(red_.instance, prefix_, k, t_red - prefix_.total_size);
    SolutionVector sol = red_.lift(inst_, x);
    if (sol.total_value != value_at(t_prime))
      throw InternalError("window witness value mismatch");
    return detail::checked_result(inst_, std::move(sol), t_prime);
  }

 private:
  void check_range(i64 t_prime) const {
    if (t_prime < t_low_ || t_prime > inst_.capacity)
      throw InputError("capacity outside the solved window");
  }

  KnapsackInstance inst_;
  KnapsackOptions opts_;
  i64 t_low_ = 0;
  ReducedInstance red_;
  PrefixSolution prefix_;
  std::unique_ptr<detail::TwoSidedCorrection> corr_;
  std::vector<i64> values_;
  std::vector<i64> best_k_;
};

/// Optimal solutions for every t' in {t - s, ..., t} (or from window_low when
/// given), reusing one prefix solution and one pair of correction profiles.
inline WindowSolutions solve_all_targets(const KnapsackInstance& inst,
                                         i64 window_low = -1,
                                         KnapsackOptions opts = {}) {
  if (window_low < 0) window_low = inst.capacity - inst.max_size;
  return WindowSolutions(inst, window_low, opts);
}

/// Exact Knapsack solver, cost O(n + s^3) independent of the capacity:
/// proximity reduction, maximal prefix, two equality profiles of length
/// 2s^2 + s, then the best combination p - x_minus(k) + x_plus(k + slack)
/// over k in [0, 2s^2].
inline SolutionVector solve_small_sizes(const KnapsackInstance& inst,
                                        KnapsackOptions opts = {}) {
  const ReducedInstance red = proximity_reduce(inst, -1, opts.deterministic_select);
  const KnapsackInstance& R = red.instance;
  if (R.items.empty())
    return detail::checked_result(inst, make_solution(inst, red.baseline),
                                  inst.capacity);
  const PrefixSolution p = maximal_prefix(R, opts.deterministic_select);
  if (p.takes_everything(R.items))
    return detail::checked_result(inst, red.lift(inst, p.counts), inst.capacity);

  const i64 s = std::max<i64>(R.max_size, 1);
  const i64 k_max = 2 * s * s;
  const i64 profile_cap = k_max + s;  // slack < s, so k + slack stays inside
  detail::TwoSidedCorrection corr(R, p, k_max, profile_cap, opts);
  const auto [best, k] = corr.best_for_slack(p.slack, p.total_value);
  if (!is_finite(best) || k < 0)
    throw InternalError("correction scan found no candidate");
  const std::vector<i64> x = corr.assemble(R, p, k, p.slack);
  SolutionVector sol = red.lift(inst, x);
  if (sol.total_value != red.baseline_value + best)
    throw InternalError("witness value mismatch");
  return detail::checked_result(inst, std::move(sol), inst.capacity);
}

/// Exact Knapsack solver with cost O(n + v^3): solves the complementary
/// problem on the size/value-swapped instance for all candidate budgets of
/// the complement optimum and returns u minus the best complement.
inline SolutionVector solve_small_values(const KnapsackInstance& inst,
                                         KnapsackOptions opts = {}) {
  const i64 t = inst.capacity;
  if (inst.items.empty())
    return make_solution(inst, std::vector<i64>(inst.items.size(), 0));
  if (inst.sigma_size <= t) {
    std::vector<i64> all;
    for (const Item& it : inst.items) all.push_back(it.mult);
    return detail::checked_result(inst, make_solution(inst, std::move(all)), t);
  }
  const i64 v = inst.max_value;
  if (v == 0)
    return make_solution(inst, std::vector<i64>(inst.items.size(), 0));

  const i64 val_p = maximal_prefix(inst, opts.deterministic_select).total_value;
  const i64 c_hi = inst.sigma_value - val_p;
  const i64 c_lo = std::max<i64>(0, c_hi - (v - 1));

  // Swapped instance: budget on forgone value, maximize forgone size.
  // Zero-value items are free to forgo and are always fully forgone.
  KnapsackInstance swapped;
  swapped.capacity = c_hi;
  std::vector<i64> jmap;
  i64 free_size = 0;
  for (i64 i = 0; i < inst.n(); ++i) {
    const Item& it = inst.items[static_cast<size_t>(i)];
    if (it.value == 0) {
      free_size += it.size * it.mult;
      continue;
    }
    const i64 mult = std::min(it.mult, c_hi / it.value);
    if (mult >= 1) {
      swapped.items.push_back({it.value, it.size, mult});
      jmap.push_back(i);
    }
  }
  detail::recompute_stats(swapped);

  const i64 target = inst.sigma_size - t;
  const WindowSolutions win(swapped, c_lo, opts);
  for (i64 c = c_lo; c <= c_hi; ++c) {
    if (free_size + win.value_at(c) < target) continue;
    const SolutionVector y = win.recover(c);
    std::vector<i64> x(inst.items.size(), 0);
    for (i64 i = 0; i < inst.n(); ++i)
      if (inst.items[static_cast<size_t>(i)].value > 0)
        x[static_cast<size_t>(i)] = inst.items[static_cast<size_t>(i)].mult;
    for (size_t j = 0; j < jmap.size(); ++j)
      x[static_cast<size_t>(jmap[j])] -= y.counts[j];
    return detail::checked_result(inst, make_solution(inst, std::move(x)), t);
  }
  throw InternalError("complement scan found no feasible budget");
}

/// Dispatches to the cubic-in-s or cubic-in-v algorithm by min(s, v).
inline SolutionVector solve_knapsack(const KnapsackInstance& inst,
                                     KnapsackOptions opts = {}) {
  if (inst.max_size <= inst.max_value) return solve_small_sizes(inst, opts);
  return solve_small_values(inst, opts);
}

}  // namespace knap

#endif  // KNAP_KNAPSACK_HPP
