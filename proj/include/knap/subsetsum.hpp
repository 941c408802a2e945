#ifndef KNAP_SUBSETSUM_HPP
#define KNAP_SUBSETSUM_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "knap/dense.hpp"
#include "knap/instance.hpp"
#include "knap/prefix.hpp"
#include "knap/sumset.hpp"
#include "knap/util.hpp"

namespace knap {

struct SubsetSumConfig {
  i64 candidate_c = 64;  // candidate window covers candidate_c * s^(5/3)
  // Below this total sum the pipeline is skipped and the answer comes from
  // one bounded sumset (the small-Sigma case split).
  i64 direct_sigma_threshold = 256;
  bool force_pipeline = false;  // tests: never take the direct shortcut
  bool deterministic_select = false;
  // Allowed one-sided miss probability. The deterministic backend never
  // misses; the knob exists so a randomized backend could be swapped in
  // without changing callers.
  double allowed_miss_prob = 0.0;
  DenseConfig dense;
};

/// Bundle split: each item yields up_mult bundles of k copies in the upper
/// part and down_mult single copies in the lower part, with
/// mult = k * up_mult + down_mult, up_mult = max(0, floor(mult/k) - 8).
struct BundleSplit {
  i64 k = 1;
  std::vector<i64> up_mult;
  std::vector<i64> down_mult;
};

inline BundleSplit bundle_split(const std::vector<SubsetSumItem>& items, i64 k) {
  BundleSplit split;
  split.k = std::max<i64>(k, 1);
  split.up_mult.reserve(items.size());
  split.down_mult.reserve(items.size());
  for (const SubsetSumItem& it : items) {
    const i64 up = std::max<i64>(0, it.mult / split.k - 8);
    split.up_mult.push_back(up);
    split.down_mult.push_back(it.mult - split.k * up);
  }
  return split;
}

/// Robust split of a prefix solution: p = k * p_up + p_down componentwise,
/// chosen so that changing p_i by less than k never forces p_up to move.
/// The middle case is capped at the bundle bound: the uncapped floor(p/k)-2
/// can exceed floor(u/k)-8 when p sits within 6k of u, and the cap keeps
/// 0 <= p_up <= up_mult while p_down retains slack of at least 2k on each
/// side (|p_up - floor(p/k)| stays at most 8 either way).
struct RobustSplit {
  std::vector<i64> p_up;
  std::vector<i64> p_down;
};

inline RobustSplit robust_split(const std::vector<i64>& p,
                                const std::vector<i64>& u, i64 k) {
  RobustSplit rs;
  rs.p_up.resize(p.size());
  rs.p_down.resize(p.size());
  for (size_t i = 0; i < p.size(); ++i) {
    i64 up;
    if (p[i] <= 4 * k || u[i] <= 8 * k) {
      up = 0;
    } else if (p[i] >= u[i] - 4 * k) {
      up = u[i] / k - 8;
    } else {
      up = std::min(p[i] / k - 2, u[i] / k - 8);
    }
    rs.p_up[i] = up;
    rs.p_down[i] = p[i] - k * up;
  }
  return rs;
}

/// Candidate values t' = t_p + a - b with a from the sums of unselected
/// bundles and b from the sums of selected ones, both capped. Every member
/// is a subset sum of the bundle part, with an explicit witness.
class CandidateSet {
 public:
  CandidateSet(const std::vector<SubsetSumItem>& items, const BundleSplit& split,
               const RobustSplit& rsplit, i64 cap)
      : items_(items), split_(split), rsplit_(rsplit), cap_(cap) {
    std::vector<SubsetSumItem> minus_items, plus_items;
    for (size_t i = 0; i < items.size(); ++i) {
      t_p_ += rsplit.p_up[i] * items[i].size;
      if (rsplit.p_up[i] > 0) {
        minus_items.push_back({items[i].size, rsplit.p_up[i]});
        minus_map_.push_back(static_cast<i64>(i));
      }
      const i64 rest = split.up_mult[i] - rsplit.p_up[i];
      if (rest > 0) {
        plus_items.push_back({items[i].size, rest});
        plus_map_.push_back(static_cast<i64>(i));
      }
    }
    s_minus_ = bounded_subset_sums(minus_items, cap_);
    s_plus_ = bounded_subset_sums(plus_items, cap_);
    // members[j] <=> t_p + (j - cap) attainable as a - b.
    BitVec reversed(cap_ + 1);
    s_minus_.bits().for_each_set([&](i64 b) {
      reversed.set(cap_ - b);
      return true;
    });
    BitVec plus_bits = s_plus_.bits();
    members_ = BitVec(2 * cap_ + 1);
    reversed.for_each_set([&](i64 i) {
      members_.or_shifted(plus_bits, i);
      return true;
    });
  }

  i64 t_p() const { return t_p_; }
  const SumsetWithWitness& s_plus() const { return s_plus_; }
  const SumsetWithWitness& s_minus() const { return s_minus_; }

  /// Visits members ascending within [lo, hi] until f returns false.
  template <class F>
  void for_each_member(i64 lo, i64 hi, F&& f) const {
    members_.for_each_set([&](i64 j) {
      const i64 t = t_p_ + j - cap_;
      if (t > hi) return false;
      if (t < lo) return true;
      return static_cast<bool>(f(t));
    });
  }

  std::vector<i64> all_members() const {
    std::vector<i64> out;
    for_each_member(t_p_ - cap_, t_p_ + cap_, [&](i64 t) {
      out.push_back(t);
      return true;
    });
    return out;
  }

  /// Bundle counts x_up with sum_i x_up_i * size_i = member; 0 <= x_up <= up.
  std::vector<i64> recover_up_counts(i64 member) const {
    const i64 diff = member - t_p_;
    i64 found_a = -1;
    s_plus_.bits().for_each_set([&](i64 a) {
      const i64 b = a - diff;
      if (b > cap_) return true;
      if (b >= 0 && s_minus_.contains(b)) {
        found_a = a;
        return false;
      }
      return true;
    });
    if (found_a < 0) throw InputError("not a candidate member");
    std::vector<i64> x = rsplit_.p_up;
    for (const SumsetPart& part : s_minus_.recover(found_a - diff))
      x[static_cast<size_t>(minus_map_[static_cast<size_t>(part.item)])] -=
          part.count;
    for (const SumsetPart& part : s_plus_.recover(found_a))
      x[static_cast<size_t>(plus_map_[static_cast<size_t>(part.item)])] +=
          part.count;
    for (size_t i = 0; i < x.size(); ++i)
      if (x[i] < 0 || x[i] > split_.up_mult[i])
        throw InternalError("candidate witness out of bundle bounds");
    return x;
  }

 private:
  const std::vector<SubsetSumItem>& items_;
  const BundleSplit& split_;
  const RobustSplit& rsplit_;
  i64 cap_;
  i64 t_p_ = 0;
  SumsetWithWitness s_plus_ = SumsetWithWitness::empty(0);
  SumsetWithWitness s_minus_ = SumsetWithWitness::empty(0);
  std::vector<i64> minus_map_, plus_map_;
  BitVec members_;
};

struct SubsetSumResult {
  bool yes = false;
  std::vector<i64> counts;  // per normalized item; empty when NO
};

namespace detail {

inline i64 icbrt(i64 v) {
  i64 k = 0;
  while ((k + 1) * (k + 1) * (k + 1) <= v) ++k;
  return k;
}

inline SubsetSumResult verified_yes(const SubsetSumInstance& inst,
                                    std::vector<i64> counts) {
  SubsetSumResult res;
  res.yes = true;
  res.counts = std::move(counts);
  const VerifyReport rep = verify_solution(inst, res.counts);
  if (!rep.feasible)
    throw InternalError("subset sum produced a non-verifying witness");
  return res;
}

inline SubsetSumResult solve_direct(const SubsetSumInstance& inst) {
  const SumsetWithWitness table = bounded_subset_sums(inst.items, inst.target);
  if (!table.contains(inst.target)) return {};
  std::vector<i64> counts(inst.items.size(), 0);
  for (const SumsetPart& p : table.recover(inst.target))
    counts[static_cast<size_t>(p.item)] = p.count;
  return verified_yes(inst, std::move(counts));
}

}  // namespace detail

/// Decides whether the target is a subset sum and returns a verified witness
/// when it is. Pipeline: proximity preprocessing caps multiplicities at 4s,
/// a bundle split with k = floor(s^(1/3)) separates bulk bundles from
/// remainders, the remainder part gets a dense membership oracle, and the
/// bundle part contributes a candidate window around the robust split of the
/// prefix solution. Deterministic end to end with the default backend.
inline SubsetSumResult solve_subset_sum(const SubsetSumInstance& inst,
                                        SubsetSumConfig cfg = {}) {
  const i64 t = inst.target;
  if (t == 0) return detail::verified_yes(inst, std::vector<i64>(inst.items.size(), 0));
  if (t > inst.sigma) return {};
  if (t == inst.sigma) {
    std::vector<i64> all;
    for (const SubsetSumItem& it : inst.items) all.push_back(it.mult);
    return detail::verified_yes(inst, std::move(all));
  }
  if (!cfg.force_pipeline && inst.sigma <= cfg.direct_sigma_threshold)
    return detail::solve_direct(inst);

  // Proximity preprocessing, instantiated with value = size.
  const KnapsackInstance as_knap = as_knapsack(inst);
  const ReducedInstance red =
      proximity_reduce(as_knap, -1, cfg.deterministic_select);
  const i64 t_red = t - red.baseline_size;
  if (t_red < 0) throw InternalError("baseline exceeded the target");
  std::vector<SubsetSumItem> r_items;
  r_items.reserve(red.instance.items.size());
  for (const Item& it : red.instance.items) r_items.push_back({it.size, it.mult});

  const i64 s = std::max<i64>(red.instance.max_size, 1);
  const i64 k = std::max<i64>(1, detail::icbrt(s));
  const BundleSplit split = bundle_split(r_items, k);

  std::vector<SubsetSumItem> down_items;
  std::vector<i64> down_map;
  i64 sigma_down = 0;
  for (size_t i = 0; i < r_items.size(); ++i)
    if (split.down_mult[i] > 0) {
      down_items.push_back({r_items[i].size, split.down_mult[i]});
      down_map.push_back(static_cast<i64>(i));
      sigma_down += r_items[i].size * split.down_mult[i];
    }
  const DenseOracle oracle(down_items, cfg.dense);

  const PrefixSolution prefix =
      maximal_prefix(red.instance, cfg.deterministic_select);
  const RobustSplit rsplit = robust_split(prefix.counts, split.up_mult, k);

  // Window wide enough for the proximity mass 38 s^2 / k plus slack; the
  // s^(5/3) form dominates once k is the true cube root.
  const i64 cap = std::max<i64>(
      cfg.candidate_c *
          static_cast<i64>(std::ceil(std::pow(static_cast<double>(s), 5.0 / 3.0))),
      38 * s * s / k + s + 1);
  if (cap > (i64{1} << 22))
    throw BudgetError("item sizes too large for the candidate window");
  const CandidateSet candidates(r_items, split, rsplit, cap);

  // t_red = k * t_up + t_down needs t_down in [0, sigma_down].
  const i64 lo = (t_red - sigma_down + k - 1) / k;
  const i64 hi = t_red / k;
  std::optional<i64> hit;
  candidates.for_each_member(std::max<i64>(lo, 0), hi, [&](i64 cand) {
    if (oracle.query(t_red - k * cand)) {
      hit = cand;
      return false;
    }
    return true;
  });
  if (!hit.has_value()) return {};

  const std::vector<i64> x_up = candidates.recover_up_counts(*hit);
  const std::vector<i64> down_counts = oracle.recover(t_red - k * *hit);
  std::vector<i64> x_red(r_items.size(), 0);
  for (size_t i = 0; i < r_items.size(); ++i) x_red[i] = k * x_up[i];
  for (size_t j = 0; j < down_map.size(); ++j)
    x_red[static_cast<size_t>(down_map[j])] += down_counts[j];
  std::vector<i64> counts = red.baseline;
  for (size_t i = 0; i < x_red.size(); ++i)
    counts[static_cast<size_t>(red.orig_index[i])] += x_red[i];
  return detail::verified_yes(inst, std::move(counts));
}

}  // namespace knap

#endif  // KNAP_SUBSETSUM_HPP
