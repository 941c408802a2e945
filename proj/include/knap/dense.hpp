#ifndef KNAP_DENSE_HPP
#define KNAP_DENSE_HPP

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "knap/instance.hpp"
#include "knap/sumset.hpp"
#include "knap/util.hpp"

namespace knap {

/// The additive-combinatorics machinery never pins its hidden constants;
/// these knobs are calibrated empirically against the exactness test
/// families and pinned by the acceptance suite. Non-normative.
struct DenseConfig {
  double density_delta = 16.0;  // dense iff N^2 >= delta * u * s
  double lambda_const = 1.0;    // lambda = const * u*s*Sigma/N^2 * log2(2u)^exp
  int lambda_log_exp = 1;
  double low_table_mult = 2.0;  // decomposition low-sum cap = mult * lambda
  // Residue-seed size tau = const * u*Sigma/N^2 * log2(2u)^exp; the log
  // factor makes the seed's subset sums cover the residue classes the
  // greedy recovery walks through.
  double tau_const = 0.5;
  int tau_log_exp = 1;
  // Almost divisor: |not divisible| <= alpha * u*Sigma/N^2 * log2(2u)^exp.
  // Scales with tau so a divisor-free multiset always has tau non-divisible
  // elements available per prime.
  double alpha = 1.0;
  int alpha_log_exp = 1;
  double fallback_const = 0.5;  // fallback when Sigma <= const * s^1.5 u^0.5 * log
  int fallback_log_exp = 0;
  // Max Sigma/2 the fallback table accepts; stays within one transform.
  i64 fallback_budget = i64{1} << 21;
  i64 copy_budget = i64{1} << 22;      // max flattened copies a dense build accepts
};

/// Caller must fall back to the direct table; the instance is not dense
/// enough for the structural machinery.
struct DensityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace dense_detail {

inline i64 ceil_log2(i64 v) {
  i64 e = 0;
  while ((i64{1} << e) < v) ++e;
  return e;
}

inline double log_pow(i64 u, int exp) {
  double f = 1.0;
  const double base = std::max<double>(1.0, static_cast<double>(ceil_log2(2 * std::max<i64>(u, 1))));
  for (int i = 0; i < exp; ++i) f *= base;
  return f;
}

inline std::vector<i64> primes_up_to(i64 n) {
  std::vector<char> sieve(static_cast<size_t>(std::max<i64>(n + 1, 2)), 1);
  std::vector<i64> primes;
  for (i64 p = 2; p <= n; ++p) {
    if (!sieve[static_cast<size_t>(p)]) continue;
    primes.push_back(p);
    for (i64 q = p * p; q <= n; q += p) sieve[static_cast<size_t>(q)] = 0;
  }
  return primes;
}

}  // namespace dense_detail

struct DensityStats {
  i64 n_copies = 0;  // N
  i64 max_mult = 0;  // u
  i64 max_size = 0;  // s
  i64 sigma = 0;
  double rho = 0.0;  // N^2 / (u * s)
  i64 lambda = 1;

  bool dense(const DenseConfig& cfg) const { return rho >= cfg.density_delta; }
};

/// Stats over a (size, mult) multiset; multiplicities of equal sizes are
/// aggregated before taking u.
inline DensityStats density_stats(const std::vector<SubsetSumItem>& items,
                                  const DenseConfig& cfg) {
  DensityStats st;
  std::vector<std::pair<i64, i64>> by_size;
  for (const SubsetSumItem& it : items) by_size.push_back({it.size, it.mult});
  std::sort(by_size.begin(), by_size.end());
  for (size_t i = 0; i < by_size.size();) {
    size_t j = i;
    i64 mult = 0;
    while (j < by_size.size() && by_size[j].first == by_size[i].first)
      mult += by_size[j++].second;
    st.max_mult = std::max(st.max_mult, mult);
    st.max_size = std::max(st.max_size, by_size[i].first);
    st.n_copies += mult;
    st.sigma += by_size[i].first * mult;
    i = j;
  }
  if (st.n_copies > 0) {
    st.rho = static_cast<double>(st.n_copies) * static_cast<double>(st.n_copies) /
             (static_cast<double>(st.max_mult) * static_cast<double>(st.max_size));
    const double lam = cfg.lambda_const * static_cast<double>(st.max_mult) *
                       static_cast<double>(st.max_size) *
                       static_cast<double>(st.sigma) /
                       (static_cast<double>(st.n_copies) * static_cast<double>(st.n_copies)) *
                       dense_detail::log_pow(st.max_mult, cfg.lambda_log_exp);
    st.lambda = std::max<i64>(1, static_cast<i64>(std::ceil(lam)));
  }
  return st;
}

/// One element of the divisor-reduced multiset, with provenance.
struct DenseElem {
  i64 size = 0;  // already divided by d
  i64 mult = 0;
  i64 orig_item = 0;
};

struct DivisorReduction {
  i64 d = 1;
  std::vector<DenseElem> reduced;  // X' = X(d)/d
};

/// Finds d >= 1 such that X' = X(d)/d has no alpha-almost divisor:
/// repeatedly divides out any prime q whose non-divisible copy count is at
/// most alpha * u * Sigma / N^2 on the current multiset. Primes above the
/// current maximum size divide nothing and are never almost divisors.
inline DivisorReduction divisor_reduce(const std::vector<SubsetSumItem>& items,
                                       const DenseConfig& cfg = {}) {
  DensityStats st = density_stats(items, cfg);
  if (!st.dense(cfg))
    throw DensityError("multiset is not dense enough for divisor reduction");
  DivisorReduction out;
  out.reduced.reserve(items.size());
  for (size_t i = 0; i < items.size(); ++i)
    if (items[i].mult > 0)
      out.reduced.push_back({items[i].size, items[i].mult, static_cast<i64>(i)});

  for (;;) {
    std::vector<SubsetSumItem> cur;
    cur.reserve(out.reduced.size());
    for (const DenseElem& e : out.reduced) cur.push_back({e.size, e.mult});
    const DensityStats cst = density_stats(cur, cfg);
    if (cst.n_copies == 0) break;
    const double threshold = cfg.alpha * static_cast<double>(cst.max_mult) *
                             static_cast<double>(cst.sigma) /
                             (static_cast<double>(cst.n_copies) *
                              static_cast<double>(cst.n_copies)) *
                             dense_detail::log_pow(cst.max_mult, cfg.alpha_log_exp);
    i64 almost = 0;
    for (i64 q : dense_detail::primes_up_to(cst.max_size)) {
      i64 not_div = 0;
      for (const DenseElem& e : out.reduced)
        if (e.size % q != 0) not_div += e.mult;
      if (static_cast<double>(not_div) <= threshold) {
        almost = q;
        break;
      }
    }
    if (almost == 0) break;
    out.d *= almost;
    std::vector<DenseElem> kept;
    for (const DenseElem& e : out.reduced)
      if (e.size % almost == 0) kept.push_back({e.size / almost, e.mult, e.orig_item});
    out.reduced = std::move(kept);
  }
  return out;
}

/// One copy of a reduced element.
struct DenseCopy {
  i64 size = 0;  // reduced units
  i64 orig_item = 0;
};

/// Partition X' = R (residue seed) + A (small elements) + G (bulk), with the
/// bounded subset sums of R + A precomputed for recovery.
struct DenseDecomposition {
  i64 tau = 0;
  i64 completeness_bound = 0;  // K = 42480 * u * Sigma * log(2u) / N^2
  std::vector<DenseCopy> r_part, a_part, g_part;
  std::vector<i64> g_prefix;  // g sorted descending; g_prefix[j] = sum of first j
  SumsetWithWitness low_sums = SumsetWithWitness::empty(0);
  std::vector<DenseCopy> low_copies;  // leaf ids of low_sums index into this
  i64 low_cap = 0;
};

/// Builds the decomposition of an almost-divisor-free dense multiset.
/// "Arbitrary subset" choices are fixed lowest-index-first so the
/// decomposition is byte-identical across runs.
inline DenseDecomposition build_decomposition(const std::vector<DenseElem>& reduced,
                                              const DenseConfig& cfg = {}) {
  std::vector<SubsetSumItem> plain;
  plain.reserve(reduced.size());
  for (const DenseElem& e : reduced) plain.push_back({e.size, e.mult});
  const DensityStats st = density_stats(plain, cfg);
  if (st.n_copies == 0) throw DensityError("empty multiset");

  const double ratio = static_cast<double>(st.max_mult) *
                       static_cast<double>(st.sigma) /
                       (static_cast<double>(st.n_copies) *
                        static_cast<double>(st.n_copies));
  DenseDecomposition dec;
  dec.tau = std::max<i64>(
      1, static_cast<i64>(std::ceil(cfg.tau_const * ratio *
                                    dense_detail::log_pow(st.max_mult, cfg.tau_log_exp))));
  dec.completeness_bound = static_cast<i64>(
      std::ceil(42480.0 * ratio *
                static_cast<double>(dense_detail::ceil_log2(2 * st.max_mult))));
  if (dec.tau > st.n_copies)
    throw DensityError("density too marginal for a residue seed");

  std::vector<DenseCopy> copies;
  copies.reserve(static_cast<size_t>(st.n_copies));
  for (const DenseElem& e : reduced)
    for (i64 c = 0; c < e.mult; ++c) copies.push_back({e.size, e.orig_item});

  std::vector<char> in_r(copies.size(), 0);
  for (i64 i = 0; i < dec.tau; ++i) in_r[static_cast<size_t>(i)] = 1;

  // Primes that divide more than half of the seed need extra non-divisible
  // elements to keep residues reachable.
  for (i64 p : dense_detail::primes_up_to(st.max_size)) {
    i64 not_div = 0;
    for (i64 i = 0; i < dec.tau; ++i)
      if (copies[static_cast<size_t>(i)].size % p != 0) ++not_div;
    if (2 * not_div >= dec.tau) continue;
    i64 need = dec.tau;
    for (size_t i = 0; i < copies.size() && need > 0; ++i)
      if (!in_r[i] && copies[i].size % p != 0) {
        in_r[i] = 1;
        --need;
      }
  }
  std::vector<std::pair<i64, size_t>> rest;  // (size, copy index)
  for (size_t i = 0; i < copies.size(); ++i) {
    if (in_r[i])
      dec.r_part.push_back(copies[i]);
    else
      rest.push_back({copies[i].size, i});
  }
  std::stable_sort(rest.begin(), rest.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  const size_t a_count =
      std::min(rest.size(), static_cast<size_t>(st.n_copies / 4));
  for (size_t i = 0; i < rest.size(); ++i) {
    if (i < a_count)
      dec.a_part.push_back(copies[rest[i].second]);
    else
      dec.g_part.push_back(copies[rest[i].second]);
  }
  std::stable_sort(dec.g_part.begin(), dec.g_part.end(),
                   [](const DenseCopy& a, const DenseCopy& b) {
                     return a.size > b.size;
                   });
  dec.g_prefix.assign(dec.g_part.size() + 1, 0);
  for (size_t j = 0; j < dec.g_part.size(); ++j)
    dec.g_prefix[j + 1] = dec.g_prefix[j] + dec.g_part[j].size;
  // The bulk must keep at least half the mass for the greedy recovery to
  // reach every target below Sigma/2; marginal densities fail this.
  if (2 * dec.g_prefix.back() < st.sigma)
    throw DensityError("density too marginal: residue seed eats the bulk");

  const DensityStats rst = density_stats(plain, cfg);
  dec.low_cap = std::max<i64>(
      static_cast<i64>(std::ceil(cfg.low_table_mult * static_cast<double>(rst.lambda))),
      st.max_size);
  dec.low_copies = dec.r_part;
  dec.low_copies.insert(dec.low_copies.end(), dec.a_part.begin(), dec.a_part.end());
  std::vector<SubsetSumItem> low_items;
  low_items.reserve(dec.low_copies.size());
  for (const DenseCopy& c : dec.low_copies) low_items.push_back({c.size, 1});
  dec.low_sums = bounded_subset_sums(low_items, dec.low_cap);
  return dec;
}

/// Constant-time membership oracle for all subset sums of a multiset, with
/// recovery. DENSE mode answers by the divisibility criterion after divisor
/// reduction; FALLBACK mode holds the full table up to Sigma/2.
class DenseOracle {
 public:
  enum class Mode { kDense, kFallback };

  explicit DenseOracle(std::vector<SubsetSumItem> items, DenseConfig cfg = {})
      : items_(std::move(items)), cfg_(cfg) {
    for (const SubsetSumItem& it : items_)
      if (it.size <= 0 || it.mult < 0) throw InputError("invalid dense oracle item");
    stats_ = density_stats(items_, cfg_);
    sigma_ = stats_.sigma;
    const double fb = cfg_.fallback_const *
                      std::pow(static_cast<double>(stats_.max_size), 1.5) *
                      std::sqrt(static_cast<double>(std::max<i64>(stats_.max_mult, 1))) *
                      dense_detail::log_pow(stats_.max_mult, cfg_.fallback_log_exp);
    const bool small_sigma = static_cast<double>(sigma_) <= fb;
    if (!small_sigma && stats_.dense(cfg_) && stats_.lambda < sigma_ / 2 &&
        stats_.n_copies <= cfg_.copy_budget) {
      try {
        build_dense();
        mode_ = Mode::kDense;
        return;
      } catch (const DensityError&) {
        // marginal density; the exact table below covers it
      }
    }
    if (sigma_ / 2 > cfg_.fallback_budget)
      throw BudgetError("dense oracle fallback table over budget");
    fallback_ = bounded_subset_sums(items_, sigma_ / 2);
    mode_ = Mode::kFallback;
  }

  Mode mode() const { return mode_; }
  i64 sigma() const { return sigma_; }
  i64 lambda() const { return stats_.lambda; }
  i64 divisor() const { return divisor_; }
  const DensityStats& stats() const { return stats_; }
  const DenseDecomposition& decomposition() const { return dec_; }

  /// Exact membership for 0 <= t <= Sigma. t above Sigma/2 is answered via
  /// Sigma - t, so query(t) == query(Sigma - t) by construction.
  bool query(i64 t) const {
    if (t < 0 || t > sigma_) throw InputError("query target out of range");
    if (t > sigma_ - t) t = sigma_ - t;
    if (mode_ == Mode::kFallback) return fallback_.contains(t);
    if (t <= stats_.lambda) return low_table_.contains(t);
    return mod_reach_[static_cast<size_t>(t % divisor_)];
  }

  /// Counts per item of a sub-multiset summing to t. query(t) must be true.
  std::vector<i64> recover(i64 t) const {
    if (!query(t)) throw InputError("recover: target is not a subset sum");
    if (t > sigma_ - t) {
      std::vector<i64> counts = recover(sigma_ - t);
      for (size_t i = 0; i < counts.size(); ++i)
        counts[i] = items_[i].mult - counts[i];
      return counts;
    }
    if (mode_ == Mode::kFallback) return from_parts(fallback_.recover(t));
    if (t <= stats_.lambda) return from_parts(low_table_.recover(t));

    // Residue part D from items not divisible by d, then the reduced
    // remainder via greedy bulk prefixes against the low-sum table.
    std::vector<i64> counts(items_.size(), 0);
    i64 rem = t;
    i64 res = t % divisor_;
    for (i64 j = static_cast<i64>(mod_take_.size()) - 1; j >= 0 && res != 0; --j) {
      if (!mod_take_[static_cast<size_t>(j)].test(res)) continue;
      const i64 item = mod_copies_[static_cast<size_t>(j)];
      ++counts[static_cast<size_t>(item)];
      rem -= items_[static_cast<size_t>(item)].size;
      res = (res - items_[static_cast<size_t>(item)].size % divisor_ + divisor_) %
            divisor_;
    }
    if (res != 0) throw InternalError("modular witness walk broke");
    if (rem < 0 || rem % divisor_ != 0)
      throw InternalError("dense recovery residue mismatch");
    i64 reduced_target = rem / divisor_;
    bool found = false;
    for (size_t j = 0; j < dec_.g_prefix.size(); ++j) {
      const i64 left = reduced_target - dec_.g_prefix[j];
      if (left < 0) break;
      if (left <= dec_.low_cap && dec_.low_sums.contains(left)) {
        for (size_t g = 0; g < j; ++g)
          ++counts[static_cast<size_t>(dec_.g_part[g].orig_item)];
        for (const SumsetPart& part : dec_.low_sums.recover(left))
          counts[static_cast<size_t>(
              dec_.low_copies[static_cast<size_t>(part.item)].orig_item)] +=
              part.count;
        found = true;
        break;
      }
    }
    if (!found)
      throw InternalError("dense recovery exhausted greedy prefixes");
    for (size_t i = 0; i < counts.size(); ++i)
      if (counts[i] < 0 || counts[i] > items_[i].mult)
        throw InternalError("dense recovery multiplicity violation");
    return counts;
  }

 private:
  void build_dense() {
    low_table_ = bounded_subset_sums(items_, stats_.lambda);
    DivisorReduction red = divisor_reduce(items_, cfg_);
    divisor_ = red.d;
    dec_ = build_decomposition(red.reduced, cfg_);

    // Residue table over Z_d from copies not divisible by d, minimizing the
    // copy count per residue. Capping each item at d copies keeps every
    // reachable residue reachable. A take bit per (copy, residue) yields a
    // walk with strictly decreasing copy indices, so no copy is reused.
    mod_reach_.assign(static_cast<size_t>(divisor_), false);
    mod_reach_[0] = true;
    std::vector<i64> cnt(static_cast<size_t>(divisor_), -1);
    cnt[0] = 0;
    for (size_t i = 0; i < items_.size(); ++i) {
      if (items_[i].size % divisor_ == 0) continue;
      const i64 copies = std::min<i64>(items_[i].mult, divisor_);
      for (i64 c = 0; c < copies; ++c) mod_copies_.push_back(static_cast<i64>(i));
    }
    mod_take_.reserve(mod_copies_.size());
    std::vector<i64> before(static_cast<size_t>(divisor_));
    for (size_t copy = 0; copy < mod_copies_.size(); ++copy) {
      const i64 step =
          items_[static_cast<size_t>(mod_copies_[copy])].size % divisor_;
      before = cnt;
      BitVec taken(divisor_);
      for (i64 r = 0; r < divisor_; ++r) {
        if (before[static_cast<size_t>(r)] < 0) continue;
        const i64 nr = (r + step) % divisor_;
        const i64 cand = before[static_cast<size_t>(r)] + 1;
        if (cnt[static_cast<size_t>(nr)] < 0 || cand < cnt[static_cast<size_t>(nr)]) {
          cnt[static_cast<size_t>(nr)] = cand;
          mod_reach_[static_cast<size_t>(nr)] = true;
          taken.set(nr);
        }
      }
      mod_take_.push_back(std::move(taken));
    }
  }

  std::vector<i64> from_parts(const std::vector<SumsetPart>& parts) const {
    std::vector<i64> counts(items_.size(), 0);
    for (const SumsetPart& p : parts) counts[static_cast<size_t>(p.item)] = p.count;
    return counts;
  }

  std::vector<SubsetSumItem> items_;
  DenseConfig cfg_;
  DensityStats stats_;
  i64 sigma_ = 0;
  Mode mode_ = Mode::kFallback;
  SumsetWithWitness fallback_ = SumsetWithWitness::empty(0);
  SumsetWithWitness low_table_ = SumsetWithWitness::empty(0);
  i64 divisor_ = 1;
  DenseDecomposition dec_;
  std::vector<bool> mod_reach_;
  std::vector<BitVec> mod_take_;  // mod_take_[copy].test(res): improved here
  std::vector<i64> mod_copies_;   // copy index -> item
};

inline DenseOracle build_dense_oracle(std::vector<SubsetSumItem> items,
                                      DenseConfig cfg = {}) {
  return DenseOracle(std::move(items), cfg);
}

}  // namespace knap

#endif  // KNAP_DENSE_HPP
