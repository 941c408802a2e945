#ifndef KNAP_SMAWK_HPP
#define KNAP_SMAWK_HPP

#include <utility>
#include <vector>

#include "knap/util.hpp"

namespace knap {

/// Row maxima of an implicit totally monotone (inverse-Monge) matrix.
///
/// `entry(i, j)` must return a totally ordered value; entries are computed on
/// demand and never materialized. The matrix must satisfy dominance
/// persistence: for rows i < i' and columns j < j', entry(i,j) < entry(i,j')
/// implies entry(i',j) < entry(i',j'). Finite inverse-Monge matrices satisfy
/// this, and so do matrices with whole -inf columns (the minimum value of
/// the type acts as -inf: finite beats it, ties resolve leftward). Matrices
/// with -inf scattered across rows do not; feed those through a finite
/// encoding such as band_row_maxima below.
///
/// Returns, per row, the column attaining the row maximum (the leftmost one)
/// and the maximum value. O(rows + cols) entry evaluations.
template <class V, class F>
std::vector<std::pair<i64, V>> row_maxima(i64 rows, i64 cols, F&& entry) {
  std::vector<std::pair<i64, V>> result(static_cast<size_t>(rows));
  if (rows == 0) return result;
  if (cols <= 0) throw InputError("row_maxima requires at least one column");

  std::vector<i64> row_ids(static_cast<size_t>(rows));
  std::vector<i64> col_ids(static_cast<size_t>(cols));
  for (i64 i = 0; i < rows; ++i) row_ids[static_cast<size_t>(i)] = i;
  for (i64 j = 0; j < cols; ++j) col_ids[static_cast<size_t>(j)] = j;

  struct Frame {
    std::vector<i64> rows;
    std::vector<i64> cols;
  };

  // Recursive SMAWK: REDUCE prunes columns to at most the number of rows,
  // recurse on odd rows, then INTERPOLATE even rows between neighbors.
  auto solve = [&](auto&& self, const std::vector<i64>& r,
                   const std::vector<i64>& c) -> void {
    if (r.empty()) return;

    // REDUCE: keep a stack of surviving columns. Column c_new evicts the
    // stack top while it strictly beats it at the top's diagonal row.
    std::vector<i64> surv;
    surv.reserve(std::min(r.size(), c.size()));
    for (i64 col : c) {
      while (!surv.empty()) {
        const i64 row = r[surv.size() - 1];
        if (entry(row, col) > entry(row, surv.back())) {
          surv.pop_back();
        } else {
          break;
        }
      }
      if (surv.size() < r.size()) surv.push_back(col);
    }

    if (r.size() == 1) {
      result[static_cast<size_t>(r[0])] = {surv[0], entry(r[0], surv[0])};
      return;
    }

    std::vector<i64> odd;
    odd.reserve(r.size() / 2);
    for (size_t i = 1; i < r.size(); i += 2) odd.push_back(r[i]);
    self(self, odd, surv);

    // INTERPOLATE even rows: the argmax lies between the argmax of the
    // neighboring odd rows.
    size_t c_lo = 0;
    for (size_t i = 0; i < r.size(); i += 2) {
      const i64 row = r[i];
      const i64 hi_col = (i + 1 < r.size())
                             ? result[static_cast<size_t>(r[i + 1])].first
                             : surv.back();
      i64 best_col = surv[c_lo];
      V best_val = entry(row, best_col);
      size_t k = c_lo;
      while (surv[k] != hi_col) {
        ++k;
        const V val = entry(row, surv[k]);
        if (val > best_val) {
          best_val = val;
          best_col = surv[k];
        }
      }
      result[static_cast<size_t>(row)] = {best_col, best_val};
      c_lo = k;
    }
  };

  solve(solve, row_ids, col_ids);
  return result;
}

/// Wraps an entry callable and counts evaluations; used to assert the linear
/// evaluation bound.
template <class F>
struct CountingEntry {
  F entry;
  mutable i64 evaluations = 0;
  auto operator()(i64 i, i64 j) const {
    ++evaluations;
    return entry(i, j);
  }
};

/// Row maxima of the banded matrix M[i][j] = left[j] + band[i - j], where
/// band is finite and concave exactly on [0, band.size()) and left may hold
/// kNegInf entries. Entries outside the band are -inf.
///
/// Scattered -inf cells (in particular rows that are entirely -inf) break
/// the dominance-persistence precondition of raw SMAWK, so the matrix is
/// first mapped to a fully finite one: -inf in `left` becomes one huge
/// penalty, indices outside the band fall off with a huge slope. The mapped
/// matrix is inverse-Monge everywhere; totals below the contamination
/// threshold are reported as kNegInf. For rows with a finite maximum the
/// returned column is the leftmost raw argmax; for all--inf rows the column
/// is arbitrary but valid.
inline std::vector<std::pair<i64, i64>> band_row_maxima(
    const std::vector<i64>& left, const std::vector<i64>& band) {
  const i64 n = static_cast<i64>(left.size());
  const i64 finite = static_cast<i64>(band.size());
  if (n == 0) return {};
  if (finite == 0) throw InputError("band must have at least one finite entry");
  constexpr i128 kPenalty = static_cast<i128>(1) << 70;
  constexpr i128 kBad = -(static_cast<i128>(1) << 64);
  auto entry = [&](i64 i, i64 j) -> i128 {
    const i64 a = left[static_cast<size_t>(j)];
    const i128 base = is_finite(a) ? static_cast<i128>(a) : -kPenalty;
    const i64 m = i - j;
    if (m < 0) return base + static_cast<i128>(band[0]) - kPenalty * (-m);
    if (m >= finite)
      return base + static_cast<i128>(band[static_cast<size_t>(finite - 1)]) -
             kPenalty * (m - finite + 1);
    return base + band[static_cast<size_t>(m)];
  };
  const auto raw = row_maxima<i128>(n, n, entry);
  std::vector<std::pair<i64, i64>> out(static_cast<size_t>(n));
  for (i64 i = 0; i < n; ++i) {
    const auto& [col, val] = raw[static_cast<size_t>(i)];
    out[static_cast<size_t>(i)] = {col, val > kBad ? static_cast<i64>(val) : kNegInf};
  }
  return out;
}

}  // namespace knap

#endif  // KNAP_SMAWK_HPP
