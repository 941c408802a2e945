#include <catch2/catch_amalgamated.hpp>

#include "knap/smawk.hpp"
#include "oracles.hpp"

using namespace knap;

namespace {

struct DenseMatrix {
  i64 rows = 0, cols = 0;
  std::vector<i64> data;
  i64 at(i64 i, i64 j) const { return data[static_cast<size_t>(i * cols + j)]; }
};

// a_i + b_j + c * min(i,j) + concave bump along the diagonal offset: each
// term preserves the inverse-Monge inequality on finite entries.
DenseMatrix random_inverse_monge(Rng& rng, i64 rows, i64 cols) {
  DenseMatrix m{rows, cols, {}};
  m.data.resize(static_cast<size_t>(rows * cols));
  std::vector<i64> a, b;
  for (i64 i = 0; i < rows; ++i) a.push_back(rng.range(-50, 50));
  for (i64 j = 0; j < cols; ++j) b.push_back(rng.range(-50, 50));
  const i64 c = rng.range(0, 5);
  // concave h over diagonal offsets: prefix sums of a decreasing sequence
  std::vector<i64> h(static_cast<size_t>(rows + cols), 0);
  i64 step = rng.range(3, 9);
  for (size_t d = 1; d < h.size(); ++d) {
    h[d] = h[d - 1] + step;
    if (rng.below(2)) step -= rng.range(0, 2);
  }
  for (i64 i = 0; i < rows; ++i)
    for (i64 j = 0; j < cols; ++j)
      m.data[static_cast<size_t>(i * cols + j)] =
          a[static_cast<size_t>(i)] + b[static_cast<size_t>(j)] +
          c * std::min(i, j) + h[static_cast<size_t>(i - j + cols - 1)];
  return m;
}

bool check_inverse_monge(const DenseMatrix& m) {
  for (i64 i = 0; i + 1 < m.rows; ++i)
    for (i64 j = 0; j + 1 < m.cols; ++j) {
      const i64 lhs = ext_add(m.at(i, j), m.at(i + 1, j + 1));
      const i64 rhs = ext_add(m.at(i + 1, j), m.at(i, j + 1));
      if (lhs != kNegInf && rhs != kNegInf && lhs < rhs) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("row maxima of a 1x1 matrix") {
  auto res = row_maxima<i64>(1, 1, [](i64, i64) { return i64{7}; });
  REQUIRE(res.size() == 1);
  CHECK(res[0] == std::pair<i64, i64>{0, 7});
}

TEST_CASE("finite entries beat -inf, ties stay leftmost") {
  const i64 m[2][2] = {{0, kNegInf}, {1, 0}};
  auto res = row_maxima<i64>(2, 2, [&](i64 i, i64 j) { return m[i][j]; });
  CHECK(res[0] == std::pair<i64, i64>{0, 0});
  CHECK(res[1] == std::pair<i64, i64>{0, 1});
}

TEST_CASE("empty matrix yields an empty result") {
  CHECK(row_maxima<i64>(0, 5, [](i64, i64) { return i64{0}; }).empty());
}

TEST_CASE("row maxima match the naive scan on random inverse-Monge matrices") {
  Rng rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const i64 rows = 1 + rng.below(40), cols = 1 + rng.below(40);
    auto m = random_inverse_monge(rng, rows, cols);
    REQUIRE(check_inverse_monge(m));
    auto entry = [&](i64 i, i64 j) { return m.at(i, j); };
    auto got = row_maxima<i64>(rows, cols, entry);
    auto want = oracles::naive_row_maxima(rows, cols, entry);
    for (i64 i = 0; i < rows; ++i) {
      CHECK(got[static_cast<size_t>(i)].first == want[static_cast<size_t>(i)].first);
      CHECK(got[static_cast<size_t>(i)].second == want[static_cast<size_t>(i)].second);
    }
  }
}

TEST_CASE("row maxima with whole -inf columns") {
  Rng rng(18);
  for (int trial = 0; trial < 300; ++trial) {
    const i64 rows = 1 + rng.below(30), cols = 1 + rng.below(30);
    auto m = random_inverse_monge(rng, rows, cols);
    // Whole -inf columns keep dominance persistence: a dead column never
    // strictly beats anything and stays beaten once a live one passes it.
    bool any_alive = false;
    for (i64 j = 0; j < cols; ++j) {
      if (rng.below(4) == 0 && !(j == cols - 1 && !any_alive)) {
        for (i64 i = 0; i < rows; ++i)
          m.data[static_cast<size_t>(i * cols + j)] = kNegInf;
      } else {
        any_alive = true;
      }
    }
    auto entry = [&](i64 i, i64 j) { return m.at(i, j); };
    auto got = row_maxima<i64>(rows, cols, entry);
    auto want = oracles::naive_row_maxima(rows, cols, entry);
    for (i64 i = 0; i < rows; ++i) {
      CHECK(got[static_cast<size_t>(i)].second == want[static_cast<size_t>(i)].second);
      CHECK(got[static_cast<size_t>(i)].first == want[static_cast<size_t>(i)].first);
    }
  }
}

TEST_CASE("band row maxima handle rows that are entirely -inf") {
  // left[j] + band[i-j] with -inf holes in `left`: unreachable remainder
  // classes produce whole -inf rows, which the finite encoding absorbs.
  Rng rng(118);
  for (int trial = 0; trial < 400; ++trial) {
    const i64 n = 1 + rng.below(40);
    const i64 finite = 1 + rng.below(static_cast<u64>(n));
    std::vector<i64> band(static_cast<size_t>(finite));
    i64 step = rng.range(0, 9);
    for (i64 m = 1; m < finite; ++m) {
      band[static_cast<size_t>(m)] = band[static_cast<size_t>(m - 1)] + step;
      if (rng.below(2)) step -= rng.range(0, 3);
    }
    std::vector<i64> left(static_cast<size_t>(n));
    for (i64 j = 0; j < n; ++j)
      left[static_cast<size_t>(j)] = rng.below(3) == 0 ? kNegInf : rng.range(-40, 40);
    auto raw = [&](i64 i, i64 j) -> i64 {
      const i64 m = i - j;
      if (m < 0 || m >= finite) return kNegInf;
      return ext_add(left[static_cast<size_t>(j)], band[static_cast<size_t>(m)]);
    };
    auto got = band_row_maxima(left, band);
    auto want = oracles::naive_row_maxima(n, n, raw);
    bool saw_dead_row = false;
    for (i64 i = 0; i < n; ++i) {
      CHECK(got[static_cast<size_t>(i)].second == want[static_cast<size_t>(i)].second);
      if (want[static_cast<size_t>(i)].second == kNegInf)
        saw_dead_row = true;
      else
        CHECK(got[static_cast<size_t>(i)].first == want[static_cast<size_t>(i)].first);
    }
    (void)saw_dead_row;
  }
}

TEST_CASE("band row maxima on an all--inf left side") {
  std::vector<i64> left(6, kNegInf);
  left[0] = kNegInf;
  auto got = band_row_maxima(left, {0, 5, 9});
  for (const auto& [col, val] : got) CHECK(val == kNegInf);
}

TEST_CASE("entry evaluations stay linear in rows + cols") {
  Rng rng(19);
  for (i64 dim : {i64{16}, i64{64}, i64{200}}) {
    auto m = random_inverse_monge(rng, dim, dim);
    CountingEntry<std::function<i64(i64, i64)>> counted{
        [&](i64 i, i64 j) { return m.at(i, j); }, 0};
    row_maxima<i64>(dim, dim, counted);
    CHECK(counted.evaluations <= 8 * (dim + dim));
  }
}
