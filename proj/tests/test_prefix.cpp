#include <numeric>

#include <catch2/catch_amalgamated.hpp>

#include "knap/bellman.hpp"
#include "knap/prefix.hpp"
#include "oracles.hpp"

using namespace knap;

namespace {

// The prefix definition, spelled out: walk copies in (efficiency desc, index
// asc) order until one does not fit.
PrefixSolution reference_prefix(const KnapsackInstance& inst) {
  std::vector<i64> order(inst.items.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](i64 a, i64 b) {
    return detail::more_efficient(inst.items, a, b);
  });
  PrefixSolution p;
  p.counts.assign(inst.items.size(), 0);
  i64 rem = inst.capacity;
  for (i64 id : order) {
    const Item& it = inst.items[static_cast<size_t>(id)];
    const i64 c = std::min(it.mult, rem / it.size);
    p.counts[static_cast<size_t>(id)] = c;
    rem -= c * it.size;
    if (c < it.mult) break;
  }
  p.slack = rem;
  return p;
}

}  // namespace

TEST_CASE("maximal prefix on the worked example") {
  auto inst = validate_and_normalize(std::vector<Item>{{2, 3, 3}, {3, 3, 1}}, 7);
  auto p = maximal_prefix(inst);
  CHECK(p.counts == std::vector<i64>{3, 0});
  CHECK(p.slack == 1);
  CHECK(p.total_value == 9);
}

TEST_CASE("maximal prefix takes everything that fits") {
  auto inst = validate_and_normalize(std::vector<Item>{{2, 1, 2}, {3, 9, 1}}, 20);
  auto p = maximal_prefix(inst);
  CHECK(p.takes_everything(inst.items));
  CHECK(p.slack == 20 - 7);
}

TEST_CASE("maximal prefix with zero capacity") {
  auto inst = validate_and_normalize(std::vector<Item>{{2, 1, 2}}, 0);
  auto p = maximal_prefix(inst);
  CHECK(p.counts.empty());  // the item is dropped at normalization
  CHECK(p.slack == 0);
}

TEST_CASE("selection recursion matches the sorted greedy") {
  Rng rng(5);
  for (int trial = 0; trial < 2000; ++trial) {
    auto inst = oracles::random_knapsack(rng, 10, 12, 9, 12, 80);
    auto want = reference_prefix(inst);
    auto fast = maximal_prefix(inst);
    auto det = maximal_prefix(inst, /*deterministic_select=*/true);
    CHECK(fast.counts == want.counts);
    CHECK(fast.slack == want.slack);
    CHECK(det.counts == want.counts);
  }
}

TEST_CASE("prefix structure invariant") {
  Rng rng(6);
  for (int trial = 0; trial < 1000; ++trial) {
    auto inst = oracles::random_knapsack(rng, 8, 10, 9, 10, 60);
    auto p = maximal_prefix(inst);
    // Locate the boundary: full prefix, then one partial, then zeros.
    size_t i = 0;
    const auto& ord = p.efficiency_order;
    while (i < ord.size() &&
           p.counts[static_cast<size_t>(ord[i])] ==
               inst.items[static_cast<size_t>(ord[i])].mult)
      ++i;
    if (i < ord.size()) {
      // boundary item: any count; everything after must be zero
      for (size_t j = i + 1; j < ord.size(); ++j)
        CHECK(p.counts[static_cast<size_t>(ord[j])] == 0);
      CHECK(p.slack < inst.max_size);
    }
    CHECK(p.slack >= 0);
  }
}

TEST_CASE("an optimal solution within L1 distance 2s of the prefix exists") {
  Rng rng(8);
  int tested = 0;
  for (int trial = 0; trial < 8000 && tested < 500; ++trial) {
    auto inst = oracles::random_knapsack(rng, 4, 8, 8, 4, 30);
    if (inst.total_count > 14 || inst.n() == 0) continue;
    ++tested;
    auto p = maximal_prefix(inst);
    auto optima = oracles::enumerate_optima(inst.items, inst.capacity);
    REQUIRE_FALSE(optima.empty());
    i64 best_norm = std::numeric_limits<i64>::max();
    for (const auto& z : optima) {
      i64 norm = 0;
      for (size_t i = 0; i < z.size(); ++i) norm += std::abs(z[i] - p.counts[i]);
      best_norm = std::min(best_norm, norm);
    }
    CHECK(best_norm <= 2 * inst.max_size);
  }
  CHECK(tested == 500);
}

TEST_CASE("proximity reduction is the identity on small prefixes") {
  auto inst = validate_and_normalize(std::vector<Item>{{3, 5, 2}, {2, 1, 3}}, 30);
  auto red = proximity_reduce(inst);
  CHECK(red.baseline_size == 0);
  CHECK(red.baseline_value == 0);
  REQUIRE(red.instance.n() == inst.n());
  for (i64 i = 0; i < inst.n(); ++i)
    CHECK(red.instance.items[static_cast<size_t>(i)].mult ==
          inst.items[static_cast<size_t>(i)].mult);
}

TEST_CASE("proximity reduction on a single heavy item") {
  auto inst = validate_and_normalize(std::vector<Item>{{2, 1, 100}}, 200);
  auto red = proximity_reduce(inst);  // s = 2, slack 2s = 4
  REQUIRE(red.instance.n() == 1);
  CHECK(red.baseline[0] == 96);
  CHECK(red.instance.items[0].mult == 4);
  CHECK(red.instance.capacity == 200 - 96 * 2);
  // Optimum is preserved through the baseline.
  auto lifted = red.lift(inst, {red.instance.items[0].mult});
  CHECK(verify_solution(inst, lifted).feasible);
  CHECK(lifted.total_value == 100);
}

TEST_CASE("proximity reduction preserves the optimum") {
  Rng rng(9);
  for (int trial = 0; trial < 1000; ++trial) {
    auto inst = oracles::random_knapsack(rng, 6, 8, 9, 30, 70);
    auto red = proximity_reduce(inst);
    const i64 orig = oracles::dp_knapsack(inst.items, inst.capacity).back();
    const i64 reduced =
        red.instance.capacity >= 0
            ? oracles::dp_knapsack(red.instance.items, red.instance.capacity).back()
            : 0;
    CHECK(orig == red.baseline_value + reduced);
    for (const Item& it : red.instance.items)
      CHECK(it.mult <= 4 * inst.max_size);
  }
}
