#include <catch2/catch_amalgamated.hpp>

#include "knap/bellman.hpp"
#include "oracles.hpp"

using namespace knap;

TEST_CASE("binary split covers every count exactly once") {
  auto groups = binary_split({{2, 3, 13}});
  i64 total = 0;
  for (const BinaryGroup& g : groups) total += g.copies;
  CHECK(total == 13);
  CHECK(groups.size() == 4);  // 1 + 2 + 4 + 6
}

TEST_CASE("bellman profile on a single item") {
  auto inst = validate_and_normalize(std::vector<Item>{{2, 3, 3}}, 7);
  auto prof = bellman_oracle(inst);
  CHECK(prof.values() == std::vector<i64>{0, 0, 3, 3, 6, 6, 9, 9});
}

TEST_CASE("bellman profile of an empty instance is all zeros") {
  auto inst = validate_and_normalize(std::vector<Item>{}, 5);
  auto prof = bellman_oracle(inst);
  CHECK(prof.values() == std::vector<i64>(6, 0));
  CHECK(prof.recover(5).total_value == 0);
}

TEST_CASE("bellman profile with two items") {
  auto inst = validate_and_normalize(std::vector<Item>{{2, 3, 3}, {3, 3, 1}}, 7);
  auto prof = bellman_oracle(inst);
  CHECK(prof.values()[7] == 9);
  auto dp = oracles::dp_knapsack(inst.items, 7);
  CHECK(prof.values() == dp);
}

TEST_CASE("bellman budget guard") {
  auto inst = validate_and_normalize(std::vector<Item>{{1, 1, 1000}}, 1000);
  CHECK_THROWS_AS(bellman_oracle(inst, 100), BudgetError);
}

TEST_CASE("bellman witnesses are optimal at every capacity") {
  Rng rng(11);
  for (int trial = 0; trial < 400; ++trial) {
    auto inst = oracles::random_knapsack(rng, 6, 10, 9, 10, 50);
    auto prof = bellman_oracle(inst);
    auto dp = oracles::dp_knapsack(inst.items, inst.capacity);
    REQUIRE(prof.values() == dp);
    for (i64 c = 0; c <= inst.capacity; ++c) {
      auto sol = prof.recover(c);
      auto rep = verify_solution(inst, sol);
      CHECK(rep.feasible);
      CHECK(rep.size <= c);
      CHECK(rep.value == dp[static_cast<size_t>(c)]);
    }
  }
}

TEST_CASE("harmonic prune keeps the most profitable copies per size class") {
  // Size class 5 holds copies of values 9,9,7,7,1; quota floor(10/5) = 2.
  auto inst = validate_and_normalize(
      std::vector<Item>{{5, 9, 2}, {5, 7, 2}, {5, 1, 1}}, 10);
  auto pruned = harmonic_prune(inst);
  REQUIRE(pruned.n() == 1);
  CHECK(pruned.items[0].value == 9);
  CHECK(pruned.items[0].mult == 2);
}

TEST_CASE("harmonic prune leaves compliant instances unchanged") {
  auto inst = validate_and_normalize(std::vector<Item>{{3, 4, 2}, {2, 1, 1}}, 9);
  auto pruned = harmonic_prune(inst);
  REQUIRE(pruned.n() == inst.n());
  for (i64 i = 0; i < inst.n(); ++i)
    CHECK(pruned.items[static_cast<size_t>(i)].mult ==
          inst.items[static_cast<size_t>(i)].mult);
}

TEST_CASE("harmonic prune preserves the whole value profile") {
  Rng rng(123);
  for (int trial = 0; trial < 1000; ++trial) {
    auto inst = oracles::random_knapsack(rng, 8, 12, 9, 25, 60);
    auto pruned = harmonic_prune(inst);
    CHECK(oracles::dp_knapsack(pruned.items, inst.capacity) ==
          oracles::dp_knapsack(inst.items, inst.capacity));
    // The pruned copy count respects the harmonic bound.
    i64 budget = 0;
    for (i64 x = 1; x <= inst.max_size; ++x) budget += inst.capacity / x;
    CHECK(pruned.total_count <= budget);
  }
}
