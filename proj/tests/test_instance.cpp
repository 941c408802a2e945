#include <catch2/catch_amalgamated.hpp>

#include "knap/instance.hpp"
#include "oracles.hpp"

using namespace knap;

TEST_CASE("normalization merges duplicate (size, value) pairs") {
  auto inst = validate_and_normalize(std::vector<Item>{{3, 5, 2}, {3, 5, 1}}, 10);
  REQUIRE(inst.n() == 1);
  CHECK(inst.items[0].size == 3);
  CHECK(inst.items[0].value == 5);
  CHECK(inst.items[0].mult == 3);
}

TEST_CASE("normalization clamps multiplicity to floor(t / size)") {
  auto inst = validate_and_normalize(std::vector<Item>{{4, 1, 100}}, 10);
  REQUIRE(inst.n() == 1);
  CHECK(inst.items[0].mult == 2);
}

TEST_CASE("oversize items are dropped") {
  auto inst = validate_and_normalize(std::vector<Item>{{11, 9, 1}}, 10);
  CHECK(inst.n() == 0);
  CHECK(inst.sigma_size == 0);
}

TEST_CASE("normalization rejects malformed items") {
  CHECK_THROWS_AS(validate_and_normalize(std::vector<Item>{{0, 1, 1}}, 5), InputError);
  CHECK_THROWS_AS(validate_and_normalize(std::vector<Item>{{1, -1, 1}}, 5), InputError);
  CHECK_THROWS_AS(validate_and_normalize(std::vector<Item>{{1, 1, -2}}, 5), InputError);
  CHECK_THROWS_AS(validate_and_normalize(std::vector<Item>{{1, 1, 1}}, -1), InputError);
}

TEST_CASE("zero multiplicities are dropped, empty instances are valid") {
  auto inst = validate_and_normalize(std::vector<Item>{{2, 3, 0}}, 9);
  CHECK(inst.n() == 0);
  auto empty = validate_and_normalize(std::vector<Item>{}, 7);
  CHECK(empty.n() == 0);
  CHECK(empty.capacity == 7);
}

TEST_CASE("normalization is idempotent") {
  Rng rng(42);
  for (int trial = 0; trial < 500; ++trial) {
    auto inst = oracles::random_knapsack(rng, 8, 12, 9, 20, 60);
    auto again = validate_and_normalize(inst.items, inst.capacity);
    CHECK(again.items.size() == inst.items.size());
    for (size_t i = 0; i < inst.items.size(); ++i) {
      CHECK(again.items[i].size == inst.items[i].size);
      CHECK(again.items[i].value == inst.items[i].value);
      CHECK(again.items[i].mult == inst.items[i].mult);
    }
    CHECK(again.sigma_size == inst.sigma_size);
    CHECK(again.sigma_value == inst.sigma_value);
    CHECK(again.total_count == inst.total_count);
  }
}

TEST_CASE("sum overflow is a hard rejection") {
  const i64 big = std::numeric_limits<i64>::max() / 2;
  CHECK_THROWS_AS(validate_and_normalize(
                      std::vector<Item>{{1, big, 3}, {2, big, 3}},
                      std::numeric_limits<i64>::max()),
                  InputError);
}

TEST_CASE("verify_solution basics") {
  auto inst = validate_and_normalize(std::vector<Item>{{2, 3, 3}, {3, 3, 1}}, 7);

  SECTION("zero vector is feasible with value and size zero") {
    auto rep = verify_solution(inst, make_solution(inst, {0, 0}));
    CHECK(rep.feasible);
    CHECK(rep.value == 0);
    CHECK(rep.size == 0);
  }
  SECTION("multiplicity violation is infeasible") {
    auto rep = verify_solution(inst, make_solution(inst, {4, 0}));
    CHECK_FALSE(rep.feasible);
  }
  SECTION("capacity violation is infeasible") {
    auto rep = verify_solution(inst, make_solution(inst, {3, 1}));
    CHECK(rep.size == 9);
    CHECK_FALSE(rep.feasible);
  }
  SECTION("length mismatch is an error") {
    CHECK_THROWS_AS(make_solution(inst, {1}), InputError);
  }
}

TEST_CASE("verify_solution matches an independent recomputation") {
  Rng rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    auto inst = oracles::random_knapsack(rng, 6, 9, 9, 8, 40);
    std::vector<i64> x;
    for (const Item& it : inst.items) x.push_back(rng.range(0, it.mult + 1));
    i64 size = 0, value = 0;
    bool bounds = true;
    for (size_t i = 0; i < x.size(); ++i) {
      size += x[i] * inst.items[i].size;
      value += x[i] * inst.items[i].value;
      bounds = bounds && x[i] <= inst.items[i].mult;
    }
    auto rep = verify_solution(inst, make_solution(inst, x));
    CHECK(rep.size == size);
    CHECK(rep.value == value);
    CHECK(rep.feasible == (bounds && size <= inst.capacity));
  }
}

TEST_CASE("subset sum verification requires exact total") {
  auto inst =
      validate_and_normalize(std::vector<SubsetSumItem>{{3, 2}, {5, 1}}, 8);
  CHECK(verify_solution(inst, {1, 1}).feasible);
  CHECK_FALSE(verify_solution(inst, {1, 0}).feasible);
  CHECK_FALSE(verify_solution(inst, {2, 1}).feasible);
}
