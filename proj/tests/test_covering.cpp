#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "smax/covering.hpp"
#include "smax/set_spec.hpp"

using namespace smax;

TEST_CASE("covering_number basics") {
  auto full = IntervalSet::normalized({{1.0, 2.0}}, {1.0, 2.0});
  CHECK(covering_number(full, 0.25) == 4);
  CHECK(covering_number(full, 1.0) == 1);
  CHECK(covering_number(full, 0.3) == 4);

  auto two = IntervalSet::normalized({{1.0, 1.0}, {2.0, 2.0}}, {1.0, 2.0});
  CHECK(covering_number(two, 0.1) == 2);
  CHECK(covering_number(two, 1.0) == 1);

  auto empty = IntervalSet::normalized({}, {1.0, 2.0});
  CHECK(covering_number(empty, 0.1) == 0);

  CHECK_THROWS_AS(covering_number(full, 0.0), std::invalid_argument);
}

TEST_CASE("covering_number of generation-3 middle-third cells at delta 3^-3") {
  auto cells = cantor_cells_set({0.0, 1.0}, 1.0 / 3, 3);
  const double delta = std::pow(1.0 / 3, 3);
  CHECK(covering_number(cells, delta) == 8);
  CHECK(smax_test::exhaustive_covering_number(cells, delta) == 8);
}

TEST_CASE("greedy equals exhaustive search on random grid sets") {
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 60; ++trial) {
    auto E = smax_test::random_grid_set(rng);
    for (double delta : {1.0 / 64, 3.0 / 64, 5.0 / 64, 9.0 / 64}) {
      const auto greedy = covering_number(E, delta);
      const auto exact = smax_test::exhaustive_covering_number(E, delta);
      INFO("trial " << trial << " delta " << delta);
      CHECK(greedy == exact);
    }
  }
}

TEST_CASE("covering monotonicity in delta") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    auto E = smax_test::random_grid_set(rng);
    std::int64_t prev = -1;
    for (int j = 8; j >= 1; --j) {  // increasing delta
      const auto n = covering_number(E, std::ldexp(1.0, -j));
      if (prev >= 0) CHECK(n <= prev);
      prev = n;
    }
  }
}

TEST_CASE("covering_number_local") {
  auto full = IntervalSet::normalized({{1.0, 2.0}}, {1.0, 2.0});
  CHECK(covering_number_local(full, {1.0, 1.5}, 0.25) == 2);
  CHECK(covering_number_local(full, {2.5, 3.0}, 0.25) == 0);

  // assouad window count: N(E cap J_k, delta_k) = 2^{m(k)}
  auto ars = assouad_regular_set(0.4, 0.8, 5);
  for (const auto& st : ars.stages)
    CHECK(covering_number_local(ars.set, st.J, st.delta_k) ==
          (std::int64_t(1) << st.m));
}

TEST_CASE("scale invariance of counts under exact affine maps") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    auto E = smax_test::random_grid_set(rng);
    std::vector<Interval> scaled;
    for (const auto& c : E.components())
      scaled.push_back({4.0 * c.lo + 0.5, 4.0 * c.hi + 0.5});
    auto amb = E.ambient();
    auto E2 = IntervalSet::normalized(
        scaled, {4.0 * amb.lo + 0.5, 4.0 * amb.hi + 0.5});
    for (double delta : {1.0 / 64, 3.0 / 64, 1.0 / 8})
      CHECK(covering_number(E, delta) == covering_number(E2, 4.0 * delta));
  }
}

TEST_CASE("dyadic_cells conventions") {
  auto full = IntervalSet::normalized({{1.0, 2.0}}, {1.0, 2.0});
  // cells are closed: boundary points at 1 and 2 touch their left/right
  // neighbours, so level 1 sees cells 1,2,3,4 = [0.5,1],[1,1.5],[1.5,2],[2,2.5]
  auto c1 = dyadic_cells(full, 1);
  CHECK(c1.indices == std::vector<std::int64_t>{1, 2, 3, 4});

  auto pt = IntervalSet::normalized({{1.3, 1.3}}, {1.0, 2.0});
  auto c2 = dyadic_cells(pt, 2);
  REQUIRE(c2.size() == 1);
  CHECK(c2.t(0) == 1.25);

  // interior boundary point belongs to both neighbouring cells
  auto bd = IntervalSet::normalized({{1.5, 1.5}}, {1.0, 2.0});
  auto c3 = dyadic_cells(bd, 1);
  CHECK(c3.indices == std::vector<std::int64_t>{2, 3});
}

TEST_CASE("dyadic_cells matches brute-force scan") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 15; ++trial) {
    auto E = smax_test::random_grid_set(rng);
    for (int j : {2, 5, 6})
      CHECK(dyadic_cells(E, j).indices == smax_test::scan_cells(E, j));
  }
  auto bd = cantor_endpoints({1.0, 2.0}, 1.0 / 3, 4);
  for (int j : {3, 6, 8})
    CHECK(dyadic_cells(bd, j).indices == smax_test::scan_cells(bd, j));
}

TEST_CASE("factor-7 inequality and converse domination") {
  std::mt19937_64 rng(55);
  std::vector<IntervalSet> sets;
  sets.push_back(IntervalSet::normalized({{1.0, 2.0}}, {1.0, 2.0}));
  sets.push_back(cantor_endpoints({1.0, 2.0}, 1.0 / 3, 8));
  sets.push_back(convex_sequence_set(1.0, 5000));
  sets.push_back(assouad_regular_set(0.4, 0.8, 3).set);
  for (const auto& E : sets) {
    for (int j = 1; j <= 16; ++j) {
      const double delta = std::ldexp(1.0, -j);
      for (auto I : {E.ambient(), Interval{1.1, 1.1 + 2 * delta},
                     Interval{1.0, 1.0 + 17 * delta}}) {
        if (delta > I.length()) continue;
        const auto cells = dyadic_cells(E, j, &I);
        const auto n = covering_number_local(E, I, delta);
        CHECK(std::int64_t(cells.size()) <= 7 * n);
        CHECK(n <= std::int64_t(cells.size()));
      }
    }
  }
}

TEST_CASE("znj_partition") {
  auto full = IntervalSet::normalized({{1.0, 2.0}}, {1.0, 2.0});
  auto cells = dyadic_cells(full, 3);  // cells 7..16
  REQUIRE(cells.size() == 10);

  // nu' = nu lands only in the n = 0 bucket
  auto b0 = znj_partition(cells, 3, 0);
  REQUIRE(b0.size() == 1);
  CHECK(b0[0] == 3);

  // leftmost cell, n = 1: distances in [2^-3, 2^-2) reach exactly the
  // right neighbour (distance 2^-2 itself belongs to the n = 2 bucket)
  auto b1 = znj_partition(cells, 0, 1);
  REQUIRE(b1.size() == 1);
  CHECK(b1[0] == 1);

  // empty for n >= j + 3
  for (int n = 3 + 3; n <= 3 + 5; ++n)
    CHECK(znj_partition(cells, 0, n).empty());

  // buckets partition the full index set
  for (std::size_t nu : {std::size_t(0), std::size_t(4), std::size_t(9)}) {
    std::vector<int> hit(cells.size(), 0);
    for (int n = 0; n <= 3 + 2; ++n)
      for (auto idx : znj_partition(cells, nu, n)) hit[idx] += 1;
    for (int h : hit) CHECK(h == 1);
  }

  CHECK_THROWS_AS(znj_partition(cells, 99, 1), std::out_of_range);
}

TEST_CASE("znj cardinality bound on assouad sets") {
  auto ars = assouad_regular_set(0.4, 0.8, 3);
  double c_max = 0.0;
  for (int j = 2; j <= 20; ++j) {
    auto cells = dyadic_cells(ars.set, j);
    for (std::size_t nu = 0; nu < cells.size(); ++nu)
      for (int n = 1; n <= j + 2; ++n) {
        auto b = znj_partition(cells, nu, n);
        if (!b.empty())
          c_max = std::max(c_max, double(b.size()) / std::exp2(0.8 * n));
      }
  }
  CHECK(c_max <= 16.0);
  CHECK(c_max > 0.0);
}
