#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <random>

#include "smax/region.hpp"

using namespace smax;

TEST_CASE("q_vertices closed forms") {
  // d=3, beta=gamma=1: the classical P2, P3, P4
  auto r = q_vertices(3, 1.0, 1.0);
  CHECK(r.vertices[0].ip == 0.0);
  CHECK(r.vertices[0].iq == 0.0);
  CHECK(r.vertices[1].ip == Catch::Approx(2.0 / 3).epsilon(1e-15));
  CHECK(r.vertices[1].iq == Catch::Approx(2.0 / 3).epsilon(1e-15));
  CHECK(r.vertices[2].ip == Catch::Approx(2.0 / 3).epsilon(1e-15));
  CHECK(r.vertices[2].iq == Catch::Approx(1.0 / 3).epsilon(1e-15));
  CHECK(r.vertices[3].ip == Catch::Approx(3.0 / 5).epsilon(1e-15));
  CHECK(r.vertices[3].iq == Catch::Approx(1.0 / 5).epsilon(1e-15));

  // d=2, beta=1: Q2 and Q3 coincide
  auto r2 = q_vertices(2, 1.0, 1.0);
  CHECK(r2.vertices[1].ip == Catch::Approx(0.5).epsilon(1e-15));
  CHECK(r2.vertices[2].ip == Catch::Approx(0.5).epsilon(1e-15));
  CHECK(r2.vertices[1].iq == Catch::Approx(0.5).epsilon(1e-15));

  // beta = gamma = 0: Q2 = (1,1), Q3 = (d/(d+1), 1/(d+1))
  auto r0 = q_vertices(4, 0.0, 0.0);
  CHECK(r0.vertices[1].ip == 1.0);
  CHECK(r0.vertices[2].ip == Catch::Approx(0.8).epsilon(1e-15));
  CHECK(r0.vertices[2].iq == Catch::Approx(0.2).epsilon(1e-15));

  CHECK_THROWS_AS(q_vertices(3, 0.9, 0.5), std::invalid_argument);
}

TEST_CASE("membership classification") {
  auto r = q_vertices(3, 1.0, 1.0);
  CHECK(membership(r, {0.0, 0.0}) == Membership::boundary);  // vertex Q1
  CHECK(membership(r, {0.5, 0.3}) == Membership::interior);
  CHECK(membership(r, {0.9, 0.1}) == Membership::outside);
  CHECK(membership(r, {0.5, 0.5}) == Membership::boundary);  // on diagonal

  // degenerate: beta = gamma = 0 in d = 2 keeps a genuine quadrangle;
  // a fully degenerate hull comes from equal vertices
  RegionSpec seg;
  seg.d = 3;
  seg.vertices = {RieszPoint{0, 0}, RieszPoint{0.5, 0.5}, RieszPoint{0.25, 0.25},
                  RieszPoint{0, 0}};
  CHECK(membership(seg, {0.1, 0.1}) == Membership::boundary);
  CHECK(membership(seg, {0.1, 0.2}) == Membership::outside);
}

TEST_CASE("in_R: the half-open diagonal segment") {
  auto r = q_vertices(3, 0.8, 1.0);
  const RieszPoint q2 = r.vertices[1];
  CHECK_FALSE(in_R(r, q2));  // Q2 excluded
  CHECK(in_R(r, {0.0, 0.0}));
  CHECK(in_R(r, {0.5 * q2.ip, 0.5 * q2.iq}));
  CHECK(in_R(r, {0.5, 0.3}));            // interior
  CHECK_FALSE(in_R(r, {0.9, 0.05}));     // outside
  // boundary off the diagonal is not in R
  CHECK_FALSE(in_R(r, r.vertices[3]));
}

TEST_CASE("L_functional vanishes at Q3 and Q4") {
  for (int d : {2, 3, 4, 5}) {
    for (double beta : {0.2, 0.5, 0.9}) {
      for (double gamma : {0.0, 0.3, 0.6}) {
        const double g = std::max(beta, std::min(1.0, beta + gamma));
        auto r = q_vertices(d, beta, g);
        CHECK(std::abs(L_functional(d, beta, g, r.vertices[2])) < 1e-12);
        CHECK(std::abs(L_functional(d, beta, g, r.vertices[3])) < 1e-12);
      }
    }
  }
  // (0,0) gives alpha (d-1) / 2 > 0
  CHECK(L_functional(3, 0.5, 1.0, {0.0, 0.0}) ==
        Catch::Approx(0.5 * 0.5 * 2.0).epsilon(1e-15));
  CHECK_THROWS_AS(L_functional(3, 0.5, 0.0, {0.1, 0.1}),
                  std::invalid_argument);
}

TEST_CASE("necessary_conditions") {
  // interior point: no violations
  CHECK(necessary_conditions(3, 1.0, 1.0, {0.5, 0.3}).empty());
  // (1,1) with beta < 1 violates the ball-family constraint
  {
    auto v = necessary_conditions(3, 0.5, 1.0, {1.0, 1.0});
    bool ball = false;
    for (auto c : v) ball = ball || c == NecessaryCondition::ball_family;
    CHECK(ball);
  }
  // (0, 0.5) violates translation (q < p)
  {
    auto v = necessary_conditions(3, 0.5, 1.0, {0.0, 0.5});
    REQUIRE_FALSE(v.empty());
    CHECK(v.front() == NecessaryCondition::translation);
  }
}

TEST_CASE("hull/half-plane equivalence on random samples") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> dim(2, 5);
  const double tol = 1e-9;
  for (int draw = 0; draw < 10; ++draw) {
    const int d = dim(rng);
    double beta = std::max(1e-3, unit(rng));
    double gamma = unit(rng);
    if (beta > gamma) std::swap(beta, gamma);
    beta = std::max(beta, 1e-3);
    auto region = q_vertices(d, beta, gamma);
    for (int i = 0; i < 2000; ++i) {
      RieszPoint pt{unit(rng), unit(rng)};
      const bool inside = membership(region, pt, tol) != Membership::outside;
      const bool clean = necessary_conditions(d, beta, gamma, pt, tol).empty();
      INFO("d=" << d << " beta=" << beta << " gamma=" << gamma << " pt=("
                << pt.ip << "," << pt.iq << ")");
      REQUIRE(inside == clean);
    }
  }
}

TEST_CASE("monotonicity in gamma") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto r1 = q_vertices(3, 0.5, 0.6);
  auto r2 = q_vertices(3, 0.5, 0.9);
  for (int i = 0; i < 4000; ++i) {
    RieszPoint pt{unit(rng), unit(rng)};
    if (membership(r2, pt, 1e-9) == Membership::interior)
      CHECK(membership(r1, pt, 1e-9) != Membership::outside);
  }
}
