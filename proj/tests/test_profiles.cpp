#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <random>

#include "smax/covering.hpp"
#include "smax/profiles.hpp"
#include "smax/set_spec.hpp"

using namespace smax;

TEST_CASE("radial_average geometry") {
  // sphere of radius 1 misses a ball of radius 0.5 at distance 0... at
  // rho = 0 the average is the profile value at radius t
  auto ball = RadialProfile::ball(3, 0.5);
  CHECK(radial_average(ball, 1.0, 0.0) == 0.0);
  CHECK(radial_average(RadialProfile::ball(3, 1.5), 1.0, 0.0) == 1.0);

  // sphere entirely inside the ball: average 1
  CHECK(radial_average(RadialProfile::ball(3, 3.0), 1.0, 1.5) ==
        Catch::Approx(1.0).margin(1e-14));

  // d=3, ball radius 0.2, t = rho = 1: cap value delta^2/4 = 0.01
  CHECK(radial_average(RadialProfile::ball(3, 0.2), 1.0, 1.0) ==
        Catch::Approx(0.01).epsilon(1e-12));

  CHECK_THROWS_AS(radial_average(ball, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("radial_average bounds and monotonicity under domination") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const double r1 = 0.2 + unit(rng), w = 0.1 + 0.5 * unit(rng);
    const double v = 0.5 + unit(rng);
    RadialProfile small(3, {{r1, r1 + w, v}});
    RadialProfile big(3, {{std::max(0.0, r1 - 0.05), r1 + w + 0.05, v + 0.2}});
    const double t = 0.5 + 1.5 * unit(rng);
    const double rho = 2.0 * unit(rng);
    const double a = radial_average(small, t, rho);
    const double b = radial_average(big, t, rho);
    CHECK(a >= 0.0);
    CHECK(a <= v + 1e-12);
    CHECK(b >= a - 1e-12);
  }
}

TEST_CASE("mass conservation: averaging preserves the total integral") {
  // ||A_t f||_1 = ||f||_1 for nonnegative radial f
  for (int d : {2, 3, 4}) {
    RadialProfile f(d, {{0.1, 0.45, 1.0}, {0.7, 1.0, 0.5}});
    const double t = 1.3;
    const double feature = f.feature_scale();
    auto grid = RadialGrid::make(d, 0.0, t + f.max_radius() + 0.1,
                                 feature / 10.0, feature);
    double mass = 0.0;
    for (std::size_t i = 0; i < grid.rho.size(); ++i)
      mass += grid.weight[i] * radial_average(f, t, grid.rho[i]);
    CHECK(mass == Catch::Approx(f.l1_norm()).epsilon(1e-3));
  }
}

TEST_CASE("cylinder_average basics") {
  // sigma large and annulus wide: the indicator is identically one
  {
    CylProfile g(3, 1.0, 1.0, 1.0);
    // |x| = 0.0, t = 0.5: every y gives |x - t y| = 0.5 inside [0, 2]
    auto v = cylinder_average(g, 0.5, 0.0, 0.0);
    CHECK(v.value == Catch::Approx(1.0).margin(1e-10));
  }
  // x = 0 reduces to the radial annulus average
  for (double t : {0.9, 1.0, 1.3}) {
    CylProfile g(3, 1.1, 0.15, 1.0);
    auto v = cylinder_average(g, t, 0.0, 0.0);
    auto f = RadialProfile::shell(3, 1.1, 0.15);
    CHECK(v.value == Catch::Approx(radial_average(f, t, 0.0)).margin(1e-9));
  }
}

TEST_CASE("cylinder_average matches radial when sigma exceeds the reach") {
  // sigma >= t + |x| + r makes the |y'| constraint vacuous
  for (int d : {2, 3, 4}) {
    const double t = 0.45, r = 1.05, delta = 0.2;
    CylProfile g(d, r, delta, 1.0);  // reach: t |y'| <= 0.45 < sigma
    auto f = RadialProfile::shell(d, r, delta);
    for (double xd : {0.5, 0.7, 0.9}) {
      const auto got = cylinder_average(g, t, 0.0, xd);
      const double want = radial_average(f, t, xd);
      INFO("d=" << d << " xd=" << xd);
      CHECK(got.value == Catch::Approx(want).margin(2e-3));
    }
    // off-axis points as well
    for (double xp : {0.2, 0.4}) {
      const auto got = cylinder_average(g, t, xp, 0.3);
      const double want = radial_average(f, t, std::hypot(xp, 0.3));
      CHECK(got.value == Catch::Approx(want).margin(2e-3));
    }
  }
}

TEST_CASE("cylinder_average lower bound on the paper region") {
  // on the axis with x_d = r - t and small delta the average is >= c0 sigma^{d-1}
  const double delta = std::ldexp(1.0, -10);
  const double sigma = std::pow(delta, 0.25);
  CylProfile g(3, 1.25, delta, sigma);
  const double t = 1.25 + 0.5 * delta / (sigma * sigma);
  auto v = cylinder_average(g, t, 0.0, 1.25 - t);
  CHECK(v.value / (sigma * sigma) > 1e-5);
}

TEST_CASE("maximal_value sampling policy") {
  // single point: exactly |f(t0)|
  auto single = IntervalSet::normalized({{1.37, 1.37}}, {1.0, 2.0});
  auto mv = maximal_value(single, [](double t) { return t * t; }, 8);
  CHECK(mv == Catch::Approx(1.37 * 1.37).epsilon(1e-15));

  // constant evaluator
  auto full = IntervalSet::normalized({{1.0, 2.0}}, {1.0, 2.0});
  CHECK(maximal_value(full, [](double) { return 0.7; }, 6) == 0.7);

  // monotone in E
  auto half = IntervalSet::normalized({{1.0, 1.5}}, {1.0, 2.0});
  auto f = [](double t) { return std::sin(10 * t) + 1.1; };
  CHECK(maximal_value(half, f, 10) <= maximal_value(full, f, 10) + 1e-15);

  // ball evaluator: max over t in [1,2] at rho inside is at t = rho
  auto ballf = RadialProfile::ball(3, 0.125);
  const double rho = 1.4375;
  const double got = maximal_value(
      full, [&](double t) { return radial_average(ballf, t, rho); }, 8);
  double dense = 0.0;
  for (int i = 0; i <= 4096; ++i) {
    const double t = 1.0 + i / 4096.0;
    dense = std::max(dense, radial_average(ballf, t, rho));
  }
  CHECK(got <= dense + 1e-15);
  CHECK(got == Catch::Approx(radial_average(ballf, rho, rho)).epsilon(1e-10));
}

TEST_CASE("lp_norm on grids") {
  // ball indicator: ||1_B||_1 = v_d delta^d; d=3, delta=1/2 gives pi/6
  const double delta = 0.5;
  auto grid = RadialGrid::make(3, 0.0, 1.0, delta / 16, delta);
  std::vector<double> vals(grid.rho.size());
  for (std::size_t i = 0; i < vals.size(); ++i)
    vals[i] = grid.rho[i] <= delta ? 1.0 : 0.0;
  const double pi = 3.14159265358979323846;
  CHECK(lp_norm(vals, grid.weight, 1.0) ==
        Catch::Approx(pi / 6.0).epsilon(2e-3));

  // p = infinity is the max
  CHECK(lp_norm(vals, grid.weight, INFINITY) == 1.0);

  // annulus indicator mass ~ v_d ((t+delta)^d - (t-delta)^d)
  const double t = 1.25, hw = 0.0625;
  auto grid2 = RadialGrid::make(3, 0.0, 2.0, hw / 8, hw);
  std::vector<double> vals2(grid2.rho.size());
  for (std::size_t i = 0; i < vals2.size(); ++i)
    vals2[i] = std::abs(grid2.rho[i] - t) <= hw ? 1.0 : 0.0;
  const double want =
      ball_volume(3) * (std::pow(t + hw, 3) - std::pow(t - hw, 3));
  CHECK(std::pow(lp_norm(vals2, grid2.weight, 2.0), 2.0) ==
        Catch::Approx(want).epsilon(5e-3));

  CHECK_THROWS_AS(lp_norm(vals, grid.weight, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(RadialGrid::make(3, 0.0, 1.0, delta, delta),
                  std::invalid_argument);
}

TEST_CASE("cylinder_annulus_volume against a cylindrical grid") {
  const int d = 3;
  const double r = 1.2, delta = 0.08, sigma = 0.5;
  const double got = cylinder_annulus_volume(d, r, delta, sigma);
  // brute grid in (s, x_d)
  const int ns = 400, nx = 800;
  const double smax_ = sigma * 1.01, xmax = r + delta + 0.01;
  double acc = 0.0;
  for (int i = 0; i < ns; ++i) {
    const double s = (i + 0.5) * smax_ / ns;
    for (int k = -nx; k < nx; ++k) {
      const double x = (k + 0.5) * xmax / nx;
      const double R = std::hypot(s, x);
      if (std::abs(R - r) <= delta && s <= sigma)
        acc += 2 * 3.14159265358979323846 * s * (smax_ / ns) * (xmax / nx);
    }
  }
  CHECK(got == Catch::Approx(acc).epsilon(2e-2));
}
