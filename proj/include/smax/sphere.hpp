// Normalized spherical cap measure and the quadrature helpers behind it.
// Caps are computed in the polar-angle variable, where the integrand
// sin^k(phi) is analytic for every dimension, so fixed-order Gauss-Legendre
// panels converge to machine accuracy.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace smax {

namespace detail {

// 32-point Gauss-Legendre rule on [-1, 1] (positive half, symmetric).
inline constexpr std::array<double, 16> kGL32Nodes = {
    0.0483076656877383162, 0.1444719615827964934, 0.2392873622521370745,
    0.3318686022821276497, 0.4213512761306353454, 0.5068999089322293900,
    0.5877157572407623290, 0.6630442669302152009, 0.7321821187402896804,
    0.7944837959679424070, 0.8493676137325699701, 0.8963211557660521240,
    0.9349060759377396892, 0.9647622555875064307, 0.9856115115452683354,
    0.9972638618494815635};

inline constexpr std::array<double, 16> kGL32Weights = {
    0.0965400885147278006, 0.0956387200792748594, 0.0938443990808045654,
    0.0911738786957638847, 0.0876520930044038111, 0.0833119242269467552,
    0.0781938957870703065, 0.0723457941088485062, 0.0658222227763618468,
    0.0586840934785355471, 0.0509980592623761762, 0.0428358980222266807,
    0.0342738629130214331, 0.0253920653092620595, 0.0162743947309056706,
    0.0070186100094700966};

template <class F>
double gl32(F&& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double acc = 0.0;
  for (std::size_t i = 0; i < kGL32Nodes.size(); ++i) {
    const double x = h * kGL32Nodes[i];
    acc += kGL32Weights[i] * (f(c + x) + f(c - x));
  }
  return acc * h;
}

}  // namespace detail

// Integral of sin^k over [lo, hi], 0 <= lo <= hi <= pi. Panels capped at
// pi/4 keep the rule exact to machine precision even for large k.
inline double sin_power_integral(int k, double lo, double hi) {
  if (k < 0) throw std::invalid_argument("sin_power_integral: k must be >= 0");
  if (hi <= lo) return 0.0;
  const double quarter_pi = 0.78539816339744830961;
  const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / quarter_pi)));
  const double h = (hi - lo) / panels;
  double acc = 0.0;
  for (int p = 0; p < panels; ++p)
    acc += detail::gl32([k](double x) { return std::pow(std::sin(x), k); },
                        lo + p * h, lo + (p + 1) * h);
  return acc;
}

// Surface measure of the unit sphere S^{d-1} in R^d.
inline double surface_area(int d) {
  if (d < 1) throw std::invalid_argument("surface_area: d must be >= 1");
  return 2.0 * std::pow(3.14159265358979323846, 0.5 * d) /
         std::tgamma(0.5 * d);
}

inline double ball_volume(int d) { return surface_area(d) / d; }

// Normalized cap measure sigma{y in S^{d-1} : y_d >= u}. Arguments outside
// [-1, 1] are clamped (the geometric callers hit that routinely).
// Closed forms for d = 2, 3; one-dimensional angular quadrature otherwise.
inline double cap_fraction(int d, double u) {
  if (d < 2) throw std::invalid_argument("cap_fraction: d must be >= 2");
  u = std::clamp(u, -1.0, 1.0);
  if (d == 2) return std::acos(u) / 3.14159265358979323846;
  if (d == 3) return 0.5 * (1.0 - u);
  const double phi = std::acos(u);
  return sin_power_integral(d - 2, 0.0, phi) /
         sin_power_integral(d - 2, 0.0, 3.14159265358979323846);
}

}  // namespace smax
