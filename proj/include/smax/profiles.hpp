// Test profiles and spherical averaging. Radial indicators are averaged
// exactly through cap measures; cylinder-annulus indicators reduce to a 1D
// integral over the polar angle whose inner azimuthal measure is computed
// in closed form, leaving adaptive panels only for the outer variable.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "smax/covering.hpp"
#include "smax/interval_set.hpp"
#include "smax/sphere.hpp"

namespace smax {

// ---------------------------------------------------------------------------
// Radial profiles: finitely many constant annular pieces
// ---------------------------------------------------------------------------

struct RadialPiece {
  double r_lo = 0.0;
  double r_hi = 0.0;
  double value = 0.0;
};

class RadialProfile {
 public:
  RadialProfile(int d, std::vector<RadialPiece> pieces)
      : d_(d), pieces_(std::move(pieces)) {
    if (d_ < 2) throw std::invalid_argument("RadialProfile: d must be >= 2");
    std::sort(pieces_.begin(), pieces_.end(),
              [](const RadialPiece& a, const RadialPiece& b) {
                return a.r_lo < b.r_lo;
              });
    double prev_hi = -1.0;
    for (const auto& p : pieces_) {
      if (!(p.r_lo >= 0.0 && p.r_lo < p.r_hi))
        throw std::invalid_argument("RadialProfile: bad piece range");
      if (p.r_lo < prev_hi)
        throw std::invalid_argument("RadialProfile: overlapping pieces");
      prev_hi = p.r_hi;
    }
  }

  static RadialProfile ball(int d, double radius) {
    return RadialProfile(d, {{0.0, radius, 1.0}});
  }
  // indicator of { ||y| - center| <= half_width }
  static RadialProfile shell(int d, double center, double half_width) {
    return RadialProfile(d, {{std::max(0.0, center - half_width),
                              center + half_width, 1.0}});
  }

  int dimension() const { return d_; }
  const std::vector<RadialPiece>& pieces() const { return pieces_; }

  double value_at_radius(double r) const {
    for (const auto& p : pieces_)
      if (p.r_lo <= r && r <= p.r_hi) return p.value;
    return 0.0;
  }

  double max_radius() const {
    return pieces_.empty() ? 0.0 : pieces_.back().r_hi;
  }
  double max_value() const {
    double v = 0.0;
    for (const auto& p : pieces_) v = std::max(v, std::abs(p.value));
    return v;
  }
  // smallest piece width: the feature scale grids must resolve
  double feature_scale() const {
    double f = std::numeric_limits<double>::infinity();
    for (const auto& p : pieces_) f = std::min(f, p.r_hi - p.r_lo);
    return f;
  }
  double l1_norm() const {  // integral of |f| over R^d
    double acc = 0.0;
    const double vd = ball_volume(d_);
    for (const auto& p : pieces_)
      acc += std::abs(p.value) *
             vd * (std::pow(p.r_hi, d_) - std::pow(p.r_lo, d_));
    return acc;
  }

 private:
  int d_;
  std::vector<RadialPiece> pieces_;
};

// A_t f at |x| = rho for radial f: each piece [a, b] contributes
// value * (cap(u(b)) - cap(u(a))) with u(r) = (rho^2 + t^2 - r^2) / (2 t rho).
inline double radial_average(const RadialProfile& f, double t, double rho) {
  if (!(t > 0.0)) throw std::invalid_argument("radial_average: t must be > 0");
  if (rho < 0.0) throw std::invalid_argument("radial_average: rho must be >= 0");
  if (rho == 0.0) return f.value_at_radius(t);
  const int d = f.dimension();
  const double inv = 1.0 / (2.0 * t * rho);
  const double s = rho * rho + t * t;
  double acc = 0.0;
  for (const auto& p : f.pieces()) {
    const double u_hi = (s - p.r_hi * p.r_hi) * inv;  // lower u bound
    const double u_lo = (s - p.r_lo * p.r_lo) * inv;  // upper u bound
    const double m = cap_fraction(d, u_hi) - cap_fraction(d, u_lo);
    if (m > 0.0) acc += p.value * m;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Cylinder-annulus profile g = 1{ ||y| - r| <= delta, |y'| <= sigma }
// ---------------------------------------------------------------------------

struct CylProfile {
  int d = 3;
  double r = 1.0;      // annulus center radius
  double delta = 0.0;  // annulus half-width
  double sigma = 0.0;  // cylinder radius

  CylProfile(int d_, double r_, double delta_, double sigma_)
      : d(d_), r(r_), delta(delta_), sigma(sigma_) {
    if (d < 2) throw std::invalid_argument("CylProfile: d must be >= 2");
    if (!(delta > 0.0 && delta <= sigma && sigma <= 1.0))
      throw std::invalid_argument("CylProfile: need 0 < delta <= sigma <= 1");
    if (!(r >= 1.0 && r <= 2.0))
      throw std::invalid_argument("CylProfile: need r in [1, 2]");
  }
};

struct QuadValue {
  double value = 0.0;
  bool accuracy_warning = false;
};

namespace detail {

// Adaptive panel integration: accept a panel when one GL32 sweep agrees
// with its bisection; refine otherwise up to `max_depth`.
template <class F>
void adaptive_gl(F& f, double a, double b, double whole, int depth,
                 int max_depth, double abs_tol, double rel_tol, double& acc,
                 bool& warning) {
  const double m = 0.5 * (a + b);
  const double left = gl32(f, a, m);
  const double right = gl32(f, m, b);
  const double split = left + right;
  if (std::abs(split - whole) <=
      std::max(abs_tol, rel_tol * std::abs(split))) {
    acc += split;
    return;
  }
  if (depth >= max_depth) {
    acc += split;
    warning = true;
    return;
  }
  adaptive_gl(f, a, m, left, depth + 1, max_depth, abs_tol, rel_tol, acc,
              warning);
  adaptive_gl(f, m, b, right, depth + 1, max_depth, abs_tol, rel_tol, acc,
              warning);
}

template <class F>
QuadValue integrate_adaptive(F f, const std::vector<double>& edges,
                             double abs_tol, double rel_tol,
                             int max_depth = 12) {
  QuadValue out;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (edges[i + 1] <= edges[i]) continue;
    adaptive_gl(f, edges[i], edges[i + 1], gl32(f, edges[i], edges[i + 1]), 0,
                max_depth, abs_tol, rel_tol, out.value, out.accuracy_warning);
  }
  return out;
}

inline void push_angle(std::vector<double>& edges, double c) {
  if (c >= -1.0 && c <= 1.0) edges.push_back(std::acos(c));
}

}  // namespace detail

// A_t g(x) for x = (x', x_d) with |x'| = x_perp. Parametrize
// y = (sin(phi) w, cos(phi)) with w in S^{d-2}; for fixed phi the indicator
// cuts an explicit cos(psi) interval in the angle psi between x' and w,
// whose (sin psi)^{d-3} measure is evaluated in closed form. The remaining
// phi integral runs on adaptive panels seeded at the geometric breakpoints.
inline QuadValue cylinder_average(const CylProfile& g, double t, double x_perp,
                                  double x_d) {
  if (!(t > 0.0)) throw std::invalid_argument("cylinder_average: t must be > 0");
  if (x_perp < 0.0)
    throw std::invalid_argument("cylinder_average: x_perp must be >= 0");
  const double pi = 3.14159265358979323846;
  const int d = g.d;
  const double sig2 = g.sigma * g.sigma;
  const double r_in = std::max(0.0, g.r - g.delta);
  const double lo2 = r_in * r_in;
  const double hi2 = (g.r + g.delta) * (g.r + g.delta);

  if (d == 2) {
    // direct angular integral over theta; y = (sin, cos) around the circle
    auto ind = [&](double th) {
      const double y1 = std::sin(th), y2 = std::cos(th);
      const double p1 = x_perp + t * y1, p2 = x_d + t * y2;
      const double q = p1 * p1 + p2 * p2;
      return (q >= lo2 && q <= hi2 && std::abs(p1) <= g.sigma) ? 1.0 : 0.0;
    };
    auto res = detail::integrate_adaptive(ind, {-pi, 0.0, pi}, 1e-12, 1e-9);
    res.value /= 2.0 * pi;
    return res;
  }

  const int k_psi = d - 3;
  const double z_psi = sin_power_integral(k_psi, 0.0, pi);
  const double z_phi = sin_power_integral(d - 2, 0.0, pi);

  // fraction of w in S^{d-2} satisfying the indicator at fixed phi
  auto h = [&](double phi) {
    const double sp = std::sin(phi), cp = std::cos(phi);
    const double axial = x_d + t * cp;          // (x - t y)_d with y_d = -cos
    const double C = axial * axial;
    double p_lo = std::max(lo2 - C, 0.0);
    double p_hi = std::min(sig2, hi2 - C);
    if (p_hi < p_lo) return 0.0;
    const double A = x_perp * x_perp + t * t * sp * sp;
    const double B = 2.0 * t * x_perp * sp;
    if (B <= 1e-300) return (A >= p_lo && A <= p_hi) ? 1.0 : 0.0;
    const double c_hi = std::clamp((A - p_lo) / B, -1.0, 1.0);
    const double c_lo = std::clamp((A - p_hi) / B, -1.0, 1.0);
    if ((A - p_lo) / B < -1.0 || (A - p_hi) / B > 1.0) return 0.0;
    const double psi_lo = std::acos(c_hi);
    const double psi_hi = std::acos(c_lo);
    return sin_power_integral(k_psi, psi_lo, psi_hi) / z_psi;
  };
  auto integrand = [&](double phi) {
    return h(phi) * std::pow(std::sin(phi), d - 2);
  };

  // panel edges where the psi-interval can appear, vanish, or kink
  std::vector<double> edges{0.0, pi};
  if (g.sigma < t) {
    const double a = std::asin(g.sigma / t);
    edges.push_back(a);
    edges.push_back(pi - a);
  }
  for (double rr : {g.r - g.delta, g.r + g.delta}) {
    detail::push_angle(edges, (rr - x_d) / t);   // axial = +-rr crossings
    detail::push_angle(edges, (-rr - x_d) / t);
  }
  for (double p2 : {std::max(lo2 - x_d * x_d, 0.0), sig2}) {
    const double rt = std::sqrt(p2);
    if (t > 0.0) {
      const double s1 = (rt - x_perp) / t, s2 = (rt + x_perp) / t;
      for (double s : {s1, s2})
        if (s >= 0.0 && s <= 1.0) {
          edges.push_back(std::asin(s));
          edges.push_back(pi - std::asin(s));
        }
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](double a, double b) { return b - a < 1e-13; }),
              edges.end());

  auto res = detail::integrate_adaptive(integrand, edges, 1e-13 * z_phi, 1e-8);
  res.value /= z_phi;
  return res;
}

// ---------------------------------------------------------------------------
// Discretized sup over t in E
// ---------------------------------------------------------------------------

// Candidate dilations: left endpoints and midpoints of the level-j cells
// meeting E, projected to the nearest point of E so every sample is an
// admissible dilation. Yields a certified lower bound for sup_{t in E}.
template <class F>
double maximal_value(const IntervalSet& E, const DyadicCells& cells, F&& f,
                     const Interval* window = nullptr) {
  double best = 0.0;
  const double half = 0.5 * cells.width();
  std::size_t lo = 0, hi = cells.size();
  if (window) {
    lo = std::lower_bound(cells.indices.begin(), cells.indices.end(),
                          static_cast<std::int64_t>(
                              std::floor(std::ldexp(window->lo, cells.j))) -
                              1) -
         cells.indices.begin();
    hi = std::upper_bound(cells.indices.begin(), cells.indices.end(),
                          static_cast<std::int64_t>(
                              std::ceil(std::ldexp(window->hi, cells.j)))) -
         cells.indices.begin();
  }
  double last_t = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = lo; i < hi; ++i) {
    for (double cand : {cells.t(i), cells.t(i) + half}) {
      const double tt = E.nearest_point(cand);
      if (tt == last_t) continue;
      last_t = tt;
      best = std::max(best, std::abs(f(tt)));
    }
  }
  return best;
}

template <class F>
double maximal_value(const IntervalSet& E, F&& f, int j_res) {
  const DyadicCells cells = dyadic_cells(E, j_res);
  return maximal_value(E, cells, std::forward<F>(f));
}

// ---------------------------------------------------------------------------
// Evaluation grids and L^p norms with d-dimensional volume weights
// ---------------------------------------------------------------------------

// Midpoint grid in the radial variable; weight_i = omega_{d-1} rho^{d-1} h.
struct RadialGrid {
  int d = 3;
  std::vector<double> rho;
  std::vector<double> weight;

  static RadialGrid make(int d, double lo, double hi, double step,
                         double feature_scale) {
    if (!(step > 0.0) || hi <= lo)
      throw std::invalid_argument("RadialGrid: bad range or step");
    if (step > feature_scale / 8.0)
      throw std::invalid_argument(
          "RadialGrid: step must give >= 8 samples across each jump");
    RadialGrid g;
    g.d = d;
    const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / step));
    const double h = (hi - lo) / static_cast<double>(n);
    const double area = surface_area(d);
    g.rho.resize(n);
    g.weight.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      g.rho[i] = lo + (static_cast<double>(i) + 0.5) * h;
      g.weight[i] = area * std::pow(g.rho[i], d - 1) * h;
    }
    return g;
  }
};

// (sum_i w_i |v_i|^p)^(1/p); p = +infinity gives max |v_i|.
inline double lp_norm(const std::vector<double>& values,
                      const std::vector<double>& weights, double p) {
  if (values.size() != weights.size())
    throw std::invalid_argument("lp_norm: size mismatch");
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
  }
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
  double acc = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i)
    acc += weights[i] * std::pow(std::abs(values[i]), p);
  return std::pow(acc, 1.0 / p);
}

// Volume of { ||y| - r| <= delta, |y'| <= sigma } in R^d via the radial
// profile of the polar-angle cap, exact up to quadrature on smooth panels.
inline double cylinder_annulus_volume(int d, double r, double delta,
                                      double sigma) {
  const double lo = std::max(0.0, r - delta), hi = r + delta;
  auto f = [&](double R) {
    const double frac = std::min(1.0, sigma / R);
    const double cap = 2.0 * sin_power_integral(d - 2, 0.0, std::asin(frac));
    return std::pow(R, d - 1) * cap;
  };
  std::vector<double> edges{lo, hi};
  if (sigma > lo && sigma < hi) edges = {lo, sigma, hi};
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    acc += detail::gl32(f, edges[i], edges[i + 1]);
  const double omega = (d == 2) ? 2.0 : surface_area(d - 1);
  return omega * acc;
}

}  // namespace smax
