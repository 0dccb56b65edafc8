// Least-squares helpers for log-log exponent fitting.
#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace smax {

struct FitPoint {
  double x = 0.0;
  double y = 0.0;
};

// Result of a log-log regression. `scales` keeps the (delta, count) pairs
// the slope was computed from so reports are self-contained.
struct FitReport {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 1.0;
  double max_residual = 0.0;
  bool degenerate = false;
  std::vector<std::pair<double, double>> scales;
};

inline void least_squares_into(std::span<const FitPoint> pts, FitReport& r) {
  const std::size_t n = pts.size();
  if (n < 2) throw std::invalid_argument("least_squares: need >= 2 points");
  double sx = 0, sy = 0;
  for (const auto& p : pts) {
    sx += p.x;
    sy += p.y;
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (const auto& p : pts) {
    sxx += (p.x - mx) * (p.x - mx);
    sxy += (p.x - mx) * (p.y - my);
    syy += (p.y - my) * (p.y - my);
  }
  if (sxx == 0.0) {
    r.slope = 0.0;
    r.intercept = my;
    r.r_squared = 0.0;
    r.degenerate = true;
    return;
  }
  r.slope = sxy / sxx;
  r.intercept = my - r.slope * mx;
  double ssres = 0.0, maxres = 0.0;
  for (const auto& p : pts) {
    double e = p.y - (r.intercept + r.slope * p.x);
    ssres += e * e;
    maxres = std::max(maxres, std::abs(e));
  }
  r.max_residual = maxres;
  r.r_squared = (syy > 0.0) ? std::max(0.0, 1.0 - ssres / syy) : 1.0;
}

inline FitReport least_squares(std::span<const FitPoint> pts) {
  FitReport r;
  least_squares_into(pts, r);
  return r;
}

}  // namespace smax
