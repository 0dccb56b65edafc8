// The quadrangle Q(beta, gamma) in the Riesz diagram: vertices, point
// classification, the diagonal segment Seg(beta), and the four necessary
// conditions cut out by the counterexample families.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "smax/interval_set.hpp"

namespace smax {

// A point (1/p, 1/q) in the unit square.
struct RieszPoint {
  double ip = 0.0;
  double iq = 0.0;
};

struct RegionSpec {
  int d = 2;
  double beta = 1.0;
  double gamma = 1.0;
  // Q1, Q2(beta), Q3(beta), Q4(gamma)
  std::array<RieszPoint, 4> vertices;
};

inline RegionSpec q_vertices(int d, double beta, double gamma) {
  if (d < 2) throw std::invalid_argument("q_vertices: need d >= 2");
  if (!(beta >= 0.0 && beta <= gamma && gamma <= 1.0))
    throw std::invalid_argument("q_vertices: need 0 <= beta <= gamma <= 1");
  RegionSpec r;
  r.d = d;
  r.beta = beta;
  r.gamma = gamma;
  const double dd = d;
  r.vertices[0] = {0.0, 0.0};
  r.vertices[1] = {(dd - 1) / (dd - 1 + beta), (dd - 1) / (dd - 1 + beta)};
  r.vertices[2] = {(dd - beta) / (dd - beta + 1), 1.0 / (dd - beta + 1)};
  r.vertices[3] = {dd * (dd - 1) / (dd * dd + 2 * gamma - 1),
                   (dd - 1) / (dd * dd + 2 * gamma - 1)};
  return r;
}

enum class Membership { interior, boundary, outside };

inline const char* to_string(Membership m) {
  switch (m) {
    case Membership::interior: return "interior";
    case Membership::boundary: return "boundary";
    default: return "outside";
  }
}

namespace detail {

inline double cross(const RieszPoint& o, const RieszPoint& a,
                    const RieszPoint& b) {
  return (a.ip - o.ip) * (b.iq - o.iq) - (a.iq - o.iq) * (b.ip - o.ip);
}

inline double dist(const RieszPoint& a, const RieszPoint& b) {
  return std::hypot(a.ip - b.ip, a.iq - b.iq);
}

inline double segment_distance(const RieszPoint& p, const RieszPoint& a,
                               const RieszPoint& b) {
  const double vx = b.ip - a.ip, vy = b.iq - a.iq;
  const double len2 = vx * vx + vy * vy;
  if (len2 == 0.0) return dist(p, a);
  double t = ((p.ip - a.ip) * vx + (p.iq - a.iq) * vy) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(p.ip - (a.ip + t * vx), p.iq - (a.iq + t * vy));
}

// Monotone-chain hull; handles coincident and collinear vertices.
inline std::vector<RieszPoint> convex_hull(std::vector<RieszPoint> pts) {
  std::sort(pts.begin(), pts.end(), [](const RieszPoint& a, const RieszPoint& b) {
    return a.ip < b.ip || (a.ip == b.ip && a.iq < b.iq);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const RieszPoint& a, const RieszPoint& b) {
                          return a.ip == b.ip && a.iq == b.iq;
                        }),
            pts.end());
  if (pts.size() < 3) return pts;
  std::vector<RieszPoint> h;
  for (int pass = 0; pass < 2; ++pass) {
    const std::size_t start = h.size();
    for (const RieszPoint& p : pts) {
      while (h.size() >= start + 2 &&
             cross(h[h.size() - 2], h[h.size() - 1], p) <= 0.0)
        h.pop_back();
      h.push_back(p);
    }
    h.pop_back();
    std::reverse(pts.begin(), pts.end());
  }
  if (h.size() < 3) {  // collinear input degenerates to a segment
    return {pts.front(), pts.back()};
  }
  return h;  // counterclockwise
}

}  // namespace detail

// Point location on the hull of the four vertices. "boundary" means within
// tol (Euclidean) of the polygon boundary; degenerate hulls are segments or
// points and have no interior.
inline Membership membership(const RegionSpec& region, RieszPoint pt,
                             double tol = 1e-9) {
  if (tol < 0.0) throw std::invalid_argument("membership: tol must be >= 0");
  auto h = detail::convex_hull(
      {region.vertices.begin(), region.vertices.end()});
  if (h.size() == 1)
    return detail::dist(pt, h[0]) <= tol ? Membership::boundary
                                         : Membership::outside;
  if (h.size() == 2)
    return detail::segment_distance(pt, h[0], h[1]) <= tol
               ? Membership::boundary
               : Membership::outside;
  double min_signed = std::numeric_limits<double>::infinity();
  double min_segdist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < h.size(); ++i) {
    const RieszPoint& a = h[i];
    const RieszPoint& b = h[(i + 1) % h.size()];
    const double c = detail::cross(a, b, pt) / detail::dist(a, b);
    min_signed = std::min(min_signed, c);
    min_segdist = std::min(min_segdist, detail::segment_distance(pt, a, b));
  }
  if (min_segdist <= tol) return Membership::boundary;
  return min_signed > 0.0 ? Membership::interior : Membership::outside;
}

// R(beta, gamma): interior of Q plus the half-open diagonal segment
// [Q1, Q2(beta)), with Q2 itself excluded.
inline bool in_R(const RegionSpec& region, RieszPoint pt, double tol = 1e-9) {
  if (membership(region, pt, tol) == Membership::interior) return true;
  const RieszPoint& q1 = region.vertices[0];
  const RieszPoint& q2 = region.vertices[1];
  return detail::segment_distance(pt, q1, q2) <= tol &&
         detail::dist(pt, q2) > tol;
}

// The cylinder-family functional; vanishes on the edge Q3(beta) Q4(gamma~).
inline double L_functional(int d, double beta, double gamma_tilde,
                           RieszPoint pt) {
  if (!(gamma_tilde > 0.0))
    throw std::invalid_argument("L_functional: gamma_tilde must be > 0");
  if (!(beta > 0.0 && beta <= gamma_tilde && gamma_tilde <= 1.0))
    throw std::invalid_argument("L_functional: need 0 < beta <= gamma_tilde <= 1");
  const double alpha = beta / gamma_tilde;
  const double dd = d;
  return 0.5 * alpha * (dd - 1) +
         (dd - beta - 0.5 * alpha * (dd - 1)) * pt.iq -
         (1.0 + 0.5 * alpha * (dd - 1)) * pt.ip;
}

enum class NecessaryCondition {
  translation,      // q >= p                  (4.1)
  ball_family,      // (1-beta)/q + d-1 >= d/p (4.2)
  annulus_family,   // d/q >= 1/p              (4.3)
  cylinder_family,  // L(1/p, 1/q) >= 0        (4.4)
};

inline const char* to_string(NecessaryCondition c) {
  switch (c) {
    case NecessaryCondition::translation: return "translation";
    case NecessaryCondition::ball_family: return "ball_family";
    case NecessaryCondition::annulus_family: return "annulus_family";
    default: return "cylinder_family";
  }
}

// Violated subset of the four necessary conditions at (1/p, 1/q), with
// gamma~ = gamma. Residuals are normalized by the constraint gradient so
// tol acts as a Euclidean distance, matching membership().
inline std::vector<NecessaryCondition> necessary_conditions(int d, double beta,
                                                            double gamma,
                                                            RieszPoint pt,
                                                            double tol = 1e-9) {
  const double dd = d;
  std::vector<NecessaryCondition> out;
  if ((pt.ip - pt.iq) / std::sqrt(2.0) < -tol)
    out.push_back(NecessaryCondition::translation);
  {
    const double r = (1.0 - beta) * pt.iq + (dd - 1.0) - dd * pt.ip;
    if (r / std::hypot(dd, 1.0 - beta) < -tol)
      out.push_back(NecessaryCondition::ball_family);
  }
  if ((dd * pt.iq - pt.ip) / std::hypot(dd, 1.0) < -tol)
    out.push_back(NecessaryCondition::annulus_family);
  if (beta > 0.0) {
    const double alpha = beta / gamma;
    const double ci = 1.0 + 0.5 * alpha * (dd - 1.0);
    const double cq = dd - beta - 0.5 * alpha * (dd - 1.0);
    if (L_functional(d, beta, gamma, pt) / std::hypot(ci, cq) < -tol)
      out.push_back(NecessaryCondition::cylinder_family);
  } else {
    // beta = 0: the cylinder constraint degenerates to the annulus line
    if ((dd * pt.iq - pt.ip) / std::hypot(dd, 1.0) < -tol)
      out.push_back(NecessaryCondition::cylinder_family);
  }
  return out;
}

}  // namespace smax
