// Exact finite unions of closed intervals on the line, the ground type for
// every dilation set E in this library. Degenerate intervals encode points.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace smax {

// Resolution floor for endpoint arithmetic. Endpoints closer than this are
// indistinguishable and get merged; experiments stop at scales >= 2^-32,
// which leaves 12 bits of headroom.
inline constexpr double kMergeTol = 0x1p-44;

// Closed interval [lo, hi]; lo == hi is a single point.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  double midpoint() const { return 0.5 * (lo + hi); }
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool intersects(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }
};

inline Interval hull(const Interval& a, const Interval& b) {
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

inline bool operator==(const Interval& a, const Interval& b) {
  return a.lo == b.lo && a.hi == b.hi;
}

// Sorted union of disjoint closed intervals inside an ambient interval.
// Consecutive components are separated by more than merge_tol; anything
// closer is merged during normalization. Immutable after construction.
class IntervalSet {
 public:
  IntervalSet() = default;

  static IntervalSet normalized(std::vector<Interval> parts, Interval ambient,
                                double merge_tol = kMergeTol) {
    if (!(merge_tol > 0.0))
      throw std::invalid_argument("IntervalSet: merge_tol must be positive");
    if (!(ambient.lo <= ambient.hi))
      throw std::invalid_argument("IntervalSet: ambient is empty");
    for (const Interval& p : parts)
      if (!(p.lo <= p.hi))
        throw std::invalid_argument("IntervalSet: interval with lo > hi");
    std::sort(parts.begin(), parts.end(),
              [](const Interval& a, const Interval& b) {
                return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
              });
    std::vector<Interval> merged;
    merged.reserve(parts.size());
    for (const Interval& p : parts) {
      if (!merged.empty() && p.lo - merged.back().hi <= merge_tol)
        merged.back().hi = std::max(merged.back().hi, p.hi);
      else
        merged.push_back(p);
    }
    for (Interval& p : merged) {
      // tolerate float drift at the ambient boundary, reject real escapes
      if (p.lo < ambient.lo - merge_tol || p.hi > ambient.hi + merge_tol)
        throw std::invalid_argument("IntervalSet: component outside ambient");
      p.lo = std::max(p.lo, ambient.lo);
      p.hi = std::min(p.hi, ambient.hi);
    }
    IntervalSet s;
    s.components_ = std::move(merged);
    s.ambient_ = ambient;
    s.merge_tol_ = merge_tol;
    return s;
  }

  const std::vector<Interval>& components() const { return components_; }
  const Interval& component(std::size_t i) const { return components_[i]; }
  Interval ambient() const { return ambient_; }
  double merge_tol() const { return merge_tol_; }
  bool empty() const { return components_.empty(); }
  std::size_t size() const { return components_.size(); }

  double min() const { return components_.front().lo; }
  double max() const { return components_.back().hi; }

  // E restricted to the closed window; ambient and tolerance are kept.
  IntervalSet clip(Interval window) const {
    IntervalSet out;
    out.ambient_ = ambient_;
    out.merge_tol_ = merge_tol_;
    if (empty() || window.lo > window.hi) return out;
    auto first = std::partition_point(
        components_.begin(), components_.end(),
        [&](const Interval& c) { return c.hi < window.lo; });
    for (auto it = first; it != components_.end() && it->lo <= window.hi; ++it)
      out.components_.push_back({std::max(it->lo, window.lo),
                                 std::min(it->hi, window.hi)});
    return out;
  }

  // Same set inside a larger ambient (used to align unions).
  IntervalSet with_ambient(Interval a) const {
    if (a.lo > ambient_.lo || a.hi < ambient_.hi)
      throw std::invalid_argument("with_ambient: new ambient does not contain old");
    IntervalSet out = *this;
    out.ambient_ = a;
    return out;
  }

  // Smallest gap between consecutive components (+inf when fewer than two).
  double min_gap() const {
    double g = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < components_.size(); ++i)
      g = std::min(g, components_[i].lo - components_[i - 1].hi);
    return g;
  }

  // Finest structural scale: the smaller of min_gap and the smallest
  // nonzero component length. Saturation scale for covering counts.
  double finest_scale() const {
    double f = min_gap();
    for (const Interval& c : components_)
      if (c.length() > 0.0) f = std::min(f, c.length());
    return f;
  }

  // Point of E nearest to x (E nonempty).
  double nearest_point(double x) const {
    if (empty()) throw std::logic_error("nearest_point on empty set");
    auto it = std::partition_point(components_.begin(), components_.end(),
                                   [&](const Interval& c) { return c.hi < x; });
    if (it == components_.end()) return components_.back().hi;
    if (it->contains(x)) return x;
    double right = it->lo;
    if (it == components_.begin()) return right;
    double left = std::prev(it)->hi;
    return (x - left <= right - x) ? left : right;
  }

  bool operator==(const IntervalSet& o) const {
    return components_ == o.components_ && ambient_.lo == o.ambient_.lo &&
           ambient_.hi == o.ambient_.hi && merge_tol_ == o.merge_tol_;
  }

 private:
  std::vector<Interval> components_;
  Interval ambient_{0.0, 0.0};
  double merge_tol_ = kMergeTol;
};

}  // namespace smax
