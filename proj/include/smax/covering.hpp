// Covering numbers N(E, delta), localized counts N(E \cap I, delta), and the
// level-j dyadic cell combinatorics (cells meeting E, distance buckets).
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "smax/interval_set.hpp"

namespace smax {

namespace detail {

// Greedy sweep over E clipped to [wlo, whi]: place [x, x+delta] at the
// leftmost uncovered point x, repeat. Optimal in one dimension. Residual
// slivers shorter than merge_tol count as covered (resolution floor).
// When `anchors` is non-null the chosen left endpoints are recorded.
inline std::int64_t greedy_cover_count(const IntervalSet& E, double wlo,
                                       double whi, double delta,
                                       std::vector<double>* anchors = nullptr) {
  if (!(delta > 0.0)) throw std::invalid_argument("covering: delta must be > 0");
  const auto& comps = E.components();
  if (comps.empty() || wlo > whi) return 0;
  const double tol = E.merge_tol();
  std::int64_t count = 0;
  double covered_to = -std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  // first component intersecting the window
  i = std::partition_point(comps.begin(), comps.end(),
                           [&](const Interval& c) { return c.hi < wlo; }) -
      comps.begin();
  const std::int64_t step_cap = std::int64_t(1) << 33;
  while (i < comps.size() && comps[i].lo <= whi) {
    double clo = std::max(comps[i].lo, wlo);
    double chi = std::min(comps[i].hi, whi);
    if (chi - covered_to > tol) {
      double anchor = std::max(clo, covered_to);
      if (anchors) anchors->push_back(anchor);
      ++count;
      if (count > step_cap)
        throw std::domain_error("covering: count exceeds resolution cap");
      covered_to = anchor + delta;
      if (covered_to - chi <= tol) continue;  // same component still open
    }
    // advance to the first component with in-window points beyond covered_to
    i = std::partition_point(comps.begin() + i, comps.end(),
                             [&](const Interval& c) {
                               return std::min(c.hi, whi) - covered_to <= tol;
                             }) -
        comps.begin();
  }
  return count;
}

}  // namespace detail

// N(E, delta): minimal number of closed length-delta intervals covering E.
inline std::int64_t covering_number(const IntervalSet& E, double delta) {
  return detail::greedy_cover_count(E, -std::numeric_limits<double>::infinity(),
                                    std::numeric_limits<double>::infinity(),
                                    delta);
}

// Left endpoints of the greedy cover; each anchor is a point of E or the
// running cover edge inside a component, so anchors meet E.
inline std::vector<double> greedy_cover(const IntervalSet& E, double delta) {
  std::vector<double> anchors;
  detail::greedy_cover_count(E, -std::numeric_limits<double>::infinity(),
                             std::numeric_limits<double>::infinity(), delta,
                             &anchors);
  return anchors;
}

// N(E \cap I, delta) with closed window I.
inline std::int64_t covering_number_local(const IntervalSet& E, Interval I,
                                          double delta) {
  return detail::greedy_cover_count(E, I.lo, I.hi, delta);
}

// Level-j dyadic cells [k 2^-j, (k+1) 2^-j] meeting E. Cells are closed, so
// a point of E sitting exactly on a dyadic boundary belongs to both
// neighbouring cells; this inflates counts by at most a factor 2.
struct DyadicCells {
  int j = 0;
  std::vector<std::int64_t> indices;  // sorted, strictly increasing

  std::size_t size() const { return indices.size(); }
  double width() const { return std::ldexp(1.0, -j); }
  // left endpoint t_nu of cell nu
  double t(std::size_t nu) const {
    return std::ldexp(static_cast<double>(indices[nu]), -j);
  }
  std::vector<double> left_endpoints() const {
    std::vector<double> ts(indices.size());
    for (std::size_t i = 0; i < indices.size(); ++i) ts[i] = t(i);
    return ts;
  }
};

inline DyadicCells dyadic_cells(const IntervalSet& E, int j,
                                const Interval* window = nullptr) {
  if (j < 0 || j > 52) throw std::invalid_argument("dyadic_cells: bad level j");
  DyadicCells out;
  out.j = j;
  const IntervalSet clipped = window ? E.clip(*window) : E;
  for (const Interval& c : clipped.components()) {
    double slo = std::ldexp(c.lo, j);
    double shi = std::ldexp(c.hi, j);
    auto k_lo = static_cast<std::int64_t>(std::ceil(slo - 1.0));
    auto k_hi = static_cast<std::int64_t>(std::floor(shi));
    if (!out.indices.empty() && k_lo <= out.indices.back())
      k_lo = out.indices.back() + 1;
    for (std::int64_t k = k_lo; k <= k_hi; ++k) out.indices.push_back(k);
  }
  return out;
}

// Z_{n,j}(nu): indices nu' with 2^{n-1-j} <= |t_nu - t_nu'| < 2^{n-j}.
// The n = 0 bucket is widened to [0, 2^-j) so that the buckets partition
// the whole index set (nu itself lives there). Distances are exact on the
// integer cell grid.
inline std::vector<std::size_t> znj_partition(const DyadicCells& cells,
                                              std::size_t nu, int n) {
  if (nu >= cells.size()) throw std::out_of_range("znj_partition: bad nu");
  if (n < 0) throw std::invalid_argument("znj_partition: n must be >= 0");
  std::vector<std::size_t> out;
  const auto& ks = cells.indices;
  const std::int64_t k0 = ks[nu];
  if (n == 0) {
    out.push_back(nu);  // |dk| < 1 means dk == 0
    return out;
  }
  if (n - 1 >= 62) return out;
  const std::int64_t lo = std::int64_t(1) << (n - 1);
  const std::int64_t hi = std::int64_t(1) << n;  // exclusive
  auto push_range = [&](std::int64_t a, std::int64_t b) {  // k in [a, b)
    auto first = std::lower_bound(ks.begin(), ks.end(), a);
    auto last = std::lower_bound(ks.begin(), ks.end(), b);
    for (auto it = first; it != last; ++it)
      out.push_back(static_cast<std::size_t>(it - ks.begin()));
  };
  push_range(k0 - hi + 1, k0 - lo + 1);  // left side: dk in [lo, hi)
  push_range(k0 + lo, k0 + hi);          // right side
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace smax
