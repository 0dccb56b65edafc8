// Dimension estimators from covering data: Minkowski slope, Assouad
// spectrum at fixed theta, Assouad dimension from windowed counts, and the
// six bounded quantities attached to the Assouad-regular construction.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "smax/covering.hpp"
#include "smax/fit.hpp"
#include "smax/interval_set.hpp"

namespace smax {

namespace detail {

inline void check_fit_range(const IntervalSet& E, int j_min, int j_max) {
  if (j_min < 0 || j_max < j_min + 2)
    throw std::invalid_argument("fit range: need j_max >= j_min + 2");
  if (std::ldexp(1.0, -j_max) < E.merge_tol())
    throw std::domain_error("fit range: 2^-j_max below merge tolerance");
}

// Max of N(E cap I, delta) over windows I of length L slid at `step` across
// the ambient. Stretches of empty windows are skipped by jumping to the
// next component, so cost scales with the set, not the position count.
inline std::int64_t max_window_covering(const IntervalSet& E, double L,
                                        double step, double delta) {
  if (E.empty()) return 0;
  const Interval amb = E.ambient();
  if (L >= amb.length())
    return detail::greedy_cover_count(E, amb.lo, amb.lo + L, delta);
  const auto& comps = E.components();
  const double last_pos = amb.hi - L;
  std::int64_t best = 0;
  double pos = amb.lo;
  bool done = false;
  while (!done) {
    if (pos >= last_pos) {
      pos = last_pos;
      done = true;
    }
    // first component with content in [pos, pos+L]
    auto it = std::partition_point(comps.begin(), comps.end(),
                                   [&](const Interval& c) { return c.hi < pos; });
    if (it == comps.end()) break;
    if (it->lo > pos + L && !done) {
      // empty window: jump to the first position reaching this component
      double target = it->lo - L;
      double k = std::ceil((target - amb.lo) / step);
      double next = amb.lo + std::max(0.0, k) * step;
      pos = (next > pos) ? next : pos + step;
      continue;
    }
    best = std::max(best, detail::greedy_cover_count(E, pos, pos + L, delta));
    pos += step;
  }
  return best;
}

}  // namespace detail

// Least-squares slope of log2 N(E, 2^-j) against j; estimates dim_M E.
inline FitReport minkowski_fit(const IntervalSet& E, int j_min, int j_max) {
  detail::check_fit_range(E, j_min, j_max);
  FitReport r;
  std::vector<FitPoint> pts;
  bool all_one = true;
  for (int j = j_min; j <= j_max; ++j) {
    const double delta = std::ldexp(1.0, -j);
    const auto n = covering_number(E, delta);
    if (n == 0) throw std::invalid_argument("minkowski_fit: empty set");
    all_one = all_one && (n == 1);
    pts.push_back({static_cast<double>(j), std::log2(static_cast<double>(n))});
    r.scales.emplace_back(delta, static_cast<double>(n));
  }
  if (all_one) {
    r.slope = 0.0;
    r.degenerate = true;
    return r;
  }
  least_squares_into(pts, r);
  return r;
}

// Slope of log2 max_{|I| = delta^theta} N(E cap I, delta) against
// log2(|I|/delta) = (1-theta) j; estimates the Assouad spectrum at theta.
// Windows slide at half their length, which undersamples the true sup by
// at most a factor 2 in N.
inline FitReport assouad_spectrum_fit(const IntervalSet& E, double theta,
                                      int j_min, int j_max) {
  if (!(theta >= 0.0 && theta < 1.0))
    throw std::invalid_argument("assouad_spectrum_fit: need 0 <= theta < 1");
  detail::check_fit_range(E, j_min, j_max);
  FitReport r;
  std::vector<FitPoint> pts;
  bool all_one = true;
  for (int j = j_min; j <= j_max; ++j) {
    const double delta = std::ldexp(1.0, -j);
    const double L = std::exp2(-theta * j);
    const auto m = detail::max_window_covering(E, L, 0.5 * L, delta);
    if (m == 0) throw std::invalid_argument("assouad_spectrum_fit: empty set");
    all_one = all_one && (m == 1);
    pts.push_back({(1.0 - theta) * j, std::log2(static_cast<double>(m))});
    r.scales.emplace_back(delta, static_cast<double>(m));
  }
  if (all_one) {
    r.slope = 0.0;
    r.degenerate = true;
    return r;
  }
  least_squares_into(pts, r);
  return r;
}

// One row of the windowed-count table behind assouad_fit.
struct AssouadPairCount {
  int m = 0;           // window level, |I| = 2^-m
  int j = 0;           // fine level, delta = 2^-j
  std::int64_t count = 0;  // max_I N(E cap I, 2^-j)
};

inline std::vector<AssouadPairCount> assouad_pair_table(const IntervalSet& E,
                                                        int j_min, int j_max) {
  detail::check_fit_range(E, j_min, j_max);
  std::vector<AssouadPairCount> table;
  for (int m = j_min; m < j_max; ++m) {
    const double L = std::ldexp(1.0, -m);
    for (int j = m + 1; j <= j_max; ++j) {
      const double delta = std::ldexp(1.0, -j);
      table.push_back(
          {m, j, detail::max_window_covering(E, L, 0.5 * L, delta)});
    }
  }
  return table;
}

// Assouad-dimension estimate. For each window level m the counts
// log2 max_I N(E cap I, 2^-j) are regressed against j - m; the estimate is
// the worst (largest) per-level slope, matching the sup over window scales
// in the definition. The raw per-pair ratio overshoots badly at j - m <= 2
// (counts saturate at |I|/delta on any set), hence the regression form.
// The reported scales are the (2^{m-j}, count) pairs of the maximizing m.
inline FitReport assouad_fit(const IntervalSet& E, int j_min, int j_max) {
  auto table = assouad_pair_table(E, j_min, j_max);
  FitReport best;
  bool have = false;
  bool all_one = true;
  for (const auto& row : table) all_one = all_one && (row.count <= 1);
  if (all_one) {
    best.slope = 0.0;
    best.degenerate = true;
    for (const auto& row : table)
      best.scales.emplace_back(std::ldexp(1.0, row.m - row.j),
                               static_cast<double>(row.count));
    return best;
  }
  // prefer levels with >= 3 scales; fall back to 2 when the range is tight
  for (int min_pts : {3, 2}) {
    for (int m = j_min; m < j_max; ++m) {
      std::vector<FitPoint> pts;
      std::vector<std::pair<double, double>> scales;
      for (const auto& row : table)
        if (row.m == m && row.count > 0) {
          pts.push_back({static_cast<double>(row.j - row.m),
                         std::log2(static_cast<double>(row.count))});
          scales.emplace_back(std::ldexp(1.0, row.m - row.j),
                              static_cast<double>(row.count));
        }
      if (pts.size() < static_cast<std::size_t>(min_pts)) continue;
      FitReport r;
      least_squares_into(pts, r);
      r.scales = std::move(scales);
      if (!have || r.slope > best.slope) {
        best = std::move(r);
        have = true;
      }
    }
    if (have) break;
  }
  if (!have) throw std::domain_error("assouad_fit: no usable window level");
  return best;
}

// The six quantities of the construction lemma, sampled over dyadic delta:
//   (i)/(ii)   sup/inf of delta^beta N(E, delta)
//   (iii)/(iv) sup/inf of max_{|I|=delta^theta} (delta/|I|)^gamma N(E cap I, delta)
//   (v)/(vi)   sup/inf of max over all |I| in [delta, |ambient|] of the same.
// Window lengths for (v) run over the dyadic grid plus delta^theta and the
// full ambient; max/min over the sampled range stand in for limsup/liminf.
struct QuantitySixReport {
  double global_max = 0.0, global_min = 0.0;            // (i), (ii)
  double theta_window_max = 0.0, theta_window_min = 0.0;  // (iii), (iv)
  double any_window_max = 0.0, any_window_min = 0.0;      // (v), (vi)
  // per-delta trace rows: {delta, f_global, f_theta, f_any}
  std::vector<std::array<double, 4>> trace;

  bool all_positive() const {
    return global_min > 0.0 && theta_window_min > 0.0 && any_window_min > 0.0;
  }
};

inline QuantitySixReport quantity_six(const IntervalSet& E, double beta,
                                      double gamma, double theta, int j_min,
                                      int j_max) {
  detail::check_fit_range(E, j_min, j_max);
  if (std::ldexp(1.0, -j_max) < E.finest_scale())
    throw std::domain_error("quantity_six: range exceeds construction resolution");
  const Interval amb = E.ambient();
  QuantitySixReport rep;
  bool first = true;
  for (int j = j_min; j <= j_max; ++j) {
    const double delta = std::ldexp(1.0, -j);
    const double f1 =
        std::pow(delta, beta) * static_cast<double>(covering_number(E, delta));

    const double Lt = std::pow(delta, theta);
    const auto mt = detail::max_window_covering(E, Lt, 0.5 * Lt, delta);
    const double f2 = std::pow(delta / Lt, gamma) * static_cast<double>(mt);

    double f3 = f2;
    for (int m = 0; m <= j; ++m) {
      const double L = std::ldexp(1.0, -m);
      if (L > amb.length() && m > 0) continue;
      if (L < delta) break;
      const auto c = detail::max_window_covering(E, L, 0.5 * L, delta);
      f3 = std::max(f3, std::pow(delta / L, gamma) * static_cast<double>(c));
    }
    {
      const double L = amb.length();
      if (L >= delta) {
        const auto c = detail::max_window_covering(E, L, 0.5 * L, delta);
        f3 = std::max(f3, std::pow(delta / L, gamma) * static_cast<double>(c));
      }
    }

    rep.trace.push_back({delta, f1, f2, f3});
    if (first) {
      rep.global_max = rep.global_min = f1;
      rep.theta_window_max = rep.theta_window_min = f2;
      rep.any_window_max = rep.any_window_min = f3;
      first = false;
    } else {
      rep.global_max = std::max(rep.global_max, f1);
      rep.global_min = std::min(rep.global_min, f1);
      rep.theta_window_max = std::max(rep.theta_window_max, f2);
      rep.theta_window_min = std::min(rep.theta_window_min, f2);
      rep.any_window_max = std::max(rep.any_window_max, f3);
      rep.any_window_min = std::min(rep.any_window_min, f3);
    }
  }
  return rep;
}

}  // namespace smax
