// Test-only oracles, independent of the library's computation paths.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "smax/interval_set.hpp"

namespace smax_test {

// Exact minimal covering count by exhaustive search over candidate anchor
// placements (left endpoints drawn from component starts shifted by
// multiples of delta, the gap structure of the problem). No greedy
// assumption: at each step every candidate covering the first uncovered
// point is branched on.
inline int exhaustive_covering_number(const smax::IntervalSet& E,
                                      double delta) {
  const auto& comps = E.components();
  if (comps.empty()) return 0;
  const double tol = E.merge_tol();
  const double top = comps.back().hi;
  // anchor chains may start at any component and run across later ones
  std::vector<double> cands;
  for (const auto& c : comps)
    for (double a = c.lo; a <= top + tol; a += delta) cands.push_back(a);
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

  int best = std::numeric_limits<int>::max();
  std::function<void(double, int)> go = [&](double covered_to, int used) {
    if (used >= best) return;
    auto it = std::partition_point(
        comps.begin(), comps.end(),
        [&](const smax::Interval& c) { return c.hi - covered_to <= tol; });
    if (it == comps.end()) {
      best = used;
      return;
    }
    const double first = std::max(it->lo, covered_to);
    for (double a : cands) {
      if (a > first + tol) break;
      if (a + delta < first - tol) continue;
      if (a + delta <= covered_to + tol) continue;
      go(std::max(covered_to, a + delta), used + 1);
    }
  };
  go(-std::numeric_limits<double>::infinity(), 0);
  return best;
}

// Random small set on a coarse rational grid (step 1/64 over [1, 2]).
inline smax::IntervalSet random_grid_set(std::mt19937_64& rng,
                                         int max_components = 12) {
  std::uniform_int_distribution<int> count(1, max_components);
  std::uniform_int_distribution<int> cell(0, 63);
  std::uniform_int_distribution<int> len(0, 6);
  std::vector<smax::Interval> parts;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    const int a = cell(rng);
    const int b = std::min(64, a + len(rng));
    parts.push_back({1.0 + a / 64.0, 1.0 + b / 64.0});
  }
  return smax::IntervalSet::normalized(std::move(parts), {1.0, 2.0});
}

// Brute-force scan: all level-j cells over the ambient, closed-cell meets.
inline std::vector<std::int64_t> scan_cells(const smax::IntervalSet& E, int j) {
  std::vector<std::int64_t> out;
  const auto lo = static_cast<std::int64_t>(
      std::floor(std::ldexp(E.ambient().lo, j))) - 2;
  const auto hi = static_cast<std::int64_t>(
      std::ceil(std::ldexp(E.ambient().hi, j))) + 2;
  for (std::int64_t k = lo; k <= hi; ++k) {
    const smax::Interval cell{std::ldexp(double(k), -j),
                              std::ldexp(double(k + 1), -j)};
    for (const auto& c : E.components())
      if (c.intersects(cell)) {
        out.push_back(k);
        break;
      }
  }
  return out;
}

// Naive Cantor recursion: split every interval into its left and right
// mu-fraction, repeat k times.
inline std::vector<smax::Interval> naive_cantor_cells(smax::Interval base,
                                                      double mu, int k) {
  std::vector<smax::Interval> cells{base};
  for (int g = 0; g < k; ++g) {
    std::vector<smax::Interval> next;
    for (const auto& c : cells) {
      const double len = c.length() * mu;
      next.push_back({c.lo, c.lo + len});
      next.push_back({c.hi - len, c.hi});
    }
    cells = std::move(next);
  }
  return cells;
}

}  // namespace smax_test
