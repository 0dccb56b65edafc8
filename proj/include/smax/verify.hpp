// Named verification suites: dyadic-cell comparisons (factor 7), Z-bucket
// partition and cardinality bounds, the six lemma quantities, hull vs
// half-plane agreement, and the section-4.4 inclusion. Shared by the CLI
// `verify` subcommand and the acceptance runner.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "smax/covering.hpp"
#include "smax/dimension.hpp"
#include "smax/experiments.hpp"
#include "smax/region.hpp"
#include "smax/set_spec.hpp"

namespace smax {

struct SuiteResult {
  std::string name;
  bool pass = false;
  std::vector<std::pair<std::string, double>> stats;
  std::string detail;
};

namespace detail {

// battery of generated sets the combinatorial suites run over
inline std::vector<std::pair<std::string, IntervalSet>> suite_sets() {
  std::vector<std::pair<std::string, IntervalSet>> sets;
  sets.emplace_back("interval", realize(SetSpec{FullInterval{}}));
  sets.emplace_back("points",
                    realize(SetSpec{PointListParams{{1.0, 1.3, 1.5, 2.0}}}));
  sets.emplace_back("cantor13_cells", cantor_cells_set({1.0, 2.0}, 1.0 / 3, 9));
  sets.emplace_back("cantor13_bd", cantor_endpoints({1.0, 2.0}, 1.0 / 3, 10));
  sets.emplace_back("cantor14_bd", cantor_endpoints({1.0, 2.0}, 0.25, 8));
  sets.emplace_back("convex_a1", convex_sequence_set(1.0, 20000));
  sets.emplace_back("convex_a2", convex_sequence_set(2.0, 2000));
  sets.emplace_back("assouad_48", assouad_regular_set(0.4, 0.8, 3).set);
  sets.emplace_back("assouad_36", assouad_regular_set(0.3, 0.6, 2).set);
  {
    SetSpecUnion u;
    u.push_back(SetSpec{CantorParams{1.0 / 3, 5, {1.0, 2.0}}});
    u.push_back(SetSpec{PointListParams{{1.05, 1.95}}});
    sets.emplace_back("union_mix", realize(SetSpec{std::move(u)}));
  }
  return sets;
}

inline std::vector<Interval> suite_windows(const IntervalSet& E,
                                           std::mt19937_64& rng) {
  std::vector<Interval> ws;
  ws.push_back(E.ambient());
  const double len = E.ambient().length();
  std::uniform_real_distribution<double> pos(0.0, 1.0);
  for (double frac : {0.5, 0.13, 0.031}) {
    const double L = std::max(len * frac, 16 * kMergeTol);
    for (int i = 0; i < 3; ++i) {
      const double a = E.ambient().lo + pos(rng) * (len - L);
      ws.push_back({a, a + L});
    }
  }
  return ws;
}

}  // namespace detail

// #I_j(E cap I) <= 7 N(E cap I, 2^-j) and the converse domination
// N(E cap I, 2^-j) <= #I_j(E cap I), over the whole battery.
inline SuiteResult run_factor7_suite(int j_max = 20, std::uint64_t seed = 0) {
  SuiteResult res;
  res.name = "factor7";
  std::mt19937_64 rng(seed);
  std::int64_t checks = 0, violations = 0, converse_violations = 0;
  for (auto& [name, E] : detail::suite_sets()) {
    for (const Interval& I : detail::suite_windows(E, rng)) {
      for (int j = 1; j <= j_max; ++j) {
        if (std::ldexp(1.0, -j) > I.length()) continue;
        const auto cells = dyadic_cells(E, j, &I);
        const auto n = covering_number_local(E, I, std::ldexp(1.0, -j));
        if (cells.size() == 0 && n == 0) continue;
        ++checks;
        if (static_cast<std::int64_t>(cells.size()) > 7 * n) {
          ++violations;
          if (res.detail.empty())
            res.detail = name + ": cells=" + std::to_string(cells.size()) +
                         " N=" + std::to_string(n) +
                         " at j=" + std::to_string(j);
        }
        if (n > static_cast<std::int64_t>(cells.size())) ++converse_violations;
      }
    }
  }
  res.stats = {{"checks", double(checks)},
               {"factor7_violations", double(violations)},
               {"converse_violations", double(converse_violations)}};
  res.pass = violations == 0 && converse_violations == 0 && checks > 0;
  return res;
}

// Buckets Z_{n,j}(nu) partition the index set, are empty for n >= j+3, and
// on Assouad-regular sets obey #Z <= C 2^{n gamma} with one constant C.
inline SuiteResult run_znj_suite(int j_max = 20, double c_bound = 16.0,
                                 std::uint64_t seed = 0) {
  (void)seed;
  SuiteResult res;
  res.name = "znj";
  std::int64_t partition_violations = 0, empty_violations = 0, checks = 0;
  double c_max = 0.0;
  // partition + emptiness over the full battery
  for (auto& [name, E] : detail::suite_sets()) {
    (void)name;
    for (int j = 2; j <= j_max; j += 3) {
      const auto cells = dyadic_cells(E, j);
      const std::size_t stride = std::max<std::size_t>(1, cells.size() / 16);
      for (std::size_t nu = 0; nu < cells.size(); nu += stride) {
        ++checks;
        std::vector<char> seen(cells.size(), 0);
        std::size_t total = 0;
        for (int n = 0; n <= j + 2; ++n) {
          for (std::size_t idx : znj_partition(cells, nu, n)) {
            if (seen[idx]) ++partition_violations;
            seen[idx] = 1;
            ++total;
          }
        }
        if (total != cells.size()) ++partition_violations;
        for (int n = j + 3; n <= j + 5; ++n)
          if (!znj_partition(cells, nu, n).empty()) ++empty_violations;
      }
    }
  }
  // cardinality bound on the Assouad-regular family
  struct Cfg {
    double beta, gamma;
    int gens;
  };
  for (const Cfg& cfg : {Cfg{0.4, 0.8, 3}, Cfg{0.3, 0.6, 2}, Cfg{0.55, 0.9, 4}}) {
    const auto ars = assouad_regular_set(cfg.beta, cfg.gamma, cfg.gens);
    for (int j = 2; j <= j_max; ++j) {
      const auto cells = dyadic_cells(ars.set, j);
      for (std::size_t nu = 0; nu < cells.size(); ++nu)
        for (int n = 1; n <= j + 2; ++n) {
          const auto bucket = znj_partition(cells, nu, n);
          if (!bucket.empty())
            c_max = std::max(c_max, double(bucket.size()) /
                                        std::exp2(n * cfg.gamma));
        }
    }
  }
  res.stats = {{"checks", double(checks)},
               {"partition_violations", double(partition_violations)},
               {"empty_violations", double(empty_violations)},
               {"z_bound_constant", c_max}};
  res.pass = partition_violations == 0 && empty_violations == 0 &&
             c_max <= c_bound && checks > 0;
  return res;
}

// The six lemma quantities for the (0.4, 0.8) construction, sampled over
// its full dyadic range: positive, with max/min ratio at most 64.
inline SuiteResult run_six_suite(double beta = 0.4, double gamma = 0.8,
                                 double ratio_bound = 64.0) {
  SuiteResult res;
  res.name = "six";
  int gens = 1;
  while (true) {
    try {
      const auto probe = assouad_regular_set(beta, gamma, gens + 1);
      if (probe.stages.back().delta_k < 0x1p-30) break;
      ++gens;
    } catch (const std::exception&) {
      break;
    }
  }
  const auto ars = assouad_regular_set(beta, gamma, gens);
  const int j_max = static_cast<int>(
      std::floor(-std::log2(ars.stages.back().delta_k)));
  const auto rep = quantity_six(ars.set, beta, gamma, ars.theta, 4, j_max);
  const double r1 = rep.global_max / rep.global_min;
  const double r2 = rep.theta_window_max / rep.theta_window_min;
  const double r3 = rep.any_window_max / rep.any_window_min;
  res.stats = {{"gens", double(gens)},
               {"j_max", double(j_max)},
               {"global_max", rep.global_max},
               {"global_min", rep.global_min},
               {"theta_window_max", rep.theta_window_max},
               {"theta_window_min", rep.theta_window_min},
               {"any_window_max", rep.any_window_max},
               {"any_window_min", rep.any_window_min},
               {"ratio_global", r1},
               {"ratio_theta", r2},
               {"ratio_any", r3}};
  res.pass = rep.all_positive() && r1 <= ratio_bound && r2 <= ratio_bound &&
             r3 <= ratio_bound;
  return res;
}

// membership() against the four necessary conditions on random parameters
// and points; also checks L vanishes at Q3 and Q4.
inline SuiteResult run_hullhalfplane_suite(int param_draws = 50,
                                           int points_per_draw = 10000,
                                           std::uint64_t seed = 0) {
  SuiteResult res;
  res.name = "hullhalfplane";
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> dim(2, 5);
  const double tol = 1e-9;
  std::int64_t disagreements = 0, checks = 0;
  double max_l_at_vertices = 0.0;
  for (int p = 0; p < param_draws; ++p) {
    const int d = dim(rng);
    double beta = unit(rng), gamma = unit(rng);
    if (beta > gamma) std::swap(beta, gamma);
    beta = std::max(beta, 1e-3);
    gamma = std::max(gamma, beta);
    const RegionSpec region = q_vertices(d, beta, gamma);
    max_l_at_vertices = std::max(
        max_l_at_vertices,
        std::abs(L_functional(d, beta, gamma, region.vertices[2])));
    max_l_at_vertices = std::max(
        max_l_at_vertices,
        std::abs(L_functional(d, beta, gamma, region.vertices[3])));
    for (int i = 0; i < points_per_draw; ++i) {
      const RieszPoint pt{unit(rng), unit(rng)};
      const bool inside = membership(region, pt, tol) != Membership::outside;
      const bool clean =
          necessary_conditions(d, beta, gamma, pt, tol).empty();
      ++checks;
      if (inside != clean) {
        ++disagreements;
        if (res.detail.empty()) {
          res.detail = "d=" + std::to_string(d) +
                       " beta=" + std::to_string(beta) +
                       " gamma=" + std::to_string(gamma) +
                       " pt=(" + std::to_string(pt.ip) + "," +
                       std::to_string(pt.iq) + ")";
        }
      }
    }
  }
  res.stats = {{"checks", double(checks)},
               {"disagreements", double(disagreements)},
               {"max_L_at_Q3_Q4", max_l_at_vertices}};
  res.pass = disagreements == 0 && max_l_at_vertices <= 1e-12;
  return res;
}

// Zero conclusion violations at c = 1e-2 across the dyadic scales, and the
// empirical min of A_t g / sigma^(d-1) stays above the frozen baseline.
inline SuiteResult run_inclusion44_suite(std::int64_t samples = 100000,
                                         std::uint64_t seed = 0,
                                         double frozen_baseline = 1e-5) {
  SuiteResult res;
  res.name = "inclusion44";
  InclusionParams params;  // d = 3, r = 1.25, alpha = 1/2, c = 1e-2
  const auto deltas = dyadic_deltas(8, 14);
  const auto rep = verify_inclusion_44(params, deltas, samples, seed, 64);
  std::int64_t concl = 0, b1 = 0, b2 = 0, b3 = 0;
  for (const auto& s : rep.scales) {
    concl += s.conclusion_violations;
    b1 += s.bound1_violations;
    b2 += s.bound2_violations;
    b3 += s.bound3_violations;
  }
  res.stats = {{"samples_per_scale", double(samples)},
               {"scales", double(rep.scales.size())},
               {"conclusion_violations", double(concl)},
               {"bound1_violations", double(b1)},
               {"bound2_violations", double(b2)},
               {"bound3_violations", double(b3)},
               {"min_A_over_sigma_pow", rep.min_A()},
               {"largest_passing_c",
                largest_passing_c(params, deltas, std::min<std::int64_t>(
                                                      samples, 20000), seed)}};
  res.pass = concl == 0 && b1 == 0 && b2 == 0 && b3 == 0 &&
             rep.min_A() >= frozen_baseline;
  return res;
}

}  // namespace smax
