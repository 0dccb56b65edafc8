// Scaling sweeps for the three quantitative counterexample families and the
// geometric inclusion behind the cylinder family. Each sweep measures
// ||M_E f_delta||_q / ||f_delta||_p along decreasing delta, fits the ratio
// exponent, and carries the predicted exponent for comparison.
#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "smax/covering.hpp"
#include "smax/dimension.hpp"
#include "smax/fit.hpp"
#include "smax/interval_set.hpp"
#include "smax/parallel.hpp"
#include "smax/profiles.hpp"
#include "smax/region.hpp"
#include "smax/set_spec.hpp"

namespace smax {

enum class SweepFamily { ball, annulus, cylinder };

inline const char* to_string(SweepFamily f) {
  switch (f) {
    case SweepFamily::ball: return "ball";
    case SweepFamily::annulus: return "annulus";
    default: return "cylinder";
  }
}

struct SweepRecord {
  double delta = 0.0;
  double norm_f_p = 0.0;
  double norm_Mf_q_lower = 0.0;
  double ratio = 0.0;
};

struct SweepResult {
  SweepFamily family = SweepFamily::ball;
  int d = 3;
  RieszPoint pt;
  std::vector<SweepRecord> records;
  FitReport fit;  // slope of log2 ratio against log2 delta
  double predicted_exponent = 0.0;
  double beta_hat = 0.0;            // ball family only
  std::vector<double> skipped_deltas;  // cylinder scales without a window
};

inline std::vector<double> dyadic_deltas(int j_lo, int j_hi) {
  if (j_hi < j_lo) throw std::invalid_argument("dyadic_deltas: bad range");
  std::vector<double> out;
  for (int j = j_lo; j <= j_hi; ++j) out.push_back(std::ldexp(1.0, -j));
  return out;
}

namespace detail {

inline double norm_exponent_p(double ip) {
  if (ip < 0.0 || ip > 1.0)
    throw std::invalid_argument("sweep: 1/p must lie in [0, 1]");
  return ip;
}

inline void finish_sweep(SweepResult& r) {
  if (r.records.size() < 4)
    throw std::invalid_argument("sweep: need at least 4 usable scales");
  for (std::size_t i = 1; i < r.records.size(); ++i)
    if (!(r.records[i].delta < r.records[i - 1].delta))
      throw std::invalid_argument("sweep: deltas must be strictly decreasing");
  std::vector<FitPoint> pts;
  for (auto& rec : r.records) {
    rec.ratio = rec.norm_Mf_q_lower / rec.norm_f_p;
    if (!(rec.ratio > 0.0) || !std::isfinite(rec.ratio))
      throw std::domain_error("sweep: non-positive ratio");
    pts.push_back({std::log2(rec.delta), std::log2(rec.ratio)});
    r.fit.scales.emplace_back(rec.delta, rec.ratio);
  }
  least_squares_into(pts, r.fit);
}

// default Minkowski fit range: from j = 4 down to the construction
// resolution of E, capped at level 30
inline std::pair<int, int> default_fit_range(const IntervalSet& E) {
  const double f = std::max(E.finest_scale(), E.merge_tol());
  int j_max = static_cast<int>(std::floor(-std::log2(f)));
  j_max = std::min(j_max, 30);
  j_max = std::max(j_max, 6);
  return {4, j_max};
}

}  // namespace detail

// Ball family (edge Q2 Q3): f_delta is the indicator of B_delta. M_E f is
// of size ~ delta^{d-1} on annuli around each dilation; the measured ratio
// exponent should match (d-1) + (1-beta)/q - d/p with beta the measured
// Minkowski slope of E.
inline SweepResult sweep_ball(int d, const SetSpec& spec, RieszPoint pt,
                              const std::vector<double>& deltas,
                              std::optional<double> beta_override = {}) {
  const IntervalSet E = realize(spec);
  SweepResult out;
  out.family = SweepFamily::ball;
  out.d = d;
  out.pt = pt;
  const double ip = detail::norm_exponent_p(pt.ip);
  const double iq = detail::norm_exponent_p(pt.iq);
  if (beta_override) {
    out.beta_hat = *beta_override;
  } else {
    auto [j0, j1] = detail::default_fit_range(E);
    out.beta_hat = minkowski_fit(E, j0, j1).slope;
  }
  for (double delta : deltas) {
    const RadialProfile f = RadialProfile::ball(d, delta);
    const int j_res = static_cast<int>(std::ceil(std::log2(4.0 / delta)));
    const DyadicCells cells = dyadic_cells(E, j_res);
    const RadialGrid grid = RadialGrid::make(
        d, std::max(0.0, E.min() - 2.0 * delta), E.max() + 2.0 * delta,
        delta / 8.0, delta);
    std::vector<double> vals(grid.rho.size());
    const double slack = 2.0 * cells.width();
    parallel_for(grid.rho.size(), [&](std::size_t i) {
      const double rho = grid.rho[i];
      const Interval window{rho - delta - slack, rho + delta + slack};
      vals[i] = maximal_value(
          E, cells, [&](double t) { return radial_average(f, t, rho); },
          &window);
    });
    SweepRecord rec;
    rec.delta = delta;
    rec.norm_f_p = (ip == 0.0)
                       ? 1.0
                       : std::pow(ball_volume(d) * std::pow(delta, d), ip);
    rec.norm_Mf_q_lower =
        lp_norm(vals, grid.weight, (iq == 0.0) ? INFINITY : 1.0 / iq);
    out.records.push_back(rec);
  }
  out.predicted_exponent = (d - 1) + (1.0 - out.beta_hat) * iq - d * ip;
  detail::finish_sweep(out);
  return out;
}

// Annulus family (edge Q1 Q4): f_delta is the indicator of the delta-shell
// around radius t*. A_t f ~ 1 near the origin, forcing d/q >= 1/p.
inline SweepResult sweep_annulus(int d, const SetSpec& spec, RieszPoint pt,
                                 const std::vector<double>& deltas,
                                 std::optional<double> t_star = {}) {
  const IntervalSet E = realize(spec);
  SweepResult out;
  out.family = SweepFamily::annulus;
  out.d = d;
  out.pt = pt;
  const double ip = detail::norm_exponent_p(pt.ip);
  const double iq = detail::norm_exponent_p(pt.iq);
  const double ts =
      t_star ? E.nearest_point(*t_star)
             : E.nearest_point(E.ambient().midpoint());
  for (double delta : deltas) {
    const RadialProfile f = RadialProfile::shell(d, ts, delta);
    const int j_res = static_cast<int>(std::ceil(std::log2(4.0 / delta)));
    const DyadicCells cells = dyadic_cells(E, j_res);
    const RadialGrid grid =
        RadialGrid::make(d, 0.0, E.max() + ts + 2.0 * delta, delta / 8.0, delta);
    std::vector<double> vals(grid.rho.size());
    parallel_for(grid.rho.size(), [&](std::size_t i) {
      const double rho = grid.rho[i];
      vals[i] = maximal_value(
          E, cells, [&](double t) { return radial_average(f, t, rho); });
    });
    SweepRecord rec;
    rec.delta = delta;
    const double vol = ball_volume(d) * (std::pow(ts + delta, d) -
                                         std::pow(ts - delta, d));
    rec.norm_f_p = (ip == 0.0) ? 1.0 : std::pow(vol, ip);
    rec.norm_Mf_q_lower =
        lp_norm(vals, grid.weight, (iq == 0.0) ? INFINITY : 1.0 / iq);
    out.records.push_back(rec);
  }
  out.predicted_exponent = d * iq - ip;
  detail::finish_sweep(out);
  return out;
}

// Cylinder family (edge Q3 Q4). Requires an Assouad-regular spec: the
// construction supplies, per stage k, the window J_k with |J_k| ~ delta_k^theta
// and N(E cap J_k, delta_k) = 2^{m(k)}. ||M_E g||_q is lower-bounded by the
// disjoint boxes {|x'| <= c delta/sigma, |x_d + t - r| <= c delta}, one
// dilation t per covering interval, with A_t g sampled at box corners and
// center. If `deltas` is given, stages are matched by scale and unmatched
// entries are reported as skipped.
inline SweepResult sweep_cylinder(int d, const SetSpec& spec, RieszPoint pt,
                                  const std::vector<double>& deltas = {},
                                  double c = 1e-2) {
  const auto* params = std::get_if<AssouadParams>(&spec.v);
  if (!params)
    throw std::invalid_argument(
        "sweep_cylinder: spec must be an assouad-regular set (it supplies "
        "the matched windows)");
  const AssouadRegularSet ars =
      assouad_regular_set(params->beta, params->gamma, params->gens);
  const double beta = params->beta, gamma_tilde = params->gamma;
  const double alpha = beta / gamma_tilde;
  SweepResult out;
  out.family = SweepFamily::cylinder;
  out.d = d;
  out.pt = pt;
  const double ip = detail::norm_exponent_p(pt.ip);
  const double iq = detail::norm_exponent_p(pt.iq);

  std::vector<const AssouadStage*> stages;
  if (deltas.empty()) {
    for (const auto& st : ars.stages) stages.push_back(&st);
  } else {
    for (double delta : deltas) {
      const AssouadStage* hit = nullptr;
      for (const auto& st : ars.stages)
        if (st.delta_k >= 0.5 * delta && st.delta_k <= 2.0 * delta) hit = &st;
      if (hit)
        stages.push_back(hit);
      else
        out.skipped_deltas.push_back(delta);
    }
  }

  for (const AssouadStage* st : stages) {
    const double delta = st->delta_k;
    const double sigma = std::pow(delta, 0.5 * alpha);
    const double r = st->J.lo;
    const CylProfile g(d, r, delta, sigma);
    const auto anchors = greedy_cover(ars.set.clip(st->J), delta);

    const double xp_max = c * delta / sigma;
    const double xd_half = c * delta;
    const double box_vol = ball_volume(d - 1) * std::pow(xp_max, d - 1) *
                           (2.0 * xd_half);
    std::vector<double> mins(anchors.size());
    parallel_for(anchors.size(), [&](std::size_t i) {
      const double t = anchors[i];
      const double xd_c = r - t;
      double m = std::numeric_limits<double>::infinity();
      for (double xp : {0.0, 0.5 * xp_max, 0.99 * xp_max})
        for (double dx : {-0.99 * xd_half, 0.0, 0.99 * xd_half})
          m = std::min(m, cylinder_average(g, t, xp, xd_c + dx).value);
      mins[i] = m;
    });
    SweepRecord rec;
    rec.delta = delta;
    rec.norm_f_p =
        (ip == 0.0) ? 1.0
                    : std::pow(cylinder_annulus_volume(d, r, delta, sigma), ip);
    if (iq == 0.0) {
      double m = 0.0;
      for (double v : mins) m = std::max(m, v);
      rec.norm_Mf_q_lower = m;
    } else {
      const double q = 1.0 / iq;
      double acc = 0.0;
      for (double v : mins) acc += box_vol * std::pow(v, q);
      rec.norm_Mf_q_lower = std::pow(acc, iq);
    }
    out.records.push_back(rec);
  }
  out.predicted_exponent = L_functional(d, beta, gamma_tilde, pt);
  detail::finish_sweep(out);
  return out;
}

// ---------------------------------------------------------------------------
// Section 4.4 inclusion verification
// ---------------------------------------------------------------------------

struct InclusionParams {
  int d = 3;
  double r = 1.25;     // left endpoint of the window I
  double alpha = 0.5;  // sigma = delta^(alpha/2)
  double c = 1e-2;
};

struct InclusionScaleReport {
  double delta = 0.0;
  double sigma = 0.0;
  std::int64_t samples = 0;
  std::int64_t bound1_violations = 0;  // | |x'|^2 + (x_d+t)^2 - r^2 | <= 6 c delta
  std::int64_t bound2_violations = 0;  // | 2 t <x', y'> | <= 4 c^2 delta
  std::int64_t bound3_violations = 0;  // | 2 t x_d (sqrt(1-|y'|^2)-1) | <= 4 c delta
  std::int64_t conclusion_violations = 0;  // ||x+ty| - r| <= delta, |x'+ty'| <= sigma
  double min_A_over_sigma_power = 0.0;     // min A_t g / sigma^(d-1) on subsample
  bool quadrature_warning = false;
};

struct InclusionReport {
  InclusionParams params;
  std::uint64_t seed = 0;
  std::vector<InclusionScaleReport> scales;

  bool conclusion_holds() const {
    for (const auto& s : scales)
      if (s.conclusion_violations != 0) return false;
    return !scales.empty();
  }
  double min_A() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& s : scales) m = std::min(m, s.min_A_over_sigma_power);
    return m;
  }
};

// Samples (x, t, y) from the paper's region: |x'| <= c delta / sigma,
// |x_d + t - r| <= c delta, t in I = [r, r + delta sigma^-2], and
// y = (y', sqrt(1-|y'|^2)) with |y'| <= c sigma. Checks the three displayed
// bounds and the conclusion; evaluates A_t g / sigma^(d-1) on a subsample.
inline InclusionReport verify_inclusion_44(const InclusionParams& params,
                                           const std::vector<double>& deltas,
                                           std::int64_t samples,
                                           std::uint64_t seed = 0,
                                           std::int64_t a_eval_samples = 128) {
  if (params.d < 2) throw std::invalid_argument("inclusion44: d must be >= 2");
  if (!(params.alpha > 0.0 && params.alpha <= 1.0))
    throw std::invalid_argument("inclusion44: alpha must lie in (0, 1]");
  if (params.c > 1e-2)
    throw std::invalid_argument("inclusion44: c must be <= 1e-2");
  InclusionReport rep;
  rep.params = params;
  rep.seed = seed;
  const int d = params.d;
  const double c = params.c;
  for (std::size_t si = 0; si < deltas.size(); ++si) {
    const double delta = deltas[si];
    const double sigma = std::pow(delta, 0.5 * params.alpha);
    const double wlen = delta / (sigma * sigma);  // |I| = delta^theta <= 1
    if (wlen > 1.0 || params.r + wlen > 2.0)
      throw std::invalid_argument("inclusion44: window leaves [1, 2]");
    std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * (si + 1));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto ball_point = [&](int dim, double radius, std::vector<double>& v) {
      // uniform in a `dim`-ball: normal direction, radial cdf inversion
      double n2 = 0.0;
      v.resize(dim);
      for (int i = 0; i < dim; ++i) {
        v[i] = gauss(rng);
        n2 += v[i] * v[i];
      }
      const double scale =
          radius * std::pow(unit(rng), 1.0 / dim) / std::sqrt(std::max(n2, 1e-300));
      for (double& x : v) x *= scale;
    };
    InclusionScaleReport sc;
    sc.delta = delta;
    sc.sigma = sigma;
    sc.samples = samples;
    sc.min_A_over_sigma_power = std::numeric_limits<double>::infinity();
    const CylProfile g(d, params.r, delta, sigma);
    std::vector<double> xp, yp;
    for (std::int64_t s = 0; s < samples; ++s) {
      const double t = params.r + unit(rng) * wlen;
      ball_point(d - 1, c * delta / sigma, xp);
      ball_point(d - 1, c * sigma, yp);
      const double x_d = (params.r - t) + (2.0 * unit(rng) - 1.0) * c * delta;
      double xp2 = 0.0, yp2 = 0.0, dot = 0.0;
      for (int i = 0; i < d - 1; ++i) {
        xp2 += xp[i] * xp[i];
        yp2 += yp[i] * yp[i];
        dot += xp[i] * yp[i];
      }
      const double y_d = std::sqrt(std::max(0.0, 1.0 - yp2));
      if (std::abs(xp2 + (x_d + t) * (x_d + t) - params.r * params.r) >
          6.0 * c * delta)
        ++sc.bound1_violations;
      if (std::abs(2.0 * t * dot) > 4.0 * c * c * delta) ++sc.bound2_violations;
      if (std::abs(2.0 * t * x_d * (y_d - 1.0)) > 4.0 * c * delta)
        ++sc.bound3_violations;
      double perp2 = 0.0;
      for (int i = 0; i < d - 1; ++i) {
        const double w = xp[i] + t * yp[i];
        perp2 += w * w;
      }
      const double norm = std::sqrt(perp2 + (x_d + t * y_d) * (x_d + t * y_d));
      if (std::abs(norm - params.r) > delta || perp2 > sigma * sigma)
        ++sc.conclusion_violations;
      if (s < a_eval_samples) {
        auto A = cylinder_average(g, t, std::sqrt(xp2), x_d);
        sc.quadrature_warning = sc.quadrature_warning || A.accuracy_warning;
        sc.min_A_over_sigma_power =
            std::min(sc.min_A_over_sigma_power,
                     A.value / std::pow(sigma, d - 1));
      }
    }
    rep.scales.push_back(sc);
  }
  return rep;
}

// Largest c in a fixed grid for which the conclusion holds empirically;
// the paper only claims some c <= 1e-2 works.
inline double largest_passing_c(const InclusionParams& params,
                                const std::vector<double>& deltas,
                                std::int64_t samples, std::uint64_t seed = 0) {
  const int d = params.d;
  double best = 0.0;
  for (double c : {0.002, 0.005, 0.01, 0.02, 0.05, 0.07, 0.1}) {
    bool ok = true;
    for (std::size_t si = 0; si < deltas.size() && ok; ++si) {
      const double delta = deltas[si];
      const double sigma = std::pow(delta, 0.5 * params.alpha);
      const double wlen = delta / (sigma * sigma);
      if (wlen > 1.0 || params.r + wlen > 2.0) return best;
      std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * (si + 1));
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      std::normal_distribution<double> gauss(0.0, 1.0);
      std::vector<double> xp, yp;
      auto ball_point = [&](double radius, std::vector<double>& v) {
        double n2 = 0.0;
        v.resize(d - 1);
        for (double& x : v) {
          x = gauss(rng);
          n2 += x * x;
        }
        const double scale = radius * std::pow(unit(rng), 1.0 / (d - 1)) /
                             std::sqrt(std::max(n2, 1e-300));
        for (double& x : v) x *= scale;
      };
      for (std::int64_t s = 0; s < samples && ok; ++s) {
        const double t = params.r + unit(rng) * wlen;
        ball_point(c * delta / sigma, xp);
        ball_point(c * sigma, yp);
        const double x_d = (params.r - t) + (2.0 * unit(rng) - 1.0) * c * delta;
        double yp2 = 0.0, perp2 = 0.0;
        for (int i = 0; i < d - 1; ++i) yp2 += yp[i] * yp[i];
        const double y_d = std::sqrt(std::max(0.0, 1.0 - yp2));
        for (int i = 0; i < d - 1; ++i) {
          const double w = xp[i] + t * yp[i];
          perp2 += w * w;
        }
        const double norm =
            std::sqrt(perp2 + (x_d + t * y_d) * (x_d + t * y_d));
        if (std::abs(norm - params.r) > delta || perp2 > sigma * sigma)
          ok = false;
      }
    }
    if (!ok) break;
    best = c;
  }
  return best;
}

}  // namespace smax
