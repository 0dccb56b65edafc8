// smax: command-line front end for the spherical maximal operator
// experiments. Subcommands: region, cover, dim, sweep, verify.
// JSON is the canonical report format; sweeps additionally emit CSV.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "smax/covering.hpp"
#include "smax/dimension.hpp"
#include "smax/experiments.hpp"
#include "smax/region.hpp"
#include "smax/set_spec.hpp"
#include "smax/verify.hpp"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

double checked(double v, const char* what) {
  if (!std::isfinite(v))
    throw std::domain_error(std::string("non-finite value in output: ") + what);
  return v;
}

void write_text(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::ios_base::failure("cannot open output path: " + path);
  os << content;
  if (!os) throw std::ios_base::failure("write failed: " + path);
}

std::pair<double, double> parse_pair(const std::string& s, const char* flag) {
  auto comma = s.find(',');
  if (comma == std::string::npos)
    throw CLI::ValidationError(flag, "expected two comma-separated values");
  return {smax::parse_real(s.substr(0, comma)),
          smax::parse_real(s.substr(comma + 1))};
}

// "2^-4..2^-12" (dyadic range) or a comma list of reals, decreasing
std::vector<double> parse_deltas(const std::string& s) {
  auto parse_one = [](std::string_view v) -> double {
    if (v.rfind("2^", 0) == 0)
      return std::exp2(smax::parse_real(v.substr(2)));
    return smax::parse_real(v);
  };
  auto dots = s.find("..");
  std::vector<double> out;
  if (dots != std::string::npos) {
    const double a = parse_one(std::string_view(s).substr(0, dots));
    const double b = parse_one(std::string_view(s).substr(dots + 2));
    const int j_lo = static_cast<int>(std::lround(-std::log2(a)));
    const int j_hi = static_cast<int>(std::lround(-std::log2(b)));
    if (j_hi < j_lo)
      throw CLI::ValidationError("--deltas", "range must be decreasing");
    return smax::dyadic_deltas(j_lo, j_hi);
  }
  for (auto part : smax::detail::split_top(s, ','))
    out.push_back(parse_one(smax::detail::trim(part)));
  return out;
}

json fit_to_json(const smax::FitReport& fit) {
  json scales = json::array();
  for (auto& [delta, count] : fit.scales)
    scales.push_back({checked(delta, "scale"), checked(count, "count")});
  return json{{"slope", checked(fit.slope, "slope")},
              {"intercept", checked(fit.intercept, "intercept")},
              {"r_squared", checked(fit.r_squared, "r_squared")},
              {"max_residual", checked(fit.max_residual, "max_residual")},
              {"degenerate", fit.degenerate},
              {"scales", scales}};
}

struct CommonOpts {
  std::string out;
  std::uint64_t seed = 0;
};

int cmd_region(int d, double beta, double gamma,
               const std::optional<std::string>& point, double tol,
               const CommonOpts& common) {
  const smax::RegionSpec region = smax::q_vertices(d, beta, gamma);
  json j{{"seed", common.seed}, {"d", d}, {"beta", beta}, {"gamma", gamma}};
  json verts = json::array();
  for (const auto& v : region.vertices)
    verts.push_back({checked(v.ip, "vertex"), checked(v.iq, "vertex")});
  j["vertices"] = verts;
  if (point) {
    auto [ip, iq] = parse_pair(*point, "--point");
    const smax::RieszPoint pt{ip, iq};
    j["point"] = {ip, iq};
    j["classification"] = smax::to_string(smax::membership(region, pt, tol));
    j["in_R"] = smax::in_R(region, pt, tol);
    json viol = json::array();
    for (auto c : smax::necessary_conditions(d, beta, gamma, pt, tol))
      viol.push_back(smax::to_string(c));
    j["violated_conditions"] = viol;
    if (beta > 0.0)
      j["L_value"] = checked(smax::L_functional(d, beta, gamma, pt), "L");
  }
  write_text(common.out, j.dump(2) + "\n");
  return kExitOk;
}

int cmd_cover(const std::string& set_text, const std::string& delta_text,
              const std::optional<std::string>& window,
              const CommonOpts& common) {
  const smax::IntervalSet E = smax::realize(smax::parse_set_spec(set_text));
  const double delta = smax::parse_real(delta_text);
  if (!(delta > 0.0)) throw CLI::ValidationError("--delta", "must be > 0");
  const int jd = static_cast<int>(std::ceil(-std::log2(delta)));
  json j{{"seed", common.seed}, {"set", set_text}, {"delta", delta},
         {"j_dyadic", jd}};
  if (window) {
    auto [lo, hi] = parse_pair(*window, "--window");
    smax::Interval win{lo, hi};
    j["window"] = {lo, hi};
    j["n_cover"] = smax::covering_number_local(E, win, delta);
    j["n_dyadic_cells"] = smax::dyadic_cells(E, jd, &win).size();
  } else {
    j["n_cover"] = smax::covering_number(E, delta);
    j["n_dyadic_cells"] = smax::dyadic_cells(E, jd).size();
  }
  write_text(common.out, j.dump(2) + "\n");
  return kExitOk;
}

int cmd_dim(const std::string& set_text, const std::string& mode, double theta,
            int j_min, int j_max, std::optional<double> beta,
            std::optional<double> gamma, const CommonOpts& common) {
  const smax::SetSpec spec = smax::parse_set_spec(set_text);
  const smax::IntervalSet E = smax::realize(spec);
  if (j_max < 0) {
    const double f = std::max(E.finest_scale(), E.merge_tol());
    j_max = std::min(30, static_cast<int>(std::floor(-std::log2(f))));
    j_max = std::max(j_max, j_min + 2);
  }
  json j{{"seed", common.seed}, {"set", set_text}, {"mode", mode},
         {"jmin", j_min}, {"jmax", j_max}};
  if (mode == "minkowski") {
    j["fit"] = fit_to_json(smax::minkowski_fit(E, j_min, j_max));
  } else if (mode == "spectrum") {
    j["theta"] = theta;
    j["fit"] = fit_to_json(smax::assouad_spectrum_fit(E, theta, j_min, j_max));
  } else if (mode == "assouad") {
    j["fit"] = fit_to_json(smax::assouad_fit(E, j_min, j_max));
  } else if (mode == "six") {
    const auto* ap = std::get_if<smax::AssouadParams>(&spec.v);
    const double b = beta ? *beta : (ap ? ap->beta : 0.0);
    const double g = gamma ? *gamma : (ap ? ap->gamma : 0.0);
    if (!(b > 0.0 && g > b))
      throw CLI::ValidationError(
          "--beta/--gamma",
          "mode six needs construction parameters (or an assouad set)");
    const double th = (theta > 0.0) ? theta : 1.0 - b / g;
    const auto rep = smax::quantity_six(E, b, g, th, j_min, j_max);
    j["beta"] = b;
    j["gamma"] = g;
    j["theta"] = th;
    j["quantities"] = {
        {"global_max", checked(rep.global_max, "q1")},
        {"global_min", checked(rep.global_min, "q2")},
        {"theta_window_max", checked(rep.theta_window_max, "q3")},
        {"theta_window_min", checked(rep.theta_window_min, "q4")},
        {"any_window_max", checked(rep.any_window_max, "q5")},
        {"any_window_min", checked(rep.any_window_min, "q6")}};
    j["all_positive"] = rep.all_positive();
    json trace = json::array();
    for (const auto& row : rep.trace)
      trace.push_back({row[0], row[1], row[2], row[3]});
    j["trace"] = trace;
  } else {
    throw CLI::ValidationError("--mode",
                               "expected minkowski|assouad|spectrum|six");
  }
  write_text(common.out, j.dump(2) + "\n");
  return kExitOk;
}

int cmd_sweep(const std::string& family, const std::string& set_text, int d,
              double ip, double iq, const std::optional<std::string>& deltas_text,
              std::optional<double> t_star, std::optional<double> beta_override,
              double c, const CommonOpts& common) {
  const smax::SetSpec spec = smax::parse_set_spec(set_text);
  const smax::RieszPoint pt{ip, iq};
  std::vector<double> deltas;
  if (deltas_text) deltas = parse_deltas(*deltas_text);
  smax::SweepResult result;
  if (family == "ball") {
    if (deltas.empty()) deltas = smax::dyadic_deltas(4, 12);
    result = smax::sweep_ball(d, spec, pt, deltas, beta_override);
  } else if (family == "annulus") {
    if (deltas.empty()) deltas = smax::dyadic_deltas(4, 12);
    result = smax::sweep_annulus(d, spec, pt, deltas, t_star);
  } else if (family == "cylinder") {
    result = smax::sweep_cylinder(d, spec, pt, deltas, c);
  } else {
    throw CLI::ValidationError("--family", "expected ball|annulus|cylinder");
  }

  std::string csv = "delta,norm_f_p,norm_Mf_q,ratio,log2_delta,log2_ratio\n";
  char line[256];
  for (const auto& rec : result.records) {
    std::snprintf(line, sizeof line,
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", rec.delta,
                  checked(rec.norm_f_p, "norm_f_p"),
                  checked(rec.norm_Mf_q_lower, "norm_Mf_q"),
                  checked(rec.ratio, "ratio"), std::log2(rec.delta),
                  std::log2(rec.ratio));
    csv += line;
  }
  json sidecar{{"seed", common.seed},
               {"family", family},
               {"set", set_text},
               {"d", d},
               {"ip", ip},
               {"iq", iq},
               {"fitted_slope", checked(result.fit.slope, "slope")},
               {"predicted_exponent",
                checked(result.predicted_exponent, "predicted_exponent")},
               {"r_squared", checked(result.fit.r_squared, "r_squared")}};
  if (family == "ball") sidecar["beta_hat"] = checked(result.beta_hat, "beta");
  if (!result.skipped_deltas.empty())
    sidecar["skipped_deltas"] = result.skipped_deltas;

  if (common.out.empty()) {
    std::cout << csv << sidecar.dump(2) << "\n";
  } else {
    write_text(common.out, csv);
    write_text(common.out + ".json", sidecar.dump(2) + "\n");
  }
  return kExitOk;
}

int cmd_verify(const std::string& suite, std::int64_t samples, int j_max,
               const CommonOpts& common) {
  smax::SuiteResult res;
  if (suite == "factor7") {
    res = smax::run_factor7_suite(j_max, common.seed);
  } else if (suite == "znj") {
    res = smax::run_znj_suite(j_max, 16.0, common.seed);
  } else if (suite == "inclusion44") {
    res = smax::run_inclusion44_suite(samples, common.seed);
  } else if (suite == "six") {
    res = smax::run_six_suite();
  } else if (suite == "hullhalfplane") {
    res = smax::run_hullhalfplane_suite(50, 10000, common.seed);
  } else {
    throw CLI::ValidationError(
        "--suite", "expected factor7|znj|inclusion44|six|hullhalfplane");
  }
  json stats;
  for (auto& [k, v] : res.stats) stats[k] = checked(v, k.c_str());
  json j{{"seed", common.seed},
         {"suite", res.name},
         {"pass", res.pass},
         {"stats", stats}};
  if (!res.detail.empty()) j["detail"] = res.detail;
  write_text(common.out, j.dump(2) + "\n");
  return res.pass ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical experiments for spherical maximal operators with "
               "fractal dilation sets"};
  app.require_subcommand(1);

  CommonOpts common;
  std::string set_text, mode = "minkowski", family, suite;
  std::optional<std::string> point, window, deltas_text;
  std::string delta_text;
  int d = 3, j_min = 4, j_max = -1;
  double beta = 1.0, gamma = 1.0, theta = 0.0, tol = 1e-9;
  double ip = 0.0, iq = 0.0, c = 1e-2;
  std::optional<double> t_star, beta_override, six_beta, six_gamma;
  std::int64_t samples = 100000;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", common.out, "output path (default stdout)");
    sub->add_option("--seed", common.seed, "seed for sampled verifications");
  };

  CLI::App* region = app.add_subcommand("region", "Riesz-diagram region Q(beta,gamma)");
  region->add_option("--d", d, "ambient dimension")->required();
  region->add_option("--beta", beta, "Minkowski dimension parameter")->required();
  region->add_option("--gamma", gamma, "Assouad dimension parameter")->required();
  region->add_option("--point", point, "point ip,iq to classify");
  region->add_option("--tol", tol, "boundary tolerance");
  add_common(region);

  CLI::App* cover = app.add_subcommand("cover", "covering numbers");
  cover->add_option("--set", set_text, "set spec")->required();
  cover->add_option("--delta", delta_text, "scale (decimal or fraction)")->required();
  cover->add_option("--window", window, "window lo,hi");
  add_common(cover);

  CLI::App* dim = app.add_subcommand("dim", "dimension estimators");
  dim->add_option("--set", set_text, "set spec")->required();
  dim->add_option("--mode", mode, "minkowski|assouad|spectrum|six");
  dim->add_option("--theta", theta, "spectrum parameter");
  dim->add_option("--jmin", j_min, "coarsest level");
  dim->add_option("--jmax", j_max, "finest level (default: set resolution)");
  dim->add_option("--beta", six_beta, "construction beta (mode six)");
  dim->add_option("--gamma", six_gamma, "construction gamma (mode six)");
  add_common(dim);

  CLI::App* sweep = app.add_subcommand("sweep", "counterexample scaling sweeps");
  sweep->add_option("--family", family, "ball|annulus|cylinder")->required();
  sweep->add_option("--set", set_text, "set spec")->required();
  sweep->add_option("--d", d, "ambient dimension")->required();
  sweep->add_option("--ip", ip, "1/p")->required();
  sweep->add_option("--iq", iq, "1/q")->required();
  sweep->add_option("--theta", theta, "informational spectrum parameter");
  sweep->add_option("--deltas", deltas_text, "2^-4..2^-12 or comma list");
  sweep->add_option("--tstar", t_star, "annulus center dilation");
  sweep->add_option("--beta-override", beta_override,
                    "use this beta instead of the measured Minkowski slope");
  sweep->add_option("--c", c, "cylinder region constant");
  add_common(sweep);

  CLI::App* verify = app.add_subcommand("verify", "verification suites");
  verify->add_option("--suite", suite,
                     "factor7|znj|inclusion44|six|hullhalfplane")->required();
  verify->add_option("--samples", samples, "samples per scale");
  verify->add_option("--jmax", j_max, "max dyadic level")->default_val(20);
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (region->parsed()) return cmd_region(d, beta, gamma, point, tol, common);
    if (cover->parsed()) return cmd_cover(set_text, delta_text, window, common);
    if (dim->parsed())
      return cmd_dim(set_text, mode, theta, j_min, j_max, six_beta, six_gamma,
                     common);
    if (sweep->parsed())
      return cmd_sweep(family, set_text, d, ip, iq, deltas_text, t_star,
                       beta_override, c, common);
    if (verify->parsed())
      return cmd_verify(suite, samples, j_max < 0 ? 20 : j_max, common);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "smax: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "smax: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "smax: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "smax: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}
