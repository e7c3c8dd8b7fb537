// Copyright 2026 The sleloop Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "sleloop/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "sleloop/diffusion.hpp"
#include "sleloop/errors.hpp"
#include "sleloop/geometry.hpp"
#include "sleloop/io.hpp"
#include "sleloop/measures.hpp"
#include "sleloop/parallel.hpp"
#include "sleloop/rng.hpp"
#include "sleloop/sampling.hpp"
#include "sleloop/specfun.hpp"
#include "sleloop/stats.hpp"

namespace sleloop::cli {
namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_paths(std::size_t n, std::size_t minimum) {
  if (n < minimum) {
    throw DomainError("--paths must be at least " + std::to_string(minimum));
  }
}

std::ofstream open_output(const fs::path& dir, const std::string& name) {
  fs::create_directories(dir);
  std::ofstream os(dir / name);
  if (!os) throw std::runtime_error("cannot open " + (dir / name).string());
  return os;
}

RunManifest make_manifest(const std::string& command, const CommonOptions& opt,
                          json params) {
  RunManifest m;
  m.command = command;
  m.seed = opt.seed;
  params["paths"] = opt.paths;
  params["dt"] = opt.dt;
  params["theta_cut"] = opt.theta_cut;
  m.params = std::move(params);
  return m;
}

json estimate_json(const McEstimate& e) {
  return json{{"value", e.value}, {"n", e.n}, {"ci95", {e.ci_low, e.ci_high}}};
}

// Independent seed per sub-experiment so that, e.g., the runs for different
// start points are not driven by the same noise.
std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t k) {
  return splitmix64(seed ^ splitmix64(k + 1));
}

// Frequency test against an exact probability: z-score in binomial sigmas.
json frequency_json(const McEstimate& e, double exact, bool& pass) {
  const double sigma = stats::binomial_sigma(exact, e.n);
  const double z = sigma > 0.0 ? (e.value - exact) / sigma : 0.0;
  const bool ok = std::fabs(z) <= 3.0;
  pass = pass && ok;
  json j = estimate_json(e);
  j["exact"] = exact;
  j["sigma"] = sigma;
  j["z"] = z;
  j["within_3_sigma"] = ok;
  return j;
}

struct Row {
  std::string check;
  double argument;
  double lhs;
  double rhs;
  double residual;
  double tolerance;
  bool pass;
};

}  // namespace

json Report::to_json() const {
  json j;
  j["manifest"] = manifest.to_json();
  j.update(body);
  j["pass"] = pass;
  return j;
}

void write_report(const Report& report, const fs::path& out, double wall_time_s) {
  {
    auto os = open_output(out, report.manifest.command + ".json");
    os << report.to_json().dump(2) << '\n';
  }
  RunManifest timed = report.manifest;
  timed.wall_time_s = wall_time_s;
  auto os = open_output(out, report.manifest.command + ".run.json");
  os << timed.to_json_timed().dump(2) << '\n';
}

Report cmd_radius_cdf(const CommonOptions& opt) {
  require_paths(opt.paths, 100);
  SimConfig cfg;
  cfg.dt = opt.dt;
  cfg.seed = opt.seed;
  cfg.theta_cut = opt.theta_cut;
  cfg.validate();

  Report rep;
  rep.manifest = make_manifest("radius_cdf", opt, json::object());

  std::vector<double> r(opt.paths, kNaN);
  parallel_for(opt.paths, [&](std::size_t i) {
    try {
      r[i] = diffusion::simulate_lifetime(cfg, i, false).r;
    } catch (const CutoffError&) {
      // counted below
    }
  });
  const auto cutoffs = static_cast<std::size_t>(
      std::count_if(r.begin(), r.end(), [](double x) { return std::isnan(x); }));
  r.erase(std::remove_if(r.begin(), r.end(), [](double x) { return std::isnan(x); }),
          r.end());
  if (r.empty()) throw EmptySampleError("radius_cdf: every path hit the cutoff");

  // r has law P(r >= q) = prod (1 - q^{2n/3})^3, so its CDF is 1 - that.
  auto exact_cdf = [](double q) {
    if (q <= 0.0) return 0.0;
    if (q >= 1.0) return 1.0;
    return 1.0 - specfun::radius_cdf_product(q);
  };
  const double ks = stats::ks_distance(r, exact_cdf);
  const double n = static_cast<double>(r.size());
  const double ks_threshold = std::max(0.01, 1.63 / std::sqrt(n));

  std::vector<double> sorted = r;
  std::sort(sorted.begin(), sorted.end());
  std::vector<io::Row> rows;
  for (int k = 1; k <= 99; ++k) {
    const double q = k / 100.0;
    const auto below = std::lower_bound(sorted.begin(), sorted.end(), q) - sorted.begin();
    const double emp = 1.0 - static_cast<double>(below) / n;  // fraction r >= q
    const double exact = specfun::radius_cdf_product(q);
    rows.push_back({q, emp, exact, emp - exact});
  }
  const auto comments = rep.manifest.comment_lines();
  {
    auto os = open_output(opt.out, "radius_cdf.csv");
    io::write_csv(os, {"q", "empirical", "exact", "diff"}, rows, comments);
  }
  {
    auto os = open_output(opt.out, "radius_cdf.dat");
    io::write_dat(os, {"q", "empirical", "exact", "diff"}, rows, comments);
  }

  rep.pass = ks <= ks_threshold;
  rep.body["paths_used"] = r.size();
  rep.body["cutoffs"] = cutoffs;
  rep.body["ks"] = ks;
  rep.body["ks_threshold"] = ks_threshold;
  rep.body["mean_r"] = stats::mean_interval(r).value;
  return rep;
}

Report cmd_schramm(const CommonOptions& opt, const std::vector<double>& xs) {
  require_paths(opt.paths, 100);
  if (xs.empty()) throw DomainError("schramm: empty x list");
  Report rep;
  rep.manifest = make_manifest("schramm", opt, json{{"x", xs}});

  json results = json::array();
  std::vector<io::Row> rows;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    SimConfig cfg;
    cfg.dt = opt.dt;
    cfg.seed = sub_seed(opt.seed, k);
    cfg.theta_cut = opt.theta_cut;
    cfg.validate();
    const double v0 = diffusion::start_from_x(xs[k]);
    const McEstimate est = diffusion::absorption_probability(v0, opt.paths, cfg);
    const double exact = measures::schramm_q(xs[k]);
    json j{{"x", xs[k]}};
    j.update(frequency_json(est, exact, rep.pass));
    rows.push_back({xs[k], est.value, exact, j["z"].get<double>()});
    results.push_back(std::move(j));
  }
  const auto comments = rep.manifest.comment_lines();
  {
    auto os = open_output(opt.out, "schramm.csv");
    io::write_csv(os, {"x", "empirical", "exact", "z"}, rows, comments);
  }
  {
    auto os = open_output(opt.out, "schramm.dat");
    io::write_dat(os, {"x", "empirical", "exact", "z"}, rows, comments);
  }
  rep.body["results"] = std::move(results);
  return rep;
}

Report cmd_restriction(const CommonOptions& opt, double rho,
                       const std::vector<double>& xs) {
  require_paths(opt.paths, 100);
  const double bubble_exact = geometry::halfdisk_restriction_bubble(rho);
  for (double x : xs) geometry::halfdisk_restriction_chordal(x, rho);  // validates
  Report rep;
  rep.manifest = make_manifest("restriction", opt, json{{"rho", rho}, {"x", xs}});

  sampling::BubbleOptions bo;
  bo.dt = opt.dt;
  bo.theta_cut = opt.theta_cut;
  bo.rho = rho;
  bo.with_geometry = false;
  std::vector<signed char> hit(opt.paths, -1);
  const std::uint64_t bubble_seed = sub_seed(opt.seed, 0);
  parallel_for(opt.paths, [&](std::size_t i) {
    try {
      hit[i] = sampling::sample_bubble(bo, bubble_seed, i).hits_halfdisk ? 1 : 0;
    } catch (const CutoffError&) {
    } catch (const DegenerateError&) {
    }
  });
  const auto failed = static_cast<std::size_t>(std::count(hit.begin(), hit.end(), -1));
  const auto hits = static_cast<std::size_t>(std::count(hit.begin(), hit.end(), 1));
  const std::size_t used = opt.paths - failed;
  if (used == 0) throw EmptySampleError("restriction: no usable bubble");
  const McEstimate bubble = stats::wilson(used - hits, used);

  std::vector<io::Row> rows;
  json jb = frequency_json(bubble, bubble_exact, rep.pass);
  jb["failed_samples"] = failed;
  rows.push_back({0.0, bubble.value, bubble_exact, jb["z"].get<double>()});

  json chordal = json::array();
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sampling::ChordalHitOptions co;
    co.x = xs[k];
    co.rho = rho;
    const McEstimate est = sampling::chordal_avoidance(opt.paths, co, sub_seed(opt.seed, k + 1));
    const double exact = geometry::halfdisk_restriction_chordal(xs[k], rho);
    json j{{"x", xs[k]}};
    j.update(frequency_json(est, exact, rep.pass));
    rows.push_back({xs[k], est.value, exact, j["z"].get<double>()});
    chordal.push_back(std::move(j));
  }

  // The first row (x = 0) is the bubble; the rest are chordal start points.
  auto comments = rep.manifest.comment_lines();
  comments.push_back("row x = 0 is the bubble; other rows are chordal curves from x");
  {
    auto os = open_output(opt.out, "restriction.csv");
    io::write_csv(os, {"x", "empirical", "exact", "z"}, rows, comments);
  }
  rep.body["bubble"] = std::move(jb);
  rep.body["chordal"] = std::move(chordal);
  return rep;
}

Report cmd_werner(const CommonOptions& opt, const std::vector<double>& bs) {
  require_paths(opt.paths, 100);
  if (bs.empty()) throw DomainError("werner: empty b list");
  for (double b : bs) {
    if (!(b > 0.0)) throw DomainError("werner: b must be positive");
  }
  Report rep;
  rep.manifest = make_manifest("werner", opt, json{{"b", bs}});

  sampling::BubbleOptions bo;
  bo.dt = opt.dt;
  bo.theta_cut = opt.theta_cut;
  bo.rho = 0.0;  // no half-disk tracking
  std::vector<BubbleSample> samples(opt.paths);
  std::vector<char> ok(opt.paths, 0);
  parallel_for(opt.paths, [&](std::size_t i) {
    try {
      samples[i] = sampling::sample_bubble(bo, opt.seed, i).sample;
      ok[i] = 1;
    } catch (const CutoffError&) {
    } catch (const DegenerateError&) {
    }
  });
  std::vector<double> a_stars;
  std::size_t koebe = 0, winding = 0;
  for (std::size_t i = 0; i < opt.paths; ++i) {
    if (!ok[i]) continue;
    const auto& s = samples[i];
    a_stars.push_back(s.a_star);
    if (geometry::koebe_sandwich_check(s.r, s.a_star, 0.05).pass) ++koebe;
    if (std::abs(s.winding) == 1) ++winding;
  }
  if (a_stars.empty()) throw EmptySampleError("werner: no usable bubble");
  const std::size_t used = a_stars.size();

  json per_b = json::array();
  std::vector<io::Row> rows;
  std::vector<double> sorted_b = bs;
  std::sort(sorted_b.begin(), sorted_b.end());
  std::vector<double> masses;
  for (double b : sorted_b) {
    const auto m = measures::werner_mass(b, a_stars);
    const bool inside = m.estimate.value >= m.lower - 0.03 && m.estimate.value <= m.upper + 0.03;
    rep.pass = rep.pass && inside;
    masses.push_back(m.estimate.value);
    rows.push_back({b, m.estimate.value, m.estimate.ci_low, m.estimate.ci_high, m.lower, m.upper});
    json j{{"b", b}};
    j.update(estimate_json(m.estimate));
    j["lower"] = m.lower;
    j["upper"] = m.upper;
    j["inside_sandwich"] = inside;
    per_b.push_back(std::move(j));
  }

  const auto comments = rep.manifest.comment_lines();
  const std::vector<std::string> header{"b", "estimate", "ci_low", "ci_high", "lower", "upper"};
  {
    auto os = open_output(opt.out, "werner.csv");
    io::write_csv(os, header, rows, comments);
  }
  {
    auto os = open_output(opt.out, "werner.dat");
    io::write_dat(os, header, rows, comments);
  }
  rep.body["samples_used"] = used;
  rep.body["koebe_fraction"] = static_cast<double>(koebe) / static_cast<double>(used);
  rep.body["winding_fraction"] = static_cast<double>(winding) / static_cast<double>(used);
  rep.body["results"] = std::move(per_b);
  if (sorted_b.size() >= 2) {
    // d/db of the mass is P(a* < b), which tends to 1 for large b.
    const std::size_t k = sorted_b.size() - 1;
    rep.body["large_b_slope"] =
        (masses[k] - masses[k - 1]) / (sorted_b[k] - sorted_b[k - 1]);
  }
  return rep;
}

Report cmd_tables(const CommonOptions& opt) {
  Report rep;
  rep.manifest = make_manifest("tables", opt, json::object());
  std::vector<Row> rows;
  auto add = [&](std::string check, double arg, double lhs, double rhs, double tol) {
    const double res = std::fabs(lhs - rhs);
    rows.push_back({std::move(check), arg, lhs, rhs, res, tol, res <= tol});
  };
  auto add_ratio = [&](std::string check, double arg, double num, double den,
                       double tol) {
    const double ratio = num / den;
    const double res = std::fabs(ratio - 1.0);
    rows.push_back({std::move(check), arg, num, den, res, tol, res <= tol});
  };

  for (int k = 1; k <= 99; ++k) {
    const double q = k / 100.0;
    add("product_vs_series", q, specfun::radius_cdf_product(q),
        specfun::radius_cdf_series(q), 1e-12);
  }
  // The eta route converges slowly as q -> 1, so give it room.
  const specfun::TruncationPolicy long_products{1e-16, 5000};
  for (int k = 1; k <= 99; ++k) {
    const double q = k / 100.0;
    add("eta_form_vs_product", q, specfun::radius_cdf_eta(q, long_products),
        specfun::radius_cdf_product(std::pow(q, 1.5)), 1e-12);
  }
  for (double t : {0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0}) {
    add("eta_modular", t, specfun::dedekind_eta(1.0 / t),
        std::sqrt(t) * specfun::dedekind_eta(t), 1e-10);
  }
  for (double t : {0.1, 0.5, 1.0, 2.0, 5.0}) {
    add("survival_series_vs_product", t, specfun::survival_tau(t),
        specfun::survival_tau_product(t), 1e-12);
  }
  for (double a : {0.2, 0.5, 1.0}) {
    // As printed: P(r >= q^{3/2}) against q^{-1/8} (3 pi / a)^{3/2} ...
    const double q = std::exp(-a);
    const double printed = std::pow(q, -0.125) * specfun::asymptotic_small_a_tail(a) *
                           specfun::euler_product(std::exp(-6.0 * kPi * kPi / a), 3);
    add("large_q_printed", a, specfun::radius_cdf_product(std::pow(q, 1.5)), printed, 1e-10);
    add("large_q_modular", a, specfun::radius_cdf_product(q),
        specfun::radius_cdf_modular(a), 1e-10);
  }
  add_ratio("small_q_ratio", 1e-4, 1.0 - specfun::radius_cdf_product(1e-4),
            specfun::asymptotic_small_mass(1e-4), 0.02);
  add_ratio("small_a_ratio", 0.3, specfun::radius_cdf_product(std::exp(-0.3)),
            specfun::asymptotic_small_a_tail(0.3), 0.05);

  std::vector<io::Row> bounds;
  for (double a : {0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0, 5.0, 6.0, 8.0, 10.0}) {
    const auto bb = specfun::bub_bounds(a);
    bounds.push_back({a, bb.lower, bb.upper});
  }

  const auto comments = rep.manifest.comment_lines();
  {
    auto os = open_output(opt.out, "identities.csv");
    for (const auto& c : comments) os << "# " << c << '\n';
    os << "check,argument,lhs,rhs,residual,tolerance,pass\n";
    for (const auto& r : rows) {
      os << r.check << ',' << io::format_number(r.argument) << ','
         << io::format_number(r.lhs) << ',' << io::format_number(r.rhs) << ','
         << io::format_number(r.residual) << ',' << io::format_number(r.tolerance) << ','
         << (r.pass ? "true" : "false") << '\n';
    }
  }
  {
    auto os = open_output(opt.out, "bounds.csv");
    io::write_csv(os, {"a", "lower", "upper"}, bounds, comments);
  }
  {
    auto os = open_output(opt.out, "bounds.dat");
    io::write_dat(os, {"a", "lower", "upper"}, bounds, comments);
  }

  json summary = json::object();
  for (const auto& r : rows) {
    auto& s = summary[r.check];
    if (s.is_null()) s = json{{"rows", 0}, {"failed", 0}, {"max_residual", 0.0}};
    s["rows"] = s["rows"].get<int>() + 1;
    if (!r.pass) s["failed"] = s["failed"].get<int>() + 1;
    s["max_residual"] = std::max(s["max_residual"].get<double>(), r.residual);
    rep.pass = rep.pass && r.pass;
  }
  rep.body["checks"] = std::move(summary);
  return rep;
}

}  // namespace sleloop::cli
