#include <algorithm>
#include <cmath>
#include <sstream>

#include "speclab/cli.hpp"
#include "speclab/inequalities.hpp"
#include "speclab/kernels.hpp"
#include "speclab/polynomial.hpp"
#include "speclab/random.hpp"
#include "speclab/serialize.hpp"
#include "speclab/spectrum.hpp"
#include "speclab/sublevel.hpp"

namespace speclab::cli {

namespace {

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string series(const std::string& xn, const std::string& yn, const std::vector<double>& x,
                   const std::vector<double>& y) {
  std::ostringstream os;
  write_series(os, xn, yn, x, y);
  return os.str();
}

std::vector<double> iota(std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<double>(i + 1);
  return out;
}

std::string checks_csv(const std::vector<BoundCheck>& checks) {
  std::ostringstream os;
  os << "name,lhs,rhs,tolerance,pass\n";
  for (const auto& c : checks) {
    os << c.name << ',' << format_double(c.lhs) << ',' << format_double(c.rhs) << ',' << format_double(c.tolerance)
       << ',' << (c.pass ? "true" : "false") << '\n';
  }
  return os.str();
}

void add_checks(CommandResult& result, const std::vector<BoundCheck>& checks, const std::string& prefix = "") {
  for (const auto& c : checks) result.checks.push_back({prefix + c.name, c.pass});
}

int dimension_of(const RunConfig& c) {
  const auto nu = c.integer("nu");
  if (nu < 1 || nu > 3) throw ConfigError("nu must be 1, 2 or 3");
  return static_cast<int>(nu);
}

int positive_int(const RunConfig& c, const std::string& key, std::int64_t lo = 1) {
  const auto v = c.integer(key);
  if (v < lo || v > 1'000'000'000) throw ConfigError(key + " must be >= " + std::to_string(lo));
  return static_cast<int>(v);
}

CommandResult run_spectrum(const RunConfig& c) {
  const int nu = dimension_of(c);
  const PotentialExpr v = parse_potential(c.text("potential"), nu);
  SpectrumOptions o;
  o.schedule = c.reals("L");
  o.spacing = c.real("h");
  o.count_at = c.reals("count-at");
  o.gap_threshold = c.real("gap-threshold");
  o.gap_count = positive_int(c, "gap-count", 2);
  o.drift_tolerance = c.real("drift-tol");
  o.solver.k = positive_int(c, "k");
  o.solver.max_matvecs = positive_int(c, "max-matvecs");
  o.solver.seed = c.seed("seed");
  o.solver.shift_invert = c.flag("shift-invert");
  const std::vector<double> levels = c.reals("levels");
  if (o.schedule.size() < 2) throw ConfigError("L needs at least two box sizes");
  for (double L : o.schedule) (void)Grid(nu, L, o.spacing);

  const SpectrumReport report = spectrum_study(v, o);
  CommandResult result;
  json j{{"subcommand", "spectrum"}, {"report", report}};
  result.checks.push_back({"lanczos-residuals", report.converged && report.max_residual <= 1e-6});
  if (!levels.empty()) {
    const Grid grid(nu, o.schedule.back(), o.spacing);
    const MonotonicityTable table = truncation_monotonicity(v, levels, grid, o.solver);
    j["truncation"] = table;
    result.checks.push_back({"truncation-monotone", table.monotone});
  }
  result.files.emplace_back("spectrum-report.json", dump(j));
  std::ostringstream csv;
  write_eigen_csv(csv, report);
  result.files.emplace_back("spectrum-eigenvalues.csv", csv.str());
  const std::size_t count = report.eigenvalues.front().size();
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<double> ys;
    for (const auto& row : report.eigenvalues) ys.push_back(i < row.size() ? row[i] : std::nan(""));
    result.files.emplace_back("spectrum-lambda" + std::to_string(i + 1) + ".dat",
                              series("L", "lambda_" + std::to_string(i + 1), report.schedule, ys));
  }
  return result;
}

CommandResult run_sublevel(const RunConfig& c) {
  const int nu = dimension_of(c);
  const PotentialExpr v = parse_potential(c.text("potential"), nu);
  const double level = c.real("M");
  const std::uint64_t seed = c.seed("seed");
  std::vector<double> center = c.reals("center");
  if (center.empty()) center.assign(static_cast<std::size_t>(nu), 0.0);
  if (static_cast<int>(center.size()) != nu) throw ConfigError("center must have nu entries");
  std::vector<double> size = c.reals("size");
  Region region;
  if (c.text("region") == "ball") {
    if (size.size() != 1) throw ConfigError("a ball takes one size entry (its radius)");
    region = Region::ball(center, size[0]);
  } else if (c.text("region") == "box") {
    if (size.size() == 1) size.assign(static_cast<std::size_t>(nu), size[0]);
    region = Region::box(center, size);
  } else {
    throw ConfigError("region must be ball or box");
  }
  MeasureMethod method = MeasureMethod::MonteCarlo;
  if (c.text("method") == "grid") {
    method = MeasureMethod::GridQuadrature;
  } else if (c.text("method") != "mc") {
    throw ConfigError("method must be mc or grid");
  }
  const auto samples = static_cast<std::uint64_t>(positive_int(c, "samples"));
  const auto local_samples = static_cast<std::uint64_t>(positive_int(c, "local-samples"));
  const double ell = c.real("ell");

  CommandResult result;
  json j{{"subcommand", "sublevel"}, {"potential", v.text()}, {"M", level}};
  j["measure"] = measure(v, level, region, method, samples, derive_seed(seed, 0));
  const std::vector<double> point = c.reals("point");
  if (!point.empty()) {
    if (static_cast<int>(point.size()) != nu) throw ConfigError("point must have nu entries");
    j["local_measure"] = local_measure(v, level, point, ell, local_samples, derive_seed(seed, 1));
  }
  const std::vector<double> direction = c.reals("direction");
  if (!direction.empty()) {
    if (static_cast<int>(direction.size()) != nu) throw ConfigError("direction must have nu entries");
    const std::vector<double> distances = c.reals("distances");
    const DecayFit fit = decay_fit(v, level, ell, direction, distances, local_samples, derive_seed(seed, 2));
    j["decay_fit"] = fit;
    result.files.emplace_back("sublevel-decay.dat", series("t", "omega", fit.distances, fit.omegas));
  }
  const std::vector<double> growth_radii = c.reals("growth-radii");
  if (!growth_radii.empty()) {
    const GrowthReport g = growth_check(v, growth_radii, positive_int(c, "probes", 0), derive_seed(seed, 3));
    j["growth"] = g;
    result.files.emplace_back("sublevel-growth.dat", series("R", "min_V", g.radii, g.minima));
  }
  try {
    j["degeneracy"] = degeneracy_direction(to_polynomial(v));
  } catch (const DomainError&) {
    j["degeneracy"] = nullptr;  // not a polynomial
  }
  result.files.insert(result.files.begin(), {"sublevel-report.json", dump(j)});
  return result;
}

CommandResult run_thinness(const RunConfig& c) {
  const int nu = dimension_of(c);
  const PotentialExpr v = parse_potential(c.text("potential"), nu);
  ThinnessOptions o;
  o.shell_samples = static_cast<std::uint64_t>(positive_int(c, "samples"));
  o.inner_budget = static_cast<std::uint64_t>(positive_int(c, "inner-samples"));
  o.max_points_per_shell = static_cast<std::uint64_t>(positive_int(c, "max-points"));
  o.seed = c.seed("seed");
  const std::vector<double> radii = c.reals("radii");
  const ThinnessReport report = thinness(v, c.real("M"), c.real("r"), c.real("ell"), radii, o);
  CommandResult result;
  json j{{"subcommand", "thinness"}, {"potential", v.text()}, {"report", report}};
  result.files.emplace_back("thinness-report.json", dump(j));
  std::ostringstream csv;
  write_thinness_csv(csv, report);
  result.files.emplace_back("thinness-partials.csv", csv.str());
  result.files.emplace_back("thinness-partial-integrals.dat",
                            series("R", "I(R)", report.radii, report.partial_integrals));
  return result;
}

CommandResult run_inequalities(const RunConfig& c) {
  BatchOptions o;
  o.trials = positive_int(c, "trials");
  o.dim_max = positive_int(c, "dim");
  o.dim_min = positive_int(c, "dim-min");
  o.seed = c.seed("seed");
  o.include_wedge = c.flag("wedge");
  if (o.dim_min < 2 || o.dim_max < o.dim_min || o.dim_max > 12) {
    throw ConfigError("need 2 <= dim-min <= dim <= 12");
  }
  const int pairs = positive_int(c, "trotter-pairs", 0);
  const int depth = positive_int(c, "trotter-n", 0);
  if (depth > 14) throw ConfigError("trotter-n must be <= 14");

  const BatchResult batch = run_inequality_batch(o);
  CommandResult result;
  for (const auto& row : batch.summary) {
    std::string name = row.name;
    if (row.pass_rate < 1.0) {
      for (const auto& r : batch.reports) {
        if (r.name == row.name && !r.pass) {
          name += " (first failure: seed=" + std::to_string(r.seed) + ", d=" + std::to_string(r.dimension) + ")";
          break;
        }
      }
    }
    result.checks.push_back({name, row.pass_rate == 1.0});
  }

  json trotter = json::array();
  const int trotter_dim = std::min(o.dim_max, 6);
  for (int i = 0; i < pairs; ++i) {
    const std::uint64_t s = derive_seed(o.seed, (1ULL << 40) + static_cast<std::uint64_t>(i));
    Rng rng(s);
    const int d = o.dim_min + i % (std::max(trotter_dim, o.dim_min) - o.dim_min + 1);
    const SymmetricMatrix a = random_psd(d, rng);
    const SymmetricMatrix b = random_psd(d, rng);
    const TrotterSequence seq = trotter_sequence(a, b, depth);
    const bool ok = seq.capped && (depth < 12 || seq.final_gap <= 1e-6);
    if (!ok) result.checks.push_back({"trotter (seed=" + std::to_string(s) + ", d=" + std::to_string(d) + ")", false});
    json t = seq;
    t["seed"] = s;
    t["dimension"] = d;
    trotter.push_back(t);
  }
  if (pairs > 0) {
    bool all = true;
    for (const auto& t : trotter) all = all && t["capped"].get<bool>();
    result.checks.push_back({"trotter-capped", all});
  }

  json j{{"subcommand", "inequalities"},
         {"trials", o.trials},
         {"dim_min", o.dim_min},
         {"dim_max", o.dim_max},
         {"summary", batch.summary},
         {"trotter", trotter}};
  result.files.emplace_back("inequalities-report.json", dump(j));
  result.files.emplace_back("inequalities-reports.json", dump(json(batch.reports)));
  std::ostringstream csv;
  write_batch_csv(csv, batch);
  result.files.emplace_back("inequalities-summary.csv", csv.str());
  return result;
}

CommandResult run_heat(const RunConfig& c) {
  const int nu = dimension_of(c);
  const PotentialExpr v = parse_potential(c.text("potential"), nu);
  const Grid grid(nu, c.real("L"), c.real("h"));
  const double s = c.real("s");
  const double level = c.real("M");
  const std::uint64_t seed = c.seed("seed");
  const int n_max = positive_int(c, "n-max");
  if (grid.size() > KernelMatrix::kDenseBudget) throw ConfigError("grid exceeds the dense-kernel budget");

  CommandResult result;
  json j{{"subcommand", "heat-diagnostics"},
         {"potential", v.text()},
         {"grid", {{"nu", nu}, {"L", grid.half_width()}, {"h", grid.spacing()}, {"points", grid.size()}}},
         {"s", s}};
  std::vector<BoundCheck> checks;

  const double discrete_l2 = discrete_gaussian_l2_squared(grid, s);
  const double exact_l2 = gaussian_l2_squared(nu, s);
  checks.push_back(BoundCheck::make("gaussian-l2", std::abs(discrete_l2 - exact_l2), 0.0, 1e-2 * exact_l2));
  j["gaussian_l2"] = {{"discrete", discrete_l2}, {"exact", exact_l2}};

  CompactnessDiagnostics diag;
  {
    const KernelMatrix heat = heat_matrix(grid, s);
    diag = hs_diagnostics(heat, grid.sublevel_mask(v, level));
  }
  j["hs"] = diag;
  checks.insert(checks.end(), diag.checks.begin(), diag.checks.end());
  const auto proxy_len = std::min<std::size_t>(static_cast<std::size_t>(n_max), diag.singular_values.size());
  std::vector<double> proxy;
  if (proxy_len > 0) proxy = compactness_proxy(SingularValueList{diag.singular_values}, static_cast<int>(proxy_len));
  j["compactness_proxy"] = proxy;

  json splits = json::array();
  {
    const KernelMatrix cm = compose_C(grid, s, v);
    for (double m : c.reals("m")) {
      const SplitTail st = split_tail(cm, v, m, seed);
      splits.push_back(st);
      checks.push_back(st.check);
      checks.back().name += " (m=" + format_double(m) + ")";
    }
  }
  j["split_tail"] = splits;
  {
    const TruncatedConvolution tc = truncated_convolution(grid, s, c.real("R"), seed);
    j["truncation"] = tc;
    checks.push_back(tc.check);
  }
  j["checks"] = checks;
  add_checks(result, checks);
  result.files.emplace_back("heat-diagnostics-report.json", dump(j));
  result.files.emplace_back("heat-diagnostics-checks.csv", checks_csv(checks));
  result.files.emplace_back("heat-diagnostics-singular-values.dat",
                            series("n", "mu_n", iota(diag.singular_values.size()), diag.singular_values));
  result.files.emplace_back("heat-diagnostics-proxy.dat", series("n", "g(n)", iota(proxy.size()), proxy));
  return result;
}

CommandResult run_kernel_power(const RunConfig& c) {
  const int nu = dimension_of(c);
  const PotentialExpr v = parse_potential(c.text("potential"), nu);
  const Grid grid(nu, c.real("L"), c.real("h"));
  const double s = c.real("s");
  const double level = c.real("M");
  const double radius = c.real("R");
  const double r = c.real("r");
  if (grid.size() > KernelMatrix::kDenseBudget) throw ConfigError("grid exceeds the dense-kernel budget");
  int k = static_cast<int>(c.integer("k"));
  if (k == 0) k = default_power(r);
  if (k < 2 || !(2.0 * k - 2.0 > r)) throw ConfigError("k must satisfy k >= 2 and 2k - 2 > r");

  const std::vector<char> mask = grid.sublevel_mask(v, level);
  CompactnessDiagnostics dom;
  {
    const TruncatedConvolution tc = truncated_convolution(grid, s, radius, c.seed("seed"));
    const KernelMatrix d = d_kernel(grid, v, level, radius);
    dom = domination_check(restrict_columns(tc.f_r, mask), d);
  }
  CompactnessDiagnostics power;
  {
    const KernelMatrix d = d_kernel(grid, v, level, radius);
    power = kernel_power_bound(d, k, v, level, radius);
  }
  CommandResult result;
  std::vector<BoundCheck> checks = dom.checks;
  checks.insert(checks.end(), power.checks.begin(), power.checks.end());
  add_checks(result, checks);
  json j{{"subcommand", "kernel-power"},
         {"potential", v.text()},
         {"grid", {{"nu", nu}, {"L", grid.half_width()}, {"h", grid.spacing()}, {"points", grid.size()}}},
         {"k", k},
         {"R", radius},
         {"domination", dom},
         {"power", power}};
  result.files.emplace_back("kernel-power-report.json", dump(j));
  result.files.emplace_back("kernel-power-checks.csv", checks_csv(checks));
  result.files.emplace_back("kernel-power-singular-values.dat",
                            series("n", "mu_n", iota(power.singular_values.size()), power.singular_values));
  return result;
}

}  // namespace

CommandResult execute(const RunConfig& config) {
  validate(config);
  const std::string& sub = config.subcommand;
  if (sub == "spectrum") return run_spectrum(config);
  if (sub == "sublevel") return run_sublevel(config);
  if (sub == "thinness") return run_thinness(config);
  if (sub == "inequalities") return run_inequalities(config);
  if (sub == "heat-diagnostics") return run_heat(config);
  if (sub == "kernel-power") return run_kernel_power(config);
  throw ConfigError("unknown subcommand '" + sub + "'");
}

}  // namespace speclab::cli
