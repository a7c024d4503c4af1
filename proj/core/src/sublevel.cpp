#include "speclab/sublevel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "speclab/error.hpp"
#include "speclab/random.hpp"

namespace speclab {

Region Region::ball(std::vector<double> center, double radius) {
  if (!(radius > 0.0)) throw DomainError("region radius must be > 0");
  if (center.empty()) throw DimensionError("region needs dimension >= 1");
  return Region{Kind::Ball, std::move(center), {radius}};
}

Region Region::box(std::vector<double> center, std::vector<double> half_widths) {
  if (center.empty() || half_widths.size() != center.size()) throw DimensionError("box half-widths length mismatch");
  for (double h : half_widths) {
    if (!(h > 0.0)) throw DomainError("box half-widths must be > 0");
  }
  return Region{Kind::Box, std::move(center), std::move(half_widths)};
}

double ball_volume(int nu, double radius) {
  const double half = 0.5 * nu;
  return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0) * std::pow(radius, nu);
}

double Region::volume() const {
  if (kind == Kind::Ball) return ball_volume(dimension(), size.at(0));
  double v = 1.0;
  for (double h : size) v *= 2.0 * h;
  return v;
}

bool Region::contains(std::span<const double> x) const {
  if (kind == Kind::Ball) {
    double d2 = 0.0;
    for (std::size_t i = 0; i < center.size(); ++i) d2 += (x[i] - center[i]) * (x[i] - center[i]);
    return d2 <= size[0] * size[0];
  }
  for (std::size_t i = 0; i < center.size(); ++i) {
    if (std::abs(x[i] - center[i]) > size[i]) return false;
  }
  return true;
}

bool indicator(const PotentialExpr& v, double level, std::span<const double> x) {
  if (!(level > 0.0)) throw DomainError("sublevel M must be > 0");
  const double value = v.evaluate_nonnegative(x, 1e-9);
  return value < level;
}

namespace {

constexpr std::uint64_t kChunk = 1 << 15;

void check_dimension(const PotentialExpr& v, int nu) {
  if (v.dimension() != nu) throw DimensionError("region dimension does not match the potential");
}

std::uint64_t monte_carlo_hits(const PotentialExpr& v, double level, const Region& region, std::uint64_t samples,
                               std::uint64_t seed) {
  const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<std::uint64_t> hits(chunks, 0);
  const auto nu = static_cast<std::size_t>(region.dimension());
  parallel_for(chunks, [&](std::size_t c) {
    Rng rng(derive_seed(seed, c));
    std::vector<double> x(nu);
    const std::uint64_t begin = c * kChunk;
    const std::uint64_t end = std::min(samples, begin + kChunk);
    std::uint64_t count = 0;
    for (std::uint64_t s = begin; s < end; ++s) {
      if (region.kind == Region::Kind::Ball) {
        rng.in_ball(region.center, region.size[0], x);
      } else {
        for (std::size_t i = 0; i < nu; ++i) x[i] = region.center[i] + region.size[i] * rng.uniform(-1.0, 1.0);
      }
      if (indicator(v, level, x)) ++count;
    }
    hits[c] = count;
  });
  std::uint64_t total = 0;
  for (auto h : hits) total += h;
  return total;
}

MeasureEstimate grid_quadrature(const PotentialExpr& v, double level, const Region& region, std::uint64_t cells) {
  const int nu = region.dimension();
  const auto per_dim = static_cast<std::uint64_t>(std::ceil(std::pow(static_cast<double>(cells), 1.0 / nu) - 1e-9));
  std::vector<double> lo(static_cast<std::size_t>(nu));
  std::vector<double> step(static_cast<std::size_t>(nu));
  double cell_volume = 1.0;
  for (int i = 0; i < nu; ++i) {
    const double half = region.kind == Region::Kind::Ball ? region.size[0] : region.size[static_cast<std::size_t>(i)];
    lo[static_cast<std::size_t>(i)] = region.center[static_cast<std::size_t>(i)] - half;
    step[static_cast<std::size_t>(i)] = 2.0 * half / static_cast<double>(per_dim);
    cell_volume *= step[static_cast<std::size_t>(i)];
  }
  std::uint64_t total = 1;
  for (int i = 0; i < nu; ++i) total *= per_dim;
  // Rows along the first coordinate are independent tasks.
  const std::uint64_t rows = per_dim;
  const std::uint64_t per_row = total / rows;
  std::vector<std::uint64_t> hits(rows, 0);
  parallel_for(rows, [&](std::size_t row) {
    std::vector<double> x(static_cast<std::size_t>(nu));
    std::uint64_t count = 0;
    for (std::uint64_t rest = 0; rest < per_row; ++rest) {
      std::uint64_t idx = rest;
      x[0] = lo[0] + (static_cast<double>(row) + 0.5) * step[0];
      for (int i = 1; i < nu; ++i) {
        const auto k = idx % per_dim;
        idx /= per_dim;
        x[static_cast<std::size_t>(i)] = lo[static_cast<std::size_t>(i)] + (static_cast<double>(k) + 0.5) * step[static_cast<std::size_t>(i)];
      }
      if (region.contains(x) && indicator(v, level, x)) ++count;
    }
    hits[row] = count;
  });
  std::uint64_t count = 0;
  for (auto h : hits) count += h;
  MeasureEstimate est;
  est.value = static_cast<double>(count) * cell_volume;
  est.std_error = 0.0;
  est.method = MeasureMethod::GridQuadrature;
  est.samples = total;
  return est;
}

}  // namespace

MeasureEstimate measure(const PotentialExpr& v, double level, const Region& region, MeasureMethod method,
                        std::uint64_t budget, std::uint64_t seed) {
  check_dimension(v, region.dimension());
  if (!(level > 0.0)) throw DomainError("sublevel M must be > 0");
  const double volume = region.volume();
  if (!(volume > 0.0) || !std::isfinite(volume)) throw DomainError("region has zero volume");
  if (method == MeasureMethod::GridQuadrature) {
    if (budget < 10'000) throw BudgetError("grid quadrature needs at least 1e4 cells");
    MeasureEstimate est = grid_quadrature(v, level, region, budget);
    est.seed = seed;
    return est;
  }
  if (budget < 1'000) throw BudgetError("Monte Carlo needs at least 1e3 samples");
  const std::uint64_t hits = monte_carlo_hits(v, level, region, budget, seed);
  const double n = static_cast<double>(budget);
  const double p = static_cast<double>(hits) / n;
  MeasureEstimate est;
  est.value = volume * p;
  est.std_error = volume * std::sqrt(p * (1.0 - p) / n);
  est.method = MeasureMethod::MonteCarlo;
  est.samples = budget;
  est.seed = seed;
  return est;
}

MeasureEstimate local_measure(const PotentialExpr& v, double level, std::span<const double> x, double ell,
                              std::uint64_t budget, std::uint64_t seed, MeasureMethod method) {
  if (!(ell > 0.0)) throw DomainError("local measure radius must be > 0");
  return measure(v, level, Region::ball({x.begin(), x.end()}, ell), method, budget, seed);
}

DecayFit decay_fit(const PotentialExpr& v, double level, double ell, std::span<const double> direction,
                   std::span<const double> distances, std::uint64_t budget, std::uint64_t seed) {
  const auto nu = direction.size();
  check_dimension(v, static_cast<int>(nu));
  if (distances.size() < 2) throw DomainError("decay_fit needs at least two distances");
  for (std::size_t i = 1; i < distances.size(); ++i) {
    if (!(distances[i] > distances[i - 1])) throw DomainError("decay_fit distances must be increasing");
  }
  double norm = 0.0;
  for (double d : direction) norm += d * d;
  norm = std::sqrt(norm);
  if (!(norm > 0.0)) throw DomainError("decay_fit direction must be nonzero");

  DecayFit fit;
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<double> point(nu);
  const std::uint64_t pattern_seed = derive_seed(seed, 0);
  for (double t : distances) {
    for (std::size_t i = 0; i < nu; ++i) point[i] = t * direction[i] / norm;
    if (!indicator(v, level, point)) {
      throw DomainError("decay_fit: sample point at distance " + std::to_string(t) + " lies outside Omega_M");
    }
    const MeasureEstimate est = local_measure(v, level, point, ell, budget, pattern_seed);
    if (!(est.value > 0.0)) throw NumericalError("decay_fit: local measure estimate is zero; raise the budget");
    fit.distances.push_back(t);
    fit.omegas.push_back(est.value);
    xs.push_back(-std::log(t + 1.0));
    ys.push_back(std::log(est.value));
  }
  // Centre y on its first entry so identical estimates give slope 0 exactly.
  const double n = static_cast<double>(xs.size());
  double x_mean = 0.0;
  for (double x : xs) x_mean += x;
  x_mean /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  double dy_mean = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - x_mean;
    const double dy = ys[i] - ys[0];
    sxy += dx * dy;
    sxx += dx * dx;
    dy_mean += dy;
  }
  dy_mean /= n;
  fit.exponent = sxy / sxx;
  const double intercept = ys[0] + dy_mean - fit.exponent * x_mean;
  fit.constant = fit.exponent == 0.0 && dy_mean == 0.0 ? fit.omegas[0] : std::exp(intercept);
  return fit;
}

std::string to_string(ThinnessVerdict v) {
  switch (v) {
    case ThinnessVerdict::ConvergentEvidence: return "convergent-evidence";
    case ThinnessVerdict::DivergentEvidence: return "divergent-evidence";
    case ThinnessVerdict::Inconclusive: break;
  }
  return "inconclusive";
}

ThinnessReport thinness(const PotentialExpr& v, double level, double r, double ell, std::span<const double> radii,
                        const ThinnessOptions& options) {
  if (!(r > 0.0)) throw DomainError("thinness exponent r must be > 0");
  if (!(ell > 0.0)) throw DomainError("thinness radius ell must be > 0");
  if (!(level > 0.0)) throw DomainError("sublevel M must be > 0");
  if (radii.size() < 3) throw DomainError("thinness needs at least three radii");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || (i > 0 && !(radii[i] > radii[i - 1]))) {
      throw DomainError("thinness radii must be positive and strictly increasing");
    }
  }
  if (options.shell_samples < 1'000 || options.inner_budget < 1'000) {
    throw BudgetError("thinness needs at least 1e3 shell samples and inner samples");
  }
  const int nu = v.dimension();
  const auto dim = static_cast<std::size_t>(nu);

  ThinnessReport report;
  report.level = level;
  report.r = r;
  report.ell = ell;
  report.radii.assign(radii.begin(), radii.end());
  report.options = options;

  double cumulative = 0.0;
  double cumulative_var = 0.0;
  std::vector<double> shell_values;
  for (std::size_t j = 0; j < radii.size(); ++j) {
    const double inner = j == 0 ? 0.0 : radii[j - 1];
    const double outer = radii[j];
    const double inner_pow = std::pow(inner, nu);
    const double outer_pow = std::pow(outer, nu);
    const double shell_volume = ball_volume(nu, outer) - ball_volume(nu, inner);

    // Uniform samples in the shell: radius by inverse CDF, direction uniform.
    Rng rng(derive_seed(options.seed, 1'000'000 + j));
    std::vector<double> x(dim);
    std::vector<std::vector<double>> hits;
    std::uint64_t hit_count = 0;
    for (std::uint64_t s = 0; s < options.shell_samples; ++s) {
      const double rad = std::pow(inner_pow + rng.uniform() * (outer_pow - inner_pow), 1.0 / nu);
      rng.on_sphere(rad, x);
      if (indicator(v, level, x)) {
        ++hit_count;
        if (hits.size() < options.max_points_per_shell) hits.push_back(x);
      }
    }
    if (j == 0 && hit_count > 0 && hit_count < 100) {
      throw BudgetError("thinness: fewer than 100 samples landed in Omega_M inside the first ball");
    }

    std::vector<double> powers(hits.size());
    parallel_for(hits.size(), [&](std::size_t i) {
      const MeasureEstimate omega = local_measure(v, level, hits[i], ell, options.inner_budget,
                                                  derive_seed(options.seed, (j << 32) + i));
      powers[i] = std::pow(omega.value, r);
    });
    double m1 = 0.0;
    double m2 = 0.0;
    if (!powers.empty()) {
      m1 = compensated_sum(powers) / static_cast<double>(powers.size());
      for (double p : powers) m2 += p * p;
      m2 /= static_cast<double>(powers.size());
    }
    const double n = static_cast<double>(options.shell_samples);
    const double p = static_cast<double>(hit_count) / n;
    const double shell_value = shell_volume * p * m1;
    double var = 0.0;
    if (!powers.empty()) {
      var = shell_volume * shell_volume *
            (std::max(0.0, p * m2 - p * p * m1 * m1) / n +
             p * p * std::max(0.0, m2 - m1 * m1) / static_cast<double>(powers.size()));
    }
    cumulative += shell_value;
    cumulative_var += var;
    shell_values.push_back(shell_value);
    report.partial_integrals.push_back(cumulative);
    report.std_errors.push_back(std::sqrt(cumulative_var));
  }

  for (std::size_t j = 1; j + 1 < shell_values.size(); ++j) {
    const double num = shell_values[j + 1];
    const double den = shell_values[j];
    double ratio = 0.0;
    if (den > 0.0) {
      ratio = num / den;
    } else if (num > 0.0) {
      ratio = std::numeric_limits<double>::infinity();
    }
    report.tail_ratios.push_back(ratio);
  }
  const std::size_t count = std::min<std::size_t>(2, report.tail_ratios.size());
  const auto last = report.tail_ratios.end() - static_cast<std::ptrdiff_t>(count);
  if (std::all_of(last, report.tail_ratios.end(), [](double t) { return t < 0.7; })) {
    report.verdict = ThinnessVerdict::ConvergentEvidence;
  } else if (std::all_of(last, report.tail_ratios.end(), [](double t) { return t > 0.9; })) {
    report.verdict = ThinnessVerdict::DivergentEvidence;
  } else {
    report.verdict = ThinnessVerdict::Inconclusive;
  }
  return report;
}

GrowthReport growth_check(const PotentialExpr& v, std::span<const double> radii, int probes_per_sphere,
                          std::uint64_t seed) {
  const int nu = v.dimension();
  const auto dim = static_cast<std::size_t>(nu);
  for (std::size_t i = 1; i < radii.size(); ++i) {
    if (!(radii[i] > radii[i - 1])) throw DomainError("growth_check radii must be increasing");
  }
  if (probes_per_sphere < 0) throw DomainError("growth_check probes must be >= 0");
  GrowthReport report;
  report.radii.assign(radii.begin(), radii.end());
  std::vector<double> x(dim);
  for (std::size_t j = 0; j < radii.size(); ++j) {
    const double radius = radii[j];
    double lowest = std::numeric_limits<double>::infinity();
    for (std::size_t axis = 0; axis < dim; ++axis) {
      for (double sign : {1.0, -1.0}) {
        std::fill(x.begin(), x.end(), 0.0);
        x[axis] = sign * radius;
        lowest = std::min(lowest, v.evaluate(x));
      }
    }
    Rng rng(derive_seed(seed, j));
    for (int p = 0; p < probes_per_sphere; ++p) {
      rng.on_sphere(radius, x);
      lowest = std::min(lowest, v.evaluate(x));
    }
    report.minima.push_back(lowest);
  }
  report.increasing = report.minima.size() >= 2;
  for (std::size_t j = 1; j < report.minima.size(); ++j) {
    if (!(report.minima[j] > report.minima[j - 1])) report.increasing = false;
  }
  return report;
}

}  // namespace speclab
