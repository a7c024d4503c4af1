#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "speclab/potential.hpp"

namespace speclab {

/// Ball (size = {radius}) or axis-aligned box (size = half-widths) in R^nu.
struct Region {
  enum class Kind { Ball, Box };

  Kind kind = Kind::Ball;
  std::vector<double> center;
  std::vector<double> size;

  static Region ball(std::vector<double> center, double radius);
  static Region box(std::vector<double> center, std::vector<double> half_widths);

  int dimension() const noexcept { return static_cast<int>(center.size()); }
  double volume() const;
  bool contains(std::span<const double> x) const;
};

double ball_volume(int nu, double radius);

enum class MeasureMethod { MonteCarlo, GridQuadrature };

struct MeasureEstimate {
  double value = 0.0;      ///< Lebesgue measure
  double std_error = 0.0;  ///< binomial standard error for Monte Carlo; 0 for grid quadrature
  MeasureMethod method = MeasureMethod::MonteCarlo;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

/// 0 <= V(x) < M. Throws DomainError if V(x) < -1e-9.
bool indicator(const PotentialExpr& v, double level, std::span<const double> x);

/// |{0 <= V < M} intersected with region|. Monte Carlo needs budget >= 1e3
/// samples; grid quadrature needs budget >= 1e4 cells (cell-center rule).
MeasureEstimate measure(const PotentialExpr& v, double level, const Region& region,
                        MeasureMethod method, std::uint64_t budget, std::uint64_t seed);

/// omega_x^ell = |Omega_M intersected with the closed ball of radius ell at x|.
MeasureEstimate local_measure(const PotentialExpr& v, double level, std::span<const double> x, double ell,
                              std::uint64_t budget, std::uint64_t seed,
                              MeasureMethod method = MeasureMethod::MonteCarlo);

struct DecayFit {
  double constant = 0.0;  ///< C in omega ~ C (t + 1)^(-exponent)
  double exponent = 0.0;
  std::vector<double> distances;
  std::vector<double> omegas;
};

/// Least-squares fit of log omega against log(1/(t+1)) for x = t * direction.
/// All distances reuse one sample pattern (common random numbers), so a set
/// that is translation invariant along the ray gives exponent 0 exactly.
DecayFit decay_fit(const PotentialExpr& v, double level, double ell, std::span<const double> direction,
                   std::span<const double> distances, std::uint64_t budget = 200'000, std::uint64_t seed = 1);

enum class ThinnessVerdict { ConvergentEvidence, DivergentEvidence, Inconclusive };
std::string to_string(ThinnessVerdict v);

struct ThinnessOptions {
  std::uint64_t shell_samples = 200'000;   ///< uniform samples per shell B_{R_j} minus B_{R_{j-1}}
  std::uint64_t inner_budget = 2'000;      ///< samples per omega evaluation
  std::uint64_t max_points_per_shell = 400;
  std::uint64_t seed = 1;
};

struct ThinnessReport {
  double level = 0.0;
  double r = 0.0;
  double ell = 0.0;
  std::vector<double> radii;
  std::vector<double> partial_integrals;  ///< I(R_j), nondecreasing
  std::vector<double> std_errors;
  std::vector<double> tail_ratios;        ///< (I_{j+1} - I_j) / (I_j - I_{j-1})
  ThinnessVerdict verdict = ThinnessVerdict::Inconclusive;
  ThinnessOptions options;
};

/// Partial integrals of omega_x^ell(Omega_M)^r over Omega_M inside growing balls,
/// estimated shell by shell (stratified sampling). Verdict: convergent evidence
/// when the last two tail ratios are < 0.7, divergent when both are > 0.9.
ThinnessReport thinness(const PotentialExpr& v, double level, double r, double ell, std::span<const double> radii,
                        const ThinnessOptions& options = {});

struct GrowthReport {
  std::vector<double> radii;
  std::vector<double> minima;  ///< sampled min of V on |x| = R
  bool increasing = false;     ///< strictly increasing over the probed radii
  bool evidence_only = true;   ///< sampling evidence, never a proof of V -> infinity
};

/// Probes each sphere at the 2 nu axis points plus `probes_per_sphere` random points.
GrowthReport growth_check(const PotentialExpr& v, std::span<const double> radii, int probes_per_sphere,
                          std::uint64_t seed);

}  // namespace speclab
