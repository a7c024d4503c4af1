#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "speclab/grid.hpp"
#include "speclab/potential.hpp"

namespace speclab {

struct EigenSolveOptions {
  int k = 5;
  int max_matvecs = 20'000;
  std::uint64_t seed = 1;
  /// Lanczos on H^{-1} (sparse LDL^T) followed by two subspace-iteration
  /// Rayleigh-Ritz polish steps; otherwise plain Lanczos on H.
  bool shift_invert = true;
};

struct EigenSolve {
  std::vector<double> eigenvalues;  ///< ascending
  std::vector<double> residuals;    ///< |H x - lambda x| for unit x, computed on H
  int matvecs = 0;
  bool converged = false;
  std::string status;
};

EigenSolve lowest_eigenvalues(const SparseOperator& h, const EigenSolveOptions& options);

struct SpectrumOptions {
  std::vector<double> schedule;   ///< box half-widths, at least two
  double spacing = 0.1;
  std::vector<double> count_at;   ///< lambda values for N(lambda)
  double gap_threshold = 1.0;     ///< mean gap of the lowest `gap_count` eigenvalues >= this
  int gap_count = 5;
  double drift_tolerance = 0.01;
  EigenSolveOptions solver;
};

struct SpectrumReport {
  std::string potential;
  int dimension = 0;
  double spacing = 0.0;
  std::vector<double> schedule;
  std::vector<std::vector<double>> eigenvalues;  ///< [box][index]
  std::vector<std::vector<double>> residuals;
  std::vector<std::vector<double>> drift;        ///< [pair j -> j+1][index], relative
  std::vector<std::vector<int>> counting;        ///< [box][lambda]; lower bound past the last computed value
  std::vector<double> count_at;
  std::vector<double> mean_gaps;                 ///< [box]; NaN if fewer than two values qualify
  double max_drift_last = 0.0;
  bool stabilized = false;
  bool converged = false;
  double max_residual = 0.0;
  std::string status;
};

SpectrumReport spectrum_study(const PotentialExpr& v, const SpectrumOptions& options);

struct MonotonicityTable {
  std::vector<double> levels;                    ///< +inf means no truncation
  std::vector<std::vector<double>> eigenvalues;  ///< [level][index]
  double max_residual = 0.0;
  double worst_decrease = 0.0;                   ///< max over i, j of lambda_i(k_j) - lambda_i(k_{j+1})
  bool monotone = false;                         ///< worst_decrease <= 1e-6
};

/// Eigenvalues of -Laplacian + min(V, k) for increasing truncation levels k.
MonotonicityTable truncation_monotonicity(const PotentialExpr& v, std::span<const double> levels, const Grid& grid,
                                          const EigenSolveOptions& options);

}  // namespace speclab
