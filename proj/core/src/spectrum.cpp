#include "speclab/spectrum.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <limits>

#include "speclab/error.hpp"
#include "speclab/lanczos.hpp"

namespace speclab {

namespace {

void finish(const SparseOperator& h, const Eigen::MatrixXd& vectors, EigenSolve& out) {
  // Rayleigh-Ritz on the span of the vectors, then explicit residuals on H.
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(vectors);
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(vectors.rows(), vectors.cols());
  const Eigen::MatrixXd hq = h.matrix * q;
  Eigen::MatrixXd proj = q.transpose() * hq;
  proj = 0.5 * (proj + proj.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(proj);
  const Eigen::MatrixXd x = q * eig.eigenvectors();
  const Eigen::MatrixXd hx = hq * eig.eigenvectors();
  out.eigenvalues.clear();
  out.residuals.clear();
  for (Eigen::Index i = 0; i < x.cols(); ++i) {
    out.eigenvalues.push_back(eig.eigenvalues()(i));
    out.residuals.push_back((hx.col(i) - eig.eigenvalues()(i) * x.col(i)).norm() / x.col(i).norm());
  }
}

}  // namespace

EigenSolve lowest_eigenvalues(const SparseOperator& h, const EigenSolveOptions& options) {
  if (!h.symmetric) throw DomainError("lowest_eigenvalues: operator is not flagged symmetric");
  const Eigen::Index n = h.dimension();
  LanczosOptions lopts;
  lopts.k = options.k;
  lopts.max_matvecs = options.max_matvecs;
  lopts.seed = options.seed;
  lopts.keep_vectors = true;
  EigenSolve out;
  if (!options.shift_invert) {
    lopts.which = LanczosOptions::Which::Smallest;
    lopts.tolerance = 1e-9;
    const LanczosResult res = lanczos_extremal(h.as_map(), n, lopts);
    out.matvecs = res.matvecs;
    out.converged = res.converged;
    out.status = res.status;
    finish(h, res.eigenvectors, out);
    return out;
  }

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
  const Eigen::SparseMatrix<double> col_major = h.matrix;
  ldlt.compute(col_major);
  if (ldlt.info() != Eigen::Success) throw NumericalError("lowest_eigenvalues: sparse LDL^T factorization failed");
  if ((ldlt.vectorD().array() <= 0.0).any()) {
    throw NumericalError("lowest_eigenvalues: operator is not positive definite");
  }
  LinearMap inverse = [&](std::span<const double> x, std::span<double> y) {
    Eigen::Map<const Eigen::VectorXd> xv(x.data(), static_cast<Eigen::Index>(x.size()));
    Eigen::Map<Eigen::VectorXd> yv(y.data(), static_cast<Eigen::Index>(y.size()));
    yv = ldlt.solve(xv);
  };
  lopts.which = LanczosOptions::Which::Largest;
  lopts.tolerance = 1e-12;
  lopts.check_symmetry = false;
  const LanczosResult res = lanczos_extremal(inverse, n, lopts);
  out.matvecs = res.matvecs;
  out.converged = res.converged;
  out.status = res.status;
  Eigen::MatrixXd vectors = res.eigenvectors;
  for (int step = 0; step < 2; ++step) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(vectors);
    const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(vectors.rows(), vectors.cols());
    for (Eigen::Index i = 0; i < q.cols(); ++i) vectors.col(i) = ldlt.solve(q.col(i));
    out.matvecs += static_cast<int>(q.cols());
  }
  finish(h, vectors, out);
  return out;
}

SpectrumReport spectrum_study(const PotentialExpr& v, const SpectrumOptions& options) {
  if (options.schedule.size() < 2) throw DomainError("spectrum_study needs at least two box sizes");
  if (options.gap_count < 2) throw DomainError("spectrum_study: gap_count must be >= 2");
  SpectrumReport report;
  report.potential = v.text();
  report.dimension = v.dimension();
  report.spacing = options.spacing;
  report.schedule = options.schedule;
  report.count_at = options.count_at;
  report.converged = true;
  for (double half_width : options.schedule) {
    const Grid grid(v.dimension(), half_width, options.spacing);
    const SparseOperator h = hamiltonian(grid, v);
    const EigenSolve solve = lowest_eigenvalues(h, options.solver);
    report.converged = report.converged && solve.converged;
    if (!solve.converged) report.status = "L=" + std::to_string(half_width) + ": " + solve.status;
    report.eigenvalues.push_back(solve.eigenvalues);
    report.residuals.push_back(solve.residuals);
    for (double r : solve.residuals) report.max_residual = std::max(report.max_residual, r);

    std::vector<int> counts;
    for (double lambda : options.count_at) {
      counts.push_back(static_cast<int>(
          std::count_if(solve.eigenvalues.begin(), solve.eigenvalues.end(), [&](double e) { return e <= lambda; })));
    }
    report.counting.push_back(std::move(counts));

    std::vector<double> above;
    for (double e : solve.eigenvalues) {
      if (e >= options.gap_threshold && static_cast<int>(above.size()) < options.gap_count) above.push_back(e);
    }
    report.mean_gaps.push_back(above.size() >= 2 ? (above.back() - above.front()) / static_cast<double>(above.size() - 1)
                                                 : std::numeric_limits<double>::quiet_NaN());
  }
  if (report.status.empty()) report.status = "converged";
  for (std::size_t j = 0; j + 1 < report.eigenvalues.size(); ++j) {
    const auto& a = report.eigenvalues[j];
    const auto& b = report.eigenvalues[j + 1];
    std::vector<double> drift;
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) drift.push_back(std::abs(b[i] - a[i]) / std::abs(b[i]));
    report.drift.push_back(std::move(drift));
  }
  const auto& last = report.drift.back();
  report.max_drift_last = last.empty() ? 0.0 : *std::max_element(last.begin(), last.end());
  report.stabilized = report.max_drift_last <= options.drift_tolerance;
  return report;
}

MonotonicityTable truncation_monotonicity(const PotentialExpr& v, std::span<const double> levels, const Grid& grid,
                                          const EigenSolveOptions& options) {
  if (levels.empty()) throw DomainError("truncation_monotonicity needs at least one level");
  for (std::size_t j = 1; j < levels.size(); ++j) {
    if (!(levels[j] > levels[j - 1])) throw DomainError("truncation levels must be increasing");
  }
  MonotonicityTable table;
  table.levels.assign(levels.begin(), levels.end());
  const std::vector<double> values = grid.sample(v);
  for (double level : levels) {
    std::vector<double> capped = values;
    for (double& x : capped) x = std::min(x, level);
    const EigenSolve solve = lowest_eigenvalues(hamiltonian(grid, capped), options);
    for (double r : solve.residuals) table.max_residual = std::max(table.max_residual, r);
    table.eigenvalues.push_back(solve.eigenvalues);
  }
  for (std::size_t j = 0; j + 1 < table.eigenvalues.size(); ++j) {
    for (std::size_t i = 0; i < table.eigenvalues[j].size(); ++i) {
      table.worst_decrease = std::max(table.worst_decrease, table.eigenvalues[j][i] - table.eigenvalues[j + 1][i]);
    }
  }
  table.monotone = table.worst_decrease <= 1e-6;
  return table;
}

}  // namespace speclab
