#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "speclab/error.hpp"
#include "speclab/grid.hpp"
#include "speclab/potential.hpp"
#include "speclab/spectrum.hpp"
#include "test_support.hpp"

using namespace speclab;

namespace {

constexpr double kPi = std::numbers::pi;

EigenSolve solve(const SparseOperator& h, int k, bool shift_invert = true) {
  EigenSolveOptions opts;
  opts.k = k;
  opts.shift_invert = shift_invert;
  return lowest_eigenvalues(h, opts);
}

}  // namespace

TEST(LowestEigenvalues, DirichletLaplacianIsExact) {
  const double h = 1.0 / 200.0;
  const auto r = solve(discrete_laplacian(Grid(1, 0.5, h)), 5);
  ASSERT_TRUE(r.converged) << r.status;
  for (int j = 1; j <= 5; ++j) {
    const double exact = 4.0 * std::pow(std::sin(j * kPi * h / 2.0), 2) / (h * h);
    EXPECT_NEAR(r.eigenvalues[static_cast<std::size_t>(j - 1)], exact, 1e-10 * exact);
    EXPECT_LE(r.residuals[static_cast<std::size_t>(j - 1)], 1e-6);
  }
}

TEST(LowestEigenvalues, TwoDimensionalBox) {
  // box [-L, L]^2: lowest Dirichlet eigenvalue 2 (pi / 2L)^2
  const double L = kPi / 2;
  const double h = L / 50;
  const auto r = solve(discrete_laplacian(Grid(2, L, h)), 3);
  ASSERT_TRUE(r.converged);
  EXPECT_LE(std::abs(r.eigenvalues[0] - 2.0) / 2.0, 0.01);
  EXPECT_LE(std::abs(r.eigenvalues[1] - 5.0) / 5.0, 0.01);
  EXPECT_NEAR(r.eigenvalues[1], r.eigenvalues[2], 1e-8);
}

TEST(LowestEigenvalues, PlainLanczosAgreesWithShiftInvert) {
  const Grid g(2, 3.0, 0.2);
  const auto h = hamiltonian(g, parse_potential("x1^2 + 2*x2^2", 2));
  const auto a = solve(h, 4, true);
  EigenSolveOptions plain;
  plain.k = 4;
  plain.shift_invert = false;
  plain.max_matvecs = 60000;
  const auto b = lowest_eigenvalues(h, plain);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(a.eigenvalues[static_cast<std::size_t>(i)], b.eigenvalues[static_cast<std::size_t>(i)], 1e-6);
}

TEST(LowestEigenvalues, HarmonicOscillator) {
  const auto r = solve(hamiltonian(Grid(1, 20.0, 0.02), parse_potential("x1^2", 1)), 5);
  ASSERT_TRUE(r.converged);
  for (int n = 0; n < 5; ++n) {
    EXPECT_LE(std::abs(r.eigenvalues[static_cast<std::size_t>(n)] - (2 * n + 1)) / (2 * n + 1), 0.01);
    EXPECT_LE(r.residuals[static_cast<std::size_t>(n)], 1e-6);
  }
}

TEST(LowestEigenvalues, HarmonicOscillatorCoarseDenseCrossCheck) {
  const Grid g(1, 10.0, 0.1);
  const auto h = hamiltonian(g, parse_potential("x1^2", 1));
  const auto r = solve(h, 5);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> dense{Eigen::MatrixXd(h.matrix)};
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(r.eigenvalues[static_cast<std::size_t>(i)], dense.eigenvalues()(i), 1e-9);
}

TEST(LowestEigenvalues, DirichletConsistencyUnderRefinement) {
  // halving h moves lambda_n by about (h^2/12)(3/4)(2n^2 + 2n + 1)
  const auto v = parse_potential("x1^2", 1);
  const auto coarse = solve(hamiltonian(Grid(1, 10.0, 0.1), v), 5);
  const auto fine = solve(hamiltonian(Grid(1, 10.0, 0.05), v), 5);
  for (int n = 0; n < 5; ++n) {
    const double predicted = (0.01 / 12.0) * 0.75 * (2.0 * n * n + 2.0 * n + 1.0);
    const double change = std::abs(coarse.eigenvalues[static_cast<std::size_t>(n)] - fine.eigenvalues[static_cast<std::size_t>(n)]);
    EXPECT_LE(change, 4 * predicted) << "n=" << n;
    EXPECT_GT(change, 0.25 * predicted);
  }
}

TEST(LowestEigenvalues, CrossPotentialIsPositive) {
  const auto r = solve(hamiltonian(Grid(2, 4.0, 0.2), parse_potential("x1^2*x2^2", 2)), 3);
  ASSERT_TRUE(r.converged);
  EXPECT_GT(r.eigenvalues[0], 0.0);
}

TEST(MinMax, NonnegativeDiagonalNeverLowersEigenvalues) {
  const Grid g(2, 2.0, 0.25);
  const auto base_values = g.sample(parse_potential("x1^2*x2^2", 2));
  const auto base = solve(hamiltonian(g, base_values), 5);
  test::Gen gen(801);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> bumped = base_values;
    for (double& v : bumped) v += gen.uniform() < 0.3 ? gen.uniform(0.0, 5.0) : 0.0;
    const auto r = solve(hamiltonian(g, bumped), 5);
    for (int i = 0; i < 5; ++i) {
      EXPECT_GE(r.eigenvalues[static_cast<std::size_t>(i)], base.eigenvalues[static_cast<std::size_t>(i)] - 1e-8)
          << "trial " << trial << " i " << i;
    }
  }
}

TEST(SpectrumStudy, HarmonicOscillatorStabilizes) {
  SpectrumOptions opts;
  opts.schedule = {10, 20};
  opts.spacing = 0.02;
  opts.count_at = {2, 6, 100};
  opts.solver.k = 5;
  const auto r = spectrum_study(parse_potential("x1^2", 1), opts);
  EXPECT_TRUE(r.stabilized);
  EXPECT_TRUE(r.converged);
  EXPECT_LE(r.max_residual, 1e-6);
  for (int n = 0; n < 5; ++n) {
    EXPECT_LE(std::abs(r.eigenvalues[1][static_cast<std::size_t>(n)] - (2 * n + 1)) / (2 * n + 1), 0.01);
  }
  ASSERT_EQ(r.counting.size(), 2u);
  EXPECT_EQ(r.counting[1][0], 1);
  EXPECT_EQ(r.counting[1][1], 3);
  EXPECT_EQ(r.counting[1][2], 5);
  ASSERT_EQ(r.drift.size(), 1u);
  for (double d : r.drift[0]) EXPECT_LE(d, 0.01);
}

TEST(SpectrumStudy, CrossPotentialStabilizes) {
  SpectrumOptions opts;
  opts.schedule = {6, 8};
  opts.spacing = 0.1;
  opts.solver.k = 5;
  const auto r = spectrum_study(parse_potential("x1^2*x2^2", 2), opts);
  EXPECT_TRUE(r.stabilized);
  EXPECT_LE(r.max_residual, 1e-6);
  EXPECT_LE(r.max_drift_last, 0.01);
  for (const auto& row : r.eigenvalues) {
    for (std::size_t i = 1; i < row.size(); ++i) EXPECT_LE(row[i - 1], row[i]);
  }
}

TEST(SpectrumStudy, StripGapsCollapse) {
  SpectrumOptions opts;
  opts.schedule = {8, 16};
  opts.spacing = 0.2;
  opts.solver.k = 20;
  const auto r = spectrum_study(parse_potential("x1^2", 2), opts);
  ASSERT_EQ(r.mean_gaps.size(), 2u);
  EXPECT_GE(r.mean_gaps[0] / r.mean_gaps[1], 2.0);
  EXPECT_FALSE(r.stabilized);
}

TEST(SpectrumStudy, Preconditions) {
  SpectrumOptions opts;
  opts.schedule = {8};
  EXPECT_THROW(spectrum_study(parse_potential("x1^2", 1), opts), DomainError);
}

TEST(TruncationMonotonicity, RowsIncreaseWithLevel) {
  const Grid g(1, 10.0, 0.05);
  const double inf = std::numeric_limits<double>::infinity();
  const std::vector<double> levels{1, 10, 100, inf};
  EigenSolveOptions opts;
  opts.k = 3;
  const auto t = truncation_monotonicity(parse_potential("x1^2", 1), levels, g, opts);
  EXPECT_TRUE(t.monotone);
  ASSERT_EQ(t.eigenvalues.size(), 4u);
  for (std::size_t j = 1; j < 4; ++j) EXPECT_GE(t.eigenvalues[j][0], t.eigenvalues[j - 1][0] - 1e-6);
  EXPECT_LT(t.eigenvalues[0][0], 1.0);
  EXPECT_NEAR(t.eigenvalues[3][0], 1.0, 0.01);

  const auto cross = truncation_monotonicity(parse_potential("x1^2*x2^2", 2), std::vector<double>{1, 4, 16, inf},
                                             Grid(2, 4.0, 0.2), opts);
  EXPECT_TRUE(cross.monotone);
  EXPECT_LE(cross.worst_decrease, 1e-6);
}

TEST(TruncationMonotonicity, InactiveTruncationGivesIdenticalRows) {
  const Grid g(1, 1.0, 0.05);
  EigenSolveOptions opts;
  opts.k = 3;
  const auto t = truncation_monotonicity(parse_potential("x1^2", 1), std::vector<double>{2, 5, 50}, g, opts);
  for (std::size_t j = 1; j < t.eigenvalues.size(); ++j) {
    for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(t.eigenvalues[j][i], t.eigenvalues[0][i], 1e-9);
  }
  EXPECT_THROW(truncation_monotonicity(parse_potential("x1^2", 1), std::vector<double>{5, 2}, g, opts), DomainError);
}
