#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "speclab/error.hpp"
#include "speclab/grid.hpp"
#include "speclab/potential.hpp"
#include "test_support.hpp"

using namespace speclab;

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::MatrixXd dense(const SparseOperator& op) { return Eigen::MatrixXd(op.matrix); }

}  // namespace

TEST(Grid, Layout) {
  const Grid g(2, 1.0, 0.5);
  EXPECT_EQ(g.per_axis(), 3);
  EXPECT_EQ(g.size(), 9);
  EXPECT_DOUBLE_EQ(g.weight(), 0.25);
  EXPECT_DOUBLE_EQ(g.coordinate(0), -0.5);
  std::vector<double> p(2);
  g.point(5, p);
  EXPECT_DOUBLE_EQ(p[0], 0.5);
  EXPECT_DOUBLE_EQ(p[1], 0.0);
  const auto idx = g.indices(5);
  EXPECT_EQ(idx[0], 2);
  EXPECT_EQ(idx[1], 1);
  EXPECT_EQ(g.distance2_units(0, 8), 8);
  EXPECT_TRUE(within_radius(g, 8, std::sqrt(8.0) * 0.5));
  EXPECT_FALSE(within_radius(g, 9, std::sqrt(8.0) * 0.5));
}

TEST(Grid, Validation) {
  EXPECT_THROW(Grid(4, 1.0, 0.5), DimensionError);
  EXPECT_THROW(Grid(2, 1.0, 0.3), DomainError);
  EXPECT_EQ(Grid(2, 1.0, 1.0).size(), 1);
  EXPECT_THROW(Grid(2, -1.0, 0.5), DomainError);
  EXPECT_THROW(Grid(3, 20.0, 0.01), BudgetError);
  EXPECT_NO_THROW(Grid(2, 8.0, 0.1));
  EXPECT_EQ(Grid(2, 8.0, 0.1).size(), 159 * 159);
}

TEST(Laplacian, OneDimensionalSineModes) {
  // L = 0.5, h = 1/(N+1): eigenvalues 4 sin^2(j pi h / 2) / h^2
  const int n = 31;
  const double h = 1.0 / (n + 1);
  const auto lap = discrete_laplacian(Grid(1, 0.5, h));
  EXPECT_TRUE(lap.symmetric);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(dense(lap));
  for (int j = 1; j <= n; ++j) {
    const double exact = 4.0 * std::pow(std::sin(j * kPi * h / 2.0), 2) / (h * h);
    EXPECT_NEAR(eig.eigenvalues()(j - 1), exact, 1e-10 * exact);
  }
}

TEST(Laplacian, StencilAnnihilatesConstantsInTheInterior) {
  const Grid g(2, 2.0, 0.25);
  const auto lap = discrete_laplacian(g);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(g.size());
  const Eigen::VectorXd out = lap.matrix * ones;
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    const auto idx = g.indices(i);
    const bool boundary = idx[0] == 0 || idx[1] == 0 || idx[0] == g.per_axis() - 1 || idx[1] == g.per_axis() - 1;
    if (!boundary) EXPECT_EQ(out(i), 0.0);
    else EXPECT_GT(out(i), 0.0);
  }
}

TEST(Laplacian, SymmetricPositiveSemidefinite) {
  const auto lap = discrete_laplacian(Grid(3, 1.0, 0.25));
  const Eigen::MatrixXd m = dense(lap);
  EXPECT_EQ((m - m.transpose()).cwiseAbs().maxCoeff(), 0.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
  EXPECT_GT(eig.eigenvalues()(0), 0.0);
  // separable: three copies of the 1-D lowest mode
  const double h = 0.25, one = 4.0 * std::pow(std::sin(kPi * h / 4.0), 2) / (h * h);
  EXPECT_NEAR(eig.eigenvalues()(0), 3 * one, 1e-10);
}

TEST(Hamiltonian, AddsPotentialOnTheDiagonal) {
  const Grid g(2, 2.0, 0.5);
  const auto zero = hamiltonian(g, parse_potential("0", 2));
  EXPECT_EQ(dense(zero), dense(discrete_laplacian(g)));
  const auto v = parse_potential("x1^2*x2^2", 2);
  const auto h = hamiltonian(g, v);
  const Eigen::MatrixXd diff = dense(h) - dense(discrete_laplacian(g));
  const auto values = g.sample(v);
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    EXPECT_EQ(diff(i, i), values[static_cast<std::size_t>(i)]);
    for (Eigen::Index j = 0; j < g.size(); ++j) {
      if (j != i) EXPECT_EQ(diff(i, j), 0.0);
    }
  }
  const auto capped = hamiltonian(g, v, 1.0);
  const Eigen::MatrixXd d2 = dense(capped) - dense(discrete_laplacian(g));
  for (Eigen::Index i = 0; i < g.size(); ++i) EXPECT_EQ(d2(i, i), std::min(values[static_cast<std::size_t>(i)], 1.0));
}

TEST(Hamiltonian, RejectsNegativePotential) {
  EXPECT_THROW(hamiltonian(Grid(1, 2.0, 0.5), parse_potential("x1^2 - 1", 1)), DomainError);
  EXPECT_THROW(hamiltonian(Grid(2, 2.0, 0.5), parse_potential("x1^2", 1)), DimensionError);
}

TEST(Grid, SublevelMask) {
  const Grid g(2, 3.0, 1.0);
  const auto mask = g.sublevel_mask(parse_potential("x1^2*x2^2", 2), 1.0);
  std::vector<double> p(2);
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    g.point(i, p);
    EXPECT_EQ(mask[static_cast<std::size_t>(i)] != 0, p[0] * p[0] * p[1] * p[1] < 1.0);
  }
}

TEST(SparseOperator, MapMatchesMatrix) {
  const Grid g(2, 1.0, 0.25);
  const auto h = hamiltonian(g, parse_potential("x1^2 + x2^4", 2));
  test::Gen gen(601);
  const Eigen::VectorXd x = gen.gaussian(g.size(), 1);
  Eigen::VectorXd y(g.size());
  h.as_map()(std::span<const double>(x.data(), x.size()), std::span<double>(y.data(), y.size()));
  EXPECT_LE((y - h.matrix * x).norm(), 1e-12 * y.norm());
}
