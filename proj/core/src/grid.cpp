#include "speclab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "speclab/error.hpp"

namespace speclab {

Grid::Grid(int nu, double half_width, double spacing) : nu_(nu), half_width_(half_width), spacing_(spacing) {
  if (nu < 1 || nu > 3) throw DimensionError("grid dimension must be 1, 2 or 3");
  if (!(half_width > 0.0) || !(spacing > 0.0) || !std::isfinite(half_width) || !std::isfinite(spacing)) {
    throw DomainError("grid half-width and spacing must be positive");
  }
  const double cells = 2.0 * half_width / spacing;
  const double rounded = std::round(cells);
  if (std::abs(cells - rounded) > 1e-9 * std::max(1.0, cells)) {
    throw DomainError("grid: 2L/h must be an integer (got " + std::to_string(cells) + ")");
  }
  if (rounded < 2.0) throw DomainError("grid: need at least one interior node per axis");
  per_axis_ = static_cast<Eigen::Index>(rounded) - 1;
  double count = 1.0;
  for (int i = 0; i < nu; ++i) count *= static_cast<double>(per_axis_);
  if (count > static_cast<double>(kSparseBudget)) {
    throw BudgetError("grid has " + std::to_string(static_cast<long long>(count)) +
                      " points; the sparse budget is 4e6");
  }
  size_ = static_cast<Eigen::Index>(count);
  weight_ = std::pow(spacing, nu);
}

std::array<Eigen::Index, 3> Grid::indices(Eigen::Index point) const noexcept {
  std::array<Eigen::Index, 3> out{0, 0, 0};
  for (int i = 0; i < nu_; ++i) {
    out[static_cast<std::size_t>(i)] = point % per_axis_;
    point /= per_axis_;
  }
  return out;
}

void Grid::point(Eigen::Index index, std::span<double> out) const noexcept {
  const auto idx = indices(index);
  for (int i = 0; i < nu_; ++i) out[static_cast<std::size_t>(i)] = coordinate(idx[static_cast<std::size_t>(i)]);
}

std::int64_t Grid::distance2_units(Eigen::Index a, Eigen::Index b) const noexcept {
  const auto ia = indices(a);
  const auto ib = indices(b);
  std::int64_t d2 = 0;
  for (int i = 0; i < nu_; ++i) {
    const std::int64_t d = ia[static_cast<std::size_t>(i)] - ib[static_cast<std::size_t>(i)];
    d2 += d * d;
  }
  return d2;
}

bool within_radius(const Grid& grid, std::int64_t distance2_units, double radius) noexcept {
  const double r_units = radius / grid.spacing();
  return static_cast<double>(distance2_units) <= r_units * r_units * (1.0 + 1e-12);
}

std::vector<double> Grid::sample(const PotentialExpr& v) const {
  if (v.dimension() != nu_) throw DimensionError("potential dimension does not match the grid");
  std::vector<double> values(static_cast<std::size_t>(size_));
  std::vector<double> x(static_cast<std::size_t>(nu_));
  for (Eigen::Index i = 0; i < size_; ++i) {
    point(i, x);
    values[static_cast<std::size_t>(i)] = v.evaluate_nonnegative(x, 1e-9);
  }
  return values;
}

std::vector<char> Grid::sublevel_mask(const PotentialExpr& v, double level) const {
  const std::vector<double> values = sample(v);
  std::vector<char> mask(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) mask[i] = values[i] < level ? 1 : 0;
  return mask;
}

LinearMap SparseOperator::as_map() const {
  return [this](std::span<const double> x, std::span<double> y) {
    Eigen::Map<const Eigen::VectorXd> xv(x.data(), static_cast<Eigen::Index>(x.size()));
    Eigen::Map<Eigen::VectorXd> yv(y.data(), static_cast<Eigen::Index>(y.size()));
    yv.noalias() = matrix * xv;
  };
}

SparseOperator hamiltonian(const Grid& grid, std::span<const double> values) {
  if (static_cast<Eigen::Index>(values.size()) != grid.size()) {
    throw DimensionError("potential sample length does not match the grid");
  }
  const int nu = grid.dimension();
  const double inv_h2 = 1.0 / (grid.spacing() * grid.spacing());
  const Eigen::Index n = grid.per_axis();
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(grid.size()) * static_cast<std::size_t>(2 * nu + 1));
  for (Eigen::Index p = 0; p < grid.size(); ++p) {
    const double v = values[static_cast<std::size_t>(p)];
    if (std::isnan(v) || v < -1e-9) throw DomainError("hamiltonian: negative potential value on the grid");
    triplets.emplace_back(p, p, 2.0 * nu * inv_h2 + std::max(0.0, v));
    const auto idx = grid.indices(p);
    Eigen::Index stride = 1;
    for (int axis = 0; axis < nu; ++axis) {
      if (idx[static_cast<std::size_t>(axis)] > 0) triplets.emplace_back(p, p - stride, -inv_h2);
      if (idx[static_cast<std::size_t>(axis)] + 1 < n) triplets.emplace_back(p, p + stride, -inv_h2);
      stride *= n;
    }
  }
  SparseOperator op;
  op.matrix.resize(grid.size(), grid.size());
  op.matrix.setFromTriplets(triplets.begin(), triplets.end());
  op.matrix.makeCompressed();
  op.symmetric = true;
  return op;
}

SparseOperator discrete_laplacian(const Grid& grid) {
  const std::vector<double> zero(static_cast<std::size_t>(grid.size()), 0.0);
  return hamiltonian(grid, zero);
}

SparseOperator hamiltonian(const Grid& grid, const PotentialExpr& v, double cap) {
  std::vector<double> values = grid.sample(v);
  for (double& x : values) x = std::min(x, cap);
  return hamiltonian(grid, values);
}

}  // namespace speclab
