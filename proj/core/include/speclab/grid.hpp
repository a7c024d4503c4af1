#pragma once

#include <Eigen/Sparse>
#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "speclab/lanczos.hpp"
#include "speclab/potential.hpp"

namespace speclab {

/// Interior Dirichlet nodes of the box [-L, L]^nu: x = -L + i h, i = 1 .. 2L/h - 1
/// per axis, axis 0 varying fastest. Quadrature weight w = h^nu.
class Grid {
 public:
  static constexpr Eigen::Index kSparseBudget = 4'000'000;

  Grid() = default;
  Grid(int nu, double half_width, double spacing);

  int dimension() const noexcept { return nu_; }
  double half_width() const noexcept { return half_width_; }
  double spacing() const noexcept { return spacing_; }
  double weight() const noexcept { return weight_; }
  Eigen::Index per_axis() const noexcept { return per_axis_; }
  Eigen::Index size() const noexcept { return size_; }

  double coordinate(Eigen::Index axis_index) const noexcept {
    return -half_width_ + static_cast<double>(axis_index + 1) * spacing_;
  }
  std::array<Eigen::Index, 3> indices(Eigen::Index point) const noexcept;
  void point(Eigen::Index index, std::span<double> out) const noexcept;
  /// |x_a - x_b|^2 / h^2, exact in integers.
  std::int64_t distance2_units(Eigen::Index a, Eigen::Index b) const noexcept;

  /// V at every node; DomainError if any value is below -1e-9.
  std::vector<double> sample(const PotentialExpr& v) const;
  /// 1 where 0 <= V < M.
  std::vector<char> sublevel_mask(const PotentialExpr& v, double level) const;

  bool operator==(const Grid& other) const noexcept {
    return nu_ == other.nu_ && half_width_ == other.half_width_ && spacing_ == other.spacing_;
  }

 private:
  int nu_ = 0;
  double half_width_ = 0.0;
  double spacing_ = 0.0;
  double weight_ = 0.0;
  Eigen::Index per_axis_ = 0;
  Eigen::Index size_ = 0;
};

/// Whether |x_a - x_b| <= radius, decided on integer offsets with a relative slack
/// of 1e-12 so that triangle-inequality arguments survive rounding.
bool within_radius(const Grid& grid, std::int64_t distance2_units, double radius) noexcept;

struct SparseOperator {
  Eigen::SparseMatrix<double, Eigen::RowMajor> matrix;
  bool symmetric = false;

  Eigen::Index dimension() const noexcept { return matrix.rows(); }
  LinearMap as_map() const;
};

/// Standard (2 nu + 1)-point Dirichlet stencil: 2 nu / h^2 on the diagonal, -1/h^2 to neighbours.
SparseOperator discrete_laplacian(const Grid& grid);

/// -Laplacian + diag(min(V, cap)). V is clamped at 0 after the -1e-9 guard.
SparseOperator hamiltonian(const Grid& grid, const PotentialExpr& v,
                           double cap = std::numeric_limits<double>::infinity());

/// -Laplacian + diag(values) for a precomputed nonnegative potential sample.
SparseOperator hamiltonian(const Grid& grid, std::span<const double> values);

}  // namespace speclab
