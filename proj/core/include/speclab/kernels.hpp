#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "speclab/grid.hpp"
#include "speclab/potential.hpp"

namespace speclab {

/// Dense kernel K(x_i, y_j) on a grid. The operator it represents is w K, so
/// composition is w K1 K2 and HS^2 = w^2 sum K_ij^2.
struct KernelMatrix {
  static constexpr Eigen::Index kDenseBudget = 8'000;

  Grid grid;
  Eigen::MatrixXd kernel;
  double heat_time = 0.0;    ///< s of the Gaussian it is dominated by; 0 if none
  std::string potential;     ///< potential text for C-type kernels

  double weight() const noexcept { return grid.weight(); }
  Eigen::MatrixXd operator_matrix() const { return grid.weight() * kernel; }
  double hs_norm() const { return grid.weight() * kernel.norm(); }
};

KernelMatrix compose(const KernelMatrix& a, const KernelMatrix& b);

/// f(z) = (4 pi s)^(-nu/2) exp(-|z|^2 / 4s) as a function of |z|^2.
double heat_kernel(int nu, double s, double r2);
/// ||f||_2^2 = (2 pi s)^(nu/2) (4 pi s)^(-nu).
double gaussian_l2_squared(int nu, double s);
/// Integral of f outside the ball of radius R.
double gaussian_tail_mass(int nu, double s, double radius);
/// w sum_i f(x_i - x_c)^2 with x_c the node nearest the origin.
double discrete_gaussian_l2_squared(const Grid& grid, double s);

/// Largest singular value; Gram-matrix Lanczos for wide inputs, scaled so tiny
/// norms keep full relative accuracy.
double spectral_norm(const Eigen::MatrixXd& a, std::uint64_t seed = 1);

enum class HeatMode { GaussianKernel, ExpmLaplacian };

/// Gaussian mode: K_ij = f(x_i - x_j). Expm mode: exp(s Delta_h) from the 1-D
/// eigendecomposition and a Kronecker product, stored as a kernel (divided by w).
KernelMatrix heat_matrix(const Grid& grid, double s, HeatMode mode = HeatMode::GaussianKernel);

/// Operator-norm discrepancy of the two heat modes on vectors supported in
/// |x|_inf <= interior, relative to the Gaussian operator on the same vectors.
double heat_mode_discrepancy(const Grid& grid, double s, double interior);

/// C = e^{s Delta} e^{-V}: kernel f(x_i - x_j) e^{-V(x_j)}.
KernelMatrix compose_C(const Grid& grid, double s, const PotentialExpr& v);

struct BoundCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double tolerance = 0.0;  ///< pass iff lhs <= rhs + tolerance
  bool pass = false;

  static BoundCheck make(std::string name, double lhs, double rhs, double tolerance);
};

struct CompactnessDiagnostics {
  std::vector<double> singular_values;
  double hs_norm = 0.0;
  std::vector<BoundCheck> checks;
  double constant = 0.0;  ///< measured c (domination) when applicable

  bool all_pass() const;
};

struct SplitTail {
  std::vector<char> mask;  ///< Omega_m on the grid
  double level = 0.0;
  double norm_c = 0.0;
  double norm_c_m = 0.0;
  double norm_d_m = 0.0;   ///< equals ||C - C_m||
  double bound = 0.0;      ///< e^{-m}
  BoundCheck check;

  Eigen::MatrixXd c_m(const KernelMatrix& c) const;
  Eigen::MatrixXd d_m(const KernelMatrix& c) const;
};

/// C_m = C chi(Omega_m), D_m = C chi(complement); checks ||D_m|| <= e^{-m} (1 + 1e-3).
SplitTail split_tail(const KernelMatrix& c, const PotentialExpr& v, double level, std::uint64_t seed = 1);

/// Domination by the Gaussian, row/column sup bounds and HS bounds for K chi.
CompactnessDiagnostics hs_diagnostics(const KernelMatrix& k, const std::vector<char>& mask);

struct TruncatedConvolution {
  KernelMatrix f_r;
  double radius = 0.0;
  double lattice_tail = 0.0;   ///< w sum over lattice displacements |z| > R inside the box range
  double analytic_tail = 0.0;  ///< Gaussian mass outside the displacement cube
  double tail = 0.0;
  double difference_norm = 0.0;  ///< measured ||heat - F_R||
  BoundCheck check;              ///< difference_norm <= tail * 1.01
};

TruncatedConvolution truncated_convolution(const Grid& grid, double s, double radius, std::uint64_t seed = 1);

/// Copy of k with columns outside the mask zeroed (k chi as a kernel).
KernelMatrix restrict_columns(const KernelMatrix& k, const std::vector<char>& mask);

/// D(x, y) = chi(x) [|x - y| <= 2R] chi(y), 0/1 valued, no weight.
KernelMatrix d_kernel(const Grid& grid, const PotentialExpr& v, double level, double radius);

/// Product kernel of C* C against D: smallest c with (C*C)(x,y) <= c D(x,y),
/// plus support containment. A support violation above 1e-14 throws NumericalError.
CompactnessDiagnostics domination_check(const KernelMatrix& c_mr, const KernelMatrix& d);

/// Smallest integer k with 2k - 2 > r.
int default_power(double r);

/// D^k with weight-aware composition against Q_{2kR}(x-y) (omega_y^{2kR})^{k-1} chi(y),
/// omega by grid counting; HS(D^k) against w sum_y omega_y^{2k-1}.
CompactnessDiagnostics kernel_power_bound(const KernelMatrix& d, int k, const PotentialExpr& v, double level,
                                          double radius);

}  // namespace speclab
