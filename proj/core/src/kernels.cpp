#include "speclab/kernels.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "speclab/error.hpp"
#include "speclab/lanczos.hpp"
#include "speclab/linalg.hpp"
#include "speclab/random.hpp"

namespace speclab {

namespace {

void check_dense_budget(const Grid& grid) {
  if (grid.size() > KernelMatrix::kDenseBudget) {
    throw BudgetError("dense kernel needs " + std::to_string(grid.size()) + " points; the dense budget is " +
                      std::to_string(KernelMatrix::kDenseBudget));
  }
}

std::vector<Eigen::Index> indices_where(const std::vector<char>& mask, bool value) {
  std::vector<Eigen::Index> out;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if ((mask[i] != 0) == value) out.push_back(static_cast<Eigen::Index>(i));
  }
  return out;
}

Eigen::MatrixXd gather_columns(const Eigen::MatrixXd& m, const std::vector<Eigen::Index>& cols, double scale) {
  Eigen::MatrixXd out(m.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = scale * m.col(cols[j]);
  return out;
}

// f(h^2 d2) for every integer d2 up to the largest squared offset on the grid.
std::vector<double> kernel_table(const Grid& grid, double s) {
  const auto n = grid.per_axis();
  const auto max_d2 = static_cast<std::size_t>(grid.dimension()) * static_cast<std::size_t>((n - 1) * (n - 1));
  std::vector<double> table(max_d2 + 1);
  const double h2 = grid.spacing() * grid.spacing();
  for (std::size_t d2 = 0; d2 <= max_d2; ++d2) table[d2] = heat_kernel(grid.dimension(), s, h2 * static_cast<double>(d2));
  return table;
}

}  // namespace

KernelMatrix compose(const KernelMatrix& a, const KernelMatrix& b) {
  if (!(a.grid == b.grid)) throw DimensionError("compose: kernels live on different grids");
  KernelMatrix out;
  out.grid = a.grid;
  out.kernel = a.weight() * (a.kernel * b.kernel);
  out.heat_time = 0.0;
  return out;
}

double heat_kernel(int nu, double s, double r2) {
  return std::pow(4.0 * std::numbers::pi * s, -0.5 * nu) * std::exp(-r2 / (4.0 * s));
}

double gaussian_l2_squared(int nu, double s) {
  return std::pow(2.0 * std::numbers::pi * s, 0.5 * nu) * std::pow(4.0 * std::numbers::pi * s, -static_cast<double>(nu));
}

double gaussian_tail_mass(int nu, double s, double radius) {
  if (radius <= 0.0) return 1.0;
  const double a = radius / (2.0 * std::sqrt(s));
  switch (nu) {
    case 1: return std::erfc(a);
    case 2: return std::exp(-a * a);
    case 3: return std::erfc(a) + 2.0 * a / std::sqrt(std::numbers::pi) * std::exp(-a * a);
    default: break;
  }
  throw DimensionError("gaussian_tail_mass supports nu in {1,2,3}");
}

double discrete_gaussian_l2_squared(const Grid& grid, double s) {
  if (!(s > 0.0)) throw DomainError("heat time s must be > 0");
  const auto n = grid.per_axis();
  const Eigen::Index c = std::clamp<Eigen::Index>(
      static_cast<Eigen::Index>(std::llround(grid.half_width() / grid.spacing())) - 1, 0, n - 1);
  const double h2 = grid.spacing() * grid.spacing();
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(grid.size()));
  for (Eigen::Index p = 0; p < grid.size(); ++p) {
    const auto idx = grid.indices(p);
    double d2 = 0.0;
    for (int i = 0; i < grid.dimension(); ++i) {
      const double d = static_cast<double>(idx[static_cast<std::size_t>(i)] - c);
      d2 += d * d;
    }
    const double f = heat_kernel(grid.dimension(), s, h2 * d2);
    terms.push_back(f * f);
  }
  return grid.weight() * compensated_sum(terms);
}

double spectral_norm(const Eigen::MatrixXd& a, std::uint64_t seed) {
  if (a.size() == 0) return 0.0;
  const double scale = a.norm();
  if (!(scale > 0.0)) return 0.0;
  const Eigen::MatrixXd b = a / scale;
  const bool wide = b.cols() > b.rows();
  const Eigen::Index side = wide ? b.rows() : b.cols();
  if (side <= 400) {
    const Eigen::MatrixXd gram = wide ? Eigen::MatrixXd(b * b.transpose()) : Eigen::MatrixXd(b.transpose() * b);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram, Eigen::EigenvaluesOnly);
    return scale * std::sqrt(std::max(0.0, eig.eigenvalues().maxCoeff()));
  }
  Eigen::VectorXd tmp(wide ? b.cols() : b.rows());
  LinearMap gram = [&](std::span<const double> x, std::span<double> y) {
    Eigen::Map<const Eigen::VectorXd> xv(x.data(), static_cast<Eigen::Index>(x.size()));
    Eigen::Map<Eigen::VectorXd> yv(y.data(), static_cast<Eigen::Index>(y.size()));
    if (wide) {
      tmp.noalias() = b.transpose() * xv;
      yv.noalias() = b * tmp;
    } else {
      tmp.noalias() = b * xv;
      yv.noalias() = b.transpose() * tmp;
    }
  };
  LanczosOptions opts;
  opts.k = 1;
  opts.which = LanczosOptions::Which::Largest;
  opts.tolerance = 1e-12;
  opts.seed = seed;
  opts.check_symmetry = false;
  const LanczosResult res = lanczos_extremal(gram, side, opts);
  if (res.eigenvalues.empty()) throw NumericalError("spectral_norm: Lanczos returned no eigenvalue");
  return scale * std::sqrt(std::max(0.0, res.eigenvalues.front()));
}

KernelMatrix heat_matrix(const Grid& grid, double s, HeatMode mode) {
  if (!(s > 0.0)) throw DomainError("heat time s must be > 0");
  check_dense_budget(grid);
  const Eigen::Index n = grid.size();
  KernelMatrix out;
  out.grid = grid;
  out.heat_time = mode == HeatMode::GaussianKernel ? s : 0.0;
  out.kernel.resize(n, n);
  if (mode == HeatMode::GaussianKernel) {
    const std::vector<double> table = kernel_table(grid, s);
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t col) {
      const auto j = static_cast<Eigen::Index>(col);
      for (Eigen::Index i = 0; i < n; ++i) {
        out.kernel(i, j) = table[static_cast<std::size_t>(grid.distance2_units(i, j))];
      }
    });
    return out;
  }
  // exp(s Delta_h) factorizes over axes because the stencil is a Kronecker sum.
  const Eigen::Index m = grid.per_axis();
  const double inv_h2 = 1.0 / (grid.spacing() * grid.spacing());
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    t(i, i) = 2.0 * inv_h2;
    if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = -inv_h2;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(t);
  const Eigen::VectorXd decay = (-s * eig.eigenvalues().array()).exp();
  Eigen::MatrixXd e1 = eig.eigenvectors() * decay.asDiagonal() * eig.eigenvectors().transpose();
  e1 = 0.5 * (e1 + e1.transpose()).eval();
  const double inv_w = 1.0 / grid.weight();
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t col) {
    const auto j = static_cast<Eigen::Index>(col);
    const auto jj = grid.indices(j);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto ii = grid.indices(i);
      double v = inv_w;
      for (int a = 0; a < grid.dimension(); ++a) {
        v *= e1(ii[static_cast<std::size_t>(a)], jj[static_cast<std::size_t>(a)]);
      }
      out.kernel(i, j) = v;
    }
  });
  return out;
}

double heat_mode_discrepancy(const Grid& grid, double s, double interior) {
  std::vector<char> inside(static_cast<std::size_t>(grid.size()), 0);
  std::vector<double> x(static_cast<std::size_t>(grid.dimension()));
  for (Eigen::Index p = 0; p < grid.size(); ++p) {
    grid.point(p, x);
    double m = 0.0;
    for (double c : x) m = std::max(m, std::abs(c));
    inside[static_cast<std::size_t>(p)] = m <= interior ? 1 : 0;
  }
  const auto cols = indices_where(inside, true);
  if (cols.empty()) throw DomainError("heat_mode_discrepancy: no interior points");
  const KernelMatrix gauss = heat_matrix(grid, s, HeatMode::GaussianKernel);
  Eigen::MatrixXd a = gather_columns(gauss.kernel, cols, grid.weight());
  const double base = spectral_norm(a);
  {
    const KernelMatrix expm = heat_matrix(grid, s, HeatMode::ExpmLaplacian);
    a -= gather_columns(expm.kernel, cols, grid.weight());
  }
  return spectral_norm(a) / base;
}

KernelMatrix compose_C(const Grid& grid, double s, const PotentialExpr& v) {
  const std::vector<double> values = grid.sample(v);
  KernelMatrix c = heat_matrix(grid, s, HeatMode::GaussianKernel);
  for (Eigen::Index j = 0; j < grid.size(); ++j) c.kernel.col(j) *= std::exp(-values[static_cast<std::size_t>(j)]);
  c.potential = v.text();
  return c;
}

BoundCheck BoundCheck::make(std::string name, double lhs, double rhs, double tolerance) {
  BoundCheck b;
  b.name = std::move(name);
  b.lhs = lhs;
  b.rhs = rhs;
  b.tolerance = tolerance;
  b.pass = lhs <= rhs + tolerance;
  return b;
}

bool CompactnessDiagnostics::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const BoundCheck& b) { return b.pass; });
}

Eigen::MatrixXd SplitTail::c_m(const KernelMatrix& c) const {
  Eigen::MatrixXd out = c.operator_matrix();
  for (std::size_t j = 0; j < mask.size(); ++j) {
    if (!mask[j]) out.col(static_cast<Eigen::Index>(j)).setZero();
  }
  return out;
}

Eigen::MatrixXd SplitTail::d_m(const KernelMatrix& c) const {
  Eigen::MatrixXd out = c.operator_matrix();
  for (std::size_t j = 0; j < mask.size(); ++j) {
    if (mask[j]) out.col(static_cast<Eigen::Index>(j)).setZero();
  }
  return out;
}

SplitTail split_tail(const KernelMatrix& c, const PotentialExpr& v, double level, std::uint64_t seed) {
  if (c.potential != v.text() || v.dimension() != c.grid.dimension() || c.kernel.rows() != c.grid.size()) {
    throw DimensionError("split_tail: C was not built on this grid with this potential");
  }
  if (!(level >= 0.0)) throw DomainError("split_tail: level must be >= 0");
  SplitTail out;
  out.level = level;
  const std::vector<double> values = c.grid.sample(v);
  out.mask.resize(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out.mask[i] = values[i] < level ? 1 : 0;
  const double w = c.weight();
  out.norm_c = spectral_norm(w * c.kernel, seed);
  out.norm_c_m = spectral_norm(gather_columns(c.kernel, indices_where(out.mask, true), w), seed);
  out.norm_d_m = spectral_norm(gather_columns(c.kernel, indices_where(out.mask, false), w), seed);
  out.bound = std::exp(-level);
  out.check = BoundCheck::make("split-tail-norm", out.norm_d_m, out.bound, 1e-3 * out.bound);
  return out;
}

CompactnessDiagnostics hs_diagnostics(const KernelMatrix& k, const std::vector<char>& mask) {
  const Eigen::Index n = k.kernel.rows();
  if (static_cast<Eigen::Index>(mask.size()) != k.kernel.cols()) {
    throw DimensionError("hs_diagnostics: mask length does not match the kernel");
  }
  const double w = k.weight();
  const auto cols = indices_where(mask, true);
  const double count = static_cast<double>(cols.size());

  CompactnessDiagnostics out;
  double hs2 = 0.0;
  for (Eigen::Index j : cols) hs2 += k.kernel.col(j).squaredNorm();
  hs2 *= w * w;
  out.hs_norm = std::sqrt(hs2);

  const double row_bound = w * k.kernel.rowwise().squaredNorm().maxCoeff();
  const double col_bound = w * k.kernel.colwise().squaredNorm().maxCoeff();
  const double scale = std::max(1e-300, k.kernel.cwiseAbs().maxCoeff());
  const bool symmetric = n == k.kernel.cols() && (k.kernel - k.kernel.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale;
  if (symmetric) {
    out.checks.push_back(BoundCheck::make("row-column-symmetry", std::abs(row_bound - col_bound), 0.0,
                                          1e-12 * std::max(row_bound, col_bound)));
  }
  const double sup_bound = col_bound * w * count;
  out.checks.push_back(BoundCheck::make("hs-sup-bound", hs2, sup_bound, 1e-12 * sup_bound));

  if (k.heat_time > 0.0) {
    const int nu = k.grid.dimension();
    const double h2 = k.grid.spacing() * k.grid.spacing();
    double excess = -std::numeric_limits<double>::infinity();
    if (cols.empty()) excess = 0.0;
    for (Eigen::Index j : cols) {
      for (Eigen::Index i = 0; i < n; ++i) {
        const double f = heat_kernel(nu, k.heat_time, h2 * static_cast<double>(k.grid.distance2_units(i, j)));
        excess = std::max(excess, std::abs(k.kernel(i, j)) - f);
      }
    }
    out.checks.push_back(
        BoundCheck::make("pointwise-domination", excess, 0.0, 1e-15 * heat_kernel(nu, k.heat_time, 0.0)));
    const double gauss_bound = gaussian_l2_squared(nu, k.heat_time) * w * count;
    out.checks.push_back(BoundCheck::make("hs-gaussian-bound", hs2, gauss_bound, 1e-2 * gauss_bound));
  }

  if (!cols.empty()) {
    const Eigen::MatrixXd a = gather_columns(k.kernel, cols, w);
    if (cols.size() <= 1200) {
      const Eigen::VectorXd sv = jacobi_svd(a).values;
      out.singular_values.assign(sv.data(), sv.data() + sv.size());
    } else {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a.transpose() * a, Eigen::EigenvaluesOnly);
      for (Eigen::Index i = eig.eigenvalues().size() - 1; i >= 0; --i) {
        out.singular_values.push_back(std::sqrt(std::max(0.0, eig.eigenvalues()(i))));
      }
    }
  }
  return out;
}

TruncatedConvolution truncated_convolution(const Grid& grid, double s, double radius, std::uint64_t seed) {
  if (!(radius > 0.0)) throw DomainError("truncated_convolution: R must be > 0");
  if (!(s > 0.0)) throw DomainError("heat time s must be > 0");
  check_dense_budget(grid);
  const Eigen::Index n = grid.size();
  const int nu = grid.dimension();
  const std::vector<double> table = kernel_table(grid, s);

  TruncatedConvolution out;
  out.radius = radius;
  out.f_r.grid = grid;
  out.f_r.heat_time = s;
  out.f_r.kernel.resize(n, n);
  {
    Eigen::MatrixXd diff(n, n);
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t col) {
      const auto j = static_cast<Eigen::Index>(col);
      for (Eigen::Index i = 0; i < n; ++i) {
        const auto d2 = grid.distance2_units(i, j);
        const double f = table[static_cast<std::size_t>(d2)];
        const bool keep = within_radius(grid, d2, radius);
        out.f_r.kernel(i, j) = keep ? f : 0.0;
        diff(i, j) = keep ? 0.0 : f;
      }
    });
    out.difference_norm = spectral_norm(grid.weight() * diff, seed);
  }

  // Lattice displacements z = h m with |m_k| <= per_axis - 1 and |z| > R.
  const auto span = grid.per_axis() - 1;
  const auto width = 2 * span + 1;
  std::int64_t total = 1;
  for (int i = 0; i < nu; ++i) total *= width;
  std::vector<double> terms;
  for (std::int64_t code = 0; code < total; ++code) {
    std::int64_t rest = code;
    std::int64_t d2 = 0;
    for (int i = 0; i < nu; ++i) {
      const std::int64_t m = rest % width - span;
      rest /= width;
      d2 += m * m;
    }
    if (!within_radius(grid, d2, radius)) terms.push_back(table[static_cast<std::size_t>(d2)]);
  }
  out.lattice_tail = grid.weight() * compensated_sum(terms);
  const double half = (static_cast<double>(span) + 0.5) * grid.spacing();
  out.analytic_tail = 1.0 - std::pow(std::erf(half / (2.0 * std::sqrt(s))), nu);
  out.tail = out.lattice_tail + out.analytic_tail;
  out.check = BoundCheck::make("truncation-tail", out.difference_norm, out.tail, 1e-2 * out.tail);
  return out;
}

KernelMatrix restrict_columns(const KernelMatrix& k, const std::vector<char>& mask) {
  if (static_cast<Eigen::Index>(mask.size()) != k.kernel.cols()) {
    throw DimensionError("restrict_columns: mask length does not match the kernel");
  }
  KernelMatrix out = k;
  for (std::size_t j = 0; j < mask.size(); ++j) {
    if (!mask[j]) out.kernel.col(static_cast<Eigen::Index>(j)).setZero();
  }
  return out;
}

KernelMatrix d_kernel(const Grid& grid, const PotentialExpr& v, double level, double radius) {
  check_dense_budget(grid);
  if (!(radius > 0.0)) throw DomainError("d_kernel: R must be > 0");
  const std::vector<char> mask = grid.sublevel_mask(v, level);
  const Eigen::Index n = grid.size();
  KernelMatrix out;
  out.grid = grid;
  out.kernel = Eigen::MatrixXd::Zero(n, n);
  const auto cols = indices_where(mask, true);
  for (Eigen::Index j : cols) {
    for (Eigen::Index i : cols) {
      if (within_radius(grid, grid.distance2_units(i, j), 2.0 * radius)) out.kernel(i, j) = 1.0;
    }
  }
  return out;
}

CompactnessDiagnostics domination_check(const KernelMatrix& c_mr, const KernelMatrix& d) {
  if (!(c_mr.grid == d.grid) || c_mr.kernel.rows() != d.kernel.rows()) {
    throw DimensionError("domination_check: kernels live on different grids");
  }
  const Eigen::Index n = d.kernel.rows();
  std::vector<char> mask(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) mask[static_cast<std::size_t>(i)] = d.kernel(i, i) != 0.0 ? 1 : 0;
  const auto inside = indices_where(mask, true);
  const auto outside = indices_where(mask, false);
  const double w = c_mr.weight();

  // (C*C)(x, y) = w sum_z C(z, x) C(z, y); any entry touching a column outside
  // the mask is bounded by Cauchy-Schwarz on column norms.
  const Eigen::RowVectorXd col_norms = c_mr.kernel.colwise().norm();
  double outside_max = 0.0;
  for (Eigen::Index j : outside) outside_max = std::max(outside_max, col_norms(j));
  double violation = w * outside_max * (col_norms.size() > 0 ? col_norms.maxCoeff() : 0.0);

  double c = 0.0;
  if (!inside.empty()) {
    const Eigen::MatrixXd b = gather_columns(c_mr.kernel, inside, 1.0);
    const Eigen::MatrixXd p = w * (b.transpose() * b);
    for (std::size_t a = 0; a < inside.size(); ++a) {
      for (std::size_t q = 0; q < inside.size(); ++q) {
        const double val = p(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(q));
        const double dv = d.kernel(inside[a], inside[q]);
        if (dv > 0.0) {
          c = std::max(c, val / dv);
        } else {
          violation = std::max(violation, std::abs(val));
        }
      }
    }
  }
  if (violation > 1e-14) {
    throw NumericalError("domination_check: C*C is nonzero where D vanishes (" + std::to_string(violation) + ")");
  }
  CompactnessDiagnostics out;
  out.constant = c;
  out.checks.push_back(BoundCheck::make("support-containment", violation, 0.0, 1e-14));
  out.checks.push_back(BoundCheck::make("domination-constant-finite", std::isfinite(c) ? 0.0 : 1.0, 0.0, 0.0));
  return out;
}

int default_power(double r) {
  if (!(r > 0.0)) throw DomainError("thinness exponent r must be > 0");
  return static_cast<int>(std::floor(r / 2.0 + 1.0)) + 1;
}

CompactnessDiagnostics kernel_power_bound(const KernelMatrix& d, int k, const PotentialExpr& v, double level,
                                          double radius) {
  if (k < 2) throw DomainError("kernel_power_bound: k must be >= 2");
  if (!(radius > 0.0)) throw DomainError("kernel_power_bound: R must be > 0");
  const Grid& grid = d.grid;
  check_dense_budget(grid);
  const std::vector<char> mask = grid.sublevel_mask(v, level);
  for (Eigen::Index i = 0; i < d.kernel.rows(); ++i) {
    if ((d.kernel(i, i) != 0.0) != (mask[static_cast<std::size_t>(i)] != 0)) {
      throw DimensionError("kernel_power_bound: D does not match the sublevel mask of V");
    }
  }
  const auto idx = indices_where(mask, true);
  const auto c = static_cast<Eigen::Index>(idx.size());
  const double w = grid.weight();
  CompactnessDiagnostics out;
  if (c == 0) {
    out.checks.push_back(BoundCheck::make("power-pointwise-bound", 0.0, 1.0, 1e-9));
    out.checks.push_back(BoundCheck::make("power-hs-bound", 0.0, 0.0, 0.0));
    out.checks.push_back(BoundCheck::make("power-hs-continuum", 0.0, 0.0, 0.0));
    return out;
  }
  Eigen::MatrixXd sub(c, c);
  for (Eigen::Index a = 0; a < c; ++a) {
    for (Eigen::Index b = 0; b < c; ++b) sub(a, b) = d.kernel(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]);
  }
  Eigen::MatrixXd power = sub;
  for (int step = 1; step < k; ++step) power = (w * (power * sub)).eval();

  const double reach = 2.0 * k * radius;
  std::vector<double> omega(static_cast<std::size_t>(c), 0.0);
  for (Eigen::Index b = 0; b < c; ++b) {
    std::int64_t count = 0;
    for (Eigen::Index a = 0; a < c; ++a) {
      if (within_radius(grid, grid.distance2_units(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]), reach)) ++count;
    }
    omega[static_cast<std::size_t>(b)] = w * static_cast<double>(count);
  }

  double worst = 0.0;
  for (Eigen::Index b = 0; b < c; ++b) {
    const double cap = std::pow(omega[static_cast<std::size_t>(b)], k - 1);
    for (Eigen::Index a = 0; a < c; ++a) {
      const double val = power(a, b);
      const bool near = within_radius(grid, grid.distance2_units(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]), reach);
      if (!near) {
        if (val != 0.0) worst = std::numeric_limits<double>::infinity();
        continue;
      }
      worst = std::max(worst, val / cap);
    }
  }
  out.checks.push_back(BoundCheck::make("power-pointwise-bound", worst, 1.0, 1e-9));

  const double hs2 = w * w * power.squaredNorm();
  out.hs_norm = std::sqrt(hs2);
  double discrete = 0.0;
  double continuum = 0.0;
  for (double om : omega) {
    discrete += std::pow(om, 2 * k - 1);
    continuum += std::pow(om, 2 * k - 2);
  }
  discrete *= w;
  int nu = grid.dimension();
  const double ball = std::pow(std::numbers::pi, 0.5 * nu) / std::tgamma(0.5 * nu + 1.0) * std::pow(reach, nu);
  continuum *= w * ball;
  out.checks.push_back(BoundCheck::make("power-hs-bound", hs2, discrete, 1e-12 * discrete));
  out.checks.push_back(BoundCheck::make("power-hs-continuum", hs2, continuum, 1e-2 * continuum));

  Eigen::MatrixXd sym = w * power;
  sym = 0.5 * (sym + sym.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym, Eigen::EigenvaluesOnly);
  std::vector<double> sv(eig.eigenvalues().data(), eig.eigenvalues().data() + eig.eigenvalues().size());
  for (double& x : sv) x = std::abs(x);
  std::sort(sv.begin(), sv.end(), std::greater<>());
  out.singular_values = std::move(sv);
  return out;
}

}  // namespace speclab
