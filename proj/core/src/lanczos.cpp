#include "speclab/lanczos.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "speclab/error.hpp"
#include "speclab/random.hpp"

namespace speclab {

namespace {

void apply(const LinearMap& op, const Eigen::VectorXd& x, Eigen::VectorXd& y) {
  y.resize(x.size());
  op(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())),
     std::span<double>(y.data(), static_cast<std::size_t>(y.size())));
}

Eigen::VectorXd random_unit(Eigen::Index dim, Rng& rng) {
  Eigen::VectorXd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = rng.normal();
  return v.normalized();
}

void check_symmetric(const LinearMap& op, Eigen::Index dim, std::uint64_t seed) {
  Rng rng(derive_seed(seed, 0x5f3759df));
  Eigen::VectorXd ax;
  Eigen::VectorXd ay;
  for (int trial = 0; trial < 3; ++trial) {
    const Eigen::VectorXd x = random_unit(dim, rng);
    const Eigen::VectorXd y = random_unit(dim, rng);
    apply(op, x, ax);
    apply(op, y, ay);
    const double lhs = ax.dot(y);
    const double rhs = x.dot(ay);
    const double scale = std::max(1.0, 0.5 * (ax.norm() + ay.norm()));
    if (std::abs(lhs - rhs) > 1e-8 * scale) {
      throw DomainError("lanczos: linear map failed the symmetry probe (|<Ax,y> - <x,Ay>| = " +
                        std::to_string(std::abs(lhs - rhs)) + ")");
    }
  }
}

// Orthogonalizes w against the first `cols` columns of v twice; returns the
// accumulated coefficients.
Eigen::VectorXd orthogonalize(const Eigen::MatrixXd& v, Eigen::Index cols, Eigen::VectorXd& w) {
  Eigen::VectorXd c = v.leftCols(cols).transpose() * w;
  w.noalias() -= v.leftCols(cols) * c;
  const Eigen::VectorXd c2 = v.leftCols(cols).transpose() * w;
  w.noalias() -= v.leftCols(cols) * c2;
  return c + c2;
}

}  // namespace

LanczosResult lanczos_extremal(const LinearMap& op, Eigen::Index dim, const LanczosOptions& options) {
  const int k = options.k;
  if (k < 1 || k > 30) throw DomainError("lanczos: k must be in [1, 30]");
  if (dim < k) throw DimensionError("lanczos: dimension smaller than k");
  if (options.check_symmetry) check_symmetric(op, dim, options.seed);

  Eigen::Index m = options.basis_size > 0 ? options.basis_size : std::max(2 * k + 20, 40);
  m = std::min(m, dim);
  if (m < k + 1 && m < dim) m = std::min<Eigen::Index>(k + 1, dim);

  Rng rng(options.seed);
  Eigen::MatrixXd v(dim, m);
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
  v.col(0) = random_unit(dim, rng);
  Eigen::Index filled = 1;  // columns of v holding basis vectors
  Eigen::Index start = 0;   // first column whose A-image is not yet projected

  LanczosResult result;
  Eigen::VectorXd w;
  Eigen::VectorXd residual_vec = Eigen::VectorXd::Zero(dim);
  double residual_norm = 0.0;
  const bool smallest = options.which == LanczosOptions::Which::Smallest;

  Eigen::VectorXd theta;
  Eigen::MatrixXd y;

  for (;;) {
    // Expand the basis up to m columns.
    bool exhausted = false;
    bool cut_short = false;
    Eigen::Index size = m;
    for (Eigen::Index j = start; j < m; ++j) {
      // keep k products in reserve for the explicit residuals
      if (j >= k && result.matvecs + k >= options.max_matvecs) {
        cut_short = true;
        size = j;
        break;
      }
      apply(op, v.col(j), w);
      ++result.matvecs;
      const Eigen::VectorXd c = orthogonalize(v, j + 1, w);
      t.block(0, j, j + 1, 1) = c;
      t.block(j, 0, 1, j + 1) = c.transpose();
      const double beta = w.norm();
      const double scale = std::max(1.0, t.topLeftCorner(j + 1, j + 1).cwiseAbs().maxCoeff());
      if (j + 1 == m) {
        residual_vec = w;
        residual_norm = beta;
        break;
      }
      if (j + 1 == dim) {
        exhausted = true;
        residual_norm = 0.0;
        break;
      }
      if (beta > 1e-12 * scale) {
        v.col(j + 1) = w / beta;
      } else {
        // Invariant subspace: continue with a fresh direction.
        Eigen::VectorXd fresh = random_unit(dim, rng);
        orthogonalize(v, j + 1, fresh);
        v.col(j + 1) = fresh.normalized();
      }
      filled = j + 2;
    }
    filled = std::max(filled, std::min<Eigen::Index>(m, dim));
    if (exhausted) size = dim;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(t.topLeftCorner(size, size));
    if (small.info() != Eigen::Success) throw NumericalError("lanczos: projected eigenproblem failed");
    theta = small.eigenvalues();
    y = small.eigenvectors();
    if (!smallest) {
      theta = theta.reverse().eval();
      y = y.rowwise().reverse().eval();
    }

    bool done = !cut_short;
    for (int i = 0; i < k; ++i) {
      if (residual_norm * std::abs(y(size - 1, i)) > options.tolerance) done = false;
    }
    const bool out_of_budget = cut_short || result.matvecs + k >= options.max_matvecs;
    if (done || exhausted || out_of_budget) {
      const Eigen::MatrixXd x = v.leftCols(size) * y.leftCols(k);
      std::vector<double> residuals;
      Eigen::VectorXd ax;
      bool explicit_ok = true;
      for (int i = 0; i < k; ++i) {
        const Eigen::VectorXd xi = x.col(i).normalized();
        apply(op, xi, ax);
        ++result.matvecs;
        residuals.push_back((ax - theta(i) * xi).norm());
        if (residuals.back() > options.tolerance) explicit_ok = false;
      }
      const bool stop = exhausted || (done && explicit_ok) || out_of_budget || cut_short ||
                        result.matvecs + k >= options.max_matvecs;
      if (stop) {
        result.converged = exhausted || (done && explicit_ok);
        result.status = result.converged ? "converged" : "stagnated: matvec budget exhausted";
        result.eigenvalues.assign(theta.data(), theta.data() + k);
        result.residuals = residuals;
        if (options.keep_vectors) result.eigenvectors = x;
        return result;
      }
    }

    // Thick restart: keep the p best Ritz vectors, then continue from the residual.
    const Eigen::Index p = std::min<Eigen::Index>(m - 2, k + (m - k) / 2);
    const Eigen::MatrixXd kept = v.leftCols(m) * y.leftCols(p);
    v.leftCols(p) = kept;
    t.setZero();
    for (Eigen::Index i = 0; i < p; ++i) t(i, i) = theta(i);
    Eigen::VectorXd next = residual_vec;
    orthogonalize(v, p, next);
    if (next.norm() > 1e-12 * std::max(1.0, theta.cwiseAbs().maxCoeff())) {
      v.col(p) = next.normalized();
    } else {
      Eigen::VectorXd fresh = random_unit(dim, rng);
      orthogonalize(v, p, fresh);
      v.col(p) = fresh.normalized();
    }
    filled = p + 1;
    start = p;
    ++result.restarts;
  }
}

}  // namespace speclab
