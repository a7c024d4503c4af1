#include "speclab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>

#include "speclab/error.hpp"

namespace speclab {

namespace {

void require_finite(const Eigen::MatrixXd& m, const char* what) {
  if (!m.allFinite()) throw DomainError(std::string(what) + " has non-finite entries");
}

}  // namespace

SymmetricMatrix::SymmetricMatrix(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw DimensionError("symmetric matrix must be square");
  require_finite(m, "symmetric matrix");
  const double scale = m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
  const double asym = m.size() == 0 ? 0.0 : (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * scale) {
    throw DomainError("matrix is not symmetric (max asymmetry " + std::to_string(asym) + ")");
  }
  m_ = 0.5 * (m + m.transpose());
}

SymmetricMatrix symmetrized(Eigen::MatrixXd m) {
  Eigen::MatrixXd s = 0.5 * (m + m.transpose());
  return SymmetricMatrix(std::move(s), SymmetricMatrix::Trusted{});
}

SymmetricMatrix SymmetricMatrix::zero(Eigen::Index d) { return SymmetricMatrix(Eigen::MatrixXd::Zero(d, d)); }
SymmetricMatrix SymmetricMatrix::identity(Eigen::Index d) {
  return SymmetricMatrix(Eigen::MatrixXd::Identity(d, d));
}
SymmetricMatrix SymmetricMatrix::diagonal(std::span<const double> entries) {
  Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(entries.data(), static_cast<Eigen::Index>(entries.size()));
  return SymmetricMatrix(Eigen::MatrixXd(v.asDiagonal()));
}

GeneralMatrix::GeneralMatrix(Eigen::MatrixXd m) : m_(std::move(m)) { require_finite(m_, "matrix"); }

SpectralDecomposition sym_eig(const SymmetricMatrix& a) {
  if (a.dim() < 1) throw DimensionError("sym_eig needs d >= 1");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a.matrix());
  if (solver.info() != Eigen::Success) throw NumericalError("symmetric eigensolver did not converge");
  // Eigen returns ascending order; reverse both.
  SpectralDecomposition out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

namespace {

// Hestenes rotations on the columns of `u` (m x n, m >= n), accumulated into v.
void hestenes(Eigen::MatrixXd& u, Eigen::MatrixXd& v) {
  const Eigen::Index n = u.cols();
  constexpr double eps = 1e-15;
  constexpr int max_sweeps = 80;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double alpha = u.col(p).squaredNorm();
        const double beta = u.col(q).squaredNorm();
        const double gamma = u.col(p).dot(u.col(q));
        if (gamma == 0.0 || std::abs(gamma) <= eps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (Eigen::Index i = 0; i < u.rows(); ++i) {
          const double up = u(i, p);
          const double uq = u(i, q);
          u(i, p) = c * up - s * uq;
          u(i, q) = s * up + c * uq;
        }
        for (Eigen::Index i = 0; i < v.rows(); ++i) {
          const double vp = v(i, p);
          const double vq = v(i, q);
          v(i, p) = c * vp - s * vq;
          v(i, q) = s * vp + c * vq;
        }
      }
    }
    if (!rotated) return;
  }
}

}  // namespace

SvdResult jacobi_svd(const Eigen::MatrixXd& a) {
  require_finite(a, "matrix");
  if (a.rows() < a.cols()) return jacobi_svd(a.transpose());
  const Eigen::Index n = a.cols();
  Eigen::MatrixXd u;
  if (a.rows() > n && n > 0) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    u = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
  } else {
    u = a;
  }
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  hestenes(u, v);

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  Eigen::VectorXd norms(n);
  for (Eigen::Index j = 0; j < n; ++j) norms(j) = u.col(j).norm();
  std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return norms(x) > norms(y); });

  SvdResult out;
  out.values.resize(n);
  out.v.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    out.values(j) = norms(order[static_cast<std::size_t>(j)]);
    out.v.col(j) = v.col(order[static_cast<std::size_t>(j)]);
  }
  return out;
}

SingularValueList singular_values(const GeneralMatrix& a) {
  const SvdResult svd = jacobi_svd(a.matrix());
  SingularValueList out;
  out.values.assign(svd.values.data(), svd.values.data() + svd.values.size());
  // Pad to min(rows, cols) already holds; a 0 x n input yields an empty list.
  return out;
}

double operator_norm(const Eigen::MatrixXd& a) {
  if (a.size() == 0) return 0.0;
  return jacobi_svd(a).values(0);
}

SymmetricMatrix expm_sym(const SymmetricMatrix& a, double t) {
  if (!std::isfinite(t)) throw DomainError("expm_sym: non-finite time");
  const SpectralDecomposition eig = sym_eig(a);
  Eigen::VectorXd scaled = t * eig.eigenvalues;
  const double largest = scaled.maxCoeff();
  if (largest > 700.0) {
    throw NumericalError("expm_sym overflow: t*lambda = " + std::to_string(largest) + " exceeds 700");
  }
  const Eigen::VectorXd e = scaled.array().exp();
  return symmetrized(eig.eigenvectors * e.asDiagonal() * eig.eigenvectors.transpose());
}

bool is_psd(const SymmetricMatrix& a, double rel_tol) {
  const SpectralDecomposition eig = sym_eig(a);
  const double scale = std::max(std::abs(eig.eigenvalues(0)), std::abs(eig.eigenvalues(eig.eigenvalues.size() - 1)));
  return eig.eigenvalues(eig.eigenvalues.size() - 1) >= -rel_tol * scale;
}

SymmetricMatrix sqrt_psd(const SymmetricMatrix& a) {
  if (!is_psd(a)) throw DomainError("sqrt_psd: matrix is not positive semidefinite");
  const SpectralDecomposition eig = sym_eig(a);
  const Eigen::VectorXd r = eig.eigenvalues.cwiseMax(0.0).cwiseSqrt();
  return symmetrized(eig.eigenvectors * r.asDiagonal() * eig.eigenvectors.transpose());
}

std::vector<double> psd_product_spectrum(const SymmetricMatrix& c, const SymmetricMatrix& d) {
  if (c.dim() != d.dim()) throw DimensionError("psd_product_spectrum: dimension mismatch");
  if (!is_psd(c) || !is_psd(d)) throw DomainError("psd_product_spectrum: inputs must be PSD");
  const SymmetricMatrix root = sqrt_psd(c);
  const SymmetricMatrix similar = symmetrized(root.matrix() * d.matrix() * root.matrix());
  const SpectralDecomposition eig = sym_eig(similar);
  return {eig.eigenvalues.data(), eig.eigenvalues.data() + eig.eigenvalues.size()};
}

double minmax_upper_bound(const GeneralMatrix& c, std::span<const Eigen::VectorXd> psi) {
  const Eigen::Index n = c.cols();
  if (psi.empty()) return operator_norm(c.matrix());
  Eigen::MatrixXd basis(n, static_cast<Eigen::Index>(psi.size()));
  for (std::size_t j = 0; j < psi.size(); ++j) {
    if (psi[j].size() != n) throw DimensionError("minmax_upper_bound: psi length mismatch");
    basis.col(static_cast<Eigen::Index>(j)) = psi[j];
  }
  // Trailing columns of the full Q span the complement of span(psi) when the
  // psi are linearly independent.
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(basis);
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  const auto p = static_cast<Eigen::Index>(psi.size());
  if (p >= n) return 0.0;
  const Eigen::MatrixXd complement = q.rightCols(n - p);
  return operator_norm(c.matrix() * complement);
}

Eigen::MatrixXd random_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  Eigen::MatrixXd g(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) g(i, j) = rng.normal();
  }
  return g;
}

SymmetricMatrix random_psd(Eigen::Index d, Rng& rng) {
  const Eigen::MatrixXd g = random_gaussian(d, d, rng);
  return symmetrized(g * g.transpose());
}

SymmetricMatrix random_symmetric(Eigen::Index d, Rng& rng) { return symmetrized(random_gaussian(d, d, rng)); }

void write_matrix(std::ostream& out, const Eigen::MatrixXd& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  char buf[40];
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
      if (j) out << ' ';
      out << buf;
    }
    out << '\n';
  }
}

Eigen::MatrixXd read_matrix(std::istream& in) {
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  if (!(in >> rows >> cols) || rows < 0 || cols < 0) throw Error("read_matrix: bad header");
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      if (!(in >> m(i, j))) throw Error("read_matrix: truncated data");
    }
  }
  return m;
}

}  // namespace speclab
