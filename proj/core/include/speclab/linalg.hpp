#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <span>
#include <vector>

#include "speclab/random.hpp"

namespace speclab {

/// Dense real symmetric matrix. Construction checks symmetry to
/// 1e-12 * max|A_ij| and then stores the exact symmetrization.
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(const Eigen::MatrixXd& m);

  static SymmetricMatrix zero(Eigen::Index d);
  static SymmetricMatrix identity(Eigen::Index d);
  static SymmetricMatrix diagonal(std::span<const double> entries);

  Eigen::Index dim() const noexcept { return m_.rows(); }
  const Eigen::MatrixXd& matrix() const noexcept { return m_; }
  double operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

 private:
  struct Trusted {};
  SymmetricMatrix(Eigen::MatrixXd m, Trusted) : m_(std::move(m)) {}
  friend SymmetricMatrix symmetrized(Eigen::MatrixXd m);
  Eigen::MatrixXd m_;
};

/// Symmetrizes (m + m^T)/2 without the tolerance check; for results of
/// symmetric-by-construction computations.
SymmetricMatrix symmetrized(Eigen::MatrixXd m);

/// Dense real matrix with finite entries.
class GeneralMatrix {
 public:
  explicit GeneralMatrix(Eigen::MatrixXd m);
  GeneralMatrix(const SymmetricMatrix& s) : m_(s.matrix()) {}  // NOLINT(google-explicit-constructor)

  Eigen::Index rows() const noexcept { return m_.rows(); }
  Eigen::Index cols() const noexcept { return m_.cols(); }
  const Eigen::MatrixXd& matrix() const noexcept { return m_; }

 private:
  Eigen::MatrixXd m_;
};

/// Eigenvalues sorted descending with matching orthonormal eigenvector columns.
struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
};

/// mu_1 >= mu_2 >= ... >= 0.
struct SingularValueList {
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
};

struct SvdResult {
  Eigen::VectorXd values;  ///< descending
  Eigen::MatrixXd v;       ///< right singular vectors (columns)
};

SpectralDecomposition sym_eig(const SymmetricMatrix& a);

/// One-sided (Hestenes) Jacobi SVD. Tall inputs are first reduced to their
/// triangular QR factor; wide inputs are handled through the transpose (in
/// which case `v` holds left singular vectors of the original).
SvdResult jacobi_svd(const Eigen::MatrixXd& a);

SingularValueList singular_values(const GeneralMatrix& a);

/// Largest singular value (spectral norm) of a small dense matrix.
double operator_norm(const Eigen::MatrixXd& a);

/// exp(t A) = Q exp(t Lambda) Q^T. Throws NumericalError if t*lambda > 700.
SymmetricMatrix expm_sym(const SymmetricMatrix& a, double t);

bool is_psd(const SymmetricMatrix& a, double rel_tol = 1e-10);

/// PSD square root via the spectral decomposition (negative roundoff clamped).
SymmetricMatrix sqrt_psd(const SymmetricMatrix& a);

/// Spectrum of C D for PSD C, D via the similar symmetric matrix C^{1/2} D C^{1/2}.
/// Descending. Throws DomainError on non-PSD input.
std::vector<double> psd_product_spectrum(const SymmetricMatrix& c, const SymmetricMatrix& d);

/// sup { |C phi| : |phi| = 1, phi orthogonal to every psi } -- an upper bound
/// on mu_{n} when n-1 vectors psi are supplied, attained by the top right
/// singular vectors.
double minmax_upper_bound(const GeneralMatrix& c, std::span<const Eigen::VectorXd> psi);

/// G G^T with G i.i.d. standard normal entries.
SymmetricMatrix random_psd(Eigen::Index d, Rng& rng);
SymmetricMatrix random_symmetric(Eigen::Index d, Rng& rng);
Eigen::MatrixXd random_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng);

/// Row-major text fixture format: "rows cols" on the first line, then one
/// line per row with %.17g entries separated by single spaces.
void write_matrix(std::ostream& out, const Eigen::MatrixXd& m);
Eigen::MatrixXd read_matrix(std::istream& in);

}  // namespace speclab
