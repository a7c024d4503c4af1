#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace speclab {

/// y = A x for a symmetric linear map on R^dim.
using LinearMap = std::function<void(std::span<const double> x, std::span<double> y)>;

struct LanczosOptions {
  enum class Which { Smallest, Largest };

  int k = 1;                    ///< number of eigenpairs, at most 30
  int max_matvecs = 20'000;     ///< total budget across restarts
  std::uint64_t seed = 1;       ///< start vector and breakdown refills
  double tolerance = 1e-8;      ///< absolute residual |Ax - lambda x| for unit x
  int basis_size = 0;           ///< 0 = max(2k + 20, 40), capped at dim
  Which which = Which::Smallest;
  bool check_symmetry = true;
  bool keep_vectors = false;
};

struct LanczosResult {
  std::vector<double> eigenvalues;  ///< ascending for Smallest, descending for Largest
  std::vector<double> residuals;    ///< explicit |A x - lambda x| / |x|
  Eigen::MatrixXd eigenvectors;     ///< filled when keep_vectors
  int matvecs = 0;
  int restarts = 0;
  bool converged = false;
  std::string status;               ///< "converged" or a reason for partial results
};

/// Thick-restart Lanczos with full reorthogonalization against the stored basis.
/// Stagnation (budget exhausted) returns the current Ritz pairs with
/// `converged == false`; an asymmetric map throws DomainError.
LanczosResult lanczos_extremal(const LinearMap& op, Eigen::Index dim, const LanczosOptions& options);

}  // namespace speclab
