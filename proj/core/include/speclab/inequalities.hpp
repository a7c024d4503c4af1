#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "speclab/linalg.hpp"

namespace speclab {

/// Two sides of a finite-dimensional inequality (lhs <= rhs) or identity
/// (lhs == rhs), with a relative tolerance.
struct InequalityReport {
  enum class Form { Inequality, Equality };

  std::string name;
  Form form = Form::Inequality;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  ///< rhs - lhs
  double tol_rel = 0.0;
  bool pass = false;
  std::uint64_t seed = 0;
  int dimension = 0;

  static InequalityReport make(std::string name, double lhs, double rhs, double tol_rel,
                               Form form = Form::Inequality, std::uint64_t seed = 0, int dimension = 0);
};

struct InputDigest {
  std::uint64_t seed = 0;
  int dimension = 0;
};

enum class SegalForm { Plain, Symmetric };

/// |exp(-(A+B))| <= |exp(-A) exp(-B)|, or the symmetric right side
/// |exp(-B/2) exp(-A) exp(-B/2)|. PSD inputs.
InequalityReport segal(const SymmetricMatrix& a, const SymmetricMatrix& b, SegalForm form = SegalForm::Plain,
                       InputDigest digest = {}, double tol_rel = 1e-10);

/// |exp(-A/2) exp(-B/2)|^2 <= |exp(-A) exp(-B)| (one step of the doubling argument).
InequalityReport half_step_square(const SymmetricMatrix& a, const SymmetricMatrix& b, InputDigest digest = {},
                                  double tol_rel = 1e-10);

/// Tr exp(-(A+B)) <= Tr(exp(-A) exp(-B)); any symmetric A, B.
InequalityReport golden_thompson(const SymmetricMatrix& a, const SymmetricMatrix& b, InputDigest digest = {},
                                 double tol_rel = 1e-10);

struct ProductSpectrumReport {
  std::string route;                 ///< "psd-similarity" or "power-traces"
  std::vector<double> spectrum_cd;   ///< nonzero eigenvalues, descending (psd route)
  std::vector<double> spectrum_dc;
  std::vector<double> traces_cd;     ///< Tr((CD)^k), k = 1..min(m, n) (power-trace route)
  std::vector<double> traces_dc;
  double max_deviation = 0.0;
  double allowed = 0.0;
  double spectral_radius_cd = 0.0;
  double norm_dc = 0.0;
  bool pass = false;
};

/// Nonzero spectra of CD and DC agree. Square PSD pairs are compared as
/// eigenvalue lists of C^{1/2} D C^{1/2} and D^{1/2} C D^{1/2}; any other
/// m x n / n x m pair through the power traces Tr((CD)^k) = Tr((DC)^k), which
/// determine the nonzero spectrum. max(m, n) <= 12.
ProductSpectrumReport product_spectrum_match(const GeneralMatrix& c, const GeneralMatrix& d, double tol = 1e-8);

struct TrotterSequence {
  std::vector<int> indices;         ///< n = 0..n_max
  std::vector<double> values;       ///< |(exp(-A/2^n) exp(-B/2^n))^(2^n)|
  double limit_reference = 0.0;     ///< |exp(-(A+B))|
  double cap_reference = 0.0;       ///< |exp(-A) exp(-B)|
  bool capped = false;              ///< every value <= cap + 1e-10
  double final_gap = 0.0;           ///< |values.back() - limit|
};

TrotterSequence trotter_sequence(const SymmetricMatrix& a, const SymmetricMatrix& b, int n_max);

/// |compound(A, n)| == mu_1 ... mu_n.
InequalityReport wedge_norm_identity(const GeneralMatrix& a, int n, InputDigest digest = {}, double tol_rel = 1e-9);

/// compound(exp(-tA), n) == exp(-t wedge_generator(A, n)); lhs/rhs are the
/// spectral norms and `margin` the norm of the difference.
InequalityReport wedge_semigroup_identity(const SymmetricMatrix& a, int n, double t, InputDigest digest = {},
                                          double tol_rel = 1e-8);

struct WedgeChainReport {
  InequalityReport inequality;        ///< |^n e^{-(A+B)}| <= |^n e^{-A} ^n e^{-B}|
  InequalityReport multiplicativity;  ///< |^n e^{-A} ^n e^{-B}| == |^n (e^{-A} e^{-B})|
  bool pass() const noexcept { return inequality.pass && multiplicativity.pass; }
};

WedgeChainReport wedge_segal_chain(const SymmetricMatrix& a, const SymmetricMatrix& b, int n,
                                   InputDigest digest = {}, double tol_rel = 1e-9);

/// g(n) = (mu_1 ... mu_n)^(1/n) for n = 1..n_max; nonincreasing.
std::vector<double> compactness_proxy(const SingularValueList& mu, int n_max);
std::vector<double> compactness_proxy(const GeneralMatrix& c, int n_max);

struct BatchOptions {
  int trials = 500;
  int dim_min = 2;
  int dim_max = 8;
  std::uint64_t seed = 7;
  bool include_wedge = true;
};

struct BatchSummaryRow {
  std::string name;
  int trials = 0;
  double min_margin = 0.0;  ///< smallest margin / max(|lhs|, |rhs|)
  double pass_rate = 0.0;
};

struct BatchResult {
  std::vector<InequalityReport> reports;
  std::vector<BatchSummaryRow> summary;
  bool all_pass() const noexcept;
};

/// Seeded PSD pairs (G G^T, G standard normal), trial i drawing from
/// derive_seed(seed, i) with dimension dim_min + i mod (dim_max - dim_min + 1).
BatchResult run_inequality_batch(const BatchOptions& options);

}  // namespace speclab
