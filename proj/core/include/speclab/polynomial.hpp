#pragma once

#include <map>
#include <span>
#include <vector>

#include "speclab/potential.hpp"

namespace speclab {

/// Expanded real polynomial in nu variables: multi-index exponent -> coefficient.
/// Terms are kept sorted and unique; exact zero coefficients are dropped.
class PolynomialForm {
 public:
  using Exponents = std::vector<int>;
  using Terms = std::map<Exponents, double>;

  explicit PolynomialForm(int dimension);
  PolynomialForm(int dimension, Terms terms);

  static PolynomialForm constant(int dimension, double value);
  static PolynomialForm variable(int dimension, int index);

  int dimension() const noexcept { return dimension_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  int degree() const noexcept;

  double evaluate(std::span<const double> point) const;
  PolynomialForm derivative(int index) const;

  /// P(T x) for a nu x nu matrix T given row-major.
  PolynomialForm substitute_linear(std::span<const double> row_major) const;

  PolynomialForm operator+(const PolynomialForm& other) const;
  PolynomialForm operator-(const PolynomialForm& other) const;
  PolynomialForm operator*(const PolynomialForm& other) const;
  PolynomialForm operator-() const;
  PolynomialForm pow(int exponent) const;

  bool operator==(const PolynomialForm&) const = default;

 private:
  void add_term(const Exponents& e, double c);
  void prune();

  int dimension_;
  Terms terms_;
};

/// Expanded canonical form of a polynomial expression; DomainError on exp/abs.
PolynomialForm to_polynomial(const PotentialExpr& expr);

struct DegeneracyVerdict {
  enum class Kind {
    Nondegenerate,  ///< no v != 0 with v . grad P == 0
    Degenerate,     ///< `direction` is a unit vector with v . grad P == 0
    AllDirections,  ///< P is constant (in particular zero): every v is degenerate
  };
  Kind kind = Kind::Nondegenerate;
  std::vector<double> direction;
  /// Singular values of the map v -> coefficients of v . grad P, descending.
  std::vector<double> singular_values;
};

/// Looks for v with v . grad P == 0 identically, i.e. whether P depends on fewer
/// than nu linear combinations of the variables. Relative singular-value
/// threshold 1e-10. Returned directions have their first nonzero entry positive.
DegeneracyVerdict degeneracy_direction(const PolynomialForm& p, double threshold = 1e-10);

}  // namespace speclab
