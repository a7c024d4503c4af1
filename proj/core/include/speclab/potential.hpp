#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace speclab {

/// Parsed potential V(x) on R^nu.
///
/// Grammar (see docs/potential-grammar.md):
///
///     expr    := term (('+' | '-') term)*
///     term    := unary ('*' unary)*
///     unary   := '-' unary | power
///     power   := primary ('^' exponent)?
///     exponent:= INTEGER ('^' exponent)?          (right-associative)
///     primary := NUMBER | 'x' INDEX | ('exp' | 'abs') '(' expr ')' | '(' expr ')'
///
/// Nodes are stored in post-order (children precede parents), so evaluation is a
/// single forward sweep. Instances are immutable and safe to share across threads.
class PotentialExpr {
 public:
  enum class Op { Constant, Variable, Add, Sub, Mul, Pow, Neg, Exp, Abs };

  struct Node {
    Op op = Op::Constant;
    double value = 0.0;  // Constant
    int index = 0;       // Variable: 0-based coordinate; Pow: exponent
    int lhs = -1;
    int rhs = -1;
  };

  PotentialExpr() = default;

  static PotentialExpr parse(std::string_view text, int dimension);

  double evaluate(std::span<const double> point) const;
  double operator()(std::span<const double> point) const { return evaluate(point); }

  /// evaluate(), raising DomainError when the value is below -tolerance.
  double evaluate_nonnegative(std::span<const double> point, double tolerance = 1e-9) const;

  int dimension() const noexcept { return dimension_; }
  const std::string& text() const noexcept { return text_; }

  /// Syntactic certificate: built only from nonnegative constants, even powers,
  /// abs and exp, combined by + and *.
  bool nonnegative_certified() const noexcept { return certified_; }

  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  int root() const noexcept { return static_cast<int>(nodes_.size()) - 1; }

 private:
  friend class Parser;
  std::vector<Node> nodes_;
  int dimension_ = 0;
  std::string text_;
  bool certified_ = false;
};

PotentialExpr parse_potential(std::string_view text, int dimension);
double evaluate(const PotentialExpr& expr, std::span<const double> point);

}  // namespace speclab
