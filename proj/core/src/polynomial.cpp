#include "speclab/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "speclab/error.hpp"
#include "speclab/linalg.hpp"

namespace speclab {

PolynomialForm::PolynomialForm(int dimension) : dimension_(dimension) {
  if (dimension < 1) throw DimensionError("polynomial dimension must be >= 1");
}

PolynomialForm::PolynomialForm(int dimension, Terms terms) : PolynomialForm(dimension) {
  for (const auto& [e, c] : terms) {
    if (static_cast<int>(e.size()) != dimension) throw DimensionError("exponent vector has wrong length");
    if (std::any_of(e.begin(), e.end(), [](int k) { return k < 0; })) {
      throw DomainError("negative exponent in polynomial term");
    }
    add_term(e, c);
  }
  prune();
}

PolynomialForm PolynomialForm::constant(int dimension, double value) {
  PolynomialForm p(dimension);
  p.add_term(Exponents(static_cast<std::size_t>(dimension), 0), value);
  p.prune();
  return p;
}

PolynomialForm PolynomialForm::variable(int dimension, int index) {
  PolynomialForm p(dimension);
  Exponents e(static_cast<std::size_t>(dimension), 0);
  e.at(static_cast<std::size_t>(index)) = 1;
  p.add_term(e, 1.0);
  return p;
}

void PolynomialForm::add_term(const Exponents& e, double c) { terms_[e] += c; }

void PolynomialForm::prune() {
  std::erase_if(terms_, [](const auto& t) { return t.second == 0.0; });
}

int PolynomialForm::degree() const noexcept {
  int d = 0;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int k : e) s += k;
    d = std::max(d, s);
  }
  return d;
}

double PolynomialForm::evaluate(std::span<const double> point) const {
  if (static_cast<int>(point.size()) != dimension_) throw DimensionError("point length mismatch");
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double term = c;
    for (std::size_t k = 0; k < e.size(); ++k) {
      for (int j = 0; j < e[k]; ++j) term *= point[k];
    }
    sum += term;
  }
  return sum;
}

PolynomialForm PolynomialForm::derivative(int index) const {
  PolynomialForm out(dimension_);
  const auto k = static_cast<std::size_t>(index);
  for (const auto& [exps, c] : terms_) {
    if (exps.at(k) == 0) continue;
    std::vector<int> e = exps;
    const double factor = e[k];
    --e[k];
    out.add_term(e, c * factor);
  }
  out.prune();
  return out;
}

PolynomialForm PolynomialForm::operator+(const PolynomialForm& other) const {
  if (other.dimension_ != dimension_) throw DimensionError("polynomial dimension mismatch");
  PolynomialForm out = *this;
  for (const auto& [e, c] : other.terms_) out.add_term(e, c);
  out.prune();
  return out;
}

PolynomialForm PolynomialForm::operator-() const {
  PolynomialForm out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

PolynomialForm PolynomialForm::operator-(const PolynomialForm& other) const { return *this + (-other); }

PolynomialForm PolynomialForm::operator*(const PolynomialForm& other) const {
  if (other.dimension_ != dimension_) throw DimensionError("polynomial dimension mismatch");
  PolynomialForm out(dimension_);
  Exponents e(static_cast<std::size_t>(dimension_));
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : other.terms_) {
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
      out.add_term(e, ca * cb);
    }
  }
  out.prune();
  return out;
}

PolynomialForm PolynomialForm::pow(int exponent) const {
  PolynomialForm result = constant(dimension_, 1.0);
  PolynomialForm base = *this;
  for (int e = exponent; e > 0; e >>= 1) {
    if (e & 1) result = result * base;
    if (e > 1) base = base * base;
  }
  return result;
}

PolynomialForm PolynomialForm::substitute_linear(std::span<const double> row_major) const {
  const auto n = static_cast<std::size_t>(dimension_);
  if (row_major.size() != n * n) throw DimensionError("linear map must be nu x nu");
  std::vector<PolynomialForm> images;
  images.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    PolynomialForm yi(dimension_);
    for (std::size_t j = 0; j < n; ++j) {
      yi = yi + constant(dimension_, row_major[i * n + j]) * variable(dimension_, static_cast<int>(j));
    }
    images.push_back(std::move(yi));
  }
  PolynomialForm out(dimension_);
  for (const auto& [e, c] : terms_) {
    PolynomialForm term = constant(dimension_, c);
    for (std::size_t k = 0; k < n; ++k) {
      if (e[k] > 0) term = term * images[k].pow(e[k]);
    }
    out = out + term;
  }
  return out;
}

namespace {

PolynomialForm expand(const PotentialExpr& expr, int node) {
  using Op = PotentialExpr::Op;
  const auto& n = expr.nodes()[static_cast<std::size_t>(node)];
  const int dim = expr.dimension();
  switch (n.op) {
    case Op::Constant: return PolynomialForm::constant(dim, n.value);
    case Op::Variable: return PolynomialForm::variable(dim, n.index);
    case Op::Add: return expand(expr, n.lhs) + expand(expr, n.rhs);
    case Op::Sub: return expand(expr, n.lhs) - expand(expr, n.rhs);
    case Op::Mul: return expand(expr, n.lhs) * expand(expr, n.rhs);
    case Op::Neg: return -expand(expr, n.lhs);
    case Op::Pow: return expand(expr, n.lhs).pow(n.index);
    case Op::Exp:
    case Op::Abs: break;
  }
  throw DomainError("expression '" + expr.text() + "' is not a polynomial (exp/abs node)");
}

}  // namespace

PolynomialForm to_polynomial(const PotentialExpr& expr) { return expand(expr, expr.root()); }

DegeneracyVerdict degeneracy_direction(const PolynomialForm& p, double threshold) {
  const int nu = p.dimension();
  DegeneracyVerdict verdict;

  // Column k holds the coefficients of dP/dx_k over the union of monomials.
  std::vector<PolynomialForm> partials;
  std::map<PolynomialForm::Exponents, int> rows;
  for (int k = 0; k < nu; ++k) {
    partials.push_back(p.derivative(k));
    for (const auto& [e, c] : partials.back().terms()) rows.emplace(e, 0);
  }
  if (rows.empty()) {
    verdict.kind = DegeneracyVerdict::Kind::AllDirections;
    verdict.singular_values.assign(static_cast<std::size_t>(nu), 0.0);
    return verdict;
  }
  int r = 0;
  for (auto& [e, idx] : rows) idx = r++;

  // Pad with zero rows so the Jacobi SVD always sees a tall matrix.
  Eigen::MatrixXd coeffs = Eigen::MatrixXd::Zero(std::max(r, nu), nu);
  for (int k = 0; k < nu; ++k) {
    for (const auto& [e, c] : partials[static_cast<std::size_t>(k)].terms()) coeffs(rows.at(e), k) = c;
  }

  const SvdResult svd = jacobi_svd(coeffs);
  verdict.singular_values.assign(svd.values.data(), svd.values.data() + svd.values.size());
  const double largest = svd.values(0);
  const Eigen::Index last = svd.values.size() - 1;
  if (svd.values(last) > threshold * largest) {
    verdict.kind = DegeneracyVerdict::Kind::Nondegenerate;
    return verdict;
  }
  Eigen::VectorXd v = svd.v.col(last);
  v.normalize();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-14) {
      if (v(i) < 0) v = -v;
      break;
    }
  }
  verdict.kind = DegeneracyVerdict::Kind::Degenerate;
  verdict.direction.assign(v.data(), v.data() + v.size());
  return verdict;
}

}  // namespace speclab
