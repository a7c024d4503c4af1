#include "speclab/potential.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>

#include "speclab/error.hpp"

namespace speclab {

class Parser {
 public:
  Parser(std::string_view text, int dimension) : text_(text), dimension_(dimension) {}

  PotentialExpr run() {
    if (dimension_ < 1) throw DimensionError("potential dimension must be >= 1");
    skip_space();
    if (pos_ == text_.size()) throw ParseError("empty expression", pos_);
    parse_expr();
    skip_space();
    if (pos_ != text_.size()) throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
    expr_.dimension_ = dimension_;
    expr_.text_ = std::string(text_);
    expr_.certified_ = certified_[static_cast<std::size_t>(expr_.root())];
    return std::move(expr_);
  }

 private:
  using Op = PotentialExpr::Op;

  int push(PotentialExpr::Node node, bool certified) {
    expr_.nodes_.push_back(node);
    certified_.push_back(certified);
    return static_cast<int>(expr_.nodes_.size()) - 1;
  }
  bool cert(int i) const { return certified_[static_cast<std::size_t>(i)]; }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) {
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
  }

  int parse_expr() {
    int lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        const int rhs = parse_term();
        lhs = push({Op::Add, 0.0, 0, lhs, rhs}, cert(lhs) && cert(rhs));
      } else if (accept('-')) {
        const int rhs = parse_term();
        lhs = push({Op::Sub, 0.0, 0, lhs, rhs}, false);
      } else {
        return lhs;
      }
    }
  }

  int parse_term() {
    int lhs = parse_unary();
    while (accept('*')) {
      const int rhs = parse_unary();
      lhs = push({Op::Mul, 0.0, 0, lhs, rhs}, cert(lhs) && cert(rhs));
    }
    return lhs;
  }

  int parse_unary() {
    if (accept('-')) {
      const int operand = parse_unary();
      const auto& n = expr_.nodes_[static_cast<std::size_t>(operand)];
      const bool zero = n.op == Op::Constant && n.value == 0.0;
      return push({Op::Neg, 0.0, 0, operand, -1}, zero);
    }
    return parse_power();
  }

  int parse_power() {
    const int base = parse_primary();
    skip_space();
    if (!accept('^')) return base;
    const long long exponent = parse_exponent();
    return push({Op::Pow, 0.0, static_cast<int>(exponent), base, -1}, exponent % 2 == 0 || cert(base));
  }

  long long parse_exponent() {
    skip_space();
    const std::size_t start = pos_;
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      throw ParseError("exponent must be a nonnegative integer literal", start);
    }
    long long value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + (text_[pos_] - '0');
      if (value > kMaxExponent) throw ParseError("exponent too large", start);
      ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E')) {
      throw ParseError("exponent must be a nonnegative integer literal", start);
    }
    if (accept('^')) {
      const long long upper = parse_exponent();
      long long result = 1;
      for (long long i = 0; i < upper; ++i) {
        result *= value;
        if (result > kMaxExponent) throw ParseError("exponent too large", start);
        if (value <= 1) break;
      }
      if (upper == 0) result = 1;
      value = result;
    }
    return value;
  }

  int parse_primary() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of expression", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      const int inner = parse_expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_identifier();
    throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);
  }

  int parse_number() {
    const std::size_t start = pos_;
    double value = 0.0;
    const auto* first = text_.data() + pos_;
    const auto* last = text_.data() + text_.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || !std::isfinite(value)) throw ParseError("malformed number", start);
    pos_ += static_cast<std::size_t>(ptr - first);
    return push({Op::Constant, value, 0, -1, -1}, value >= 0.0);
  }

  int parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "exp" || name == "abs") {
      expect('(');
      const int inner = parse_expr();
      expect(')');
      return push({name == "exp" ? Op::Exp : Op::Abs, 0.0, 0, inner, -1}, true);
    }
    if (name.size() >= 2 && name[0] == 'x') {
      int index = 0;
      const auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), index);
      if (ec == std::errc() && ptr == name.data() + name.size() && name[1] != '0' && index >= 1 &&
          index <= dimension_) {
        return push({Op::Variable, 0.0, index - 1, -1, -1}, false);
      }
    }
    throw ParseError("unknown identifier '" + std::string(name) + "'", start);
  }

  static constexpr long long kMaxExponent = 1000;

  std::string_view text_;
  int dimension_;
  std::size_t pos_ = 0;
  PotentialExpr expr_;
  std::vector<bool> certified_;
};

PotentialExpr PotentialExpr::parse(std::string_view text, int dimension) {
  return Parser(text, dimension).run();
}

double PotentialExpr::evaluate(std::span<const double> point) const {
  if (static_cast<int>(point.size()) != dimension_) {
    throw DimensionError("point has length " + std::to_string(point.size()) + ", potential expects " +
                         std::to_string(dimension_));
  }
  thread_local std::vector<double> scratch;
  scratch.resize(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    const auto arg = [&](int j) { return scratch[static_cast<std::size_t>(j)]; };
    double v = 0.0;
    switch (n.op) {
      case Op::Constant: v = n.value; break;
      case Op::Variable: v = point[static_cast<std::size_t>(n.index)]; break;
      case Op::Add: v = arg(n.lhs) + arg(n.rhs); break;
      case Op::Sub: v = arg(n.lhs) - arg(n.rhs); break;
      case Op::Mul: v = arg(n.lhs) * arg(n.rhs); break;
      case Op::Neg: v = -arg(n.lhs); break;
      case Op::Exp: v = std::exp(arg(n.lhs)); break;
      case Op::Abs: v = std::abs(arg(n.lhs)); break;
      case Op::Pow: {
        // Exact repeated squaring; matches naive multiplication for small exponents.
        double base = arg(n.lhs);
        double acc = 1.0;
        for (int e = n.index; e > 0; e >>= 1) {
          if (e & 1) acc *= base;
          base *= base;
        }
        v = acc;
        break;
      }
    }
    scratch[i] = v;
  }
  const double result = scratch.back();
  if (!std::isfinite(result)) {
    throw DomainError("potential '" + text_ + "' is not finite at the requested point");
  }
  return result;
}

double PotentialExpr::evaluate_nonnegative(std::span<const double> point, double tolerance) const {
  const double v = evaluate(point);
  if (v < -tolerance) {
    throw DomainError("potential '" + text_ + "' is negative (" + std::to_string(v) + ")");
  }
  return v;
}

PotentialExpr parse_potential(std::string_view text, int dimension) {
  return PotentialExpr::parse(text, dimension);
}

double evaluate(const PotentialExpr& expr, std::span<const double> point) { return expr.evaluate(point); }

}  // namespace speclab
