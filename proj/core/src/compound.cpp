#include "speclab/compound.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "speclab/error.hpp"

namespace speclab {

std::uint64_t binomial(int d, int n) {
  if (n < 0 || n > d) return 0;
  n = std::min(n, d - n);
  std::uint64_t result = 1;
  for (int i = 1; i <= n; ++i) {
    result = result * static_cast<std::uint64_t>(d - n + i) / static_cast<std::uint64_t>(i);
  }
  return result;
}

std::vector<std::vector<int>> combinations(int d, int n) {
  std::vector<std::vector<int>> out;
  if (n < 0 || n > d) return out;
  std::vector<int> current(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) current[static_cast<std::size_t>(i)] = i;
  for (;;) {
    out.push_back(current);
    int i = n - 1;
    while (i >= 0 && current[static_cast<std::size_t>(i)] == d - n + i) --i;
    if (i < 0) break;
    ++current[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < n; ++j) current[static_cast<std::size_t>(j)] = current[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

double determinant(Eigen::MatrixXd m) {
  const Eigen::Index n = m.rows();
  if (n != m.cols()) throw DimensionError("determinant of non-square matrix");
  double det = 1.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index pivot = k;
    for (Eigen::Index i = k + 1; i < n; ++i) {
      if (std::abs(m(i, k)) > std::abs(m(pivot, k))) pivot = i;
    }
    if (m(pivot, k) == 0.0) return 0.0;
    if (pivot != k) {
      m.row(pivot).swap(m.row(k));
      det = -det;
    }
    det *= m(k, k);
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const double factor = m(i, k) / m(k, k);
      for (Eigen::Index j = k + 1; j < n; ++j) m(i, j) -= factor * m(k, j);
    }
  }
  return det;
}

namespace {

void check_order(Eigen::Index rows, Eigen::Index cols, int n) {
  if (n < 1 || n > std::min(rows, cols)) {
    throw DimensionError("compound order " + std::to_string(n) + " out of range");
  }
  const auto r = binomial(static_cast<int>(rows), n);
  const auto c = binomial(static_cast<int>(cols), n);
  if (r > kCompoundBudget || c > kCompoundBudget) {
    throw BudgetError("compound dimension overflow: binomial sizes " + std::to_string(r) + " x " +
                      std::to_string(c));
  }
}

}  // namespace

GeneralMatrix compound_matrix(const GeneralMatrix& a, int n) {
  check_order(a.rows(), a.cols(), n);
  const auto row_sets = combinations(static_cast<int>(a.rows()), n);
  const auto col_sets = combinations(static_cast<int>(a.cols()), n);
  Eigen::MatrixXd out(static_cast<Eigen::Index>(row_sets.size()), static_cast<Eigen::Index>(col_sets.size()));
  Eigen::MatrixXd minor(n, n);
  for (std::size_t I = 0; I < row_sets.size(); ++I) {
    for (std::size_t J = 0; J < col_sets.size(); ++J) {
      for (int p = 0; p < n; ++p) {
        for (int q = 0; q < n; ++q) {
          minor(p, q) = a.matrix()(row_sets[I][static_cast<std::size_t>(p)], col_sets[J][static_cast<std::size_t>(q)]);
        }
      }
      out(static_cast<Eigen::Index>(I), static_cast<Eigen::Index>(J)) = n == 1 ? minor(0, 0) : determinant(minor);
    }
  }
  return GeneralMatrix(std::move(out));
}

SymmetricMatrix wedge_generator(const SymmetricMatrix& a, int n) {
  const int d = static_cast<int>(a.dim());
  check_order(d, d, n);
  const auto sets = combinations(d, n);
  std::map<std::vector<int>, Eigen::Index> rank;
  for (std::size_t i = 0; i < sets.size(); ++i) rank.emplace(sets[i], static_cast<Eigen::Index>(i));

  const auto size = static_cast<Eigen::Index>(sets.size());
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(size, size);
  for (std::size_t col = 0; col < sets.size(); ++col) {
    const auto& s = sets[col];
    for (int k = 0; k < n; ++k) {
      const int replaced = s[static_cast<std::size_t>(k)];
      for (int i = 0; i < d; ++i) {
        const double entry = a(i, replaced);
        if (entry == 0.0) continue;
        if (i == replaced) {
          g(static_cast<Eigen::Index>(col), static_cast<Eigen::Index>(col)) += entry;
          continue;
        }
        if (std::find(s.begin(), s.end(), i) != s.end()) continue;  // e_i ^ e_i = 0
        // Moving e_i from slot k to its sorted slot passes every index strictly between.
        int between = 0;
        for (int other : s) {
          if (other != replaced && other > std::min(i, replaced) && other < std::max(i, replaced)) ++between;
        }
        std::vector<int> t = s;
        t[static_cast<std::size_t>(k)] = i;
        std::sort(t.begin(), t.end());
        const double sign = (between % 2 == 0) ? 1.0 : -1.0;
        g(rank.at(t), static_cast<Eigen::Index>(col)) += sign * entry;
      }
    }
  }
  return symmetrized(std::move(g));
}

}  // namespace speclab
