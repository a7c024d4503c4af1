#pragma once

#include <cstdint>
#include <vector>

#include "speclab/linalg.hpp"

namespace speclab {

/// Largest binomial(d, n) accepted for either side of a compound matrix.
inline constexpr std::uint64_t kCompoundBudget = 10'000;

std::uint64_t binomial(int d, int n);

/// All n-subsets of {0, ..., d-1} in lexicographic order.
std::vector<std::vector<int>> combinations(int d, int n);

/// Determinant by LU with partial pivoting.
double determinant(Eigen::MatrixXd m);

/// n-th compound (antisymmetric power) of A: entry (I, J) is the n x n minor
/// on rows I and columns J, with I, J running over lexicographic n-subsets.
/// Throws BudgetError when binomial(rows, n) or binomial(cols, n) exceeds the budget.
GeneralMatrix compound_matrix(const GeneralMatrix& a, int n);

/// Generator d-wedge-n(A) on the lexicographic antisymmetric basis, so that
/// compound(exp(-tA), n) == exp(-t * wedge_generator(A, n)).
SymmetricMatrix wedge_generator(const SymmetricMatrix& a, int n);

}  // namespace speclab
