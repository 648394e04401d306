#pragma once

#include <array>

namespace nullpoint {

using Matrix4 = std::array<std::array<double, 4>, 4>;

/// Determinant by Gaussian elimination with partial pivoting.
double determinant4(Matrix4 m);

/// Singular values, descending. Jacobi iteration on M^T M; plenty for 4x4.
std::array<double, 4> singular_values(const Matrix4& m);

/// sigma_min / sigma_max; 0 for an exactly rank-deficient matrix.
double condition_ratio(const Matrix4& m);

/// Solves a 2x2 system; throws std::domain_error if it is singular to
/// working precision.
std::array<double, 2> solve2x2(const std::array<std::array<double, 2>, 2>& m,
                               const std::array<double, 2>& rhs);

}  // namespace nullpoint
