#include "nullpoint/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace nullpoint {

double determinant4(Matrix4 m) {
  double det = 1.0;
  for (int col = 0; col < 4; ++col) {
    int pivot = col;
    for (int row = col + 1; row < 4; ++row)
      if (std::fabs(m[row][col]) > std::fabs(m[pivot][col])) pivot = row;
    if (m[pivot][col] == 0.0) return 0.0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (int row = col + 1; row < 4; ++row) {
      const double factor = m[row][col] / m[col][col];
      for (int k = col; k < 4; ++k) m[row][k] -= factor * m[col][k];
    }
  }
  return det;
}

std::array<double, 4> singular_values(const Matrix4& m) {
  // Gram matrix, then cyclic Jacobi. Eigenvalues of M^T M are sigma^2.
  std::array<std::array<double, 4>, 4> a{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double s = 0.0;
      for (int k = 0; k < 4; ++k) s += m[k][i] * m[k][j];
      a[i][j] = s;
    }
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < 4; ++p)
      for (int q = p + 1; q < 4; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-300) break;
    for (int p = 0; p < 4; ++p)
      for (int q = p + 1; q < 4; ++q) {
        if (a[p][q] == 0.0) continue;
        const double tau = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (int k = 0; k < 4; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < 4; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
  }
  std::array<double, 4> sv{};
  for (int i = 0; i < 4; ++i) sv[i] = std::sqrt(std::max(0.0, a[i][i]));
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

double condition_ratio(const Matrix4& m) {
  const auto sv = singular_values(m);
  if (sv[0] == 0.0) return 0.0;
  return sv[3] / sv[0];
}

std::array<double, 2> solve2x2(const std::array<std::array<double, 2>, 2>& m,
                               const std::array<double, 2>& rhs) {
  const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  const double scale = std::fabs(m[0][0]) + std::fabs(m[0][1]) +
                       std::fabs(m[1][0]) + std::fabs(m[1][1]);
  if (std::fabs(det) <= 1e-14 * scale * scale)
    throw std::domain_error("solve2x2: singular system");
  return {(rhs[0] * m[1][1] - rhs[1] * m[0][1]) / det,
          (rhs[1] * m[0][0] - rhs[0] * m[1][0]) / det};
}

}  // namespace nullpoint
