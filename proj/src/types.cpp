// SPDX-License-Identifier: Apache-2.0
#include "cmvroots/types.hpp"

#include <algorithm>
#include <cmath>

namespace cmv {

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul: shape mismatch");
  DenseMatrix out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx(0.0)) continue;
      for (int j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("sub: shape mismatch");
  DenseMatrix out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) - b(i, j);
  return out;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("diff: shape mismatch");
  double best = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) best = std::max(best, std::abs(a(i, j) - b(i, j)));
  return best;
}

std::pair<cplx, cplx> eig2x2(cplx a, cplx b, cplx c, cplx d) {
  const cplx mid = 0.5 * (a + d);
  const cplx det = a * d - b * c;
  // (a-d)^2/4 + bc avoids the mid^2 - det cancellation.
  const cplx half_diff = 0.5 * (a - d);
  const cplx disc = std::sqrt(half_diff * half_diff + b * c);
  const cplx r1 = mid + disc;
  const cplx r2 = mid - disc;
  cplx big = (std::abs(r1) >= std::abs(r2)) ? r1 : r2;
  if (big == cplx(0.0)) return {cplx(0.0), cplx(0.0)};
  return {big, det / big};
}

std::pair<double, double> svd2x2(cplx a, cplx b, cplx c, cplx d) {
  const double fro2 = std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d);
  const double det = std::abs(a * d - b * c);
  const double inner = fro2 * fro2 - 4.0 * det * det;
  const double s1sq = 0.5 * (fro2 + std::sqrt(std::max(0.0, inner)));
  const double s1 = std::sqrt(s1sq);
  const double s2 = (s1 > 0.0) ? det / s1 : 0.0;
  return {s1, s2};
}

}  // namespace cmv
