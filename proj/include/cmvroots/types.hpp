// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cmv {

using cplx = std::complex<double>;

/// Row-major dense complex matrix used by the reference (oracle) path and by
/// small-instance structure checks. Not meant for large-scale work.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("DenseMatrix: negative dimension");
  }

  static DenseMatrix identity(int n) {
    DenseMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  cplx& operator()(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
  const cplx& operator()(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

  DenseMatrix adjoint() const {
    DenseMatrix m(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) m(c, r) = std::conj((*this)(r, c));
    return m;
  }

  double inf_norm() const {  // max absolute row sum
    double best = 0.0;
    for (int r = 0; r < rows_; ++r) {
      double s = 0.0;
      for (int c = 0; c < cols_; ++c) s += std::abs((*this)(r, c));
      if (s > best) best = s;
    }
    return best;
  }

  double max_abs() const {
    double best = 0.0;
    for (const cplx& v : a_) best = std::max(best, std::abs(v));
    return best;
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<cplx> a_;
};

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);

/// Eigenvalues of [[a, b], [c, d]] by the numerically stable quadratic formula:
/// the larger-magnitude root from the discriminant, the other via the product
/// of roots. Returned as (closer-to-d first? no: (big, small)).
std::pair<cplx, cplx> eig2x2(cplx a, cplx b, cplx c, cplx d);

/// Singular values (s1 >= s2 >= 0) of a 2x2 block.
std::pair<double, double> svd2x2(cplx a, cplx b, cplx c, cplx d);

}  // namespace cmv
