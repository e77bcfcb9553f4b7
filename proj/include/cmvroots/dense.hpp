// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>
#include <vector>

#include "cmvroots/types.hpp"

namespace cmv {

struct QRFactors {
  DenseMatrix q;
  DenseMatrix r;
};

/// Dense QR by a cascade of generalized Givens reflectors, column by column,
/// bottom-up, followed by a diagonal phase normalization so that R has real
/// non-negative diagonal (canonical convention; Q is then unique for
/// nonsingular input).
QRFactors dense_qr(const DenseMatrix& a);

/// One explicit shifted QR step: a - shift I = QR, returns Q^H a Q.
DenseMatrix dense_qr_step(const DenseMatrix& a, cplx shift);

/// The same step restricted to the principal window [lo, hi] (0-based,
/// inclusive): Q embeds as identity outside, rows/cols of the full matrix are
/// updated accordingly. Shared by the eigenvalue driver and the per-step
/// equivalence tests.
void dense_windowed_qr_step(DenseMatrix& a, cplx shift, int lo, int hi);

/// Non-decreasing lower-profile envelope m_j of the support (running max of
/// the deepest nonzero row per column); preserved by QR iteration.
std::vector<int> staircase_envelope(const DenseMatrix& a);

/// Zero everything below the envelope (the iterate is structurally zero
/// there; full-row reflector arithmetic leaves rounding dust).
void clip_below_envelope(DenseMatrix& a, const std::vector<int>& m);

struct DenseEigResult {
  std::vector<cplx> values;
  long sweeps = 0;
  bool converged = true;
};

/// Explicit shifted QR eigenvalue driver with the same Wilkinson shift,
/// deflation test and exceptional-shift policy as the structured path, so
/// per-step divergence isolates representation bugs rather than policy ones.
DenseEigResult dense_eigenvalues(const DenseMatrix& a, long max_sweeps);

/// kappa_inf(V) = ||V||_inf ||V^-1||_inf for the companion eigenvector
/// (Vandermonde) matrix with column k = (l_k^{n-1}, ..., l_k, 1)^T, via LU
/// with partial pivoting. +infinity for numerically singular V.
double vandermonde_condition(const std::vector<cplx>& roots);

}  // namespace cmv
