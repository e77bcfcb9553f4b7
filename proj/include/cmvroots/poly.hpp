// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cmvroots/types.hpp"

namespace cmv {

/// Polynomial p(z) = c0 + c1 z + ... + cn z^n with complex coefficients,
/// stored in increasing degree order. The leading coefficient must be nonzero
/// for degree >= 1; the degree-0 constant is allowed as the degenerate result
/// of strip_zero_roots.
class Polynomial {
 public:
  explicit Polynomial(std::vector<cplx> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<cplx>& coeffs() const { return coeffs_; }
  const cplx& coeff(int j) const { return coeffs_.at(static_cast<size_t>(j)); }

 private:
  std::vector<cplx> coeffs_;
};

struct EvalResult {
  cplx value;              // p(z) by Horner's scheme
  double scaled_residual;  // |p(z)| / sum_j |c_j| |z|^j (0 when both vanish)
};

EvalResult evaluate(const Polynomial& p, cplx z);

/// Factor p(z) = z^m q(z) with q(0) != 0. Returns (q, m); q may be the
/// degenerate constant when p is a pure power of z.
std::pair<Polynomial, int> strip_zero_roots(const Polynomial& p);

// --- benchmark families ---

/// p(z) = 1 + (n/(n+1) + (n+1)/n) z^n + z^{2n}; roots on two circles near the
/// unit circle, known in closed form.
Polynomial gen_p1(int n);

/// Closed-form roots of gen_p1(n): the n-th roots of -n/(n+1) and -(n+1)/n.
std::vector<cplx> p1_roots(int n);

/// p(z) = (1/n)(sum (n+j) z^j + (n+1) z^n + sum (n+j) z^{2n-j}); palindromic.
Polynomial gen_p2(int n);

/// p(z) = (1-l) z^{n+1} - (l+1) z^n + (l+1) z - (1-l); antipalindromic,
/// 0 < lambda < 1.
Polynomial gen_p3(int n, double lambda);

enum class P4Kind { bernoulli, chebyshev, exp };

/// Small-degree classical families, 1 <= n <= 30.
Polynomial gen_p4(P4Kind kind, int n);

/// Bernoulli numbers b_0..b_m by the standard recurrence
/// sum_{k<=m} C(m+1,k) b_k = 0, b_0 = 1 (b_1 = -1/2 convention).
std::vector<double> bernoulli_numbers(int m);

/// Random coefficients a_j * 10^{e_j}, a_j in [-1,1], e_j in [-3,3];
/// deterministic in (n, seed); end coefficients redrawn if exactly zero.
Polynomial gen_p5(int n, uint64_t seed);

/// p(z) = s(z) s(1/z) z^n for the degree-n coefficient list s; exactly
/// palindromic by construction.
Polynomial symmetrize(const std::vector<cplx>& s);

/// gen_p5-style random s symmetrized to a degree-2n palindromic polynomial.
Polynomial gen_p6(int n, uint64_t seed);

}  // namespace cmv
