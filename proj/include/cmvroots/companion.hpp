// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>
#include <vector>

#include "cmvroots/poly.hpp"
#include "cmvroots/structqr.hpp"
#include "cmvroots/types.hpp"

namespace cmv {

/// The permutation pi that conjugates the cyclic-shift matrix U into the
/// CMV-like shaped Uhat = P^T U P. 0-based: perm[0]=0, perm[2k-1]=k,
/// perm[2k]=n-k for k >= 1.
struct PermutationMap {
  std::vector<int> perm;     // perm[j] = pi(j)
  std::vector<int> inverse;  // inverse[perm[j]] = j
};

PermutationMap build_permutation(int n);

/// The permuted correction setup: phat = P^T p for the companion correction
/// vector p, plus the support of Uhat as (row, col) pairs. Uhat is never
/// stored densely on the solver path; the support drives O(n) applications.
struct CompanionSetup {
  PermutationMap pi;
  std::vector<cplx> phat;
  std::vector<std::pair<int, int>> uhat_support;  // one entry per column
};

CompanionSetup companion_setup(const Polynomial& p);

/// Uhat x and Uhat^H x through the permutation structure, O(n).
std::vector<cplx> apply_uhat(const PermutationMap& pi, const std::vector<cplx>& x);
std::vector<cplx> apply_uhat_h(const PermutationMap& pi, const std::vector<cplx>& x);

/// Upper Hessenberg companion matrix C(p) with first row -p_{n-1}/p_n ...
/// -p_0/p_n and unit subdiagonal. Requires p_n != 0.
DenseMatrix companion_dense(const Polynomial& p);

/// Dense Chat = P^T C(p) P (small-instance checks and the oracle route).
DenseMatrix companion_cmv_dense(const Polynomial& p);

/// The s = 0 structured representation of A_0 = Chat = Uhat - e_1 phat^H:
/// band = profile restriction of Chat, z = e_1, w = phat, f = Uhat w,
/// g = Uhat^H e_1 = e_3, sigma = -conj(p_0)/conj(p_n). Requires p_0 != 0,
/// p_n != 0 and degree >= 4.
StructuredState initial_state(const Polynomial& p);

}  // namespace cmv
