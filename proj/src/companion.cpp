// SPDX-License-Identifier: Apache-2.0
#include "cmvroots/companion.hpp"

#include <stdexcept>

namespace cmv {

PermutationMap build_permutation(int n) {
  if (n < 2) throw std::invalid_argument("build_permutation: n >= 2 required");
  PermutationMap m;
  m.perm.resize(static_cast<size_t>(n));
  m.inverse.resize(static_cast<size_t>(n));
  m.perm[0] = 0;
  for (int j = 1; j < n; ++j) {
    // 1-based: pi(2k) = k+1, pi(2k+1) = n-k+1.
    m.perm[static_cast<size_t>(j)] = (j % 2 == 1) ? (j + 1) / 2 : n - j / 2;
  }
  for (int j = 0; j < n; ++j) m.inverse[static_cast<size_t>(m.perm[static_cast<size_t>(j)])] = j;
  return m;
}

namespace {

/// Correction column p with C = U - e_1 p^H: p_j = conj(p_{n-1-j}/p_n) for
/// j < n-1 and p_{n-1} = conj(p_0/p_n) + 1.
std::vector<cplx> correction_vector(const Polynomial& p) {
  const int n = p.degree();
  const cplx pn = p.coeff(n);
  std::vector<cplx> v(static_cast<size_t>(n));
  for (int j = 0; j < n - 1; ++j) v[static_cast<size_t>(j)] = std::conj(p.coeff(n - 1 - j) / pn);
  v[static_cast<size_t>(n) - 1] = std::conj(p.coeff(0) / pn) + 1.0;
  return v;
}

/// Row index of the single 1 in column j of Uhat = P^T U P: the row i with
/// pi(i) = pi(j) + 1 (mod n).
int uhat_row_of_col(const PermutationMap& pi, int j) {
  const int n = static_cast<int>(pi.perm.size());
  return pi.inverse[static_cast<size_t>((pi.perm[static_cast<size_t>(j)] + 1) % n)];
}

}  // namespace

CompanionSetup companion_setup(const Polynomial& p) {
  const int n = p.degree();
  if (n < 2) throw std::invalid_argument("companion_setup: degree >= 2 required");
  if (p.coeff(n) == cplx(0.0)) throw std::invalid_argument("companion_setup: zero leading coefficient");
  CompanionSetup setup;
  setup.pi = build_permutation(n);
  const std::vector<cplx> pv = correction_vector(p);
  setup.phat.resize(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) setup.phat[static_cast<size_t>(j)] = pv[static_cast<size_t>(setup.pi.perm[static_cast<size_t>(j)])];
  setup.uhat_support.reserve(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) setup.uhat_support.emplace_back(uhat_row_of_col(setup.pi, j), j);
  return setup;
}

std::vector<cplx> apply_uhat(const PermutationMap& pi, const std::vector<cplx>& x) {
  const int n = static_cast<int>(pi.perm.size());
  std::vector<cplx> y(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) y[static_cast<size_t>(uhat_row_of_col(pi, j))] = x[static_cast<size_t>(j)];
  return y;
}

std::vector<cplx> apply_uhat_h(const PermutationMap& pi, const std::vector<cplx>& x) {
  const int n = static_cast<int>(pi.perm.size());
  std::vector<cplx> y(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) y[static_cast<size_t>(j)] = x[static_cast<size_t>(uhat_row_of_col(pi, j))];
  return y;
}

DenseMatrix companion_dense(const Polynomial& p) {
  const int n = p.degree();
  if (n < 1) throw std::invalid_argument("companion_dense: degree >= 1 required");
  const cplx pn = p.coeff(n);
  if (pn == cplx(0.0)) throw std::invalid_argument("companion_dense: zero leading coefficient");
  DenseMatrix c(n, n);
  for (int j = 0; j < n; ++j) c(0, j) = -p.coeff(n - 1 - j) / pn;
  for (int i = 1; i < n; ++i) c(i, i - 1) = 1.0;
  return c;
}

DenseMatrix companion_cmv_dense(const Polynomial& p) {
  const int n = p.degree();
  const DenseMatrix c = companion_dense(p);
  const PermutationMap pi = build_permutation(n);
  DenseMatrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = c(pi.perm[static_cast<size_t>(i)], pi.perm[static_cast<size_t>(j)]);
  return out;
}

StructuredState initial_state(const Polynomial& p) {
  const int n = p.degree();
  if (n < 4) throw std::invalid_argument("initial_state: degree >= 4 required (smaller degrees use the dense route)");
  if (p.coeff(0) == cplx(0.0))
    throw std::invalid_argument("initial_state: zero constant coefficient (strip zero roots first)");
  if (p.coeff(n) == cplx(0.0)) throw std::invalid_argument("initial_state: zero leading coefficient");

  const CompanionSetup setup = companion_setup(p);
  StructuredState s;
  s.n = n;
  s.sigma = -std::conj(p.coeff(0)) / std::conj(p.coeff(n));
  s.band.assign(static_cast<size_t>(n) * StructuredState::kBandSlots, cplx(0.0));
  s.z.assign(static_cast<size_t>(n), cplx(0.0));
  s.z[0] = 1.0;
  s.w = setup.phat;
  s.f = apply_uhat(setup.pi, s.w);
  s.g = apply_uhat_h(setup.pi, s.z);  // = e_3

  // Band restriction of Chat = Uhat - e_1 phat^H.
  for (const auto& [i, j] : setup.uhat_support)
    if (in_band_profile(i, j, n)) s.band_set(i, j, cplx(1.0));
  for (int j = 0; j <= profile_hi(0, n); ++j)
    s.band_set(0, j, s.band_at(0, j) - std::conj(setup.phat[static_cast<size_t>(j)]));
  // The Uhat one in row 0 coincides with the "+1" slot of phat; forming
  // 1 - (p0/pn + 1) loses bits, so pin that entry to -p0/pn directly.
  for (const auto& [i, j] : setup.uhat_support)
    if (i == 0) s.band_set(0, j, -p.coeff(0) / p.coeff(n));
  return s;
}

}  // namespace cmv
