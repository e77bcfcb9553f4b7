// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "cmvroots/types.hpp"

namespace cmv {

// Staircase profile of the iterates (0-based). Rows 2k and 2k+1 share the
// band columns [center-2, center+2] where center = 2k+1; everything right of
// center+2 in the leading rows is the rank-two region represented by the
// generators, everything left of center-2 is structurally zero.
inline int profile_center(int r) { return (r % 2 == 0) ? r + 1 : r; }
inline int profile_lo(int r) { return profile_center(r) - 2 < 0 ? 0 : profile_center(r) - 2; }
inline int profile_hi(int r, int n) {
  int hi = profile_center(r) + 2;
  return hi > n - 1 ? n - 1 : hi;
}
inline bool in_band_profile(int r, int c, int n) {
  return c >= profile_lo(r) && c <= profile_hi(r, n);
}
/// Last row (0-based) that owns a generator-represented region; rows beyond
/// it have their full support inside the band.
inline int rank_two_row_limit(int n) { return 2 * ((n + 1) / 2) - 5; }
inline bool in_rank_two_region(int r, int c, int n) {
  return r <= rank_two_row_limit(n) && c >= profile_center(r) + 3;
}

/// Generalized Givens reflector acting on rows/columns (k, k+1) with unitary
/// core [[conj(g), s], [conj(s), -g]], |g|^2 + |s|^2 = 1. A `unit` reflector
/// is the 1x1 phase factor diag(..., g, ...) at index k with |g| = 1; the
/// annihilator returns the do-nothing pair (g=1, s=0) for degenerate input.
struct Reflector {
  int k = 0;
  cplx gamma{1.0, 0.0};
  cplx sigma{0.0, 0.0};
  bool unit = false;

  bool is_identity() const { return !unit && sigma == cplx(0.0) && gamma == cplx(1.0); }

  // In-place actions. apply_left multiplies by G^H from the left (rows k,k+1
  // or row k for unit factors), apply_right by G from the right; the vector
  // form is the shared G^H x update used for all four generators.
  void apply_left(DenseMatrix& m) const;
  void apply_right(DenseMatrix& m) const;
  void apply_vec(std::vector<cplx>& v) const;
  void apply_pair(cplx& x, cplx& y) const;  // (x,y) <- G^H (x,y)
};

/// Reflector G with G^H (x, y)^T = (r, 0)^T, r = sqrt(|x|^2+|y|^2) >= 0.
/// y == 0 returns the identity (degenerate input contract).
Reflector reflector_annihilate(cplx x, cplx y, int k);

/// Ordered factorization Q = G_1 G_2 ... recorded by one sweep; composing the
/// factors left-to-right reproduces the unitary similarity of that sweep.
struct SweepFactorization {
  std::vector<Reflector> factors;
  DenseMatrix compose(int n) const;
};

/// O(n) representation of one QR iterate A_s: the banded staircase part in a
/// fixed n x 6 rectangle (row r holds columns profile_center(r)-2 ..
/// profile_center(r)+3, out-of-profile slots exactly zero), the four
/// generator vectors, and the sweep-invariant scalar sigma = 1 - z^H U w.
struct StructuredState {
  int n = 0;
  int pst = 0;  // converged rows at the top
  int qst = 0;  // converged rows at the bottom
  long sweeps = 0;
  cplx sigma{};
  std::vector<cplx> band;  // n rows x 6 slots, row-major
  std::vector<cplx> z, w, f, g;

  static constexpr int kBandSlots = 6;

  cplx band_at(int r, int c) const {
    int off = c - (profile_center(r) - 2);
    return (off < 0 || off >= kBandSlots) ? cplx(0.0) : band[static_cast<size_t>(r) * kBandSlots + off];
  }
  void band_set(int r, int c, cplx v) {
    int off = c - (profile_center(r) - 2);
    if (off < 0 || off >= kBandSlots) throw std::invalid_argument("band_set: column outside band slots");
    band[static_cast<size_t>(r) * kBandSlots + off] = v;
  }

  int active_lo() const { return pst; }           // first active row (0-based)
  int active_hi() const { return n - qst - 1; }   // last active row (0-based)
  int active_size() const { return n - pst - qst; }

  /// Count of nonzero band slots; the per-sweep fill-in diagnostic.
  int band_nonzeros() const;
};

/// Entry a_{ij} of the represented iterate: band storage inside the profile,
/// -sigma^{-1} f_i conj(g_j) - z_i conj(w_j) in the rank-two region, zero
/// elsewhere. Valid over the whole matrix, not just the active window.
cplx reconstruct_entry(const StructuredState& s, int i, int j);

/// Dense reconstruction (tests and fallback path).
DenseMatrix reconstruct_dense(const StructuredState& s);

/// Wilkinson shift: the eigenvalue of the trailing 2x2 of the active window
/// closest to its bottom-right entry. Window size 1 returns the lone entry.
cplx wilkinson_shift(const StructuredState& s);

/// One explicit shifted QR step A <- Q^H A Q restricted to the active window,
/// in O(window) arithmetic. Returns the reflector factorization of Q (with
/// the canonical-phase factors making R's diagonal real non-negative).
/// Throws std::runtime_error when a non-finite value appears (representation
/// breakdown; caller falls back to the dense route).
SweepFactorization qr_sweep(StructuredState& s, cplx shift);

/// Edge deflation: detaches converged trailing/leading 1x1 and 2x2 blocks
/// whose coupling entries are below tol_multiplier * eps * (|a_kk|+|a_k+1,k+1|)
/// (falling back to eps * inf-norm of the band when both diagonals vanish),
/// zeroes those entries exactly, and returns the extracted eigenvalues.
std::vector<cplx> deflate(StructuredState& s, double tol_multiplier = 1.0);

}  // namespace cmv
