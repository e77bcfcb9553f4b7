// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <limits>

#include "cmvroots/prng.hpp"
#include "cmvroots/types.hpp"

// Shift and deflation policy shared verbatim by the structured path and the
// dense reference driver, so per-step comparisons isolate representation bugs
// instead of policy drift.
namespace cmv::qrpolicy {

/// Deflation-free sweeps tolerated before an exceptional shift. The first
/// deflation legitimately needs ~n/2 sweeps while the band profile fills from
/// the polynomial data (early shifts stay near zero over that phase and an
/// escape shift there wrecks the fill-in), so the limit scales with n.
inline int stagnation_limit(int n) { return n > 10 ? n : 10; }

inline double deflation_tol(cplx dk, cplx dk1, double fallback_scale, double multiplier) {
  double base = std::abs(dk) + std::abs(dk1);
  if (base == 0.0) base = fallback_scale;
  return multiplier * std::numeric_limits<double>::epsilon() * base;
}

/// Wilkinson choice: the eigenvalue of [[a, b], [c, d]] closest to d.
inline cplx wilkinson_from_block(cplx a, cplx b, cplx c, cplx d) {
  const auto [e1, e2] = eig2x2(a, b, c, d);
  return (std::abs(e1 - d) <= std::abs(e2 - d)) ? e1 : e2;
}

/// Deterministic random-angle escape shift, keyed by the sweep counter.
inline cplx exceptional_shift(long sweep_index, double scale) {
  SplitMix64 rng(0x715EED5EEDull ^ static_cast<uint64_t>(sweep_index));
  const double theta = 2.0 * 3.14159265358979323846 * rng.uniform01();
  if (!(scale > 0.0)) scale = 1.0;
  return std::polar(scale, theta);
}

}  // namespace cmv::qrpolicy
