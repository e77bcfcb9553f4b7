// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>

#include "cmvroots/metrics.hpp"
#include "cmvroots/poly.hpp"

namespace cmv {

struct SolveOptions {
  long max_sweeps = 0;               // 0 -> default 30 * degree
  double deflation_multiplier = 1.0; // scales the deflation tolerance
  bool dense_fallback = true;        // finish with the dense route on breakdown
  bool record_fill = false;          // log band fill-in per sweep
};

/// Rootfinding driver: strips zero roots, routes degree <= 4 to the dense
/// oracle, otherwise iterates shift -> structured sweep -> deflation until
/// the active window empties. Reports are deterministic in (p, opts).
RootReport solve(const Polynomial& p, const SolveOptions& opts = {});

/// Reference driver over the dense companion matrix with the identical shift
/// and deflation policy (the oracle path).
RootReport solve_dense(const Polynomial& p, long max_sweeps = 0);

}  // namespace cmv
