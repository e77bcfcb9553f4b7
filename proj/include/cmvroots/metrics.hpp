// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "cmvroots/poly.hpp"
#include "cmvroots/structqr.hpp"
#include "cmvroots/types.hpp"

namespace cmv {

/// Solve outcome plus the benchmark statistics. err is the average matched
/// absolute error, nne the maximum expected error bound, werr = err/nne,
/// averit = sweeps per eigenvalue. The error fields stay NaN until a
/// reference root set is supplied to summarize().
struct RootReport {
  std::vector<cplx> roots;
  std::vector<double> per_root_err;
  double err = 0.0;
  double nne = 0.0;
  double werr = 0.0;
  double averit = 0.0;
  long sweeps = 0;
  bool converged = true;
  std::vector<std::string> flags;
  std::vector<int> fill_per_sweep;  // band nonzero count after each sweep

  bool has_flag(const std::string& f) const;
};

/// Greedy global matching: repeatedly pair the closest unmatched
/// (computed, reference) pair; returns the per-pair distances in reference
/// order. Throws on length mismatch.
std::vector<double> match_roots(const std::vector<cplx>& computed, const std::vector<cplx>& reference);

/// Norm ingredients of the maximum expected error, computable either from the
/// s=0 representation or directly from the coefficient ratios (the two agree
/// because Uhat is a permutation).
double initial_norm_terms(const StructuredState& state0);
double initial_norm_terms(const Polynomial& p);

/// nne = (||A0_band||_inf + ||sigma^-1 f0||_inf + ||w0||_inf) * cond * eps.
double compute_nne(const Polynomial& p, const StructuredState& state0, double cond);

/// Machine precision used throughout the error model (MATLAB eps convention).
double unit_roundoff();

/// Match against the reference, then fill err/nne/werr/averit into a copy of
/// the solver report. cond is kappa_inf of the reference Vandermonde matrix.
RootReport summarize(const RootReport& solver_report, const Polynomial& p, const std::vector<cplx>& reference,
                     double cond);

}  // namespace cmv
