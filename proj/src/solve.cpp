// SPDX-License-Identifier: Apache-2.0
#include "cmvroots/solve.hpp"

#include <cmath>
#include <stdexcept>

#include "cmvroots/companion.hpp"
#include "cmvroots/dense.hpp"
#include "cmvroots/policy.hpp"
#include "cmvroots/structqr.hpp"

namespace cmv {

namespace {

long default_max_sweeps(int degree) { return 30L * degree; }

/// Eigenvalues of the remaining active window via the dense route (breakdown
/// or non-convergence fallback).
DenseEigResult finish_window_dense(const StructuredState& st) {
  const int lo = st.active_lo(), size = st.active_size();
  DenseMatrix a(size, size);
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) a(i, j) = reconstruct_entry(st, lo + i, lo + j);
  return dense_eigenvalues(a, default_max_sweeps(size) + 60);
}

}  // namespace

RootReport solve(const Polynomial& p, const SolveOptions& opts) {
  if (p.degree() < 1) throw std::invalid_argument("solve: degree >= 1 required");
  auto [q, zero_count] = strip_zero_roots(p);
  RootReport rep;
  rep.roots.assign(static_cast<size_t>(zero_count), cplx(0.0));
  const int d = q.degree();
  const int total = p.degree();
  if (d == 0) {
    rep.averit = 0.0;
    return rep;
  }
  const long max_sweeps = opts.max_sweeps > 0 ? opts.max_sweeps : default_max_sweeps(d);

  if (d <= 4) {
    // The structured band machinery has degenerate index ranges here.
    const DenseEigResult res = dense_eigenvalues(companion_dense(q), max_sweeps);
    rep.roots.insert(rep.roots.end(), res.values.begin(), res.values.end());
    rep.sweeps = res.sweeps;
    rep.converged = res.converged;
    if (!res.converged) rep.flags.push_back("nonconvergence");
    rep.averit = static_cast<double>(rep.sweeps) / total;
    return rep;
  }

  StructuredState st = initial_state(q);
  std::vector<cplx> found = deflate(st, opts.deflation_multiplier);
  int stagnation = 0;
  bool breakdown = false;

  while (st.active_size() > 0 && st.sweeps < max_sweeps) {
    if (st.active_size() <= 2) {
      const std::vector<cplx> last = deflate(st, opts.deflation_multiplier);
      found.insert(found.end(), last.begin(), last.end());
      break;
    }
    cplx shift;
    if (stagnation >= qrpolicy::stagnation_limit(st.active_size())) {
      const int hi = st.active_hi();
      const double scale = std::sqrt(std::norm(st.band_at(hi - 1, hi - 1)) + std::norm(st.band_at(hi - 1, hi)) +
                                     std::norm(st.band_at(hi, hi - 1)) + std::norm(st.band_at(hi, hi)));
      shift = qrpolicy::exceptional_shift(st.sweeps, scale);
      stagnation = 0;
    } else {
      shift = wilkinson_shift(st);
    }
    try {
      qr_sweep(st, shift);
    } catch (const std::runtime_error&) {
      breakdown = true;
      rep.flags.push_back("breakdown");
      break;
    }
    if (opts.record_fill) rep.fill_per_sweep.push_back(st.band_nonzeros());
    const std::vector<cplx> newly = deflate(st, opts.deflation_multiplier);
    stagnation = newly.empty() ? stagnation + 1 : 0;
    found.insert(found.end(), newly.begin(), newly.end());
  }

  rep.sweeps = st.sweeps;
  if (st.active_size() > 0) {
    if (!breakdown) rep.flags.push_back("nonconvergence");
    if (opts.dense_fallback) {
      rep.flags.push_back("dense_fallback");
      const DenseEigResult res = finish_window_dense(st);
      found.insert(found.end(), res.values.begin(), res.values.end());
      rep.converged = res.converged;
    } else {
      rep.converged = false;
    }
  }
  rep.roots.insert(rep.roots.end(), found.begin(), found.end());
  rep.averit = static_cast<double>(rep.sweeps) / total;
  return rep;
}

RootReport solve_dense(const Polynomial& p, long max_sweeps) {
  if (p.degree() < 1) throw std::invalid_argument("solve_dense: degree >= 1 required");
  auto [q, zero_count] = strip_zero_roots(p);
  RootReport rep;
  rep.roots.assign(static_cast<size_t>(zero_count), cplx(0.0));
  const int total = p.degree();
  if (q.degree() == 0) {
    rep.averit = 0.0;
    return rep;
  }
  if (max_sweeps <= 0) max_sweeps = default_max_sweeps(q.degree());
  const DenseEigResult res = dense_eigenvalues(companion_dense(q), max_sweeps);
  rep.roots.insert(rep.roots.end(), res.values.begin(), res.values.end());
  rep.sweeps = res.sweeps;
  rep.converged = res.converged;
  if (!res.converged) rep.flags.push_back("nonconvergence");
  rep.averit = static_cast<double>(rep.sweeps) / total;
  return rep;
}

}  // namespace cmv
