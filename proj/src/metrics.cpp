// SPDX-License-Identifier: Apache-2.0
#include "cmvroots/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>

#include "cmvroots/companion.hpp"

namespace cmv {

bool RootReport::has_flag(const std::string& f) const {
  return std::find(flags.begin(), flags.end(), f) != flags.end();
}

std::vector<double> match_roots(const std::vector<cplx>& computed, const std::vector<cplx>& reference) {
  if (computed.size() != reference.size()) throw std::invalid_argument("match_roots: length mismatch");
  const int n = static_cast<int>(computed.size());
  std::vector<std::tuple<double, int, int>> pairs;
  pairs.reserve(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      pairs.emplace_back(std::abs(computed[static_cast<size_t>(j)] - reference[static_cast<size_t>(i)]), i, j);
  std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
    if (std::get<1>(a) != std::get<1>(b)) return std::get<1>(a) < std::get<1>(b);
    return std::get<2>(a) < std::get<2>(b);
  });
  std::vector<double> err(static_cast<size_t>(n), -1.0);
  std::vector<char> ref_used(static_cast<size_t>(n), 0), comp_used(static_cast<size_t>(n), 0);
  int matched = 0;
  for (const auto& [d, i, j] : pairs) {
    if (matched == n) break;
    if (ref_used[static_cast<size_t>(i)] || comp_used[static_cast<size_t>(j)]) continue;
    ref_used[static_cast<size_t>(i)] = comp_used[static_cast<size_t>(j)] = 1;
    err[static_cast<size_t>(i)] = d;
    ++matched;
  }
  return err;
}

double unit_roundoff() { return std::numeric_limits<double>::epsilon(); }

double initial_norm_terms(const StructuredState& s0) {
  double band_norm = 0.0;
  for (int r = 0; r < s0.n; ++r) {
    double acc = 0.0;
    for (int c = profile_lo(r); c <= profile_hi(r, s0.n); ++c) acc += std::abs(s0.band_at(r, c));
    band_norm = std::max(band_norm, acc);
  }
  double fmax = 0.0, wmax = 0.0;
  for (const cplx& v : s0.f) fmax = std::max(fmax, std::abs(v));
  for (const cplx& v : s0.w) wmax = std::max(wmax, std::abs(v));
  return band_norm + fmax / std::abs(s0.sigma) + wmax;
}

double initial_norm_terms(const Polynomial& p) {
  const int n = p.degree();
  if (n < 1) throw std::invalid_argument("initial_norm_terms: degree >= 1 required");
  if (p.coeff(0) == cplx(0.0)) throw std::invalid_argument("initial_norm_terms: strip zero roots first");
  const cplx pn = p.coeff(n);
  const double sigma_inv = std::abs(pn / p.coeff(0));
  if (n == 1) {
    const double w = std::abs(std::conj(p.coeff(0) / pn) + 1.0);
    return std::abs(p.coeff(0) / pn) + sigma_inv * w + w;
  }
  const CompanionSetup setup = companion_setup(p);
  // ||A0_band||_inf: row 0 carries the correction, every other row sums to 1.
  double row0 = 0.0;
  const int row0_hi = profile_hi(0, n);
  const int urow0_col = [&] {
    for (const auto& [i, j] : setup.uhat_support)
      if (i == 0) return j;
    return -1;
  }();
  for (int c = 0; c <= row0_hi; ++c)
    row0 += std::abs((c == urow0_col ? cplx(1.0) : cplx(0.0)) - std::conj(setup.phat[static_cast<size_t>(c)]));
  const double band_norm = std::max(row0, 1.0);
  // f0 = Uhat w0 is a permutation of w0, so both inf-norms equal max |phat|.
  double wmax = 0.0;
  for (const cplx& v : setup.phat) wmax = std::max(wmax, std::abs(v));
  return band_norm + sigma_inv * wmax + wmax;
}

double compute_nne(const Polynomial& p, const StructuredState& state0, double cond) {
  if (state0.n != p.degree()) throw std::invalid_argument("compute_nne: state/polynomial mismatch");
  return initial_norm_terms(state0) * cond * unit_roundoff();
}

RootReport summarize(const RootReport& solver_report, const Polynomial& p, const std::vector<cplx>& reference,
                     double cond) {
  RootReport r = solver_report;
  r.per_root_err = match_roots(r.roots, reference);
  double acc = 0.0;
  for (double e : r.per_root_err) acc += e;
  r.err = r.per_root_err.empty() ? 0.0 : acc / static_cast<double>(r.per_root_err.size());

  const auto [stripped, zero_count] = strip_zero_roots(p);
  (void)zero_count;
  const double terms = (stripped.degree() >= 1) ? initial_norm_terms(stripped) : 0.0;
  r.nne = terms * cond * unit_roundoff();
  if (std::isinf(r.nne)) {
    r.werr = 0.0;  // degenerate conditioning reported as 0 with a flag, not NaN
    if (!r.has_flag("infinite_nne")) r.flags.push_back("infinite_nne");
  } else {
    r.werr = (r.nne > 0.0) ? r.err / r.nne : 0.0;
  }

  // Greedy matching coincides with optimal matching only when reference roots
  // are well separated relative to the errors; flag when that is in doubt.
  double max_err = 0.0;
  for (double e : r.per_root_err) max_err = std::max(max_err, e);
  if (max_err > 0.0) {
    const int n = static_cast<int>(reference.size());
    double min_sep = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        min_sep = std::min(min_sep, std::abs(reference[static_cast<size_t>(i)] - reference[static_cast<size_t>(j)]));
    if (min_sep < 10.0 * max_err && !r.has_flag("matching_ambiguous")) r.flags.push_back("matching_ambiguous");
  }
  return r;
}

}  // namespace cmv
