// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <limits>

#include "cmvroots/companion.hpp"
#include "cmvroots/dense.hpp"
#include "cmvroots/metrics.hpp"
#include "cmvroots/poly.hpp"
#include "cmvroots/solve.hpp"
#include "cmvroots/structqr.hpp"
#include "doctest.h"

using namespace cmv;

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();

double mean_err(const std::vector<cplx>& got, const std::vector<cplx>& want) {
  const auto errs = match_roots(got, want);
  double acc = 0.0;
  for (double e : errs) acc += e;
  return acc / static_cast<double>(errs.size());
}
}  // namespace

TEST_CASE("solve: residual bound on a generic quintic") {
  Polynomial p(std::vector<cplx>{2.0, -3.0, 0.0, 0.0, 4.0, 1.0});
  RootReport rep = solve(p);
  REQUIRE(rep.roots.size() == 5);
  CHECK(rep.converged);
  for (const cplx& r : rep.roots) CHECK(evaluate(p, r).scaled_residual <= 1e3 * 5 * kEps);
  CHECK(rep.averit == doctest::Approx(static_cast<double>(rep.sweeps) / 5.0));
}

TEST_CASE("solve: zero roots stripped and reported first") {
  Polynomial p(std::vector<cplx>{0.0, 0.0, -6.0, 11.0, -6.0, 1.0});  // z^2 (z-1)(z-2)(z-3)
  RootReport rep = solve(p);
  REQUIRE(rep.roots.size() == 5);
  CHECK(rep.roots[0] == cplx(0.0));
  CHECK(rep.roots[1] == cplx(0.0));
  std::vector<double> rest{rep.roots[2].real(), rep.roots[3].real(), rep.roots[4].real()};
  std::sort(rest.begin(), rest.end());
  CHECK(rest[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(rest[1] == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(rest[2] == doctest::Approx(3.0).epsilon(1e-10));

  // pure power of z
  RootReport zcube = solve(Polynomial(std::vector<cplx>{0.0, 0.0, 0.0, 1.0}));
  CHECK(zcube.roots == std::vector<cplx>(3, cplx(0.0)));

  CHECK_THROWS_AS(solve(Polynomial(std::vector<cplx>{1.0})), std::invalid_argument);
}

TEST_CASE("solve: P3(64) accuracy and sweep counts") {
  Polynomial p = gen_p3(64, 0.9);
  RootReport fast = solve(p);
  RootReport ref = solve_dense(p);
  REQUIRE(fast.converged);
  REQUIRE(ref.converged);
  CHECK(fast.averit <= 4.0);
  CHECK(mean_err(fast.roots, ref.roots) <= 1e-12);
}

TEST_CASE("solve: P1(32) against closed form") {
  Polynomial p = gen_p1(32);
  RootReport rep = solve(p);
  REQUIRE(rep.converged);
  const auto errs = match_roots(rep.roots, p1_roots(32));
  for (double e : errs) CHECK(e <= 1e-12);
}

TEST_CASE("solve: generator invariants hold along the run (small n dense checks)") {
  Polynomial p = gen_p5(16, 5);
  StructuredState st = initial_state(p);
  const int n = st.n;
  for (int s = 0; s < 20 && st.active_size() > 2; ++s) {
    qr_sweep(st, wilkinson_shift(st));
    deflate(st);

    DenseMatrix a = reconstruct_dense(st);
    DenseMatrix u(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) u(i, j) = a(i, j) + st.z[static_cast<size_t>(i)] * std::conj(st.w[static_cast<size_t>(j)]);

    // Deflation zeroes band entries of size eps * (local diagonal scale);
    // identities involving U inherit that model error, so the tolerances
    // carry the band magnitude.
    double band_scale = 1.0;
    for (int r = 0; r < n; ++r)
      for (int c = profile_lo(r); c <= profile_hi(r, n); ++c)
        band_scale = std::max(band_scale, std::abs(st.band_at(r, c)));

    // U unitary
    CHECK(max_abs_diff(u.adjoint() * u, DenseMatrix::identity(n)) <= 1e2 * kEps * n * band_scale);

    // f = U w, g = U^H z, scaled by the generator magnitudes
    double wnorm = 0.0, znorm = 0.0;
    for (int i = 0; i < n; ++i) {
      wnorm = std::max(wnorm, std::abs(st.w[static_cast<size_t>(i)]));
      znorm = std::max(znorm, std::abs(st.z[static_cast<size_t>(i)]));
    }
    for (int i = 0; i < n; ++i) {
      cplx uw = 0.0, uhz = 0.0;
      for (int j = 0; j < n; ++j) {
        uw += u(i, j) * st.w[static_cast<size_t>(j)];
        uhz += std::conj(u(j, i)) * st.z[static_cast<size_t>(j)];
      }
      CHECK(std::abs(uw - st.f[static_cast<size_t>(i)]) <= 1e2 * kEps * n * std::max(1.0, wnorm) * band_scale);
      CHECK(std::abs(uhz - st.g[static_cast<size_t>(i)]) <= 1e2 * kEps * n * std::max(1.0, znorm) * band_scale);
    }

    // rank-one agreement in the upper region: U = -sigma^{-1} f g^H there
    const cplx sinv = cplx(1.0) / st.sigma;
    double fscale = 0.0, gscale = 0.0;
    for (int i = 0; i < n; ++i) {
      fscale = std::max(fscale, std::abs(st.f[static_cast<size_t>(i)]));
      gscale = std::max(gscale, std::abs(st.g[static_cast<size_t>(i)]));
    }
    const double r1tol = 1e2 * kEps * n * std::max(1.0, std::abs(sinv) * fscale * gscale);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (in_rank_two_region(i, j, n))
          CHECK(std::abs(u(i, j) + sinv * st.f[static_cast<size_t>(i)] * std::conj(st.g[static_cast<size_t>(j)])) <=
                r1tol);
  }
}

TEST_CASE("solve: sigma never updated, sweeps counted, determinism") {
  Polynomial p = gen_p5(12, 123);
  StructuredState st = initial_state(p);
  const cplx sigma0 = st.sigma;
  for (int s = 0; s < 6; ++s) qr_sweep(st, wilkinson_shift(st));
  CHECK(st.sigma == sigma0);
  CHECK(st.sweeps == 6);

  RootReport a = solve(p);
  RootReport b = solve(p);
  CHECK(a.roots == b.roots);
  CHECK(a.sweeps == b.sweeps);
}

TEST_CASE("solve: fill-in log and tiny degrees") {
  SolveOptions opts;
  opts.record_fill = true;
  RootReport rep = solve(gen_p5(10, 3), opts);
  CHECK(rep.fill_per_sweep.size() == static_cast<size_t>(rep.sweeps));
  CHECK(!rep.fill_per_sweep.empty());

  // degrees <= 4 take the dense route and still produce correct roots
  const std::vector<std::vector<cplx>> tiny = {
      {cplx(3.0), cplx(2.0)},                                          // 3 + 2z
      {cplx(2.0), cplx(-3.0), cplx(1.0)},                              // (z-1)(z-2)
      {cplx(-6.0), cplx(11.0), cplx(-6.0), cplx(1.0)},                 // (z-1)(z-2)(z-3)
      {cplx(1.0), cplx(0.0), cplx(0.0), cplx(0.0), cplx(1.0)},         // z^4 + 1
  };
  for (const auto& coeffs : tiny) {
    Polynomial p(coeffs);
    const int deg = p.degree();
    RootReport r = solve(p);
    REQUIRE(r.roots.size() == static_cast<size_t>(deg));
    for (const cplx& root : r.roots) CHECK(evaluate(p, root).scaled_residual <= 1e3 * deg * kEps);
  }
  // wild random coefficients still solve, with residuals bounded by the
  // coefficient-ratio scale rather than n eps
  for (int deg : {3, 4}) {
    Polynomial p = gen_p5(deg, 900 + static_cast<uint64_t>(deg));
    RootReport r = solve(p);
    REQUIRE(r.roots.size() == static_cast<size_t>(deg));
    for (const cplx& root : r.roots) CHECK(evaluate(p, root).scaled_residual <= 1e-8);
  }
}

TEST_CASE("solve: max_sweeps exhaustion is flagged; fallback completes") {
  Polynomial p = gen_p1(16);
  SolveOptions opts;
  opts.max_sweeps = 3;  // far too few
  opts.dense_fallback = false;
  RootReport rep = solve(p, opts);
  CHECK(!rep.converged);
  CHECK(rep.has_flag("nonconvergence"));
  CHECK(rep.roots.size() < 32);

  opts.dense_fallback = true;
  RootReport full = solve(p, opts);
  CHECK(full.has_flag("dense_fallback"));
  REQUIRE(full.roots.size() == 32);
  for (const cplx& r : full.roots) CHECK(evaluate(p, r).scaled_residual <= 1e3 * 32 * kEps);
}

TEST_CASE("P6 roots come in reciprocal pairs") {
  Polynomial p = gen_p6(8, 5);  // degree 16
  RootReport rep = solve_dense(p);
  REQUIRE(rep.converged);
  for (const cplx& r : rep.roots) {
    REQUIRE(std::abs(r) > 0.0);
    const cplx inv = cplx(1.0) / r;
    double best = std::numeric_limits<double>::infinity();
    for (const cplx& q : rep.roots) best = std::min(best, std::abs(q - inv));
    CHECK(best <= 1e-6 * std::max(1.0, std::abs(inv)));
  }
}

TEST_CASE("solve matches dense oracle on random instances") {
  for (uint64_t seed : {2u, 9u, 21u}) {
    Polynomial p = gen_p5(24, seed);
    RootReport fast = solve(p);
    RootReport ref = solve_dense(p);
    REQUIRE(fast.converged);
    REQUIRE(ref.converged);
    double scale = 0.0;
    for (const cplx& v : ref.roots) scale = std::max(scale, std::abs(v));
    CHECK(mean_err(fast.roots, ref.roots) <= 1e-8 * std::max(1.0, scale));
  }
}
