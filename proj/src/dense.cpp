// SPDX-License-Identifier: Apache-2.0
#include "cmvroots/dense.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "cmvroots/policy.hpp"
#include "cmvroots/structqr.hpp"

namespace cmv {

namespace {

/// Column-by-column bottom-up reflector cascade. Leaves `r` upper triangular
/// up to the trailing phase; collected factors compose to the raw Q.
std::vector<Reflector> triangularize(DenseMatrix& r) {
  std::vector<Reflector> fs;
  const int n = r.rows();
  for (int j = 0; j < std::min(n - 1, r.cols()); ++j) {
    for (int i = n - 2; i >= j; --i) {
      Reflector g = reflector_annihilate(r(i, j), r(i + 1, j), i);
      if (g.is_identity()) continue;
      g.apply_left(r);
      r(i + 1, j) = 0.0;
      fs.push_back(g);
    }
  }
  return fs;
}

/// Phase factors making the diagonal of `r` real non-negative (canonical QR).
std::vector<Reflector> canonical_phases(DenseMatrix& r) {
  std::vector<Reflector> fs;
  const int n = std::min(r.rows(), r.cols());
  for (int k = 0; k < n; ++k) {
    const cplx v = r(k, k);
    if (v == cplx(0.0) || (v.imag() == 0.0 && v.real() > 0.0)) continue;
    Reflector ph;
    ph.k = k;
    ph.gamma = v / std::abs(v);
    ph.unit = true;
    ph.apply_left(r);
    r(k, k) = std::abs(v);  // exact real non-negative pivot
    fs.push_back(ph);
  }
  return fs;
}

}  // namespace

QRFactors dense_qr(const DenseMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("dense_qr: square input required");
  const int n = a.rows();
  DenseMatrix r = a;
  DenseMatrix qh = DenseMatrix::identity(n);
  for (const Reflector& g : triangularize(r)) g.apply_left(qh);
  for (const Reflector& g : canonical_phases(r)) g.apply_left(qh);
  return {qh.adjoint(), r};
}

DenseMatrix dense_qr_step(const DenseMatrix& a, cplx shift) {
  if (a.rows() != a.cols()) throw std::invalid_argument("dense_qr_step: square input required");
  DenseMatrix shifted = a;
  for (int i = 0; i < a.rows(); ++i) shifted(i, i) -= shift;
  const QRFactors f = dense_qr(shifted);
  return f.q.adjoint() * a * f.q;
}

void dense_windowed_qr_step(DenseMatrix& a, cplx shift, int lo, int hi) {
  if (lo < 0 || hi >= a.rows() || lo > hi) throw std::invalid_argument("dense_windowed_qr_step: bad window");
  const int w = hi - lo + 1;
  DenseMatrix b(w, w);
  for (int i = 0; i < w; ++i)
    for (int j = 0; j < w; ++j) b(i, j) = a(lo + i, lo + j);
  for (int i = 0; i < w; ++i) b(i, i) -= shift;

  std::vector<Reflector> fs = triangularize(b);
  for (Reflector& g : canonical_phases(b)) fs.push_back(g);

  // Apply the embedded similarity directly from the reflector stream:
  // O(#factors * n) instead of forming Q.
  const int n = a.cols();
  for (const Reflector& g : fs) {
    const int k = g.k + lo;
    if (g.unit) {
      const cplx d = std::conj(g.gamma);
      for (int j = 0; j < n; ++j) a(k, j) *= d;
    } else {
      for (int j = 0; j < n; ++j) g.apply_pair(a(k, j), a(k + 1, j));
    }
  }
  for (const Reflector& g : fs) {
    const int k = g.k + lo;
    if (g.unit) {
      for (int i = 0; i < n; ++i) a(i, k) *= g.gamma;
    } else {
      for (int i = 0; i < n; ++i) {
        const cplx x = a(i, k), y = a(i, k + 1);
        a(i, k) = std::conj(g.gamma) * x + std::conj(g.sigma) * y;
        a(i, k + 1) = g.sigma * x - g.gamma * y;
      }
    }
  }
}

std::vector<int> staircase_envelope(const DenseMatrix& a) {
  const int n = a.rows();
  std::vector<int> m(static_cast<size_t>(n));
  int running = 0;
  for (int j = 0; j < n; ++j) {
    int mj = j;
    for (int i = n - 1; i > j; --i) {
      if (a(i, j) != cplx(0.0)) {
        mj = i;
        break;
      }
    }
    running = std::max(running, mj);
    m[static_cast<size_t>(j)] = running;
  }
  return m;
}

void clip_below_envelope(DenseMatrix& a, const std::vector<int>& m) {
  const int n = a.rows();
  for (int j = 0; j < n; ++j)
    for (int i = m[static_cast<size_t>(j)] + 1; i < n; ++i) a(i, j) = 0.0;
}

DenseEigResult dense_eigenvalues(const DenseMatrix& a0, long max_sweeps) {
  if (a0.rows() != a0.cols() || a0.rows() < 1) throw std::invalid_argument("dense_eigenvalues: square input required");
  const int n = a0.rows();
  DenseMatrix a = a0;
  const std::vector<int> env = staircase_envelope(a);

  DenseEigResult res;
  int pst = 0, qst = 0;

  auto inf_norm_active = [&]() {
    double best = 0.0;
    for (int i = pst; i < n - qst; ++i) {
      double acc = 0.0;
      for (int j = pst; j < n - qst; ++j) acc += std::abs(a(i, j));
      best = std::max(best, acc);
    }
    return best;
  };
  auto coupled_above_tol = [&](int k) {
    const double tol = qrpolicy::deflation_tol(a(k, k), a(k + 1, k + 1), inf_norm_active(), 1.0);
    for (int r = k + 1; r <= std::min(k + 2, n - 1); ++r)
      for (int c = std::max(0, k - 1); c <= k; ++c)
        if (std::abs(a(r, c)) > tol) return true;
    return false;
  };
  auto zero_coupling = [&](int k) {
    for (int r = k + 1; r <= std::min(k + 2, n - 1); ++r)
      for (int c = std::max(0, k - 1); c <= k; ++c) a(r, c) = 0.0;
  };
  auto emit2 = [&](int k) {
    const auto [e1, e2] = eig2x2(a(k, k), a(k, k + 1), a(k + 1, k), a(k + 1, k + 1));
    res.values.push_back(e1);
    res.values.push_back(e2);
  };
  auto deflate_edges = [&]() {
    for (;;) {
      const int lo = pst, hi = n - qst - 1, size = n - pst - qst;
      if (size == 0) break;
      if (size == 1) {
        res.values.push_back(a(lo, lo));
        qst += 1;
        continue;
      }
      if (size == 2) {
        emit2(lo);
        qst += 2;
        continue;
      }
      if (!coupled_above_tol(hi - 1)) {
        zero_coupling(hi - 1);
        res.values.push_back(a(hi, hi));
        qst += 1;
        continue;
      }
      if (!coupled_above_tol(hi - 2)) {
        zero_coupling(hi - 2);
        emit2(hi - 1);
        qst += 2;
        continue;
      }
      if (!coupled_above_tol(lo)) {
        zero_coupling(lo);
        res.values.push_back(a(lo, lo));
        pst += 1;
        continue;
      }
      if (size > 3 && !coupled_above_tol(lo + 1)) {
        zero_coupling(lo + 1);
        emit2(lo);
        pst += 2;
        continue;
      }
      break;
    }
  };

  deflate_edges();
  int stagnation = 0;
  while (n - pst - qst > 0 && res.sweeps < max_sweeps) {
    const int lo = pst, hi = n - qst - 1;
    if (n - pst - qst <= 2) {
      deflate_edges();
      break;
    }
    cplx shift;
    if (stagnation >= qrpolicy::stagnation_limit(n - pst - qst)) {
      const double scale = std::sqrt(std::norm(a(hi - 1, hi - 1)) + std::norm(a(hi - 1, hi)) +
                                     std::norm(a(hi, hi - 1)) + std::norm(a(hi, hi)));
      shift = qrpolicy::exceptional_shift(res.sweeps, scale);
      stagnation = 0;
    } else {
      shift = qrpolicy::wilkinson_from_block(a(hi - 1, hi - 1), a(hi - 1, hi), a(hi, hi - 1), a(hi, hi));
    }
    dense_windowed_qr_step(a, shift, lo, hi);
    clip_below_envelope(a, env);
    ++res.sweeps;
    const size_t before = res.values.size();
    deflate_edges();
    stagnation = (res.values.size() == before) ? stagnation + 1 : 0;
  }
  res.converged = (n - pst - qst == 0);
  return res;
}

double vandermonde_condition(const std::vector<cplx>& roots) {
  const int n = static_cast<int>(roots.size());
  if (n < 1) throw std::invalid_argument("vandermonde_condition: needs at least one root");
  const double inf = std::numeric_limits<double>::infinity();
  DenseMatrix v(n, n);
  for (int c = 0; c < n; ++c) {
    cplx pw = 1.0;
    for (int r = n - 1; r >= 0; --r) {  // column c = (l^{n-1}, ..., l, 1)^T
      v(r, c) = pw;
      pw *= roots[static_cast<size_t>(c)];
    }
  }
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      if (!std::isfinite(v(r, c).real()) || !std::isfinite(v(r, c).imag())) return inf;
  // Columns scaled to unit 2-norm, the normalization eigensolvers report;
  // without it a single root of modulus > 1 dominates kappa at large n.
  for (int c = 0; c < n; ++c) {
    double norm2 = 0.0;
    for (int r = 0; r < n; ++r) norm2 += std::norm(v(r, c));
    const double scale = std::sqrt(norm2);
    if (!(scale > 0.0) || !std::isfinite(scale)) return inf;
    for (int r = 0; r < n; ++r) v(r, c) /= scale;
  }

  const double norm_v = v.inf_norm();

  // LU with partial pivoting; exact zero pivot means numerically singular.
  DenseMatrix lu = v;
  std::vector<int> piv(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    int best = k;
    double bestmag = std::abs(lu(k, k));
    for (int i = k + 1; i < n; ++i)
      if (std::abs(lu(i, k)) > bestmag) {
        bestmag = std::abs(lu(i, k));
        best = i;
      }
    if (bestmag == 0.0) return inf;
    piv[static_cast<size_t>(k)] = best;
    if (best != k)
      for (int j = 0; j < n; ++j) std::swap(lu(k, j), lu(best, j));
    for (int i = k + 1; i < n; ++i) {
      lu(i, k) /= lu(k, k);
      const cplx m = lu(i, k);
      if (m == cplx(0.0)) continue;
      for (int j = k + 1; j < n; ++j) lu(i, j) -= m * lu(k, j);
    }
  }

  // ||V^-1||_inf as the max row sum of the explicit inverse, column by column.
  std::vector<double> row_sums(static_cast<size_t>(n), 0.0);
  std::vector<cplx> x(static_cast<size_t>(n));
  for (int col = 0; col < n; ++col) {
    for (int i = 0; i < n; ++i) x[static_cast<size_t>(i)] = (i == col) ? 1.0 : 0.0;
    // all row interchanges first, then the triangular solves
    for (int k = 0; k < n; ++k) std::swap(x[static_cast<size_t>(k)], x[static_cast<size_t>(piv[static_cast<size_t>(k)])]);
    for (int k = 0; k < n; ++k)
      for (int i = k + 1; i < n; ++i) x[static_cast<size_t>(i)] -= lu(i, k) * x[static_cast<size_t>(k)];
    for (int i = n - 1; i >= 0; --i) {
      for (int j = i + 1; j < n; ++j) x[static_cast<size_t>(i)] -= lu(i, j) * x[static_cast<size_t>(j)];
      x[static_cast<size_t>(i)] /= lu(i, i);
      row_sums[static_cast<size_t>(i)] += std::abs(x[static_cast<size_t>(i)]);
    }
  }
  double norm_vinv = 0.0;
  for (double s : row_sums) norm_vinv = std::max(norm_vinv, s);
  const double cond = norm_v * norm_vinv;
  return std::isfinite(cond) ? cond : inf;
}

}  // namespace cmv
