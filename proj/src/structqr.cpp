// SPDX-License-Identifier: Apache-2.0
#include "cmvroots/structqr.hpp"

#include <array>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

#include "cmvroots/policy.hpp"

namespace cmv {

void Reflector::apply_pair(cplx& x, cplx& y) const {
  // (x, y) <- G^H (x, y) with G^H = [[g, s], [conj(s), -conj(g)]]
  const cplx xp = gamma * x + sigma * y;
  const cplx yp = std::conj(sigma) * x - std::conj(gamma) * y;
  x = xp;
  y = yp;
}

void Reflector::apply_left(DenseMatrix& m) const {
  if (unit) {
    const cplx d = std::conj(gamma);
    for (int j = 0; j < m.cols(); ++j) m(k, j) *= d;
    return;
  }
  if (is_identity()) return;
  for (int j = 0; j < m.cols(); ++j) apply_pair(m(k, j), m(k + 1, j));
}

void Reflector::apply_right(DenseMatrix& m) const {
  if (unit) {
    for (int i = 0; i < m.rows(); ++i) m(i, k) *= gamma;
    return;
  }
  if (is_identity()) return;
  for (int i = 0; i < m.rows(); ++i) {
    const cplx x = m(i, k), y = m(i, k + 1);
    m(i, k) = std::conj(gamma) * x + std::conj(sigma) * y;
    m(i, k + 1) = sigma * x - gamma * y;
  }
}

void Reflector::apply_vec(std::vector<cplx>& v) const {
  if (unit) {
    v[static_cast<size_t>(k)] *= std::conj(gamma);
    return;
  }
  if (is_identity()) return;
  apply_pair(v[static_cast<size_t>(k)], v[static_cast<size_t>(k) + 1]);
}

Reflector reflector_annihilate(cplx x, cplx y, int k) {
  Reflector g;
  g.k = k;
  if (y == cplx(0.0)) return g;  // degenerate input: identity
  const double nu = std::hypot(std::abs(x), std::abs(y));
  g.gamma = std::conj(x) / nu;
  g.sigma = std::conj(y) / nu;
  return g;
}

DenseMatrix SweepFactorization::compose(int n) const {
  DenseMatrix q = DenseMatrix::identity(n);
  for (const Reflector& g : factors) g.apply_right(q);
  return q;
}

int StructuredState::band_nonzeros() const {
  int count = 0;
  for (const cplx& v : band)
    if (v != cplx(0.0)) ++count;
  return count;
}

cplx reconstruct_entry(const StructuredState& s, int i, int j) {
  if (i < 0 || j < 0 || i >= s.n || j >= s.n) throw std::out_of_range("reconstruct_entry: index out of range");
  if (in_rank_two_region(i, j, s.n))
    return -(cplx(1.0) / s.sigma) * s.f[static_cast<size_t>(i)] * std::conj(s.g[static_cast<size_t>(j)]) -
           s.z[static_cast<size_t>(i)] * std::conj(s.w[static_cast<size_t>(j)]);
  if (in_band_profile(i, j, s.n)) return s.band_at(i, j);
  return cplx(0.0);
}

DenseMatrix reconstruct_dense(const StructuredState& s) {
  DenseMatrix a(s.n, s.n);
  for (int i = 0; i < s.n; ++i)
    for (int j = 0; j < s.n; ++j) a(i, j) = reconstruct_entry(s, i, j);
  return a;
}

namespace {

double band_inf_norm(const StructuredState& s) {
  double best = 0.0;
  for (int r = 0; r < s.n; ++r) {
    double acc = 0.0;
    for (int c = profile_lo(r); c <= profile_hi(r, s.n); ++c) acc += std::abs(s.band_at(r, c));
    if (acc > best) best = acc;
  }
  return best;
}

}  // namespace

cplx wilkinson_shift(const StructuredState& s) {
  const int lo = s.active_lo(), hi = s.active_hi();
  if (s.active_size() < 1) throw std::invalid_argument("wilkinson_shift: empty window");
  if (s.active_size() == 1) return s.band_at(lo, lo);
  return qrpolicy::wilkinson_from_block(s.band_at(hi - 1, hi - 1), s.band_at(hi - 1, hi), s.band_at(hi, hi - 1),
                                        s.band_at(hi, hi));
}

SweepFactorization qr_sweep(StructuredState& s, cplx shift) {
  const int n = s.n;
  const int lo = s.active_lo(), hi = s.active_hi();
  if (hi - lo + 1 < 3) throw std::invalid_argument("qr_sweep: active window smaller than 3");

  // Sliding window over the shifted working matrix. Column c holds the
  // explicit rows [c-5, min(hi, c+2)]: the staircase band of the column, one
  // guard row of generator-represented entries above it (they receive
  // right-multiplication fill), and nothing below the envelope. Everything
  // outside is either structurally zero or tracked by the generators.
  const int hi_ext = std::min(n - 1, hi + 3);
  struct ColBuf {
    int top = 0, bot = -1;
    bool live = false;
    std::array<cplx, 8> v{};
  };
  std::vector<ColBuf> win(static_cast<size_t>(hi_ext - lo + 1));

  auto buf = [&](int c) -> ColBuf& { return win[static_cast<size_t>(c - lo)]; };
  auto val = [&](int r, int c) -> cplx {
    const ColBuf& b = buf(c);
    return (r < b.top || r > b.bot) ? cplx(0.0) : b.v[static_cast<size_t>(r - b.top)];
  };
  auto put = [&](int r, int c, cplx x) {
    ColBuf& b = buf(c);
    if (r >= b.top && r <= b.bot) b.v[static_cast<size_t>(r - b.top)] = x;
  };

  auto materialize = [&](int c) {
    ColBuf& b = buf(c);
    b.top = std::max(0, c - 5);
    b.bot = std::min(hi, c + 2);
    b.live = true;
    for (int r = b.top; r <= b.bot; ++r) {
      cplx v = reconstruct_entry(s, r, c);
      if (r == c) v -= shift;
      b.v[static_cast<size_t>(r - b.top)] = v;
    }
  };

  SweepFactorization fact;
  std::deque<Reflector> pending;  // right-multiplications, FIFO
  auto gate = [](const Reflector& g) { return g.unit ? g.k : g.k + 1; };

  auto left_apply = [&](const Reflector& g) {
    const int c0 = std::max(lo, g.k - 2);
    const int c1 = std::min(hi_ext, g.k + 5);
    for (int c = c0; c <= c1; ++c) {
      if (!buf(c).live) continue;
      if (g.unit) {
        put(g.k, c, std::conj(g.gamma) * val(g.k, c));
      } else {
        cplx x = val(g.k, c), y = val(g.k + 1, c);
        g.apply_pair(x, y);
        put(g.k, c, x);
        put(g.k + 1, c, y);
      }
    }
    g.apply_vec(s.f);
    g.apply_vec(s.z);
  };

  auto right_apply = [&](const Reflector& g) {
    if (g.unit) {
      ColBuf& b = buf(g.k);
      for (int r = b.top; r <= b.bot; ++r) b.v[static_cast<size_t>(r - b.top)] *= g.gamma;
    } else {
      const int rt = std::min(buf(g.k).top, buf(g.k + 1).top);
      const int rb = std::max(buf(g.k).bot, buf(g.k + 1).bot);
      for (int r = rt; r <= rb; ++r) {
        const cplx x = val(r, g.k), y = val(r, g.k + 1);
        put(r, g.k, std::conj(g.gamma) * x + std::conj(g.sigma) * y);
        put(r, g.k + 1, g.sigma * x - g.gamma * y);
      }
    }
    // Right multiplication by G corresponds to g <- G^H g, w <- G^H w.
    g.apply_vec(s.g);
    g.apply_vec(s.w);
  };

  auto retire = [&](int c) {
    ColBuf& b = buf(c);
    for (int r = b.top; r <= b.bot; ++r) {
      if (!in_band_profile(r, c, n)) continue;  // generator-represented or structural zero
      cplx v = b.v[static_cast<size_t>(r - b.top)];
      if (r == c) v += shift;
      s.band_set(r, c, v);
    }
    b.live = false;
  };

  int next_mat = lo;
  int retired = lo - 1;
  for (int c = lo; c <= hi; ++c) {
    const int mat_limit = std::min(hi_ext, c + 5);
    while (next_mat <= mat_limit) materialize(next_mat++);

    if (c < hi) {
      // Structural subdiagonal of column c inside the window, bottom-up:
      // (c+1, c) always, (c+2, c) on odd columns.
      const int r_last = (c % 2 == 1) ? std::min(hi, c + 2) : c + 1;
      for (int r = r_last; r >= c + 1; --r) {
        Reflector g = reflector_annihilate(val(r - 1, c), val(r, c), r - 1);
        if (g.is_identity()) continue;
        left_apply(g);
        put(r, c, cplx(0.0));
        pending.push_back(g);
        fact.factors.push_back(g);
      }
    }

    // Canonical phase: make the implicit R diagonal real non-negative, so the
    // composed Q matches the unique canonical QR factor the dense route uses.
    {
      const cplx v = val(c, c);
      if (v != cplx(0.0) && !(v.imag() == 0.0 && v.real() > 0.0)) {
        Reflector ph;
        ph.k = c;
        ph.gamma = v / std::abs(v);
        ph.unit = true;
        left_apply(ph);
        pending.push_back(ph);
        fact.factors.push_back(ph);
      }
    }

    while (!pending.empty() && gate(pending.front()) <= c) {
      right_apply(pending.front());
      pending.pop_front();
    }
    while (retired + 1 <= c - 2) retire(++retired);
  }
  while (!pending.empty()) {
    right_apply(pending.front());
    pending.pop_front();
  }
  while (retired + 1 <= hi_ext) retire(++retired);

  ++s.sweeps;

  for (int r = std::max(0, lo - 3); r <= hi; ++r)
    for (int c = profile_lo(r); c <= profile_hi(r, n); ++c)
      if (!std::isfinite(s.band_at(r, c).real()) || !std::isfinite(s.band_at(r, c).imag()))
        throw std::runtime_error("qr_sweep: non-finite band entry (representation breakdown)");
  for (int r = lo; r <= hi; ++r) {
    const size_t i = static_cast<size_t>(r);
    if (!std::isfinite(s.f[i].real()) || !std::isfinite(s.f[i].imag()) || !std::isfinite(s.z[i].real()) ||
        !std::isfinite(s.z[i].imag()) || !std::isfinite(s.g[i].real()) || !std::isfinite(s.g[i].imag()) ||
        !std::isfinite(s.w[i].real()) || !std::isfinite(s.w[i].imag()))
      throw std::runtime_error("qr_sweep: non-finite generator entry (representation breakdown)");
  }
  return fact;
}

std::vector<cplx> deflate(StructuredState& s, double tol_multiplier) {
  std::vector<cplx> out;
  const int n = s.n;

  auto coupled_above_tol = [&](int k) {
    const double tol =
        qrpolicy::deflation_tol(s.band_at(k, k), s.band_at(k + 1, k + 1), band_inf_norm(s), tol_multiplier);
    for (int r = k + 1; r <= std::min(k + 2, n - 1); ++r)
      for (int c = std::max(0, k - 1); c <= k; ++c)
        if (std::abs(s.band_at(r, c)) > tol) return true;
    return false;
  };
  // Deflation only zeroes band entries. The generators are left alone: the
  // represented matrix then changes by exactly the zeroed entries, while
  // folding the perturbation into f and g would leak it, amplified by
  // sigma^{-1}||w||, into the whole represented rank-two region.
  auto zero_coupling = [&](int k) {
    for (int r = k + 1; r <= std::min(k + 2, n - 1); ++r)
      for (int c = std::max(0, k - 1); c <= k; ++c)
        if (in_band_profile(r, c, n)) s.band_set(r, c, cplx(0.0));
  };
  auto emit_block2 = [&](int k) {  // eigenvalues of the 2x2 at rows/cols (k, k+1)
    const auto [e1, e2] = eig2x2(s.band_at(k, k), s.band_at(k, k + 1), s.band_at(k + 1, k), s.band_at(k + 1, k + 1));
    out.push_back(e1);
    out.push_back(e2);
  };

  for (;;) {
    const int lo = s.active_lo(), hi = s.active_hi(), size = s.active_size();
    if (size == 0) break;
    if (size == 1) {  // fully decoupled remnant
      out.push_back(s.band_at(lo, lo));
      s.qst += 1;
      continue;
    }
    if (size == 2) {
      emit_block2(lo);
      s.qst += 2;
      continue;
    }
    if (!coupled_above_tol(hi - 1)) {
      zero_coupling(hi - 1);
      out.push_back(s.band_at(hi, hi));
      s.qst += 1;
      continue;
    }
    if (!coupled_above_tol(hi - 2)) {
      zero_coupling(hi - 2);
      emit_block2(hi - 1);
      s.qst += 2;
      continue;
    }
    if (!coupled_above_tol(lo)) {
      zero_coupling(lo);
      out.push_back(s.band_at(lo, lo));
      s.pst += 1;
      continue;
    }
    if (size > 3 && !coupled_above_tol(lo + 1)) {
      zero_coupling(lo + 1);
      emit_block2(lo);
      s.pst += 2;
      continue;
    }
    break;
  }
  return out;
}

}  // namespace cmv
