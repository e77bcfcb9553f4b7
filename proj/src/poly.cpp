// SPDX-License-Identifier: Apache-2.0
#include "cmvroots/poly.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cmvroots/prng.hpp"

namespace cmv {

Polynomial::Polynomial(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw std::invalid_argument("Polynomial: empty coefficient list");
  if (coeffs_.size() > 1 && coeffs_.back() == cplx(0.0))
    throw std::invalid_argument("Polynomial: zero leading coefficient");
}

EvalResult evaluate(const Polynomial& p, cplx z) {
  const auto& c = p.coeffs();
  cplx v = c.back();
  for (int j = p.degree() - 1; j >= 0; --j) v = v * z + c[static_cast<size_t>(j)];
  const double az = std::abs(z);
  double denom = std::abs(c.back());
  for (int j = p.degree() - 1; j >= 0; --j) denom = denom * az + std::abs(c[static_cast<size_t>(j)]);
  const double av = std::abs(v);
  return {v, denom > 0.0 ? av / denom : 0.0};
}

std::pair<Polynomial, int> strip_zero_roots(const Polynomial& p) {
  const auto& c = p.coeffs();
  size_t m = 0;
  while (m < c.size() - 1 && c[m] == cplx(0.0)) ++m;
  if (m == 0) return {p, 0};
  return {Polynomial(std::vector<cplx>(c.begin() + static_cast<long>(m), c.end())), static_cast<int>(m)};
}

Polynomial gen_p1(int n) {
  if (n < 1) throw std::invalid_argument("gen_p1: n >= 1 required");
  std::vector<cplx> c(static_cast<size_t>(2 * n) + 1, cplx(0.0));
  const double dn = static_cast<double>(n);
  c[0] = 1.0;
  c[static_cast<size_t>(n)] = dn / (dn + 1.0) + (dn + 1.0) / dn;
  c[static_cast<size_t>(2 * n)] = 1.0;
  return Polynomial(std::move(c));
}

std::vector<cplx> p1_roots(int n) {
  if (n < 1) throw std::invalid_argument("p1_roots: n >= 1 required");
  const double dn = static_cast<double>(n);
  const double r_in = std::pow(dn / (dn + 1.0), 1.0 / dn);
  const double r_out = std::pow((dn + 1.0) / dn, 1.0 / dn);
  std::vector<cplx> roots;
  roots.reserve(static_cast<size_t>(2 * n));
  for (int k = 0; k < n; ++k) {
    const double theta = std::numbers::pi * (2.0 * k + 1.0) / dn;
    roots.emplace_back(std::polar(r_in, theta));
    roots.emplace_back(std::polar(r_out, theta));
  }
  return roots;
}

Polynomial gen_p2(int n) {
  if (n < 1) throw std::invalid_argument("gen_p2: n >= 1 required");
  std::vector<cplx> c(static_cast<size_t>(2 * n) + 1, cplx(0.0));
  const double dn = static_cast<double>(n);
  for (int j = 0; j < n; ++j) {
    const cplx v = (dn + j) / dn;
    c[static_cast<size_t>(j)] = v;
    c[static_cast<size_t>(2 * n - j)] = v;  // same value both ends: exact palindrome
  }
  c[static_cast<size_t>(n)] = (dn + 1.0) / dn;
  return Polynomial(std::move(c));
}

Polynomial gen_p3(int n, double lambda) {
  if (n < 1) throw std::invalid_argument("gen_p3: n >= 1 required");
  if (!(lambda > 0.0 && lambda < 1.0)) throw std::invalid_argument("gen_p3: 0 < lambda < 1 required");
  std::vector<cplx> c(static_cast<size_t>(n) + 2, cplx(0.0));
  c[0] -= 1.0 - lambda;
  c[1] += lambda + 1.0;
  c[static_cast<size_t>(n)] -= lambda + 1.0;          // collides with c[1] when n = 1
  c[static_cast<size_t>(n) + 1] += 1.0 - lambda;
  return Polynomial(std::move(c));
}

std::vector<double> bernoulli_numbers(int m) {
  if (m < 0) throw std::invalid_argument("bernoulli_numbers: m >= 0 required");
  std::vector<double> b(static_cast<size_t>(m) + 1, 0.0);
  b[0] = 1.0;
  for (int k = 1; k <= m; ++k) {
    // sum_{j<k} C(k+1, j) b_j + C(k+1, k) b_k = 0
    double binom = 1.0;  // C(k+1, 0)
    double acc = 0.0;
    for (int j = 0; j < k; ++j) {
      acc += binom * b[static_cast<size_t>(j)];
      binom = binom * (k + 1 - j) / (j + 1);
    }
    b[static_cast<size_t>(k)] = -acc / binom;  // binom = C(k+1, k)
  }
  return b;
}

Polynomial gen_p4(P4Kind kind, int n) {
  if (n < 1 || n > 30) throw std::invalid_argument("gen_p4: 1 <= n <= 30 required");
  std::vector<cplx> c(static_cast<size_t>(n) + 1, cplx(0.0));
  switch (kind) {
    case P4Kind::bernoulli: {
      const std::vector<double> b = bernoulli_numbers(n);
      double binom = 1.0;  // C(n, 0)
      for (int j = 0; j <= n; ++j) {
        c[static_cast<size_t>(j)] = binom * b[static_cast<size_t>(n - j)];
        binom = binom * (n - j) / (j + 1);
      }
      break;
    }
    case P4Kind::chebyshev: {
      // T_0 = 1, T_1 = z, T_{k+1} = 2 z T_k - T_{k-1}; integer coefficients,
      // exact in double through n = 30.
      std::vector<double> prev{1.0}, cur{0.0, 1.0};
      if (n == 0) cur = prev;
      for (int k = 2; k <= n; ++k) {
        std::vector<double> next(static_cast<size_t>(k) + 1, 0.0);
        for (size_t j = 0; j < cur.size(); ++j) next[j + 1] += 2.0 * cur[j];
        for (size_t j = 0; j < prev.size(); ++j) next[j] -= prev[j];
        prev = std::move(cur);
        cur = std::move(next);
      }
      for (int j = 0; j <= n; ++j) c[static_cast<size_t>(j)] = cur[static_cast<size_t>(j)];
      break;
    }
    case P4Kind::exp: {
      double term = 1.0;  // 2^j / j!
      for (int j = 0; j <= n; ++j) {
        c[static_cast<size_t>(j)] = term;
        term = term * 2.0 / (j + 1);
      }
      break;
    }
  }
  return Polynomial(std::move(c));
}

namespace {

std::vector<cplx> random_coeff_list(int n, uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<cplx> c(static_cast<size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) {
    const double a = rng.uniform(-1.0, 1.0);
    const double e = rng.uniform(-3.0, 3.0);
    c[static_cast<size_t>(j)] = a * std::pow(10.0, e);
  }
  // The distribution is continuous, so exact zeros at the ends have
  // probability zero; redraw to keep the p_0, p_n != 0 contract.
  while (c.front() == cplx(0.0)) c.front() = rng.uniform(-1.0, 1.0) * std::pow(10.0, rng.uniform(-3.0, 3.0));
  while (c.back() == cplx(0.0)) c.back() = rng.uniform(-1.0, 1.0) * std::pow(10.0, rng.uniform(-3.0, 3.0));
  return c;
}

}  // namespace

Polynomial gen_p5(int n, uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gen_p5: n >= 1 required");
  return Polynomial(random_coeff_list(n, seed));
}

Polynomial symmetrize(const std::vector<cplx>& s) {
  if (s.empty() || s.back() == cplx(0.0) || s.front() == cplx(0.0))
    throw std::invalid_argument("symmetrize: s needs nonzero end coefficients");
  const int n = static_cast<int>(s.size()) - 1;
  std::vector<cplx> c(static_cast<size_t>(2 * n) + 1, cplx(0.0));
  // coefficient of z^k in s(z) s(1/z) z^n: sum_j s_j s_{j+n-k}; computed once
  // for k <= n and mirrored so the palindrome is bit-exact.
  for (int k = 0; k <= n; ++k) {
    cplx acc = 0.0;
    for (int j = 0; j <= k; ++j) acc += s[static_cast<size_t>(j)] * s[static_cast<size_t>(j + n - k)];
    c[static_cast<size_t>(k)] = acc;
    c[static_cast<size_t>(2 * n - k)] = acc;
  }
  return Polynomial(std::move(c));
}

Polynomial gen_p6(int n, uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gen_p6: n >= 1 required");
  return symmetrize(random_coeff_list(n, seed));
}

}  // namespace cmv
