// SPDX-License-Identifier: Apache-2.0
#include "cmvroots.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "cmvroots/dense.hpp"
#include "cmvroots/metrics.hpp"
#include "cmvroots/poly.hpp"
#include "cmvroots/solve.hpp"

struct cmv_poly {
  cmv::Polynomial p;
};
struct cmv_report {
  cmv::RootReport r;
};

namespace {

cmv_status guard_invalid(const char* /*what*/) { return CMV_ERR_INVALID_ARGUMENT; }

template <typename F>
cmv_status wrap(F&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument&) {
    return CMV_ERR_INVALID_ARGUMENT;
  } catch (const std::out_of_range&) {
    return CMV_ERR_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    return CMV_ERR_INTERNAL;
  } catch (...) {
    return CMV_ERR_INTERNAL;
  }
}

}  // namespace

extern "C" {

const char* cmv_status_message(cmv_status s) {
  switch (s) {
    case CMV_OK:
      return "ok";
    case CMV_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case CMV_ERR_PARSE:
      return "parse error";
    case CMV_ERR_NO_CONVERGENCE:
      return "no convergence";
    case CMV_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

double cmv_unit_roundoff(void) { return cmv::unit_roundoff(); }

cmv_status cmv_poly_create(const double* re, const double* im, size_t count, cmv_poly** out) {
  if (!re || !out || count < 1) return guard_invalid("poly_create");
  *out = nullptr;
  return wrap([&] {
    std::vector<cmv::cplx> c(count);
    for (size_t j = 0; j < count; ++j) c[j] = cmv::cplx(re[j], im ? im[j] : 0.0);
    *out = new cmv_poly{cmv::Polynomial(std::move(c))};
    return CMV_OK;
  });
}

cmv_status cmv_poly_from_file(const char* path, cmv_poly** out, size_t* bad_line) {
  if (!path || !out) return guard_invalid("poly_from_file");
  *out = nullptr;
  if (bad_line) *bad_line = 0;
  std::ifstream in(path);
  if (!in) return CMV_ERR_PARSE;
  std::vector<cmv::cplx> c;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    double re = 0.0, im = 0.0;
    if (!(ls >> re)) {
      if (bad_line) *bad_line = lineno;
      return CMV_ERR_PARSE;
    }
    if (!(ls >> im)) {
      im = 0.0;
      ls.clear();
    }
    std::string rest;
    if (ls >> rest) {
      if (bad_line) *bad_line = lineno;
      return CMV_ERR_PARSE;
    }
    c.emplace_back(re, im);
  }
  while (!c.empty() && c.back() == cmv::cplx(0.0)) c.pop_back();  // degree reduction
  if (c.size() < 2) return CMV_ERR_PARSE;                         // constant or empty: nothing to solve
  return wrap([&] {
    *out = new cmv_poly{cmv::Polynomial(std::move(c))};
    return CMV_OK;
  });
}

cmv_status cmv_poly_gen(const char* family, const char* variant, size_t n, double lambda, uint64_t seed,
                        cmv_poly** out) {
  if (!family || !out) return guard_invalid("poly_gen");
  *out = nullptr;
  return wrap([&] {
    const std::string fam(family);
    const int ni = static_cast<int>(n);
    cmv::Polynomial p = [&] {
      if (fam == "P1") return cmv::gen_p1(ni);
      if (fam == "P2") return cmv::gen_p2(ni);
      if (fam == "P3") return cmv::gen_p3(ni, lambda);
      if (fam == "P4") {
        const std::string v = variant ? variant : "";
        if (v == "bernoulli") return cmv::gen_p4(cmv::P4Kind::bernoulli, ni);
        if (v == "chebyshev") return cmv::gen_p4(cmv::P4Kind::chebyshev, ni);
        if (v == "exp") return cmv::gen_p4(cmv::P4Kind::exp, ni);
        throw std::invalid_argument("P4 variant must be bernoulli|chebyshev|exp");
      }
      if (fam == "P5") return cmv::gen_p5(ni, seed);
      if (fam == "P6") return cmv::gen_p6(ni, seed);
      throw std::invalid_argument("unknown family");
    }();
    *out = new cmv_poly{std::move(p)};
    return CMV_OK;
  });
}

void cmv_poly_destroy(cmv_poly* p) { delete p; }

size_t cmv_poly_degree(const cmv_poly* p) { return p ? static_cast<size_t>(p->p.degree()) : 0; }

cmv_status cmv_poly_coeff(const cmv_poly* p, size_t j, double* re, double* im) {
  if (!p || j > static_cast<size_t>(p->p.degree())) return guard_invalid("poly_coeff");
  const cmv::cplx c = p->p.coeff(static_cast<int>(j));
  if (re) *re = c.real();
  if (im) *im = c.imag();
  return CMV_OK;
}

cmv_status cmv_poly_eval(const cmv_poly* p, double z_re, double z_im, double* out_re, double* out_im,
                         double* scaled_residual) {
  if (!p) return guard_invalid("poly_eval");
  const cmv::EvalResult r = cmv::evaluate(p->p, cmv::cplx(z_re, z_im));
  if (out_re) *out_re = r.value.real();
  if (out_im) *out_im = r.value.imag();
  if (scaled_residual) *scaled_residual = r.scaled_residual;
  return CMV_OK;
}

cmv_status cmv_p1_roots(size_t n, double* re, double* im) {
  if (!re || !im || n < 1) return guard_invalid("p1_roots");
  return wrap([&] {
    const std::vector<cmv::cplx> roots = cmv::p1_roots(static_cast<int>(n));
    for (size_t i = 0; i < roots.size(); ++i) {
      re[i] = roots[i].real();
      im[i] = roots[i].imag();
    }
    return CMV_OK;
  });
}

cmv_status cmv_solve(const cmv_poly* p, const cmv_solve_options* opts, cmv_report** out) {
  if (!p || !out) return guard_invalid("solve");
  *out = nullptr;
  return wrap([&] {
    cmv::SolveOptions o;
    if (opts) {
      if (opts->max_sweeps > 0) o.max_sweeps = opts->max_sweeps;
      if (opts->deflation_multiplier > 0.0) o.deflation_multiplier = opts->deflation_multiplier;
      o.dense_fallback = opts->dense_fallback != 0;
    }
    cmv::RootReport r = cmv::solve(p->p, o);
    const bool ok = r.converged;
    *out = new cmv_report{std::move(r)};
    return ok ? CMV_OK : CMV_ERR_NO_CONVERGENCE;
  });
}

cmv_status cmv_solve_dense(const cmv_poly* p, long max_sweeps, cmv_report** out) {
  if (!p || !out) return guard_invalid("solve_dense");
  *out = nullptr;
  return wrap([&] {
    cmv::RootReport r = cmv::solve_dense(p->p, max_sweeps);
    const bool ok = r.converged;
    *out = new cmv_report{std::move(r)};
    return ok ? CMV_OK : CMV_ERR_NO_CONVERGENCE;
  });
}

void cmv_report_destroy(cmv_report* r) { delete r; }

size_t cmv_report_root_count(const cmv_report* r) { return r ? r->r.roots.size() : 0; }

cmv_status cmv_report_root(const cmv_report* r, size_t i, double* re, double* im) {
  if (!r || i >= r->r.roots.size()) return guard_invalid("report_root");
  if (re) *re = r->r.roots[i].real();
  if (im) *im = r->r.roots[i].imag();
  return CMV_OK;
}

long cmv_report_sweeps(const cmv_report* r) { return r ? r->r.sweeps : 0; }

double cmv_report_averit(const cmv_report* r) { return r ? r->r.averit : 0.0; }

int cmv_report_converged(const cmv_report* r) { return (r && r->r.converged) ? 1 : 0; }

size_t cmv_report_flag_count(const cmv_report* r) { return r ? r->r.flags.size() : 0; }

const char* cmv_report_flag(const cmv_report* r, size_t i) {
  if (!r || i >= r->r.flags.size()) return nullptr;
  return r->r.flags[i].c_str();
}

cmv_status cmv_match_roots(const double* a_re, const double* a_im, const double* b_re, const double* b_im, size_t n,
                           double* err) {
  if (!a_re || !b_re || !err || n < 1) return guard_invalid("match_roots");
  return wrap([&] {
    std::vector<cmv::cplx> a(n), b(n);
    for (size_t i = 0; i < n; ++i) {
      a[i] = cmv::cplx(a_re[i], a_im ? a_im[i] : 0.0);
      b[i] = cmv::cplx(b_re[i], b_im ? b_im[i] : 0.0);
    }
    const std::vector<double> e = cmv::match_roots(a, b);
    for (size_t i = 0; i < n; ++i) err[i] = e[i];
    return CMV_OK;
  });
}

cmv_status cmv_vandermonde_condition(const double* re, const double* im, size_t n, double* cond) {
  if (!re || !cond || n < 1) return guard_invalid("vandermonde_condition");
  return wrap([&] {
    std::vector<cmv::cplx> roots(n);
    for (size_t i = 0; i < n; ++i) roots[i] = cmv::cplx(re[i], im ? im[i] : 0.0);
    *cond = cmv::vandermonde_condition(roots);
    return CMV_OK;
  });
}

cmv_status cmv_error_stats(const cmv_poly* p, const cmv_report* r, const double* ref_re, const double* ref_im,
                           size_t n, double* err, double* nne, double* werr, int* ambiguous) {
  if (!p || !r || !ref_re || n != r->r.roots.size()) return guard_invalid("error_stats");
  return wrap([&] {
    std::vector<cmv::cplx> ref(n);
    for (size_t i = 0; i < n; ++i) ref[i] = cmv::cplx(ref_re[i], ref_im ? ref_im[i] : 0.0);
    const double cond = cmv::vandermonde_condition(ref);
    const cmv::RootReport full = cmv::summarize(r->r, p->p, ref, cond);
    if (err) *err = full.err;
    if (nne) *nne = full.nne;
    if (werr) *werr = full.werr;
    if (ambiguous) *ambiguous = full.has_flag("matching_ambiguous") ? 1 : 0;
    return CMV_OK;
  });
}

}  // extern "C"
