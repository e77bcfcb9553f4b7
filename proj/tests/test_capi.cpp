// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "cmvroots.h"
#include "doctest.h"

namespace {
std::string temp_path(const char* name) { return std::string("capi_") + name; }
}  // namespace

TEST_CASE("poly create/coeff/eval round trip") {
  const double re[] = {2.0, -3.0, 1.0};
  cmv_poly* p = nullptr;
  REQUIRE(cmv_poly_create(re, nullptr, 3, &p) == CMV_OK);
  CHECK(cmv_poly_degree(p) == 2);
  double cr = 0, ci = 0;
  CHECK(cmv_poly_coeff(p, 1, &cr, &ci) == CMV_OK);
  CHECK(cr == -3.0);
  CHECK(ci == 0.0);
  double vr = 0, vi = 0, resid = 1;
  CHECK(cmv_poly_eval(p, 1.0, 0.0, &vr, &vi, &resid) == CMV_OK);
  CHECK(vr == 0.0);
  CHECK(resid == 0.0);
  cmv_poly_destroy(p);

  // zero leading coefficient rejected
  const double bad[] = {1.0, 0.0};
  cmv_poly* q = nullptr;
  CHECK(cmv_poly_create(bad, nullptr, 2, &q) == CMV_ERR_INVALID_ARGUMENT);
  CHECK(q == nullptr);
  CHECK(cmv_poly_create(nullptr, nullptr, 3, &q) == CMV_ERR_INVALID_ARGUMENT);
}

TEST_CASE("poly file parsing") {
  const std::string good = temp_path("good.txt");
  {
    std::ofstream out(good);
    out << "# quadratic (z-1)(z-2)\n2 0\n-3 0\n1 0\n\n";
  }
  cmv_poly* p = nullptr;
  size_t bad_line = 0;
  REQUIRE(cmv_poly_from_file(good.c_str(), &p, &bad_line) == CMV_OK);
  CHECK(cmv_poly_degree(p) == 2);
  cmv_poly_destroy(p);

  const std::string trailing = temp_path("trailing.txt");
  {
    std::ofstream out(trailing);
    out << "2 0\n-3 0\n1 0\n0 0\n0 0\n";  // trailing zeros trimmed
  }
  REQUIRE(cmv_poly_from_file(trailing.c_str(), &p, &bad_line) == CMV_OK);
  CHECK(cmv_poly_degree(p) == 2);
  cmv_poly_destroy(p);

  const std::string bad = temp_path("bad.txt");
  {
    std::ofstream out(bad);
    out << "1 0\npotato\n1 0\n";
  }
  p = nullptr;
  CHECK(cmv_poly_from_file(bad.c_str(), &p, &bad_line) == CMV_ERR_PARSE);
  CHECK(bad_line == 2);
  CHECK(p == nullptr);

  std::remove(good.c_str());
  std::remove(trailing.c_str());
  std::remove(bad.c_str());
}

TEST_CASE("generators and solve") {
  cmv_poly* p = nullptr;
  REQUIRE(cmv_poly_gen("P1", nullptr, 8, 0.0, 0, &p) == CMV_OK);
  CHECK(cmv_poly_degree(p) == 16);

  cmv_report* rep = nullptr;
  REQUIRE(cmv_solve(p, nullptr, &rep) == CMV_OK);
  REQUIRE(cmv_report_root_count(rep) == 16);
  CHECK(cmv_report_converged(rep) == 1);
  CHECK(cmv_report_sweeps(rep) > 0);
  CHECK(cmv_report_averit(rep) > 0.0);

  std::vector<double> ref_re(16), ref_im(16);
  REQUIRE(cmv_p1_roots(8, ref_re.data(), ref_im.data()) == CMV_OK);

  double err = 0, nne = 0, werr = 0;
  int ambiguous = -1;
  REQUIRE(cmv_error_stats(p, rep, ref_re.data(), ref_im.data(), 16, &err, &nne, &werr, &ambiguous) == CMV_OK);
  CHECK(err <= 1e-12);
  CHECK(nne > 0.0);
  CHECK(werr >= 0.0);

  cmv_report_destroy(rep);
  cmv_poly_destroy(p);
}

TEST_CASE("dense reference and root matching") {
  cmv_poly* p = nullptr;
  REQUIRE(cmv_poly_gen("P5", nullptr, 12, 0.0, 3, &p) == CMV_OK);

  cmv_report* fast = nullptr;
  cmv_report* ref = nullptr;
  REQUIRE(cmv_solve(p, nullptr, &fast) == CMV_OK);
  REQUIRE(cmv_solve_dense(p, 0, &ref) == CMV_OK);
  const size_t n = cmv_report_root_count(fast);
  REQUIRE(cmv_report_root_count(ref) == n);

  std::vector<double> fr(n), fi(n), rr(n), ri(n), err(n);
  for (size_t i = 0; i < n; ++i) {
    cmv_report_root(fast, i, &fr[i], &fi[i]);
    cmv_report_root(ref, i, &rr[i], &ri[i]);
  }
  REQUIRE(cmv_match_roots(fr.data(), fi.data(), rr.data(), ri.data(), n, err.data()) == CMV_OK);
  for (size_t i = 0; i < n; ++i) CHECK(err[i] <= 1e-6);

  double cond = 0.0;
  REQUIRE(cmv_vandermonde_condition(rr.data(), ri.data(), n, &cond) == CMV_OK);
  CHECK(cond >= 1.0);

  cmv_report_destroy(fast);
  cmv_report_destroy(ref);
  cmv_poly_destroy(p);

  // P4 needs a variant
  cmv_poly* p4 = nullptr;
  CHECK(cmv_poly_gen("P4", nullptr, 10, 0.0, 0, &p4) == CMV_ERR_INVALID_ARGUMENT);
  REQUIRE(cmv_poly_gen("P4", "chebyshev", 10, 0.0, 0, &p4) == CMV_OK);
  CHECK(cmv_poly_degree(p4) == 10);
  cmv_poly_destroy(p4);
}

TEST_CASE("status strings and roundoff") {
  CHECK(std::string(cmv_status_message(CMV_OK)) == "ok");
  CHECK(std::string(cmv_status_message(CMV_ERR_PARSE)) == "parse error");
  CHECK(cmv_unit_roundoff() == doctest::Approx(2.220446049250313e-16));
}
