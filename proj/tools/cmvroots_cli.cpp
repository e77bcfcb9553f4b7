// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: solve coefficient files, run the benchmark suites,
// and emit fast-vs-reference scatter data. Links the cmvroots shared library
// through its C interface only.
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cmvroots.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNoConvergence = 2;
constexpr size_t kDenseOracleDegreeCap = 256;  // dense reference is O(n^3) per sweep

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct PolyHandle {
  cmv_poly* p = nullptr;
  ~PolyHandle() { cmv_poly_destroy(p); }
};
struct ReportHandle {
  cmv_report* r = nullptr;
  ~ReportHandle() { cmv_report_destroy(r); }
};

struct RootList {
  std::vector<double> re, im;
  size_t size() const { return re.size(); }
};

RootList report_roots(const cmv_report* r) {
  RootList out;
  const size_t n = cmv_report_root_count(r);
  out.re.resize(n);
  out.im.resize(n);
  for (size_t i = 0; i < n; ++i) cmv_report_root(r, i, &out.re[i], &out.im[i]);
  return out;
}

// family parameter -> polynomial degree
size_t degree_of(const std::string& set, size_t n) {
  if (set == "P1" || set == "P2" || set == "P6") return 2 * n;
  if (set == "P3") return n + 1;
  return n;  // P4, P5
}

std::optional<size_t> family_n_of_degree(const std::string& set, size_t degree) {
  if (set == "P1" || set == "P2" || set == "P6") {
    if (degree % 2 != 0 || degree == 0) return std::nullopt;
    return degree / 2;
  }
  if (set == "P3") {
    if (degree < 2) return std::nullopt;
    return degree - 1;
  }
  return degree ? std::optional<size_t>(degree) : std::nullopt;
}

struct Instance {
  PolyHandle poly;
  size_t degree = 0;
};

int generate(const std::string& set, const std::string& kind, size_t fam_n, double lambda, uint64_t seed,
             Instance& out) {
  const char* variant = (set == "P4") ? kind.c_str() : nullptr;
  const cmv_status st = cmv_poly_gen(set.c_str(), variant, fam_n, lambda, seed, &out.poly.p);
  if (st != CMV_OK) {
    std::cerr << "error: cannot generate " << set << " n=" << fam_n << ": " << cmv_status_message(st) << "\n";
    return kExitUsage;
  }
  out.degree = cmv_poly_degree(out.poly.p);
  return kExitOk;
}

enum class Oracle { automatic, dense, closed_form, none };

std::optional<RootList> reference_roots(Oracle oracle, const std::string& set, const cmv_poly* p, size_t fam_n,
                                        long max_sweeps, bool* failed) {
  *failed = false;
  const size_t degree = cmv_poly_degree(p);
  Oracle pick = oracle;
  if (pick == Oracle::automatic) {
    if (set == "P1")
      pick = Oracle::closed_form;
    else if (degree <= kDenseOracleDegreeCap)
      pick = Oracle::dense;
    else
      pick = Oracle::none;
  }
  if (pick == Oracle::none) return std::nullopt;
  if (pick == Oracle::closed_form) {
    if (set != "P1") {
      std::cerr << "error: closed-form reference is only available for P1\n";
      *failed = true;
      return std::nullopt;
    }
    RootList out;
    out.re.resize(degree);
    out.im.resize(degree);
    cmv_p1_roots(fam_n, out.re.data(), out.im.data());
    return out;
  }
  ReportHandle ref;
  const cmv_status st = cmv_solve_dense(p, max_sweeps, &ref.r);
  if (st != CMV_OK && st != CMV_ERR_NO_CONVERGENCE) {
    std::cerr << "error: dense reference failed: " << cmv_status_message(st) << "\n";
    *failed = true;
    return std::nullopt;
  }
  return report_roots(ref.r);
}

double max_scaled_residual(const cmv_poly* p, const RootList& roots) {
  double worst = 0.0;
  for (size_t i = 0; i < roots.size(); ++i) {
    double resid = 0.0;
    cmv_poly_eval(p, roots.re[i], roots.im[i], nullptr, nullptr, &resid);
    worst = std::max(worst, resid);
  }
  return worst;
}

struct BenchRow {
  std::string test;
  size_t degree = 0;
  std::string nne_over_eps;
  double err = std::numeric_limits<double>::quiet_NaN();
  double werr = std::numeric_limits<double>::quiet_NaN();
  double averit = 0.0;
};

int run_roots(const std::string& file, const std::string& format, const std::string& out_path, long max_sweeps) {
  PolyHandle poly;
  size_t bad_line = 0;
  const cmv_status pst = cmv_poly_from_file(file.c_str(), &poly.p, &bad_line);
  if (pst != CMV_OK) {
    if (bad_line > 0)
      std::cerr << "error: malformed coefficient file " << file << " at line " << bad_line << "\n";
    else
      std::cerr << "error: cannot read a polynomial of degree >= 1 from " << file << "\n";
    return kExitUsage;
  }
  cmv_solve_options opts{};
  opts.max_sweeps = max_sweeps;
  opts.deflation_multiplier = 0.0;
  opts.dense_fallback = 1;
  ReportHandle rep;
  const cmv_status st = cmv_solve(poly.p, &opts, &rep.r);
  if (st != CMV_OK && st != CMV_ERR_NO_CONVERGENCE) {
    std::cerr << "error: solve failed: " << cmv_status_message(st) << "\n";
    return kExitUsage;
  }
  const RootList roots = report_roots(rep.r);

  std::ostream* os = &std::cout;
  std::ofstream file_out;
  if (!out_path.empty()) {
    file_out.open(out_path);
    if (!file_out) {
      std::cerr << "error: cannot open " << out_path << " for writing\n";
      return kExitUsage;
    }
    os = &file_out;
  }
  std::string flags;
  for (size_t i = 0; i < cmv_report_flag_count(rep.r); ++i) {
    if (!flags.empty()) flags += "+";
    flags += cmv_report_flag(rep.r, i);
  }
  if (flags.empty()) flags = "none";
  if (format == "text") {
    for (size_t i = 0; i < roots.size(); ++i)
      *os << "root " << i << ": " << fmt(roots.re[i]) << " " << (roots.im[i] < 0 ? "- " : "+ ")
          << fmt(std::abs(roots.im[i])) << "i\n";
    *os << "sweeps: " << cmv_report_sweeps(rep.r) << "\n";
    *os << "averit: " << fmt(cmv_report_averit(rep.r)) << "\n";
    *os << "flags: " << flags << "\n";
  } else {
    for (size_t i = 0; i < roots.size(); ++i) *os << fmt(roots.re[i]) << "," << fmt(roots.im[i]) << "\n";
    *os << "# sweeps=" << cmv_report_sweeps(rep.r) << " averit=" << fmt(cmv_report_averit(rep.r)) << " flags=" << flags
        << "\n";
  }
  return cmv_report_converged(rep.r) ? kExitOk : kExitNoConvergence;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cmvroots: polynomial roots via a structured CMV-shaped QR eigensolver"};
  app.require_subcommand(1);

  // --- roots ---
  std::string roots_file, roots_format = "csv", roots_out;
  long roots_max_sweeps = 0;
  CLI::App* roots_cmd = app.add_subcommand("roots", "solve a coefficient file");
  roots_cmd->add_option("file", roots_file, "coefficient file: one 're im' pair per line, '#' comments")->required();
  roots_cmd->add_option("--format", roots_format, "csv|text")->check(CLI::IsMember({"csv", "text"}));
  roots_cmd->add_option("--out", roots_out, "output path (default stdout)");
  roots_cmd->add_option("--max-sweeps", roots_max_sweeps, "sweep budget (default 30*degree)");

  // --- shared bench/compare options ---
  std::string set, kind, out_path, oracle_name = "auto";
  std::vector<size_t> degrees, family_ns;
  double lambda = 0.9;
  size_t seeds = 50;
  uint64_t seed = 1;
  long max_sweeps = 0;

  CLI::App* bench_cmd = app.add_subcommand("bench", "benchmark a test family, CSV output");
  bench_cmd->add_option("--set", set, "P1..P6")->required()->check(CLI::IsMember({"P1", "P2", "P3", "P4", "P5", "P6"}));
  bench_cmd->add_option("--degrees", degrees, "polynomial degrees (matrix sizes)");
  bench_cmd->add_option("--n", family_ns, "family parameter values (P1/P2/P6: degree 2n; P3: n+1; P4/P5: n)");
  bench_cmd->add_option("--kind", kind, "P4 variant: bernoulli|chebyshev|exp")
      ->check(CLI::IsMember({"bernoulli", "chebyshev", "exp"}));
  bench_cmd->add_option("--lambda", lambda, "P3 parameter, 0 < lambda < 1");
  bench_cmd->add_option("--seeds", seeds, "number of random instances per degree (P5/P6)");
  bench_cmd->add_option("--seed", seed, "base seed (P5/P6)");
  bench_cmd->add_option("--max-sweeps", max_sweeps, "sweep budget (default 30*degree)");
  bench_cmd->add_option("--oracle", oracle_name, "reference roots: auto|dense|closed-form|none")
      ->check(CLI::IsMember({"auto", "dense", "closed-form", "none"}));
  bench_cmd->add_option("--out", out_path, "output CSV path (default stdout)");

  std::string cset, ckind, cout_path, coracle_name = "auto";
  size_t cdegree = 0, cfam_n = 0;
  double clambda = 0.9;
  uint64_t cseed = 1;
  long cmax_sweeps = 0;
  CLI::App* compare_cmd = app.add_subcommand("compare", "fast vs reference root scatter, CSV output");
  compare_cmd->add_option("--set", cset, "P1..P6")
      ->required()
      ->check(CLI::IsMember({"P1", "P2", "P3", "P4", "P5", "P6"}));
  compare_cmd->add_option("--degree", cdegree, "polynomial degree");
  compare_cmd->add_option("--n", cfam_n, "family parameter");
  compare_cmd->add_option("--kind", ckind, "P4 variant")->check(CLI::IsMember({"bernoulli", "chebyshev", "exp"}));
  compare_cmd->add_option("--lambda", clambda, "P3 parameter");
  compare_cmd->add_option("--seed", cseed, "seed (P5/P6)");
  compare_cmd->add_option("--max-sweeps", cmax_sweeps, "sweep budget");
  compare_cmd->add_option("--oracle", coracle_name, "auto|dense|closed-form")
      ->check(CLI::IsMember({"auto", "dense", "closed-form"}));
  compare_cmd->add_option("--out", cout_path, "output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  auto parse_oracle = [](const std::string& s) {
    if (s == "dense") return Oracle::dense;
    if (s == "closed-form") return Oracle::closed_form;
    if (s == "none") return Oracle::none;
    return Oracle::automatic;
  };

  if (roots_cmd->parsed()) return run_roots(roots_file, roots_format, roots_out, roots_max_sweeps);

  if (bench_cmd->parsed()) {
    if (set == "P4" && kind.empty()) {
      std::cerr << "error: --set P4 requires --kind bernoulli|chebyshev|exp\n";
      return kExitUsage;
    }
    if (set != "P4" && !kind.empty()) {
      std::cerr << "error: --kind is only valid for P4\n";
      return kExitUsage;
    }
    if (set != "P3" && bench_cmd->count("--lambda") > 0) {
      std::cerr << "error: --lambda is only valid for P3\n";
      return kExitUsage;
    }
    if (set != "P5" && set != "P6" && bench_cmd->count("--seeds") > 0) {
      std::cerr << "error: --seeds is only valid for P5/P6\n";
      return kExitUsage;
    }
    const bool randomized = (set == "P5" || set == "P6");
    std::vector<size_t> fam;
    for (size_t n : family_ns) fam.push_back(n);
    for (size_t d : degrees) {
      const auto n = family_n_of_degree(set, d);
      if (!n) {
        std::cerr << "error: degree " << d << " is not representable by " << set << "\n";
        return kExitUsage;
      }
      fam.push_back(*n);
    }
    if (fam.empty()) {
      std::cerr << "error: give at least one --n or --degrees value\n";
      return kExitUsage;
    }
    const Oracle oracle = parse_oracle(oracle_name);

    std::vector<BenchRow> rows;
    bool any_nonconverged = false;
    for (size_t fn : fam) {
      BenchRow row;
      row.test = (set == "P4") ? set + ":" + kind : set;
      row.degree = degree_of(set, fn);
      const size_t nseeds = randomized ? seeds : 1;
      double nne_min = std::numeric_limits<double>::infinity(), nne_max = 0.0;
      double err_max = 0.0, werr_max = 0.0, averit_max = 0.0;
      bool have_stats = false, residual_only = false;
      for (size_t si = 0; si < nseeds; ++si) {
        Instance inst;
        if (int rc = generate(set, kind, fn, lambda, seed + si, inst); rc != kExitOk) return rc;
        cmv_solve_options opts{};
        opts.max_sweeps = max_sweeps;
        opts.dense_fallback = 1;
        ReportHandle rep;
        const cmv_status st = cmv_solve(inst.poly.p, &opts, &rep.r);
        if (st != CMV_OK && st != CMV_ERR_NO_CONVERGENCE) {
          std::cerr << "error: solve failed: " << cmv_status_message(st) << "\n";
          return kExitUsage;
        }
        if (!cmv_report_converged(rep.r)) any_nonconverged = true;
        averit_max = std::max(averit_max, cmv_report_averit(rep.r));
        const RootList roots = report_roots(rep.r);

        bool oracle_failed = false;
        const auto ref = reference_roots(oracle, set, inst.poly.p, fn, max_sweeps, &oracle_failed);
        if (oracle_failed) return kExitUsage;
        if (ref) {
          double err = 0.0, nne = 0.0, werr = 0.0;
          cmv_error_stats(inst.poly.p, rep.r, ref->re.data(), ref->im.data(), ref->size(), &err, &nne, &werr, nullptr);
          err_max = std::max(err_max, err);
          werr_max = std::max(werr_max, werr);
          nne_min = std::min(nne_min, nne);
          nne_max = std::max(nne_max, nne);
          have_stats = true;
        } else {
          residual_only = true;
          err_max = std::max(err_max, max_scaled_residual(inst.poly.p, roots));
        }
      }
      row.averit = averit_max;
      row.err = err_max;
      if (have_stats) {
        const double eps = cmv_unit_roundoff();
        row.werr = werr_max;
        row.nne_over_eps =
            randomized ? fmt(nne_min / eps) + ".." + fmt(nne_max / eps) : fmt(nne_max / eps);
      } else {
        row.nne_over_eps = "nan";  // residual-only validation: err column holds max scaled residual
        row.werr = std::numeric_limits<double>::quiet_NaN();
      }
      (void)residual_only;
      rows.push_back(std::move(row));
    }

    std::ostream* os = &std::cout;
    std::ofstream file_out;
    if (!out_path.empty()) {
      file_out.open(out_path);
      if (!file_out) {
        std::cerr << "error: cannot open " << out_path << "\n";
        return kExitUsage;
      }
      os = &file_out;
    }
    *os << "test,n,nne_over_eps,err,werr,averit\n";
    for (const BenchRow& r : rows)
      *os << r.test << "," << r.degree << "," << r.nne_over_eps << "," << fmt(r.err) << "," << fmt(r.werr) << ","
          << fmt(r.averit) << "\n";
    return any_nonconverged ? kExitNoConvergence : kExitOk;
  }

  // compare
  {
    if (cset == "P4" && ckind.empty()) {
      std::cerr << "error: --set P4 requires --kind\n";
      return kExitUsage;
    }
    size_t fn = cfam_n;
    if (cdegree > 0) {
      const auto n = family_n_of_degree(cset, cdegree);
      if (!n) {
        std::cerr << "error: degree " << cdegree << " is not representable by " << cset << "\n";
        return kExitUsage;
      }
      fn = *n;
    }
    if (fn == 0) {
      std::cerr << "error: give --degree or --n\n";
      return kExitUsage;
    }
    Instance inst;
    if (int rc = generate(cset, ckind, fn, clambda, cseed, inst); rc != kExitOk) return rc;
    const Oracle oracle = parse_oracle(coracle_name);
    if (oracle == Oracle::automatic && cset != "P1" && inst.degree > kDenseOracleDegreeCap) {
      std::cerr << "error: no automatic reference above degree " << kDenseOracleDegreeCap
                << " for " << cset << "; pass --oracle dense explicitly\n";
      return kExitUsage;
    }
    cmv_solve_options opts{};
    opts.max_sweeps = cmax_sweeps;
    opts.dense_fallback = 1;
    ReportHandle rep;
    const cmv_status st = cmv_solve(inst.poly.p, &opts, &rep.r);
    if (st != CMV_OK && st != CMV_ERR_NO_CONVERGENCE) {
      std::cerr << "error: solve failed\n";
      return kExitUsage;
    }
    bool oracle_failed = false;
    const auto ref = reference_roots(oracle, cset, inst.poly.p, fn, cmax_sweeps, &oracle_failed);
    if (oracle_failed || !ref) {
      std::cerr << "error: compare needs a reference root set\n";
      return kExitUsage;
    }
    std::ofstream out(cout_path);
    if (!out) {
      std::cerr << "error: cannot open " << cout_path << "\n";
      return kExitUsage;
    }
    const RootList fast = report_roots(rep.r);
    out << "re,im,source\n";
    for (size_t i = 0; i < fast.size(); ++i) out << fmt(fast.re[i]) << "," << fmt(fast.im[i]) << ",fast\n";
    for (size_t i = 0; i < ref->size(); ++i) out << fmt(ref->re[i]) << "," << fmt(ref->im[i]) << ",reference\n";
    return cmv_report_converged(rep.r) ? kExitOk : kExitNoConvergence;
  }
}
