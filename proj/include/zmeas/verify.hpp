#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "zmeas/boundary.hpp"
#include "zmeas/hypergeom.hpp"
#include "zmeas/io.hpp"
#include "zmeas/lattice.hpp"
#include "zmeas/limit_corr.hpp"
#include "zmeas/sampler.hpp"
#include "zmeas/zmeasure.hpp"

namespace zmeas {

// The CLI-facing verification suites. Each runs module-level checks at desk
// scale with pinned budgets; failures are data (status "fail"), capability
// gaps are recorded as skips with the unmet precondition named.

namespace verify_detail {

inline ZParams ps1() { return ZParams(parse_gaussian("1+1i"), parse_gaussian("1-1i"), Rational(1)); }
inline ZParams comp1() { return ZParams(parse_gaussian("3/10"), parse_gaussian("2/5"), Rational(1, 2)); }
inline ZParams degen1() { return ZParams(parse_gaussian("4"), parse_gaussian("7/2"), Rational(2)); }

inline void push(VerificationReport& rep, const std::string& id, double residual, double budget,
                 const std::string& note = "") {
  VerificationCase c;
  c.id = id;
  c.residual = residual;
  c.budget = budget;
  c.note = note;
  c.status = residual <= budget ? "pass" : "fail";
  rep.cases.push_back(std::move(c));
}

inline void push_skip(VerificationReport& rep, const std::string& id, const std::string& why) {
  VerificationCase c;
  c.id = id;
  c.status = "capability-skip";
  c.note = why;
  rep.cases.push_back(std::move(c));
}

inline VerificationReport suite_normalization() {
  VerificationReport rep;
  rep.suite = "normalization";
  int idx = 0;
  for (const ZParams& p : {ps1(), comp1(), degen1()}) {
    Rational worst(0);
    for (int n = 0; n <= 6; ++n) {
      Rational s(0);
      for (const auto& lam : enumerate_partitions(n)) s += measure(lam, p);
      Rational d = s - 1;
      if (d < 0) d = -d;
      if (d > worst) worst = d;
    }
    push(rep, "normalization/set" + std::to_string(idx++), to_double(worst), 0.0);
  }
  return rep;
}

inline VerificationReport suite_duality() {
  VerificationReport rep;
  rep.suite = "duality";
  int bad = 0;
  for (const ZParams& p : {ps1(), comp1(), degen1()})
    for (int n = 0; n <= 5; ++n)
      for (const auto& lam : enumerate_partitions(n))
        if (!duality_check(lam, p)) ++bad;
  push(rep, "duality/measure-transpose", bad, 0.0);

  // termwise Cauchy identities
  GaussianRational z = parse_gaussian("1+1i"), zp = parse_gaussian("1-1i");
  int bad2 = 0;
  for (const Rational& th : {Rational(1, 2), Rational(1), Rational(2)}) {
    Rational inv = Rational(1) / th;
    for (int n = 0; n <= 5; ++n)
      for (const auto& lam : enumerate_partitions(n)) {
        Partition tr = lam.transpose();
        GaussianRational lhs = gen_pochhammer(z, tr, th) * gen_pochhammer(zp, tr, th);
        GaussianRational rhs = GaussianRational(pow_int(th, 2 * n)) * gen_pochhammer(-z / GaussianRational(th), lam, inv) *
                               gen_pochhammer(-zp / GaussianRational(th), lam, inv);
        if (lhs != rhs) ++bad2;
        if (hook_products(tr, th).second != pow_int(th, n) * hook_products(lam, inv).first) ++bad2;
      }
  }
  push(rep, "duality/pochhammer-hook-identities", bad2, 0.0);
  return rep;
}

inline VerificationReport suite_coherency() {
  VerificationReport rep;
  rep.suite = "coherency";
  for (const ZParams& p : {ps1(), comp1(), degen1()}) {
    Rational worst(0);
    for (int n = 0; n <= 5; ++n)
      for (const auto& mu : enumerate_partitions(n)) {
        Rational d = coherency_residual(mu, p);
        if (d < 0) d = -d;
        if (d > worst) worst = d;
      }
    push(rep, "coherency/" + std::string(series_name(p.cls.series)), to_double(worst), 0.0);
  }
  return rep;
}

inline VerificationReport suite_pieri() {
  VerificationReport rep;
  rep.suite = "pieri";
  for (const Rational& nu : {Rational(1, 2), Rational(1), Rational(2)}) {
    int bad = 0;
    for (int n = 0; n <= 5; ++n)
      for (const auto& mu : enumerate_partitions(n))
        if (!pieri_residual(mu, nu).is_zero()) ++bad;
    push(rep, "pieri/nu=" + to_string(nu), bad, 0.0);
  }
  return rep;
}

inline VerificationReport suite_dual_cauchy() {
  VerificationReport rep;
  rep.suite = "dual_cauchy";
  OmegaPointQ w1 = embed_iota_n(Partition{1});
  push(rep, "dual_cauchy/l1", dual_cauchy_check(Rational(2), {std::complex<double>(-10.0)}, w1, 8), 1e-6);
  OmegaPointQ w4 = embed_iota_n(Partition({2, 2}));
  push(rep, "dual_cauchy/l2-theta2",
       dual_cauchy_check(Rational(2), {std::complex<double>(-10.0), std::complex<double>(-12.0)}, w4, 8), 1e-6);
  return rep;
}

inline VerificationReport suite_binomial() {
  VerificationReport rep;
  rep.suite = "binomial";
  NumericPolicy pol;
  pol.series_tol = 1e-14;
  pol.max_degree = 30;
  for (const Rational& nu : {Rational(1, 2), Rational(1), Rational(2)}) {
    double worst = 0.0;
    for (int l = 1; l <= 3; ++l) {
      std::vector<Cx> x;
      for (int i = 0; i < l; ++i) x.push_back(Cx(0.3 - 0.17 * i));
      worst = std::max(worst, f10(Cx(0.8, 0.1), nu, x, pol).tail_estimate);
    }
    push(rep, "binomial/nu=" + to_string(nu), worst, 1e-8);
  }
  return rep;
}

inline VerificationReport suite_selberg() {
  VerificationReport rep;
  rep.suite = "selberg";
  NumericPolicy pol;
  for (const Rational& nu : {Rational(1, 2), Rational(1), Rational(2)}) {
    double worst = 0.0;
    for (double A : {1.0, 1.5})
      for (const Partition& lam : {Partition{}, Partition{1}, Partition{2}, Partition({1, 1})}) {
        auto [quad, closed] = selberg_simplex(lam, A, nu, 2, pol);
        worst = std::max(worst, std::abs(quad - closed) / std::abs(closed));
      }
    push(rep, "selberg/nu=" + to_string(nu), worst, 1e-6);
  }
  return rep;
}

inline VerificationReport suite_euler() {
  VerificationReport rep;
  rep.suite = "euler";
  NumericPolicy pol;
  pol.series_tol = 1e-14;
  {
    HyperParams hp{Cx(1.0), Cx(1.0), Cx(3.0), Rational(1), 1};
    double r = std::abs(euler_f21(hp, {Cx(0.25)}, pol).value - f21hat(hp, {Cx(0.25)}, pol).value) /
               std::abs(f21hat(hp, {Cx(0.25)}, pol).value);
    push(rep, "euler/l1", r, 1e-6);
  }
  {
    HyperParams hp{Cx(0.8), Cx(1.9), Cx(6.5), Rational(1, 2), 2};
    std::vector<Cx> x = {Cx(0.25), Cx(-0.3)};
    double r = std::abs(euler_f21(hp, x, pol).value - f21hat(hp, x, pol).value) / std::abs(f21hat(hp, x, pol).value);
    push(rep, "euler/l2", r, 1e-6);
  }
  return rep;
}

inline VerificationReport suite_f20_consistency() {
  VerificationReport rep;
  rep.suite = "f20_consistency";
  NumericPolicy pol;
  {
    double b = 2.7, x = -0.6;
    double r = std::abs(f20(Cx(-1.0), Cx(b), Rational(1), {x}).value.real() - (1.0 - b * x)) / (1.0 - b * x);
    push(rep, "f20/classical-1-bx", r, 1e-10);
  }
  {
    SeriesResult r2 = f20(Cx(-2.0), Cx(3.0), Rational(1), {-0.5}, 2.0, pol);
    SeriesResult r5 = f20(Cx(-2.0), Cx(3.0), Rational(1), {-0.5}, 5.0, pol);
    push(rep, "f20/c-independence", std::abs(r2.value - r5.value) / std::abs(r2.value), 1e-8);
  }
  {
    std::vector<double> x = {-0.5, -0.3};
    SeriesResult rs = f20(Cx(-1.0), Cx(2.6), Rational(1), x);
    SeriesResult rl = f20_laguerre_form(Cx(-1.0), Cx(2.6), Rational(1), x, pol);
    push(rep, "f20/laguerre-form", std::abs(rl.value - rs.value) / std::abs(rs.value), 1e-6);
  }
  return rep;
}

inline VerificationReport suite_lattice_identity() {
  VerificationReport rep;
  rep.suite = "lattice_identity";
  MixedParams mp(ps1(), Rational(1, 2));
  LatticeIdentityResult r = lattice_identity_residual({0}, mp, 1e-5, 32);
  push(rep, "lattice/theta1-k1-A0", r.residual / std::max(1e-300, std::abs(r.lhs)), 1e-4);
  push(rep, "lattice/prefactor-relation", r.prefactor_gap, 1e-10);
  return rep;
}

inline VerificationReport suite_prop51() {
  VerificationReport rep;
  rep.suite = "prop51";
  int bad = 0;
  for (int theta : {1, 2})
    for (int n = 0; n <= 4; ++n)
      for (const auto& lam : enumerate_partitions(n)) {
        EstarStructureResiduals r = estar_structure_residuals(lam, theta, Rational(-7, 2));
        if (r.product_vs_duplicated != 0 || r.power_vs_duplicated != 0 || r.estar_vs_embedding != 0) ++bad;
      }
  push(rep, "prop51/exact", bad, 0.0);
  return rep;
}

inline VerificationReport suite_lemma53() {
  VerificationReport rep;
  rep.suite = "lemma53";
  std::mt19937_64 rng(20240625);
  std::uniform_real_distribution<double> un(0.0, 1.0), uu(-10.0, -0.5);
  int bad = 0;
  for (int trial = 0; trial < 500; ++trial) {
    OmegaPoint w;
    w.delta = 0.2 + 4.8 * un(rng);
    double mass = w.delta * un(rng);
    double split = un(rng);
    w.alpha = {mass * split};
    w.beta = {mass * (1.0 - split)};
    if (!growth_bound_check(w, uu(rng))) ++bad;
  }
  push(rep, "lemma53/random-audit", bad, 0.0, "seeded audit, 500 points");
  return rep;
}

inline VerificationReport suite_laguerre() {
  VerificationReport rep;
  rep.suite = "laguerre";
  NumericPolicy pol;
  {
    LimitCorrParams lp(ZParams(parse_gaussian("1"), parse_gaussian("5/2"), Rational(1)), 1);
    double worst = 0.0;
    for (double x : {0.5, 1.0, 2.0}) {
      double expect = std::pow(x, 1.5) * std::exp(-x - std::lgamma(2.5));
      worst = std::max(worst, std::abs(rho_tilde({x}, lp, pol) - expect) / expect);
    }
    push(rep, "laguerre/m1-closed-form", worst, 1e-8);
  }
  {
    LimitCorrParams lp(ZParams(parse_gaussian("2"), parse_gaussian("5/2"), Rational(1)), 1);
    double worst = 0.0;
    for (double x : {0.5, 1.0, 2.0}) {
      double oracle = laguerre_oracle(2, 2.5, 1, 1, {x}, pol);
      worst = std::max(worst, std::abs(rho_tilde({x}, lp, pol) - oracle) / oracle);
    }
    push(rep, "laguerre/m2-oracle", worst, 1e-4);
  }
  return rep;
}

inline VerificationReport suite_lifting() {
  VerificationReport rep;
  rep.suite = "lifting";
  NumericPolicy pol;
  LimitCorrParams lp(ZParams(parse_gaussian("2"), parse_gaussian("5/2"), Rational(1)), 1);
  double worst = 0.0;
  for (double x : {0.8, 1.5, 2.5}) {
    worst = std::max(worst, lifting_residual(lp, {x}, pol) / rho_tilde({x}, lp, pol));
  }
  push(rep, "lifting/k1-z2theta", worst, 1e-6);
  return rep;
}

inline VerificationReport suite_bulk() {
  VerificationReport rep;
  rep.suite = "bulk";
  BulkParams bp1(ps1(), 1);
  push(rep, "bulk/s-sum-zero-k1", to_double(bp1.s_sum() < 0 ? -bp1.s_sum() : bp1.s_sum()), 0.0);
  BulkParams bp2(ps1(), 2);
  push(rep, "bulk/homogeneity-defect-k2",
       to_double(bp2.homogeneity_defect() < 0 ? -bp2.homogeneity_defect() : bp2.homogeneity_defect()), 0.0);
  double v0 = bulk_limit_density({0.3, 1.1}, bp2);
  double v1 = bulk_limit_density({0.3 - 1.4, 1.1 - 1.4}, bp2);
  push(rep, "bulk/translation-invariance", std::abs(v1 - v0) / std::max(1.0, std::abs(v0)), 1e-10);
  BulkParams dg(ZParams(parse_gaussian("2"), parse_gaussian("5/2"), Rational(1)), 1);
  push(rep, "bulk/degenerate-zero", std::abs(bulk_constant(dg)), 0.0);
  return rep;
}

}  // namespace verify_detail

inline const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names = {
      "normalization", "duality",  "coherency",       "pieri",   "dual_cauchy",
      "binomial",      "selberg",  "euler",           "f20_consistency",
      "lattice_identity", "prop51", "lemma53",        "laguerre", "lifting", "bulk"};
  return names;
}

inline std::vector<VerificationReport> run_verify(const std::vector<std::string>& suites) {
  using namespace verify_detail;
  std::map<std::string, std::function<VerificationReport()>> table = {
      {"normalization", suite_normalization},
      {"duality", suite_duality},
      {"coherency", suite_coherency},
      {"pieri", suite_pieri},
      {"dual_cauchy", suite_dual_cauchy},
      {"binomial", suite_binomial},
      {"selberg", suite_selberg},
      {"euler", suite_euler},
      {"f20_consistency", suite_f20_consistency},
      {"lattice_identity", suite_lattice_identity},
      {"prop51", suite_prop51},
      {"lemma53", suite_lemma53},
      {"laguerre", suite_laguerre},
      {"lifting", suite_lifting},
      {"bulk", suite_bulk},
  };
  std::vector<VerificationReport> out;
  // canonical order regardless of the request order
  for (const std::string& name : verify_suite_names()) {
    bool wanted = false;
    for (const auto& s : suites)
      if (s == name) wanted = true;
    if (!wanted) continue;
    auto start = std::chrono::steady_clock::now();
    VerificationReport rep = table.at(name)();
    rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    out.push_back(std::move(rep));
  }
  for (const auto& s : suites) {
    bool known = false;
    for (const std::string& name : verify_suite_names())
      if (s == name) known = true;
    if (!known) throw DomainError("run_verify: unknown suite '" + s + "'");
  }
  return out;
}

// 0 all pass, 1 any fail, 3 nothing executable.
inline int verify_exit_code(const std::vector<VerificationReport>& reports) {
  bool any_fail = false, any_exec = false;
  for (const auto& r : reports) {
    if (!r.all_pass()) any_fail = true;
    if (r.any_executed()) any_exec = true;
  }
  if (any_fail) return 1;
  if (!reports.empty() && !any_exec) return 3;
  return 0;
}

}  // namespace zmeas
