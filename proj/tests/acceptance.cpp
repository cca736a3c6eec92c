// Acceptance suite: runs every criterion at its pinned tolerance and prints
// one pass/fail line per criterion. Exit status 0 iff all pass.
#include <chrono>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "zmeas/boundary.hpp"
#include "zmeas/hypergeom.hpp"
#include "zmeas/lattice.hpp"
#include "zmeas/limit_corr.hpp"
#include "zmeas/sampler.hpp"
#include "zmeas/verify.hpp"

using namespace zmeas;

namespace {

int g_failures = 0;

void report(int idx, const char* name, bool pass, const std::string& detail, double seconds) {
  std::printf("[%2d] %s  %-34s %s  (%.1fs)\n", idx, pass ? "PASS" : "FAIL", name, detail.c_str(), seconds);
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

template <class F>
void criterion(int idx, const char* name, F&& body) {
  auto start = std::chrono::steady_clock::now();
  bool pass = false;
  std::string detail;
  try {
    pass = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report(idx, name, pass, detail, secs);
}

ZParams ps1() { return ZParams(parse_gaussian("1+1i"), parse_gaussian("1-1i"), Rational(1)); }
ZParams comp1() { return ZParams(parse_gaussian("3/10"), parse_gaussian("2/5"), Rational(1, 2)); }
ZParams degen1() { return ZParams(parse_gaussian("4"), parse_gaussian("7/2"), Rational(2)); }
ZParams ps1_theta2() { return ZParams(parse_gaussian("1+1i"), parse_gaussian("1-1i"), Rational(2)); }

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

}  // namespace

int main() {
  // 1. Normalization: exact rational equality sum = 1 for n <= 8.
  criterion(1, "normalization", [](std::string& detail) {
    bool ok = true;
    for (const ZParams& p : {ps1(), comp1(), degen1()})
      for (int n = 0; n <= 8; ++n) {
        Rational s(0);
        for (const auto& lam : enumerate_partitions(n)) s += measure(lam, p);
        if (s != 1) ok = false;
      }
    detail = "sum over Y_n = 1 exactly, n <= 8, three parameter sets";
    return ok;
  });

  // 2. Duality and coherency, exact, n <= 7.
  criterion(2, "duality + coherency", [](std::string& detail) {
    bool ok = true;
    for (const ZParams& p : {ps1(), comp1(), degen1()})
      for (int n = 0; n <= 7; ++n)
        for (const auto& lam : enumerate_partitions(n)) {
          if (!duality_check(lam, p)) ok = false;
          if (coherency_residual(lam, p) != 0) ok = false;
        }
    detail = "exact duality and zero coherency residual, n <= 7";
    return ok;
  });

  // 3. Pieri certificate.
  criterion(3, "pieri certificate", [](std::string& detail) {
    bool ok = true;
    for (const Rational& nu : {Rational(1, 2), Rational(1), Rational(2), Rational(3)})
      for (int n = 0; n <= 6; ++n)
        for (const auto& mu : enumerate_partitions(n))
          if (!pieri_residual(mu, nu).is_zero()) ok = false;
    detail = "P_mu P_(1) expansion exact, |mu| <= 6, nu in {1/2,1,2,3}";
    return ok;
  });

  // 4. Termwise transposition identities behind the Cauchy expansion, exact.
  criterion(4, "termwise Cauchy identities", [](std::string& detail) {
    bool ok = true;
    GaussianRational z = parse_gaussian("1+1i"), zp = parse_gaussian("1-1i");
    for (const Rational& th : {Rational(1, 2), Rational(1), Rational(2), Rational(3)}) {
      Rational inv = Rational(1) / th;
      for (int n = 0; n <= 6; ++n)
        for (const auto& lam : enumerate_partitions(n)) {
          Partition tr = lam.transpose();
          GaussianRational lhs = gen_pochhammer(z, tr, th) * gen_pochhammer(zp, tr, th);
          GaussianRational rhs = GaussianRational(pow_int(th, 2 * n)) *
                                 gen_pochhammer(-z / GaussianRational(th), lam, inv) *
                                 gen_pochhammer(-zp / GaussianRational(th), lam, inv);
          if (lhs != rhs) ok = false;
          if (hook_products(tr, th).second != pow_int(th, n) * hook_products(lam, inv).first) ok = false;
        }
    }
    detail = "Pochhammer and hook transposition identities exact, |lam| <= 6";
    return ok;
  });

  // 5. Binomial theorem residual at degree 30.
  criterion(5, "binomial theorem (1F0)", [](std::string& detail) {
    NumericPolicy pol;
    pol.series_tol = 1e-14;
    pol.max_degree = 30;
    double worst = 0.0;
    for (const Rational& nu : {Rational(1, 2), Rational(1), Rational(2)})
      for (int l = 1; l <= 3; ++l) {
        std::vector<Cx> x;
        for (int i = 0; i < l; ++i) x.push_back(Cx(0.3 - 0.21 * i));
        worst = std::max(worst, f10(Cx(1.3, 0.4), nu, x, pol).tail_estimate);
        std::vector<Cx> xneg;
        for (int i = 0; i < l; ++i) xneg.push_back(Cx(-0.3 + 0.17 * i));
        worst = std::max(worst, f10(Cx(0.7), nu, xneg, pol).tail_estimate);
      }
    detail = "series-product residual " + fmt(worst) + " <= 1e-8";
    return worst <= 1e-8;
  });

  // 6. Selberg-type simplex integral against its closed form.
  criterion(6, "selberg simplex integral", [](std::string& detail) {
    NumericPolicy pol;
    double worst = 0.0;
    for (const Rational& nu : {Rational(1, 2), Rational(1), Rational(2)})
      for (double A : {1.0, 1.5})
        for (const Partition& lam : {Partition{}, Partition{1}, Partition{2}, Partition({1, 1})}) {
          auto [quad, closed] = selberg_simplex(lam, A, nu, 2, pol);
          worst = std::max(worst, std::abs(quad - closed) / std::abs(closed));
        }
    auto [q13, c13] = selberg_simplex(Partition{}, 1.0, Rational(1), 2, pol);
    bool hand = std::abs(q13 - 1.0 / 3.0) < 1e-9 && std::abs(c13 - 1.0 / 3.0) < 1e-12;
    detail = "quadrature vs closed form, worst rel " + fmt(worst) + " <= 1e-6, hand value 1/3";
    return worst <= 1e-6 && hand;
  });

  // 7. Euler-type integral representation of 2F1-hat.
  criterion(7, "euler integral representation", [](std::string& detail) {
    NumericPolicy pol;
    pol.series_tol = 1e-14;
    double worst = 0.0;
    {
      HyperParams hp{Cx(1.0), Cx(1.0), Cx(3.0), Rational(1), 1};
      Cx s = f21hat(hp, {Cx(0.25)}, pol).value;
      worst = std::max(worst, std::abs(euler_f21(hp, {Cx(0.25)}, pol).value - s) / std::abs(s));
    }
    {
      HyperParams hp{Cx(0.6), Cx(1.4), Cx(3.1), Rational(2), 1};
      Cx s = f21hat(hp, {Cx(-0.45)}, pol).value;
      worst = std::max(worst, std::abs(euler_f21(hp, {Cx(-0.45)}, pol).value - s) / std::abs(s));
    }
    {
      HyperParams hp{Cx(-1.0), Cx(1.7), Cx(5.0), Rational(1), 2};
      std::vector<Cx> x = {Cx(0.3), Cx(0.2)};
      Cx s = f21hat(hp, x, pol).value;
      worst = std::max(worst, std::abs(euler_f21(hp, x, pol).value - s) / std::abs(s));
    }
    {
      HyperParams hp{Cx(0.8), Cx(1.9), Cx(6.5), Rational(1, 2), 2};
      std::vector<Cx> x = {Cx(0.25), Cx(-0.3)};
      Cx s = f21hat(hp, x, pol).value;
      worst = std::max(worst, std::abs(euler_f21(hp, x, pol).value - s) / std::abs(s));
    }
    detail = "euler_f21 vs Gamma(c) * regularized series, worst rel " + fmt(worst) + " <= 1e-6";
    return worst <= 1e-6;
  });

  // 8. 2F0 consistency.
  criterion(8, "2F0 consistency", [](std::string& detail) {
    NumericPolicy pol;
    double b = 2.7, x = -0.6;
    double classical = std::abs(f20(Cx(-1.0), Cx(b), Rational(1), {x}).value.real() - (1.0 - b * x)) / (1.0 - b * x);
    SeriesResult r2 = f20(Cx(-2.0), Cx(3.0), Rational(1), {-0.5}, 2.0, pol);
    SeriesResult r5 = f20(Cx(-2.0), Cx(3.0), Rational(1), {-0.5}, 5.0, pol);
    double cindep = std::abs(r2.value - r5.value) / std::abs(r2.value);
    double lag = 0.0;
    {
      std::vector<double> xs = {-0.5, -0.3};
      SeriesResult rs = f20(Cx(-1.0), Cx(2.6), Rational(1), xs);
      SeriesResult rl = f20_laguerre_form(Cx(-1.0), Cx(2.6), Rational(1), xs, pol);
      lag = std::max(lag, std::abs(rl.value - rs.value) / std::abs(rs.value));
      SeriesResult rs2 = f20(Cx(-2.0), Cx(3.1), Rational(1, 2), xs);
      SeriesResult rl2 = f20_laguerre_form(Cx(-2.0), Cx(3.1), Rational(1, 2), xs, pol);
      lag = std::max(lag, std::abs(rl2.value - rs2.value) / std::abs(rs2.value));
    }
    detail = "classical " + fmt(classical) + " <= 1e-10, c-indep " + fmt(cindep) + " <= 1e-8, laguerre " + fmt(lag) +
             " <= 1e-6";
    return classical <= 1e-10 && cindep <= 1e-8 && lag <= 1e-6;
  });

  // 9. Lattice correlation identity.
  criterion(9, "lattice correlation identity", [](std::string& detail) {
    struct Case {
      std::vector<long long> A;
      MixedParams mp;
    };
    std::vector<Case> cases = {{{0}, MixedParams(ps1(), Rational(1, 2))},
                               {{1, 3}, MixedParams(ps1(), Rational(1, 2))},
                               {{0}, MixedParams(ps1_theta2(), Rational(1, 2))}};
    double worst_rel = 0.0, worst_pref = 0.0;
    bool all_exact = true;
    for (auto& c : cases) {
      LatticeIdentityResult r = lattice_identity_residual(c.A, c.mp, 1e-6, 44);
      worst_rel = std::max(worst_rel, r.residual / std::max(1e-300, std::abs(r.lhs)));
      worst_pref = std::max(worst_pref, r.prefactor_gap);
      if (!(r.exact && r.residual_core == 0)) all_exact = false;
    }
    detail = std::string(all_exact ? "residual exactly 0 (rational)" : "residual rel " + fmt(worst_rel)) +
             " <= 1e-4, prefactor relation " + fmt(worst_pref) + " <= 1e-10";
    return worst_rel <= 1e-4 && worst_pref <= 1e-10;
  });

  // 10. E*-structure identities (duplication / power / embedding), exact.
  criterion(10, "E* structure identities", [](std::string& detail) {
    bool ok = true;
    for (int theta : {1, 2, 3})
      for (int n = 0; n <= 6; ++n)
        for (const auto& lam : enumerate_partitions(n))
          for (const Rational& u : {Rational(-7, 2), Rational(-13, 3)}) {
            EstarStructureResiduals r = estar_structure_residuals(lam, theta, u);
            if (r.product_vs_duplicated != 0 || r.power_vs_duplicated != 0 || r.estar_vs_embedding != 0) ok = false;
          }
    detail = "all three residuals exactly 0, |lam| <= 6, theta in {1,2,3}";
    return ok;
  });

  // 11. Degenerate-series limit correlations.
  criterion(11, "degenerate limit correlations", [](std::string& detail) {
    NumericPolicy pol;
    double worst_m1 = 0.0;
    for (int theta : {1, 2}) {
      double zp = theta == 1 ? 2.5 : 3.5;
      LimitCorrParams lp(ZParams(GaussianRational(Rational(theta)), Rational(theta == 1 ? 5 : 7, 2), Rational(theta)), 1);
      for (double x : {0.4, 0.8, 1.3, 2.2, 3.6}) {
        double expect = std::pow(x, zp - 1.0) * std::exp(-x - std::lgamma(zp));
        worst_m1 = std::max(worst_m1, std::abs(rho_tilde({x}, lp, pol) - expect) / expect);
      }
    }
    double worst_m2 = 0.0;
    {
      LimitCorrParams lp(ZParams(parse_gaussian("2"), parse_gaussian("5/2"), Rational(1)), 1);
      for (double x : {0.5, 1.0, 1.8, 2.9, 4.2}) {
        double oracle = laguerre_oracle(2, 2.5, 1, 1, {x}, pol);
        worst_m2 = std::max(worst_m2, std::abs(rho_tilde({x}, lp, pol) - oracle) / oracle);
      }
    }
    bool vanish = true;
    for (int theta : {1, 2})
      for (int m : {1, 2})
        for (int k = m + 1; k <= m + 2; ++k) {
          LimitCorrParams lp(ZParams(GaussianRational(Rational(m) * theta), parse_gaussian("19/4"), Rational(theta)), k);
          std::vector<double> x;
          for (int i = 0; i < k; ++i) x.push_back(0.2 + 0.11 * i);
          if (rho_tilde(x, lp, pol) != 0.0) vanish = false;
        }
    detail = "m=1 closed form " + fmt(worst_m1) + " <= 1e-8, m=2 oracle " + fmt(worst_m2) +
             " <= 1e-4, k > m vanishing exact";
    return worst_m1 <= 1e-8 && worst_m2 <= 1e-4 && vanish;
  });

  // 12. Lifting consistency.
  criterion(12, "lifting consistency", [](std::string& detail) {
    NumericPolicy pol;
    LimitCorrParams lp(ZParams(parse_gaussian("2"), parse_gaussian("5/2"), Rational(1)), 1);
    double worst = 0.0;
    for (double x : {0.8, 1.5, 2.5}) {
      worst = std::max(worst, lifting_residual(lp, {x}, pol) / rho_tilde({x}, lp, pol));
    }
    detail = "lift(rho) vs rho_tilde rel " + fmt(worst) + " <= 1e-6 (k=1, z=2theta, theta=1)";
    return worst <= 1e-6;
  });

  // 13. Sampling exactness.
  criterion(13, "sampling exactness", [](std::string& detail) {
    ZParams p = ps1();
    bool chi_ok = true;
    double worst_sigma = 0.0;
    for (int n = 2; n <= 5; ++n) {
      long long S = 100000;
      SampleRun run = run_fixed_n(n, p, 20240901 + n, S);
      std::map<Partition, long long> counts;
      for (const auto& lam : run.records) counts[lam] += 1;
      double stat = 0.0;
      for (const auto& lam : enumerate_partitions(n)) {
        double expect = to_double(measure(lam, p)) * S;
        auto it = counts.find(lam);
        double obs = it == counts.end() ? 0.0 : static_cast<double>(it->second);
        stat += (obs - expect) * (obs - expect) / expect;
      }
      int dof = static_cast<int>(enumerate_partitions(n).size()) - 1;
      double sigmas = (stat - dof) / std::sqrt(2.0 * dof);
      worst_sigma = std::max(worst_sigma, sigmas);
      if (sigmas > 3.0) chi_ok = false;
    }
    // lifted one-point box mass, m = 1 degenerate case (z = theta)
    ZParams dp(parse_gaussian("1"), parse_gaussian("2"), Rational(1));
    MixedParams mp(dp, Rational(999, 1000));
    SampleRun run = run_mixed(mp, 424242, 20000);
    CorrelationQuery q;
    q.k = 1;
    q.boxes = {{0.5, 1.0}};
    EmpiricalCorrelation est = empirical_corr(run, dp, q, Scaling::by_one_minus_xi);
    double mass = 1.5 * std::exp(-0.5) - 2.0 * std::exp(-1.0);
    double gap = std::abs(est.estimate - mass);
    bool box_ok = gap <= 3.0 * est.stderror;
    detail = "chi-square within " + fmt(worst_sigma) + " sigma (<=3), box mass gap " + fmt(gap) + " <= 3se=" +
             fmt(3.0 * est.stderror);
    return chi_ok && box_ok;
  });

  // 14. Negative binomial to gamma: exact moments and histogram.
  criterion(14, "negative binomial -> gamma", [](std::string& detail) {
    Rational t(2);
    auto r9 = nb_gamma_moments(t, Rational(9, 10), 3);
    auto r99 = nb_gamma_moments(t, Rational(99, 100), 3);
    auto r999 = nb_gamma_moments(t, Rational(999, 1000), 3);
    bool mono = true;
    for (int m = 1; m <= 3; ++m) {
      if (!(r99[m].gap < r9[m].gap && r999[m].gap < r99[m].gap)) mono = false;
    }
    double hist = nb_histogram_gap(2.0, 0.999, 0.1, 0.1, 10.0);
    detail = "moment gaps monotone along xi, histogram sup-gap " + fmt(hist) + " <= 0.02";
    return mono && hist <= 0.02;
  });

  // 15. Bulk scaling limit at the origin.
  criterion(15, "bulk limit", [](std::string& detail) {
    // structure: s-sum zero at k=1 and degree-zero homogeneity at k<=2, exact
    BulkParams b1(ps1(), 1);
    BulkParams b2(ps1(), 2);
    bool structure = (b1.s_sum() == 0) && (b1.homogeneity_defect() == 0) && (b2.homogeneity_defect() == 0);
    // translation invariance, theta = 1, k <= 2
    double worst_shift = 0.0;
    {
      double v0 = bulk_limit_density({0.4}, b1);
      double v1 = bulk_limit_density({-1.3}, b1);
      worst_shift = std::max(worst_shift, std::abs(v1 - v0) / std::max(1.0, std::abs(v0)));
      double w0 = bulk_limit_density({0.3, 1.1}, b2);
      double w1 = bulk_limit_density({0.3 - 2.1, 1.1 - 2.1}, b2);
      worst_shift = std::max(worst_shift, std::abs(w1 - w0) / std::max(1.0, std::abs(w0)));
    }
    // degenerate series: exact zero constant
    BulkParams dg(ZParams(parse_gaussian("2"), parse_gaussian("5/2"), Rational(1)), 1);
    bool degenerate_zero = bulk_constant(dg) == std::complex<double>(0.0);
    // Monte Carlo mid-window density, theta=1, k=1, n ~ 1e4, documented seed
    const long long n = 10000;
    const long long samples = 600;
    const uint64_t seed = 60021;
    const double ylo = 2.5, yhi = 7.0;
    double C = bulk_constant(b1).real();
    long long hits = 0;
    for (long long i = 0; i < samples; ++i) {
      Rng rng = Rng::stream(seed, static_cast<uint64_t>(i));
      Partition lam = sample_partition(n, ps1(), rng, 0);
      for (double x : scaled_points(lam, 1.0, 1.0 / static_cast<double>(n))) {
        double y = -std::log(x);
        if (y > ylo && y <= yhi) ++hits;
      }
    }
    double density = static_cast<double>(hits) / (samples * (yhi - ylo));
    double mc_gap = std::abs(density - C) / C;
    detail = "structure exact, shift-invariance " + fmt(worst_shift) + " <= 1e-10, degenerate C=0, MC density " +
             fmt(density) + " vs C=" + fmt(C) + " gap " + fmt(mc_gap) + " <= 0.10 (seed 60021, n=1e4)";
    return structure && worst_shift <= 1e-10 && degenerate_zero && mc_gap <= 0.10;
  });

  std::printf("ACCEPTANCE: %d/15 criteria passed\n", 15 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
