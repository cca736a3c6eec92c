#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "zmeas/sampler.hpp"

using namespace zmeas;

namespace {
ZParams ps1() { return ZParams(parse_gaussian("1+1i"), parse_gaussian("1-1i"), Rational(1)); }
ZParams comp1() { return ZParams(parse_gaussian("3/10"), parse_gaussian("2/5"), Rational(1, 2)); }
ZParams degen2() { return ZParams(parse_gaussian("4"), parse_gaussian("7/2"), Rational(2)); }

double chi_square_threshold(int dof) { return dof + 3.0 * std::sqrt(2.0 * dof); }

double chi_square_stat(const std::map<Partition, long long>& counts, const ZParams& p, int n, long long samples) {
  double stat = 0.0;
  for (const auto& lam : enumerate_partitions(n)) {
    double expect = to_double(measure(lam, p)) * samples;
    auto it = counts.find(lam);
    double obs = it == counts.end() ? 0.0 : static_cast<double>(it->second);
    if (expect > 0) stat += (obs - expect) * (obs - expect) / expect;
  }
  return stat;
}
}  // namespace

TEST_CASE("reproducibility: identical seeds give identical records") {
  SampleRun a = run_fixed_n(6, ps1(), 42, 50);
  SampleRun b = run_fixed_n(6, ps1(), 42, 50);
  CHECK(a.records == b.records);
  SampleRun c = run_fixed_n(6, ps1(), 43, 50);
  CHECK(a.records != c.records);
}

TEST_CASE("fast RLE chain matches the exact probabilities") {
  for (const ZParams& p : {ps1(), comp1(), degen2()}) {
    detail::FastChainParams fp;
    fp.s = p.sum().real_or_throw().convert_to<double>();
    fp.q = p.prod().real_or_throw().convert_to<double>();
    fp.t = p.t.real_or_throw().convert_to<double>();
    fp.theta = to_double(p.theta);
    fp.theta_q = p.theta;
    fp.zq = p.z;
    fp.zpq = p.zp;
    for (int n = 0; n <= 7; ++n)
      for (const auto& lam : enumerate_partitions(n)) {
        if (p.cls.series == Series::degenerate && measure(lam, p) == 0) continue;
        std::vector<Rational> exact = detail::up_probabilities_exact(lam, p);
        detail::RleDiagram diag;
        for (int v : lam.parts()) {
          if (!diag.runs.empty() && diag.runs.back().first == v)
            diag.runs.back().second += 1;
          else
            diag.runs.emplace_back(v, 1);
        }
        diag.boxes = lam.size();
        std::vector<double> w;
        diag.candidate_weights(fp, w);
        double tn = fp.t + static_cast<double>(n);
        // map run candidates onto row indices
        long long row = 1;
        for (size_t r = 0; r < diag.runs.size(); ++r) {
          CHECK(w[r] / tn == doctest::Approx(to_double(exact[row - 1])).epsilon(1e-10));
          row += diag.runs[r].second;
        }
        CHECK(w.back() / tn == doctest::Approx(to_double(exact.back())).epsilon(1e-10));
      }
  }
}

TEST_CASE("n=1 always gives the single box") {
  Rng rng(7);
  CHECK(sample_partition(1, ps1(), rng) == Partition{1});
}

TEST_CASE("growth chain matches the measure (chi-square)") {
  for (const ZParams& p : {ps1(), comp1()}) {
    for (int n : {2, 3, 5}) {
      long long S = 30000;
      SampleRun run = run_fixed_n(n, p, 1234, S);
      std::map<Partition, long long> counts;
      for (const auto& lam : run.records) counts[lam] += 1;
      double stat = chi_square_stat(counts, p, n, S);
      int dof = static_cast<int>(enumerate_partitions(n).size()) - 1;
      CHECK(stat <= chi_square_threshold(dof));
    }
  }
  // the fast path agrees too (exact_threshold forced to 0)
  {
    ZParams p = ps1();
    std::map<Partition, long long> counts;
    long long S = 30000;
    for (long long i = 0; i < S; ++i) {
      Rng rng = Rng::stream(99, i);
      counts[sample_partition(4, p, rng, 0)] += 1;
    }
    double stat = chi_square_stat(counts, p, 4, S);
    CHECK(stat <= chi_square_threshold(4));
  }
}

TEST_CASE("degenerate series never leaves its support") {
  ZParams d = degen2();  // at most 2 rows
  SampleRun run = run_fixed_n(8, d, 5, 2000);
  for (const auto& lam : run.records) CHECK(lam.length() <= 2);
  // fast path too
  for (long long i = 0; i < 500; ++i) {
    Rng rng = Rng::stream(6, i);
    CHECK(sample_partition(30, d, rng, 0).length() <= 2);
  }
}

TEST_CASE("mixed sampling") {
  MixedParams mp(ps1(), Rational(1, 2));
  long long S = 20000;
  SampleRun run = run_mixed(mp, 7, S);
  // E[n] = t xi/(1-xi) = 2, Var = t xi/(1-xi)^2 = 4
  double mean = 0;
  for (const auto& lam : run.records) mean += static_cast<double>(lam.size());
  mean /= S;
  CHECK(std::abs(mean - 2.0) <= 3.0 * std::sqrt(4.0 / S));
  // frequency of lambda = (1) close to its mixed mass
  long long c1 = 0;
  for (const auto& lam : run.records)
    if (lam == Partition{1}) ++c1;
  double p1 = to_double(mixed_measure(Partition{1}, mp).exact());
  CHECK(std::abs(static_cast<double>(c1) / S - p1) <= 3.0 * std::sqrt(p1 * (1 - p1) / S));

  // xi -> 0 concentrates on the empty diagram
  MixedParams tiny(ps1(), Rational(1, 1000));
  SampleRun trun = run_mixed(tiny, 11, 500);
  long long empties = 0;
  for (const auto& lam : trun.records)
    if (lam.empty()) ++empties;
  CHECK(empties >= 490);
}

TEST_CASE("empirical correlations in the m=1 degenerate case") {
  // z = theta (m=1): single row; lifted one-point function x^{z'-1} e^{-x}/Gamma(z')
  ZParams p(parse_gaussian("1"), parse_gaussian("2"), Rational(1));
  MixedParams mp(p, Rational(99, 100));
  long long S = 4000;
  SampleRun run = run_mixed(mp, 2024, S);
  CorrelationQuery q;
  q.k = 1;
  q.boxes = {{0.5, 1.0}};
  EmpiricalCorrelation est = empirical_corr(run, p, q, Scaling::by_one_minus_xi);
  // closed form: int_{1/2}^1 x e^{-x} dx (Gamma(2) = 1)
  double mass = (1.5 * std::exp(-0.5) - 2.0 * std::exp(-1.0));
  CHECK(std::abs(est.estimate - mass) <= 3.0 * est.stderror + 0.01);
  // correlation-measure bound: estimate <= m^k for boxes inside (1/m, inf)^k
  CHECK(est.estimate <= 2.0 + 3.0 * est.stderror);  // boxes in (1/2,inf): m = 2
}

TEST_CASE("two-box symmetry") {
  ZParams p = ps1();
  SampleRun run = run_fixed_n(24, p, 88, 800);
  CorrelationQuery q;
  q.k = 2;
  q.boxes = {{0.05, 0.2}, {0.3, 0.9}};
  CorrelationQuery qswap;
  qswap.k = 2;
  qswap.boxes = {{0.3, 0.9}, {0.05, 0.2}};
  EmpiricalCorrelation a = empirical_corr(run, p, q, Scaling::by_n);
  EmpiricalCorrelation b = empirical_corr(run, p, qswap, Scaling::by_n);
  CHECK(a.estimate == b.estimate);
}

TEST_CASE("NB moments vs gamma moments, exact") {
  Rational t(2);
  auto rows9 = nb_gamma_moments(t, Rational(9, 10), 3);
  auto rows99 = nb_gamma_moments(t, Rational(99, 100), 3);
  auto rows999 = nb_gamma_moments(t, Rational(999, 1000), 3);
  CHECK(rows9[0].moment == 1);
  CHECK(rows9[0].gap == 0);
  // m = 1: moment = t xi, limit t, gap = t(1-xi)
  CHECK(rows9[1].moment == t * Rational(9, 10));
  CHECK(rows9[1].gap == t * Rational(1, 10));
  for (int m = 1; m <= 3; ++m) {
    CHECK(rows99[m].gap < rows9[m].gap);
    CHECK(rows999[m].gap < rows99[m].gap);
  }
}

TEST_CASE("scaled NB histogram approaches the gamma density") {
  CHECK(nb_histogram_gap(2.0, 0.999, 0.1, 0.1, 10.0) <= 0.02);
  // and is visibly worse far from the limit
  CHECK(nb_histogram_gap(2.0, 0.9, 0.1, 0.1, 10.0) > 0.02);
}

TEST_CASE("moment convergence audit") {
  ZParams p = ps1();
  // P_(1)(omega) = p_1 = 1: average equals the moment exactly at every N
  auto rows1 = moment_convergence_audit(Partition{1}, p, {4, 8});
  CHECK(rows1[0].gap == 0);
  CHECK(rows1[1].gap == 0);
  auto rows2 = moment_convergence_audit(Partition{2}, p, {6, 12, 20});
  CHECK(rows2[2].gap < rows2[0].gap);
  auto rows11 = moment_convergence_audit(Partition({1, 1}), p, {6, 12, 20});
  CHECK(rows11[2].gap < rows11[0].gap);
}
