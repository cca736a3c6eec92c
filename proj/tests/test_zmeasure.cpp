#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "zmeas/zmeasure.hpp"

using namespace zmeas;

namespace {
ZParams ps1() { return ZParams(parse_gaussian("1+1i"), parse_gaussian("1-1i"), Rational(1)); }
ZParams comp1() { return ZParams(parse_gaussian("3/10"), parse_gaussian("2/5"), Rational(1, 2)); }
ZParams degen1() { return ZParams(parse_gaussian("4"), parse_gaussian("7/2"), Rational(2)); }
}  // namespace

TEST_CASE("classification") {
  CHECK(ps1().cls.series == Series::principal);
  CHECK(comp1().cls.series == Series::complementary);
  auto d = degen1().cls;
  CHECK(d.series == Series::degenerate);
  CHECK(d.detail == "at most 2 rows");

  // columns case: z = -m, z' < -m+1
  auto c = classify(parse_gaussian("-2"), parse_gaussian("-3/2"), Rational(1, 3));
  CHECK(c.series == Series::degenerate);
  CHECK(c.detail == "at most 2 columns");

  // fat hook: theta = 1/2, z = k*theta - l with (k,l)=(1,1), z' close by
  auto fh = classify(parse_gaussian("-1/2"), parse_gaussian("-2/5"), Rational(1, 2));
  CHECK(fh.series == Series::degenerate);
  CHECK(fh.detail == "fat hook (1,1)");

  // real z on the lattice (1/r)Z with z'=z is not principal
  CHECK(classify(parse_gaussian("2"), parse_gaussian("2"), Rational(1)).series != Series::principal);
  // real non-lattice z = z' is principal (z' = conj z)
  CHECK(classify(parse_gaussian("1/3"), parse_gaussian("1/3"), Rational(1)).series == Series::principal);
  // separated real pair with no degeneration
  CHECK(classify(parse_gaussian("1/3"), parse_gaussian("3/2"), Rational(1)).series == Series::nonpositive);
}

TEST_CASE("measure values and normalization") {
  ZParams p = ps1();
  CHECK(measure(Partition{1}, p) == 1);
  CHECK(measure(Partition{2}, p) == Rational(5, 6));
  CHECK(measure(Partition({1, 1}), p) == Rational(1, 6));

  for (const ZParams& q : {ps1(), comp1(), degen1()}) {
    for (int n = 0; n <= 8; ++n) {
      Rational s(0);
      for (const auto& lam : enumerate_partitions(n)) s += measure(lam, q);
      CHECK(s == 1);
    }
  }
}

TEST_CASE("positivity matches classification") {
  for (int n = 1; n <= 6; ++n)
    for (const auto& lam : enumerate_partitions(n)) {
      CHECK(measure(lam, ps1()) > 0);
      CHECK(measure(lam, comp1()) > 0);
      Rational md = measure(lam, degen1());
      if (lam.length() <= 2)
        CHECK(md > 0);
      else
        CHECK(md == 0);
    }
  // fat-hook support: z = k*theta - l exactly on hooks contained in (1,1)
  ZParams fh(parse_gaussian("-1/2"), parse_gaussian("-2/5"), Rational(1, 2));
  for (int n = 1; n <= 6; ++n)
    for (const auto& lam : enumerate_partitions(n)) {
      Rational m = measure(lam, fh);
      if (fat_hook_contains(lam, 1, 1))
        CHECK(m > 0);
      else
        CHECK(m == 0);
    }
}

TEST_CASE("duality") {
  for (const ZParams& q : {ps1(), comp1(), degen1()})
    for (int n = 0; n <= 8; ++n)
      for (const auto& lam : enumerate_partitions(n)) CHECK(duality_check(lam, q));
  // spot value: theta=2 vs theta=1/2 transposed
  ZParams a(parse_gaussian("1+1i"), parse_gaussian("1-1i"), Rational(2));
  ZParams b(-a.z / GaussianRational(Rational(2)), -a.zp / GaussianRational(Rational(2)), Rational(1, 2));
  CHECK(measure(Partition{2}, a) == measure(Partition({1, 1}), b));
}

TEST_CASE("plancherel") {
  CHECK(plancherel(Partition{1}, Rational(7, 3)) == 1);
  CHECK(plancherel(Partition{2}, Rational(1)) == Rational(1, 2));
  for (const Rational& th : {Rational(1), Rational(1, 2), Rational(3)})
    for (int n = 0; n <= 10; ++n) {
      Rational s(0);
      for (const auto& lam : enumerate_partitions(n)) s += plancherel(lam, th);
      CHECK(s == 1);
    }
}

TEST_CASE("plancherel is the large-z limit of the measure") {
  Rational th(2);
  for (const auto& lam : enumerate_partitions(4)) {
    Rational p = plancherel(lam, th);
    Rational d3, d4;
    {
      ZParams big(parse_gaussian("1000"), parse_gaussian("1000"), th);
      d3 = measure(lam, big) - p;
      if (d3 < 0) d3 = -d3;
    }
    {
      ZParams big(parse_gaussian("10000"), parse_gaussian("10000"), th);
      d4 = measure(lam, big) - p;
      if (d4 < 0) d4 = -d4;
    }
    // first-order decay in 1/R
    CHECK(d4 * 5 <= d3);
    CHECK(d3 <= Rational(1, 10));
  }
}

TEST_CASE("kappa and q_down") {
  Rational th(3, 7);
  CHECK(kappa(Partition{}, Partition{1}, th) == 1);
  CHECK(kappa(Partition{1}, Partition({1, 1}), th) == Rational(2) / (1 + th));
  CHECK(kappa(Partition{1}, Partition{2}, th) == 1);
  CHECK(kappa(Partition{2}, Partition({1, 1}), th) == 0);  // not a cover

  CHECK(q_down(Partition{1}, Partition{2}, th) == 1);
  CHECK(q_down(Partition{2}, Partition({2, 1}), th) == (1 + 2 * th) / (3 * (1 + th)));
  CHECK(q_down(Partition({1, 1}), Partition({2, 1}), th) == (2 + th) / (3 * (1 + th)));

  // q_down rows sum to 1 over mu for fixed lambda
  for (int n = 1; n <= 7; ++n)
    for (const auto& lam : enumerate_partitions(n)) {
      Rational s(0);
      for (const auto& mu : enumerate_partitions(n - 1)) s += q_down(mu, lam, th);
      CHECK(s == 1);
    }
}

TEST_CASE("coherency") {
  CHECK(coherency_residual(Partition{}, ps1()) == 0);
  CHECK(coherency_residual(Partition{1}, ps1()) == 0);
  for (const ZParams& q : {ps1(), comp1(), degen1()})
    for (int n = 0; n <= 6; ++n)
      for (const auto& mu : enumerate_partitions(n)) CHECK(coherency_residual(mu, q) == 0);
}

TEST_CASE("up transition") {
  ZParams p = ps1();
  CHECK(up_transition(Partition{}, Partition{1}, p) == 1);
  CHECK(up_transition(Partition{1}, Partition{2}, p) == Rational(5, 6));
  for (const ZParams& q : {ps1(), comp1()})
    for (int n = 0; n <= 7; ++n)
      for (const auto& lam : enumerate_partitions(n)) {
        Rational s(0);
        for (const auto& big : covers(lam)) s += up_transition(lam, big, q);
        CHECK(s == 1);
      }
  // degenerate series: null moves have probability exactly 0 and never
  // contribute; conditioning on a null state is an error
  ZParams d = degen1();
  CHECK(up_transition(Partition({1, 1}), Partition({1, 1, 1}), d) == 0);
  CHECK_THROWS_AS(up_transition(Partition({1, 1, 1}), Partition({2, 1, 1}), d), DomainError);
}

TEST_CASE("mixed measure") {
  MixedParams mp(ps1(), Rational(1, 2));
  CHECK(mixed_measure(Partition{}, mp).exact() == Rational(1, 4));  // (1-xi)^t with t=2
  CHECK(mixed_measure(Partition{2}, mp).exact() == Rational(3, 16) * Rational(5, 6));

  // partial sums approach 1 from below with the exact NB tail
  Rational total(0);
  for (int n = 0; n <= 30; ++n) {
    Rational level(0);
    for (const auto& lam : enumerate_partitions(n)) level += mixed_measure(lam, mp).exact();
    CHECK(level == nb_weight(mp, n).exact());  // measure normalization per level
    total += level;
    CHECK(total < 1);
  }
  CHECK(Rational(1) - total < Rational(1, 100000));

  // non-integer t carries a float prefactor
  MixedParams mp2(comp1(), Rational(1, 2));
  CHECK(!mixed_measure(Partition{1}, mp2).prefactor_exact);
  CHECK(mixed_measure(Partition{1}, mp2).value() > 0);
}

TEST_CASE("jack moment") {
  ZParams p = ps1();
  CHECK(jack_moment(Partition{}, p) == 1);
  CHECK(jack_moment(Partition{1}, p) == 1);
  // sum over lambda of (n!/H) jack_moment equals total mass 1
  for (const ZParams& q : {ps1(), comp1(), degen1()})
    for (int n = 0; n <= 8; ++n) {
      Rational s(0);
      for (const auto& lam : enumerate_partitions(n)) {
        Rational h = hook_products(lam, q.theta).first;
        s += Rational(factorial(n)) / h * jack_moment(lam, q);
      }
      CHECK(s == 1);
    }
}

TEST_CASE("pole errors") {
  // t = zz'/theta = -1 makes (t)_n vanish for n >= 2
  ZParams p(parse_gaussian("1"), parse_gaussian("-1"), Rational(1));
  CHECK_THROWS_AS(measure(Partition{2}, p), PoleError);
}
