#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "zmeas/lattice.hpp"

using namespace zmeas;

namespace {
MixedParams ps1_mixed(Rational xi = Rational(1, 2)) {
  return MixedParams(ZParams(parse_gaussian("1+1i"), parse_gaussian("1-1i"), Rational(1)), xi);
}
MixedParams ps_theta2_mixed() {
  return MixedParams(ZParams(parse_gaussian("1+1i"), parse_gaussian("1-1i"), Rational(2)), Rational(1, 2));
}
}  // namespace

TEST_CASE("lattice round trips") {
  LatticeConfig empty = to_lattice(Partition{}, 2);
  CHECK(empty.heads.empty());
  CHECK(empty.contains(-2));
  CHECK(empty.contains(-4));
  CHECK(!empty.contains(-3));
  CHECK(!empty.contains(0));

  LatticeConfig c21 = to_lattice(Partition({2, 1}), 1);
  CHECK(c21.heads == std::vector<long long>{1, -1});
  CHECK(c21.contains(-3));
  CHECK(!c21.contains(-2));

  LatticeConfig c31 = to_lattice(Partition({3, 1}), 2);
  CHECK(c31.heads == std::vector<long long>{1, -3});
  CHECK(c31.contains(-6));

  for (int theta : {1, 2, 3})
    for (int n = 0; n <= 8; ++n)
      for (const auto& lam : enumerate_partitions(n)) CHECK(from_lattice(to_lattice(lam, theta)) == lam);

  // {0,-2,-3,...} at theta=1 is (1)
  LatticeConfig one;
  one.theta = 1;
  one.heads = {0};
  CHECK(from_lattice(one) == Partition{1});

  LatticeConfig bad;
  bad.theta = 1;
  bad.heads = {-3};  // stable value of l_i + i*theta would be negative
  CHECK_THROWS_AS(from_lattice(bad), DomainError);
  LatticeConfig bad2;
  bad2.theta = 2;
  bad2.heads = {1, 0};  // gap < theta
  CHECK_THROWS_AS(from_lattice(bad2), DomainError);
}

TEST_CASE("point removal") {
  CHECK(remove_points(Partition({2, 1}), {1}, 1) == Partition{1});
  CHECK(remove_points(Partition({3, 1}), {1}, 2) == Partition{1});
  CHECK(remove_points(Partition({3, 1}), {}, 2) == Partition({3, 1}));
  CHECK_THROWS_AS(remove_points(Partition({2, 1}), {2}, 1), DomainError);

  // composition law D_A = D_{a_2+theta} o D_{a_1} on random admissible picks
  std::mt19937_64 rng(11);
  for (int theta : {1, 2}) {
    for (int trial = 0; trial < 200; ++trial) {
      auto all = enumerate_partitions(3 + static_cast<int>(rng() % 6));
      const Partition& lam = all[rng() % all.size()];
      LatticeConfig cfg = to_lattice(lam, theta);
      std::vector<long long> pool = cfg.heads;
      for (long long i = lam.length() + 1; i <= lam.length() + 3; ++i) pool.push_back(-i * theta);
      if (pool.size() < 2) continue;
      size_t i = rng() % pool.size(), j = rng() % pool.size();
      if (i == j) continue;
      long long a1 = std::max(pool[i], pool[j]), a2 = std::min(pool[i], pool[j]);
      if (a1 - a2 < theta) continue;
      std::vector<long long> A = {a1, a2};
      Partition direct = remove_points(lam, A, theta);
      Partition step1 = remove_points(lam, {a1}, theta);
      Partition step2 = remove_points(step1, {a2 + theta}, theta);
      CHECK(direct == step2);
      long long asum = a1 + a2;
      CHECK(direct.size() == lam.size() - asum - 3 * theta);
      CHECK(in_image(direct, A, theta));
    }
  }
}

TEST_CASE("image characterization") {
  CHECK(in_image(Partition{1}, {1}, 1));
  // mu = (3): L = {2,-2,-3,...}, window for a=0,k=1 is [1,1]: avoided
  CHECK(in_image(Partition{3}, {0}, 1));
  // mu = (2): L = {1,-2,...} hits the window [1,1]
  CHECK(!in_image(Partition{2}, {0}, 1));
}

TEST_CASE("E* values") {
  Rational u(-3);
  CHECK(e_star(Partition{}, 2, u) == 1);
  for (int theta : {1, 2, 5}) {
    CHECK(e_star(Partition{1}, theta, u) == (u + 1) / u);
  }
  CHECK(e_star(Partition({2, 1}), 1, Rational(-3)) == Rational(1, 4));
  CHECK_THROWS_AS(e_star(Partition({1, 1}), 2, Rational(2)), PoleError);
  CHECK(e_star(Partition({2, 1}), 1, -3.0) == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("E# zeros and the exact identity with E*") {
  // zeros at u = -l_i - theta, probing past the explicit heads
  for (int theta : {1, 2})
    for (int n = 0; n <= 6; ++n)
      for (const auto& lam : enumerate_partitions(n)) {
        int r = lam.length();
        for (int i = 1; i <= r + 3; ++i) {
          double li = lam.part(i) - static_cast<double>(i) * theta;
          double u = -li - theta;
          CHECK(std::abs(e_sharp(lam, theta, u)) < 1e-12);
        }
        // off the zero set
        double probe = -0.63;
        CHECK(std::abs(e_sharp(lam, theta, probe)) > 1e-12);
        // E# * Gamma(-u/theta) = E* exactly at rational u < 0
        Rational uq(-7, 2);
        CHECK(e_sharp_times_gamma(lam, theta, uq) == e_star(lam, theta, uq));
      }
}

TEST_CASE("corr_lhs basics") {
  MixedParams mp = ps1_mixed();
  // A = {} gives the truncated total mass 1 - tail
  SeriesResult total = corr_lhs({}, mp, 20);
  CHECK(total.value.real() + total.tail_estimate == doctest::Approx(1.0).epsilon(1e-12));
  // monotone in N
  CHECK(corr_lhs({0}, mp, 10).value.real() <= corr_lhs({0}, mp, 16).value.real());
  // membership spot checks behind the A={0} sum
  CHECK(to_lattice(Partition({1, 1}), 1).contains(0));
  CHECK(to_lattice(Partition{1}, 1).contains(0));
  CHECK(!to_lattice(Partition{2}, 1).contains(0));
}

TEST_CASE("lattice correlation identity") {
  // exact-rational residual 0 with matched cutoffs
  {
    LatticeIdentityResult r = lattice_identity_residual({0}, ps1_mixed(), 1e-6, 40);
    CHECK(r.exact);
    CHECK(r.residual_core == 0);
    CHECK(r.residual == 0.0);
    CHECK(r.lhs > 0.0);
    CHECK(r.prefactor_gap < 1e-10);
  }
  {
    LatticeIdentityResult r = lattice_identity_residual({1, 3}, ps1_mixed(), 1e-5, 36);
    CHECK(r.exact);
    CHECK(r.residual_core == 0);
    CHECK(r.prefactor_gap < 1e-10);
  }
  {
    LatticeIdentityResult r = lattice_identity_residual({0}, ps_theta2_mixed(), 1e-5, 36);
    CHECK(r.exact);
    CHECK(r.residual_core == 0);
    CHECK(r.prefactor_gap < 1e-10);
  }
  CHECK_THROWS_AS(lattice_identity_residual({-1}, ps1_mixed(), 1e-4, 20), DomainError);
}

TEST_CASE("prefactor C' reduction at k=1, theta=1") {
  MixedParams mp = ps1_mixed();
  LatticePrefactor pre = corr_prefactor({2}, mp);
  CHECK(pre.one_minus_xi_exponent == 1);  // z+z'=2, k=1, theta=1
  GaussianRational z = mp.base.z, zp = mp.base.zp;
  // xi^{a+1} Gamma(z+a+1)Gamma(z'+a+1)/(Gamma(a+2)^2 Gamma(z)Gamma(z'))
  GaussianRational expect = GaussianRational(pow_int(mp.xi, 3)) * pochhammer(z, 3) * pochhammer(zp, 3) /
                            GaussianRational(Rational(factorial(3)) * Rational(factorial(3)));
  CHECK(pre.core == expect);
  auto us = corr_u_arguments({2}, 1);
  CHECK(us == std::vector<Rational>{Rational(-4), Rational(-4)});
}
