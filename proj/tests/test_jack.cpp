#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>

#include "zmeas/jack.hpp"

using namespace zmeas;

TEST_CASE("degree tables invert correctly") {
  for (int n = 1; n <= 7; ++n) {
    const DegreeTables& t = degree_tables().get(n);
    size_t P = t.count();
    for (size_t i = 0; i < P; ++i)
      for (size_t j = 0; j < P; ++j) {
        Rational s(0);
        for (size_t k = 0; k < P; ++k) s += t.m_in_p(i)[k] * t.p_in_m(k)[j];
        CHECK(s == (i == j ? Rational(1) : Rational(0)));
      }
  }
  // p_11 = m_2 + 2 m_11
  const DegreeTables& t2 = degree_tables().get(2);
  size_t i11 = t2.index_of(Partition({1, 1}));
  CHECK(t2.p_in_m(i11)[t2.index_of(Partition{2})] == 1);
  CHECK(t2.p_in_m(i11)[i11] == 2);
}

TEST_CASE("small jack expansions") {
  Rational nu(2, 3);
  SymmetricPolynomial p1 = jack_P(Partition{1}, nu);
  CHECK(p1.coeff(Partition{1}) == 1);
  CHECK(p1.terms.size() == 1);

  SymmetricPolynomial p2 = jack_P(Partition{2}, nu);
  CHECK(p2.coeff(Partition{2}) == 1);
  CHECK(p2.coeff(Partition({1, 1})) == 2 * nu / (1 + nu));

  SymmetricPolynomial p11 = jack_P(Partition({1, 1}), nu);
  CHECK(p11.coeff(Partition({1, 1})) == 1);
  CHECK(p11.terms.size() == 1);
}

TEST_CASE("unitriangularity with dominance support") {
  for (const Rational& nu : {Rational(1, 3), Rational(1, 2), Rational(1), Rational(2), Rational(3)})
    for (int n = 1; n <= 6; ++n)
      for (const auto& lam : enumerate_partitions(n)) {
        SymmetricPolynomial p = jack_P(lam, nu);
        CHECK(p.coeff(lam) == 1);
        for (auto& [mu, c] : p.terms) {
          CHECK(Partition::dominates(lam, mu));
        }
      }
}

TEST_CASE("nu=1 gives Schur polynomials (bialternant ratio)") {
  // s_lambda(x) = det[x_i^{lambda_j + l - j}] / det[x_i^{l - j}]
  auto schur = [](const Partition& lam, const std::vector<double>& x) {
    int l = static_cast<int>(x.size());
    auto det = [&](const std::vector<int>& expo) {
      // 3x3 at most here
      std::vector<std::vector<double>> a(l, std::vector<double>(l));
      for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j) a[i][j] = std::pow(x[i], expo[j]);
      if (l == 1) return a[0][0];
      if (l == 2) return a[0][0] * a[1][1] - a[0][1] * a[1][0];
      return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
             a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    };
    std::vector<int> num(l), den(l);
    for (int j = 1; j <= l; ++j) {
      num[j - 1] = lam.part(j) + l - j;
      den[j - 1] = l - j;
    }
    return det(num) / det(den);
  };
  std::vector<double> x = {1.3, 0.7, 2.1};
  for (int n = 1; n <= 6; ++n)
    for (const auto& lam : enumerate_partitions(n)) {
      if (lam.length() > 3) continue;
      SymmetricPolynomial p = jack_P(lam, Rational(1));
      double mine = evaluate(p, x);
      CHECK(mine == doctest::Approx(schur(lam, x)).epsilon(1e-9));
    }
}

TEST_CASE("evaluation") {
  Rational nu(5, 7);
  CHECK(evaluate(jack_P(Partition{1}, nu), std::vector<Rational>{Rational(3), Rational(4)}) == 7);
  // P_2 at (1,1) = 2(1+2nu)/(1+nu)
  CHECK(evaluate(jack_P(Partition{2}, nu), std::vector<Rational>{Rational(1), Rational(1)}) ==
        2 * (1 + 2 * nu) / (1 + nu));
  // no variables: positive-degree polynomials vanish
  CHECK(evaluate(jack_P(Partition{2}, nu), std::vector<Rational>{}) == 0);
}

TEST_CASE("principal specialization") {
  for (const Rational& nu : {Rational(1, 2), Rational(1), Rational(2), Rational(7, 5)})
    for (int l = 0; l <= 6; ++l) {
      CHECK(principal_specialization(Partition{1}, nu, l) == l);
      CHECK(principal_specialization(Partition{2}, nu, l) == Rational(l) * (1 + nu * l) / (1 + nu));
      for (int n = 1; n <= 8 && l <= 6; ++n)
        for (const auto& lam : enumerate_partitions(n)) {
          std::vector<Rational> ones(l, Rational(1));
          if (n <= 6) CHECK(principal_specialization(lam, nu, l) == evaluate(jack_P(lam, nu), ones));
          if (lam.length() > l) CHECK(principal_specialization(lam, nu, l) == 0);
        }
    }
}

TEST_CASE("jack C normalization") {
  Rational nu(4, 9);
  std::vector<Rational> x = {Rational(1), Rational(1)};
  CHECK(jack_C(Partition{1}, nu, x) == 2);
  CHECK(jack_C(Partition{2}, nu, x) == 2 * (1 + 2 * nu) / (1 + nu));
  CHECK(jack_C(Partition{}, nu, std::vector<Rational>{Rational(5)}) == 1);
  CHECK(jack_C_ones(Partition{2}, nu, 2) == 2 * (1 + 2 * nu) / (1 + nu));
  // sum over |lambda|=n of C_lambda(x) = (x_1+...+x_l)^n
  std::vector<Rational> pts = {Rational(1, 3), Rational(2, 5)};
  for (int n = 1; n <= 5; ++n) {
    Rational s(0);
    for (const auto& lam : enumerate_partitions(n)) s += jack_C(lam, nu, pts);
    CHECK(s == pow_int(pts[0] + pts[1], n));
  }
}

TEST_CASE("pieri residual vanishes") {
  CHECK(pieri_residual(Partition{}, Rational(3, 4)).is_zero());
  CHECK(pieri_residual(Partition{1}, Rational(3, 4)).is_zero());
  for (const Rational& nu : {Rational(1, 2), Rational(1), Rational(2), Rational(3)})
    for (int n = 0; n <= 6; ++n)
      for (const auto& mu : enumerate_partitions(n)) CHECK(pieri_residual(mu, nu).is_zero());
}

TEST_CASE("degree bound enforced") {
  JackBasis local(4);
  CHECK_THROWS_AS(local.P(Partition({3, 2}), Rational(1)), ResourceError);
  CHECK(local.P(Partition({2, 2}), Rational(1)).coeff(Partition({2, 2})) == 1);
}
