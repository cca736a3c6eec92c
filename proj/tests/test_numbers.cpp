#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "zmeas/numbers.hpp"

using namespace zmeas;

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rational("7/2") == Rational(7, 2));
  CHECK(parse_rational("-3/10") == Rational(-3, 10));
  CHECK(parse_rational("42") == Rational(42));
  CHECK(to_string(Rational(-3, 10)) == "-3/10");
  CHECK(to_string(Rational(5)) == "5");
  CHECK_THROWS_AS(parse_rational("1/0"), DomainError);
  CHECK_THROWS_AS(parse_rational("abc"), DomainError);
  CHECK_THROWS_AS(parse_rational(""), DomainError);
}

TEST_CASE("gaussian parsing") {
  GaussianRational g = parse_gaussian("1+1i");
  CHECK(g.re == 1);
  CHECK(g.im == 1);
  CHECK(parse_gaussian("1-1i") == g.conj());
  CHECK(parse_gaussian("3/10").re == Rational(3, 10));
  CHECK(parse_gaussian("-2/5i").im == Rational(-2, 5));
  CHECK(parse_gaussian("i").im == 1);
  CHECK(parse_gaussian("-1/2-2/3i") == GaussianRational(Rational(-1, 2), Rational(-2, 3)));
  CHECK(to_string(parse_gaussian("1+1i")) == "1+1i");
  CHECK(to_string(parse_gaussian("-2/5i")) == "-2/5i");
}

TEST_CASE("gaussian arithmetic") {
  GaussianRational z = parse_gaussian("1+1i");
  GaussianRational zp = z.conj();
  CHECK((z * zp).is_real());
  CHECK((z * zp).re == 2);
  CHECK((z + zp).re == 2);
  GaussianRational q = z / zp;
  CHECK((q * zp) == z);
  CHECK(pow_int(z, 4) == GaussianRational(Rational(-4), Rational(0)));
  CHECK(pow_int(z, -2) == GaussianRational(1) / (z * z));
  CHECK_THROWS_AS(z / GaussianRational(0), PoleError);
}

TEST_CASE("pow_int and pochhammer") {
  CHECK(pow_int(Rational(1, 2), 10) == Rational(1, 1024));
  CHECK(pow_int(Rational(2), -3) == Rational(1, 8));
  CHECK(pochhammer(Rational(3), 4) == Rational(3 * 4 * 5 * 6));
  CHECK(pochhammer(Rational(-2), 3) == Rational(0));
  CHECK(pochhammer(GaussianRational(Rational(1), Rational(1)), 2) ==
        GaussianRational(Rational(1), Rational(1)) * GaussianRational(Rational(2), Rational(1)));
}

TEST_CASE("float conversion is faithful for big ratios") {
  Rational r = Rational(BigInt("123456789012345678901234567890"), BigInt("987654321098765432109876543210"));
  CHECK(to_double(r) == doctest::Approx(0.1249999988609375).epsilon(1e-12));
  // randomized agreement with int64 arithmetic
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    long long a = static_cast<long long>(rng() % 1000000) - 500000;
    long long b = static_cast<long long>(rng() % 1000000) + 1;
    Rational q(a, b);
    CHECK(to_double(q) == doctest::Approx(double(a) / double(b)).epsilon(1e-14));
  }
}

TEST_CASE("floor and integrality helpers") {
  CHECK(floor_rational(Rational(7, 2)) == 3);
  CHECK(floor_rational(Rational(-7, 2)) == -4);
  CHECK(floor_rational(Rational(-4)) == -4);
  CHECK(is_nonpositive_integer(Rational(0)));
  CHECK(is_nonpositive_integer(Rational(-3)));
  CHECK(!is_nonpositive_integer(Rational(2)));
  CHECK(!is_nonpositive_integer(Rational(-1, 2)));
}

TEST_CASE("factorial and binomial") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(10) == 3628800);
  CHECK(binomial(10, 3) == 120);
  CHECK(binomial(3, 7) == 0);
}
