#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace zmeas {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Error taxonomy shared by the whole library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DomainError : Error {
  using Error::Error;
};
struct PoleError : Error {
  using Error::Error;
};
struct ResourceError : Error {
  using Error::Error;
};
// Raised when no implemented computation path covers the requested inputs;
// the message names the unmet preconditions.
struct CapabilityError : Error {
  using Error::Error;
};
struct NumericError : Error {
  using Error::Error;
};

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

// Exact n-th power, n may be negative (then r must be nonzero).
inline Rational pow_int(const Rational& r, long long n) {
  if (n == 0) return Rational(1);
  bool inv = n < 0;
  unsigned long long m = inv ? static_cast<unsigned long long>(-n) : static_cast<unsigned long long>(n);
  if (inv && r == 0) throw PoleError("pow_int: zero base with negative exponent");
  Rational base = r, acc(1);
  while (m) {
    if (m & 1) acc *= base;
    base *= base;
    m >>= 1;
  }
  return inv ? Rational(1) / acc : acc;
}

inline BigInt factorial(unsigned n) {
  BigInt f(1);
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

inline BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return BigInt(0);
  k = std::min(k, n - k);
  BigInt b(1);
  for (unsigned i = 0; i < k; ++i) {
    b *= (n - i);
    b /= (i + 1);
  }
  return b;
}

inline Rational floor_rational(const Rational& r) {
  BigInt q = numerator(r) / denominator(r);
  if (numerator(r) < 0 && q * denominator(r) != numerator(r)) --q;
  return Rational(q);
}

// True iff r is an integer <= 0 (gamma pole locations).
inline bool is_nonpositive_integer(const Rational& r) { return is_integer(r) && numerator(r) <= 0; }

// ---------------------------------------------------------------------------
// Exact rational parsing: "p", "p/q", with optional sign. No decimals; the
// CLI contract keeps every identity suite exact end to end.
inline Rational parse_rational(std::string_view s) {
  if (s.empty()) throw DomainError("parse_rational: empty string");
  auto strip_plus = [](std::string_view t) {
    if (!t.empty() && t.front() == '+') t.remove_prefix(1);
    return std::string(t);
  };
  auto slash = s.find('/');
  try {
    if (slash == std::string_view::npos) return Rational(BigInt(strip_plus(s)));
    BigInt num{strip_plus(s.substr(0, slash))};
    BigInt den{strip_plus(s.substr(slash + 1))};
    if (den == 0) throw DomainError("parse_rational: zero denominator");
    return Rational(num, den);
  } catch (const std::exception& e) {
    throw DomainError(std::string("parse_rational: cannot parse '") + std::string(s) + "'");
  }
}

inline std::string to_string(const Rational& r) {
  std::string s = numerator(r).convert_to<std::string>();
  if (denominator(r) != 1) s += "/" + denominator(r).convert_to<std::string>();
  return s;
}

// ---------------------------------------------------------------------------
// Gaussian rationals: exact complex numbers with rational real/imag parts.
struct GaussianRational {
  Rational re{0};
  Rational im{0};

  GaussianRational() = default;
  GaussianRational(Rational r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(long long r) : re(r) {}            // NOLINT(google-explicit-constructor)
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  bool is_real() const { return im == 0; }
  bool is_zero() const { return re == 0 && im == 0; }

  GaussianRational conj() const { return {re, -im}; }
  Rational norm() const { return re * re + im * im; }

  Rational real_or_throw(const char* what = "expected a real value") const {
    if (!is_real()) throw DomainError(what);
    return re;
  }

  std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    Rational n = b.norm();
    if (n == 0) throw PoleError("GaussianRational: division by zero");
    GaussianRational num = a * b.conj();
    return {num.re / n, num.im / n};
  }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
};

inline GaussianRational pow_int(const GaussianRational& g, long long n) {
  if (n < 0) return GaussianRational(1) / pow_int(g, -n);
  GaussianRational base = g, acc(1);
  unsigned long long m = static_cast<unsigned long long>(n);
  while (m) {
    if (m & 1) acc = acc * base;
    base = base * base;
    m >>= 1;
  }
  return acc;
}

// Parses "a", "a+bi", "a-bi", "bi", "i", "-i" with a,b rationals ("p/q" allowed).
inline GaussianRational parse_gaussian(std::string_view s) {
  if (s.empty()) throw DomainError("parse_gaussian: empty string");
  // Find the split point: a '+'/'-' that is not the leading sign.
  size_t split = std::string_view::npos;
  for (size_t i = 1; i < s.size(); ++i) {
    if (s[i] == '+' || s[i] == '-') split = i;
  }
  auto parse_imag_unit = [](std::string_view t) -> Rational {
    // t ends with 'i'; strip it, empty/sign-only means 1.
    t.remove_suffix(1);
    if (t.empty()) return Rational(1);
    if (t == "+") return Rational(1);
    if (t == "-") return Rational(-1);
    return parse_rational(t);
  };
  if (s.back() == 'i') {
    if (split == std::string_view::npos) return {Rational(0), parse_imag_unit(s)};
    return {parse_rational(s.substr(0, split)), parse_imag_unit(s.substr(split))};
  }
  return {parse_rational(s), Rational(0)};
}

inline std::string to_string(const GaussianRational& g) {
  if (g.im == 0) return to_string(g.re);
  std::string s = g.re == 0 ? std::string() : to_string(g.re);
  if (g.im > 0 && !s.empty()) s += "+";
  s += to_string(g.im) + "i";
  return s;
}

// Ordinary Pochhammer symbol (x)_n = x(x+1)...(x+n-1), exact.
inline GaussianRational pochhammer(const GaussianRational& x, unsigned n) {
  GaussianRational p(1);
  for (unsigned j = 0; j < n; ++j) p = p * (x + GaussianRational(Rational(j)));
  return p;
}

inline Rational pochhammer(const Rational& x, unsigned n) {
  Rational p(1);
  for (unsigned j = 0; j < n; ++j) p *= (x + j);
  return p;
}

}  // namespace zmeas
