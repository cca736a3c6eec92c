#pragma once

#include <cmath>
#include <complex>

#include "zmeas/numbers.hpp"

namespace zmeas {

// Lanczos approximation (g = 7, 9 terms), accurate to ~1e-13 over the
// double range we use; reflection handles Re z < 1/2.
inline std::complex<double> cgamma(std::complex<double> z) {
  static const double kLanczos[9] = {0.99999999999980993,  676.5203681218851,   -1259.1392167224028,
                                     771.32342877765313,   -176.61502916214059, 12.507343278686905,
                                     -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  static const double kPi = 3.14159265358979323846;
  if (z.real() < 0.5) {
    return kPi / (std::sin(kPi * z) * cgamma(1.0 - z));
  }
  z -= 1.0;
  std::complex<double> x = kLanczos[0];
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + std::complex<double>(i));
  std::complex<double> t = z + 7.5;
  return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

inline double rgamma(double x) { return std::tgamma(x); }

// Gamma of a rational argument, with exact pole detection.
inline double rgamma_checked(const Rational& x) {
  if (is_nonpositive_integer(x)) throw PoleError("gamma pole at " + to_string(x));
  return std::tgamma(to_double(x));
}

// Whether Gamma has a pole at the (exact) argument.
inline bool gamma_pole_at(const Rational& x) { return is_nonpositive_integer(x); }

inline bool gamma_pole_at(const GaussianRational& x) { return x.is_real() && is_nonpositive_integer(x.re); }

// Exact Gamma ratio Gamma(a)/Gamma(b) when a - b is an integer: a rational
// Pochhammer product. Throws if a - b is not integral.
inline GaussianRational gamma_ratio_exact(const GaussianRational& a, const GaussianRational& b) {
  GaussianRational d = a - b;
  if (!d.is_real() || !is_integer(d.re)) throw DomainError("gamma_ratio_exact: arguments must differ by an integer");
  long long m = d.re.convert_to<long long>();
  if (m >= 0) return pochhammer(b, static_cast<unsigned>(m));
  GaussianRational p = pochhammer(a, static_cast<unsigned>(-m));
  if (p.is_zero()) throw PoleError("gamma_ratio_exact: pole in the ratio");
  return GaussianRational(1) / p;
}

}  // namespace zmeas
