#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "zmeas/gamma.hpp"
#include "zmeas/numeric_policy.hpp"
#include "zmeas/partition.hpp"
#include "zmeas/zmeasure.hpp"

namespace zmeas {

// Semiinfinite point configuration L(lambda) = {lambda_i - i*theta} on Z for
// integer theta. Only the heads (entries with index <= length) are stored;
// beyond them l_i = -i*theta.
struct LatticeConfig {
  std::vector<long long> heads;
  int theta = 1;

  bool contains(long long a) const {
    for (size_t i = 0; i < heads.size(); ++i)
      if (heads[i] == a) return true;
    // tail: a = -i*theta with i > #heads
    if (a >= 0 || a % theta != 0) return false;
    return (-a) / theta > static_cast<long long>(heads.size());
  }
};

inline LatticeConfig to_lattice(const Partition& lam, int theta) {
  if (theta < 1) throw DomainError("to_lattice: theta must be a positive integer");
  LatticeConfig cfg;
  cfg.theta = theta;
  for (int i = 1; i <= lam.length(); ++i) cfg.heads.push_back(lam.part(i) - static_cast<long long>(i) * theta);
  return cfg;
}

inline Partition from_lattice(const LatticeConfig& cfg) {
  long long r = static_cast<long long>(cfg.heads.size());
  std::vector<int> parts;
  for (long long i = 1; i <= r; ++i) {
    long long prev = i > 1 ? cfg.heads[i - 2] : 0;
    if (i > 1 && prev - cfg.heads[i - 1] < cfg.theta)
      throw DomainError("from_lattice: condition (i) violated: gaps must be at least theta");
    long long li = cfg.heads[i - 1] + i * cfg.theta;
    if (li < 0) throw DomainError("from_lattice: condition (iii) violated: stable value of l_i + i*theta is not 0");
    parts.push_back(static_cast<int>(li));
  }
  while (!parts.empty() && parts.back() == 0) parts.pop_back();
  return Partition(parts);
}

// D_A: remove the points of A from L(lambda) and shift the rest by k*theta.
inline Partition remove_points(const Partition& lam, const std::vector<long long>& A, int theta) {
  if (theta < 1) throw DomainError("remove_points: theta must be a positive integer");
  long long k = static_cast<long long>(A.size());
  if (k == 0) return lam;
  LatticeConfig cfg = to_lattice(lam, theta);
  for (long long a : A)
    if (!cfg.contains(a)) throw DomainError("remove_points: A is not contained in L(lambda)");
  // explicit prefix long enough to include every removed point and k more
  long long deepest = 0;
  for (long long a : A)
    if (a < 0) deepest = std::max(deepest, (-a) / theta);
  long long R = std::max<long long>(lam.length(), deepest) + k + 1;
  std::vector<long long> pts;
  std::set<long long> drop(A.begin(), A.end());
  if (drop.size() != A.size()) throw DomainError("remove_points: A must consist of distinct points");
  for (long long i = 1; i <= R; ++i) {
    long long li = lam.part(static_cast<int>(i)) - i * theta;
    auto it = drop.find(li);
    if (it != drop.end()) {
      drop.erase(it);
      continue;
    }
    pts.push_back(li + k * theta);
  }
  LatticeConfig out;
  out.theta = theta;
  out.heads = pts;
  Partition res = from_lattice(out);
  // size law |D_A(lambda)| = |lambda| - sum(A) - k(k+1)theta/2
  long long asum = 0;
  for (long long a : A) asum += a;
  if (res.size() != lam.size() - asum - k * (k + 1) * theta / 2)
    throw NumericError("remove_points: size law violated (internal error)");
  return res;
}

// Image test for D_A: mu is of the form D_A(lambda) iff L(mu) avoids every
// window [a_j + (k-1)theta + 1, a_j + (k+1)theta - 1].
inline bool in_image(const Partition& mu, const std::vector<long long>& A, int theta) {
  long long k = static_cast<long long>(A.size());
  LatticeConfig cfg = to_lattice(mu, theta);
  // any lattice point in a window?
  auto window_hit = [&](long long lo, long long hi) {
    for (long long h : cfg.heads)
      if (h >= lo && h <= hi) return true;
    // tail points -i*theta, i > #heads
    long long r = static_cast<long long>(cfg.heads.size());
    for (long long i = r + 1; -i * theta >= lo; ++i)
      if (-i * theta <= hi) return true;
    return false;
  };
  for (long long a : A) {
    if (window_hit(a + (k - 1) * theta + 1, a + (k + 1) * theta - 1)) return false;
  }
  return true;
}

// E*_theta(lambda; u): finite product, exact for rational u.
inline Rational e_star(const Partition& lam, int theta, const Rational& u) {
  Rational v(1);
  for (int i = 1; i <= lam.length(); ++i) {
    Rational den = u - Rational(i) * theta + theta;
    if (den == 0) throw PoleError("e_star: pole at u = (i-1)theta");
    v *= (u + Rational(lam.part(i)) - Rational(i) * theta + theta) / den;
  }
  return v;
}

inline double e_star(const Partition& lam, int theta, double u) {
  double v = 1.0;
  for (int i = 1; i <= lam.length(); ++i) {
    double den = u - static_cast<double>(i) * theta + theta;
    if (den == 0.0) throw PoleError("e_star: pole at u = (i-1)theta");
    v *= (u + lam.part(i) - static_cast<double>(i) * theta + theta) / den;
  }
  return v;
}

// E#(lambda;u) = E*(lambda;u)/Gamma(-u/theta), computed in the pole-free
// finite form prod_{i<=r}(-u/theta - l_i/theta - 1) / Gamma(-u/theta + r).
// Entire in u; r is raised beyond l(lambda) until the Gamma argument is
// positive.
inline double e_sharp(const Partition& lam, int theta, double u) {
  int r = lam.length();
  while (-u / theta + r <= 0.5) ++r;
  double prod = 1.0;
  for (int i = 1; i <= r; ++i) {
    double li = lam.part(i) - static_cast<double>(i) * theta;
    prod *= -u / theta - li / theta - 1.0;
  }
  return prod / std::tgamma(-u / theta + r);
}

// Exact rational value of E#(lambda;u) * Gamma(-u/theta); equals
// E*(lambda;u) identically (tested).
inline Rational e_sharp_times_gamma(const Partition& lam, int theta, const Rational& u) {
  int r = lam.length();
  Rational num(1), den(1);
  for (int i = 1; i <= r; ++i) {
    num *= -u / theta - Rational(lam.part(i) - static_cast<long long>(i) * theta) / theta - 1;
    den *= -u / theta + (i - 1);
  }
  if (den == 0) throw PoleError("e_sharp_times_gamma: Gamma-ratio pole");
  return num / den;
}

// ---------------------------------------------------------------------------
// Correlation identity machinery. Sums are accumulated with an exact rational
// core; the (1-xi)^t prefactor is exact when t is an integer.

struct LatticeCorrSum {
  Rational core{0};        // sum of (t)_n xi^n / n! * M(lambda) over the range
  MixedValue scale;        // carries (1-xi)^t
  Rational nb_tail{0};     // exact NB tail mass beyond the cutoff (core units)
  int cutoff = 0;
  long long terms = 0;

  double value() const {
    MixedValue v = scale;
    v.core = core;
    return v.value();
  }
};

inline void require_lattice_params(const MixedParams& mp) {
  if (!is_integer(mp.base.theta) || mp.base.theta < 1)
    throw DomainError("lattice correlations require a positive integer theta");
}

// LHS of the correlation identity: mixed mass of {lambda : L(lambda) >= A}
// truncated at |lambda| <= N, with the exact NB tail recorded.
inline LatticeCorrSum corr_lhs_sum(const std::vector<long long>& A, const MixedParams& mp, int N) {
  require_lattice_params(mp);
  int theta = static_cast<int>(mp.base.theta.convert_to<long long>());
  LatticeCorrSum out;
  out.cutoff = N;
  out.scale = nb_weight(mp, 0);
  out.scale.core = Rational(1);
  Rational t = mp.base.t.real_or_throw();
  Rational nb_total(0);
  for (int n = 0; n <= N; ++n) {
    Rational nb_core = pochhammer(t, n) * pow_int(mp.xi, n) / Rational(factorial(n));
    nb_total += nb_core;
    for (const auto& lam : enumerate_partitions(n, 64)) {
      LatticeConfig cfg = to_lattice(lam, theta);
      bool ok = true;
      for (long long a : A)
        if (!cfg.contains(a)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      out.core += nb_core * measure(lam, mp.base);
      ++out.terms;
    }
  }
  // exact tail of the NB normalization: sum_{n>N} (t)_n xi^n/n! = (1-xi)^{-t} - partial
  if (is_integer(t)) {
    Rational full = pow_int(Rational(1) - mp.xi, -t.convert_to<long long>());
    out.nb_tail = full - nb_total;
  }
  return out;
}

// Prefactor C' of the E*-form of the identity, exact for integer theta (all
// Gamma ratios collapse to Pochhammer products). The (1-xi)^{k(z+z')-k^2
// theta} factor is folded into `scale` so both sides share one prefactor.
struct LatticePrefactor {
  GaussianRational core{Rational(1)};  // everything except the (1-xi) power
  Rational one_minus_xi_exponent{0};   // k(z+z') - k^2 theta (must be real)
};

inline LatticePrefactor corr_prefactor(const std::vector<long long>& A, const MixedParams& mp) {
  require_lattice_params(mp);
  long long theta = mp.base.theta.convert_to<long long>();
  long long k = static_cast<long long>(A.size());
  const GaussianRational& z = mp.base.z;
  const GaussianRational& zp = mp.base.zp;
  LatticePrefactor pre;
  GaussianRational zsum = z + zp;
  if (!zsum.is_real()) throw DomainError("corr_prefactor: z + z' must be real");
  pre.one_minus_xi_exponent = Rational(k) * zsum.re - Rational(k * k) * theta;

  long long asum = 0;
  for (long long a : A) asum += a;
  GaussianRational c(pow_int(mp.xi, asum + k * (k + 1) * theta / 2));
  for (long long a : A) {
    if (a < 0) throw DomainError("corr_prefactor: the E*-form needs A inside Z_{>=0}");
    // Gamma(theta) / (Gamma(a+k*theta+1) Gamma(a+k*theta+theta)), all integers
    Rational gtheta(factorial(static_cast<unsigned>(theta - 1)));
    Rational g1(factorial(static_cast<unsigned>(a + k * theta)));
    Rational g2(factorial(static_cast<unsigned>(a + k * theta + theta - 1)));
    c = c * GaussianRational(gtheta / (g1 * g2));
    // Gamma(z+a+theta)/Gamma(z-j*theta+theta) with j = position of a in A
  }
  // ordered ratio products (j is 1-based position)
  for (size_t j = 1; j <= A.size(); ++j) {
    long long a = A[j - 1];
    GaussianRational base_z = z - GaussianRational(Rational(static_cast<long long>(j) * theta - theta));
    GaussianRational base_zp = zp - GaussianRational(Rational(static_cast<long long>(j) * theta - theta));
    unsigned shift = static_cast<unsigned>(a + static_cast<long long>(j) * theta);
    c = c * pochhammer(base_z, shift) * pochhammer(base_zp, shift);
  }
  for (size_t j = 0; j < A.size(); ++j)
    for (size_t jp = j + 1; jp < A.size(); ++jp)
      for (long long s = 0; s < theta; ++s) {
        long long d = A[j] - A[jp];
        c = c * GaussianRational(Rational(d * d - s * s));
      }
  pre.core = c;
  return pre;
}

inline std::vector<Rational> corr_u_arguments(const std::vector<long long>& A, long long theta) {
  long long k = static_cast<long long>(A.size());
  std::vector<Rational> us;
  for (long long a : A)
    for (long long s = 0; s < theta; ++s) {
      us.push_back(Rational(-a + s - (k + 1) * theta));
      us.push_back(Rational(-a - s - (k + 1) * theta));
    }
  return us;
}

// RHS: C' times the E*-weighted mixed average with shifted parameters,
// truncated at |mu| <= N.
inline LatticeCorrSum corr_rhs_sum(const std::vector<long long>& A, const MixedParams& mp, int N) {
  require_lattice_params(mp);
  long long theta = mp.base.theta.convert_to<long long>();
  long long k = static_cast<long long>(A.size());
  LatticePrefactor pre = corr_prefactor(A, mp);
  GaussianRational shift(Rational(k * theta));
  ZParams shifted(mp.base.z - shift, mp.base.zp - shift, mp.base.theta);
  MixedParams smp(shifted, mp.xi);
  Rational tp = shifted.t.real_or_throw("corr_rhs: shifted t must be real");

  std::vector<Rational> us = corr_u_arguments(A, theta);
  LatticeCorrSum out;
  out.cutoff = N;
  // scale = (1-xi)^{t' + exponent} = (1-xi)^t; keep it in MixedValue form
  Rational total_exp = tp + pre.one_minus_xi_exponent;
  out.scale.core = Rational(1);
  if (is_integer(total_exp)) {
    out.scale.prefactor_exact = true;
    out.scale.prefactor = pow_int(Rational(1) - mp.xi, total_exp.convert_to<long long>());
  } else {
    out.scale.prefactor_exact = false;
    out.scale.prefactor_approx = std::pow(1.0 - to_double(mp.xi), to_double(total_exp));
  }
  Rational nb_total(0);
  int th_int = static_cast<int>(theta);
  for (int n = 0; n <= N; ++n) {
    Rational nb_core = pochhammer(tp, n) * pow_int(mp.xi, n) / Rational(factorial(n));
    nb_total += nb_core;
    for (const auto& mu : enumerate_partitions(n, 64)) {
      Rational weight(1);
      bool zero = false;
      for (const Rational& u : us) {
        Rational e = e_star(mu, th_int, u);
        if (e == 0) {
          zero = true;
          break;
        }
        weight *= e;
      }
      if (zero) continue;
      GaussianRational term = pre.core * GaussianRational(weight * nb_core * measure(mu, smp.base));
      Rational re = term.real_or_throw("corr_rhs: nonreal term");
      out.core += re;
      ++out.terms;
    }
  }
  if (is_integer(tp)) {
    Rational full = pow_int(Rational(1) - mp.xi, -tp.convert_to<long long>());
    out.nb_tail = full - nb_total;
  }
  return out;
}

inline SeriesResult corr_lhs(const std::vector<long long>& A, const MixedParams& mp, int N) {
  LatticeCorrSum s = corr_lhs_sum(A, mp, N);
  SeriesResult res;
  res.value = s.value();
  MixedValue tail = s.scale;
  tail.core = s.nb_tail;
  res.tail_estimate = tail.value();
  res.degree_used = N;
  return res;
}

inline SeriesResult corr_rhs(const std::vector<long long>& A, const MixedParams& mp, int N) {
  LatticeCorrSum s = corr_rhs_sum(A, mp, N);
  SeriesResult res;
  res.value = s.value();
  MixedValue tail = s.scale;
  tail.core = s.nb_tail;
  res.tail_estimate = std::abs(tail.value());
  res.degree_used = N;
  return res;
}

// Numeric prefactor C of the E#-form, and its consistency with C' through the
// Gamma multiplication formula.
inline double prefactor_relation_gap(const std::vector<long long>& A, const MixedParams& mp) {
  require_lattice_params(mp);
  long long theta = mp.base.theta.convert_to<long long>();
  long long k = static_cast<long long>(A.size());
  long long asum = 0;
  for (long long a : A) asum += a;
  std::complex<double> z = mp.base.z.to_complex(), zp = mp.base.zp.to_complex();
  double xi = to_double(mp.xi);
  const double kPi = 3.14159265358979323846;

  // C (E#-form)
  std::complex<double> C = std::pow(2.0 * kPi, static_cast<double>(k * (theta - 1)));
  C *= std::pow(std::tgamma(static_cast<double>(theta)), static_cast<double>(k));
  C *= std::pow(static_cast<double>(theta), static_cast<double>(-2 * asum - theta * k * (2 * k + 1)));
  std::complex<double> zsum = z + zp;
  C *= std::pow(1.0 - xi, (static_cast<double>(k) * zsum - static_cast<double>(k * k * theta)).real());
  C *= std::pow(xi, static_cast<double>(asum) + k * (k + 1) * theta / 2.0);
  for (size_t j = 1; j <= A.size(); ++j) {
    double a = static_cast<double>(A[j - 1]);
    C *= cgamma(z + a + static_cast<double>(theta)) * cgamma(zp + a + static_cast<double>(theta));
    C /= cgamma(z - static_cast<double>(static_cast<long long>(j) * theta - theta)) *
         cgamma(zp - static_cast<double>(static_cast<long long>(j) * theta - theta));
  }
  for (size_t j = 0; j < A.size(); ++j)
    for (size_t jp = j + 1; jp < A.size(); ++jp)
      for (long long s = 0; s < theta; ++s) {
        double d = static_cast<double>(A[j] - A[jp]);
        C *= d * d - static_cast<double>(s * s);
      }

  // C' * prod Gamma(-u/theta): the multiplication-formula route
  LatticePrefactor pre = corr_prefactor(A, mp);
  std::complex<double> Cp = pre.core.to_complex();
  Cp *= std::pow(1.0 - xi, to_double(pre.one_minus_xi_exponent));
  for (const Rational& u : corr_u_arguments(A, theta)) Cp *= std::tgamma(to_double(-u / Rational(theta)));

  return std::abs(C - Cp) / std::max(1e-300, std::abs(C));
}

struct LatticeIdentityResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;       // |lhs - rhs|, exact 0 when cores are exact
  bool exact = false;          // cores and prefactors all exact rationals
  Rational residual_core{0};   // exact core difference when exact
  int lhs_cutoff = 0;
  int rhs_cutoff = 0;
  double lhs_nb_tail = 0.0;
  double prefactor_gap = 0.0;  // relative gap in C = C' prod Gamma(-u/theta) (multiplication formula)
};

// Both sides with matched cutoffs (mu-cutoff N' = N - sum(A) - k(k+1)theta/2)
// plus the prefactor consistency check. N is chosen adaptively: it grows until
// the exact NB tail and the last observed lhs shells drop below tol.
inline LatticeIdentityResult lattice_identity_residual(const std::vector<long long>& A, const MixedParams& mp,
                                          double tol = 1e-6, int max_N = 64) {
  require_lattice_params(mp);
  long long theta = mp.base.theta.convert_to<long long>();
  long long k = static_cast<long long>(A.size());
  long long asum = 0;
  for (long long a : A) {
    if (a < 0) throw DomainError("lattice_identity_residual: A must lie in Z_{>=0}");
    asum += a;
  }
  long long offset = asum + k * (k + 1) * theta / 2;
  int N = static_cast<int>(offset) + 8;
  LatticeIdentityResult out;
  for (;; N += 8) {
    LatticeCorrSum lhs = corr_lhs_sum(A, mp, N);
    double tail = std::abs([&] {
      MixedValue t = lhs.scale;
      t.core = lhs.nb_tail;
      return t.value();
    }());
    if (tail > tol * std::max(1e-12, std::abs(lhs.value())) && N < max_N) continue;
    LatticeCorrSum rhs = corr_rhs_sum(A, mp, N - static_cast<int>(offset));
    out.lhs = lhs.value();
    out.rhs = rhs.value();
    out.lhs_cutoff = N;
    out.rhs_cutoff = N - static_cast<int>(offset);
    out.lhs_nb_tail = tail;
    out.exact = lhs.scale.prefactor_exact && rhs.scale.prefactor_exact;
    if (out.exact && lhs.scale.prefactor == rhs.scale.prefactor) {
      out.residual_core = lhs.core - rhs.core;
      MixedValue d = lhs.scale;
      d.core = out.residual_core;
      out.residual = std::abs(d.value());
    } else {
      out.residual = std::abs(out.lhs - out.rhs);
    }
    break;
  }
  out.prefactor_gap = prefactor_relation_gap(A, mp);
  return out;
}

}  // namespace zmeas
