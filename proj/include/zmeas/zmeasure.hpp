#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zmeas/numbers.hpp"
#include "zmeas/partition.hpp"

namespace zmeas {

enum class Series { principal, complementary, degenerate, nonpositive };

struct Classification {
  Series series = Series::nonpositive;
  std::string detail;  // e.g. "at most 2 rows", "fat hook (1,1)"
};

inline const char* series_name(Series s) {
  switch (s) {
    case Series::principal: return "principal";
    case Series::complementary: return "complementary";
    case Series::degenerate: return "degenerate";
    default: return "nonpositive";
  }
}

// Parameters (z, z', theta) with theta a positive rational. t = zz'/theta.
struct ZParams {
  GaussianRational z;
  GaussianRational zp;
  Rational theta;
  GaussianRational t;
  Classification cls;

  ZParams(GaussianRational z_, GaussianRational zp_, Rational theta_);

  GaussianRational sum() const { return z + zp; }
  GaussianRational prod() const { return z * zp; }
  bool theta_is_integer() const { return is_integer(theta); }
};

// Writes theta = s/r in lowest terms.
inline std::pair<BigInt, BigInt> theta_lowest_terms(const Rational& theta) {
  return {numerator(theta), denominator(theta)};
}

// For rational theta = s/r in lowest terms, the set Z_{<=0} + Z_{>=0} theta
// equals the full lattice (1/r)Z, so membership reduces to a denominator test.
inline bool in_shifted_lattice(const GaussianRational& z, const Rational& theta) {
  if (!z.is_real()) return false;
  auto [s, r] = theta_lowest_terms(theta);
  (void)s;
  return is_integer(Rational(z.re * r));
}

inline Classification classify(const GaussianRational& z, const GaussianRational& zp, const Rational& theta) {
  if (theta <= 0) throw DomainError("classify: theta must be positive");
  auto [s_num, r_den] = theta_lowest_terms(theta);

  // Principal series: z' = conj(z) and z avoids Z_{<=0} + Z_{>=0} theta.
  if (zp == z.conj() && !z.is_zero() && !in_shifted_lattice(z, theta)) {
    return {Series::principal, ""};
  }

  const bool both_real = z.is_real() && zp.is_real();

  // Complementary series: both real, strictly inside the same gap of Z + Z theta = (1/r)Z.
  if (both_real) {
    Rational zr = z.re * r_den, zpr = zp.re * r_den;
    if (!is_integer(zr) && !is_integer(zpr) && floor_rational(zr) == floor_rational(zpr)) {
      return {Series::complementary, ""};
    }
  }

  if (both_real) {
    // Degenerate, bounded row count: z = m*theta with z' > (m-1)*theta (or swapped).
    auto rows_case = [&](const Rational& a, const Rational& b) -> std::optional<int> {
      Rational m = a / theta;
      if (is_integer(m) && m >= 1 && b > (m - 1) * theta) return static_cast<int>(numerator(m));
      return std::nullopt;
    };
    if (auto m = rows_case(z.re, zp.re)) return {Series::degenerate, "at most " + std::to_string(*m) + " rows"};
    if (auto m = rows_case(zp.re, z.re)) return {Series::degenerate, "at most " + std::to_string(*m) + " rows"};

    // Degenerate, bounded column count: z = -m with z' < -m+1 (or swapped).
    auto cols_case = [&](const Rational& a, const Rational& b) -> std::optional<int> {
      if (is_integer(a) && a <= -1 && b < a + 1) return static_cast<int>(BigInt(-numerator(a)).convert_to<long long>());
      return std::nullopt;
    };
    if (auto m = cols_case(z.re, zp.re)) return {Series::degenerate, "at most " + std::to_string(*m) + " columns"};
    if (auto m = cols_case(zp.re, z.re)) return {Series::degenerate, "at most " + std::to_string(*m) + " columns"};

    // Degenerate fat-hook family: one parameter equals k*theta - l with k,l >= 1,
    // the other within 1/r of it (so no sign change can happen off the vanishing
    // set); support is the fat hook {i <= k or j <= l}. The k,l constraint keeps
    // the secondary zero (k+1-r, l+1-s) outside the diagram.
    auto hook_case = [&](const Rational& a, const Rational& b) -> std::optional<std::pair<int, int>> {
      if (a == 0) return std::nullopt;
      Rational gap = Rational(1) / Rational(r_den);
      Rational diff = a - b;
      if (diff < 0) diff = -diff;
      if (!(diff < gap)) return std::nullopt;
      // a = k*theta - l  =>  l = k*theta - a must be a positive integer.
      BigInt s = s_num, r = r_den;
      long long rv = r.convert_to<long long>();
      BigInt amag = BigInt(abs(numerator(a)) / denominator(a)) + 2;
      long long kmax = 2 * rv + amag.convert_to<long long>() * rv;
      for (long long k = 1; k <= kmax; ++k) {
        Rational l = Rational(k) * theta - a;
        if (!is_integer(l) || l < 1) continue;
        long long lv = l.convert_to<long long>();
        bool constraint_ok;
        if (theta == 1) {
          constraint_ok = (k == 1 && lv == 1);
        } else {
          constraint_ok = (Rational(k) < Rational(r)) || (Rational(lv) < Rational(s));
        }
        if (constraint_ok) return std::make_pair(static_cast<int>(k), static_cast<int>(lv));
      }
      return std::nullopt;
    };
    if (auto kl = hook_case(z.re, zp.re))
      return {Series::degenerate, "fat hook (" + std::to_string(kl->first) + "," + std::to_string(kl->second) + ")"};
    if (auto kl = hook_case(zp.re, z.re))
      return {Series::degenerate, "fat hook (" + std::to_string(kl->first) + "," + std::to_string(kl->second) + ")"};
  }

  return {Series::nonpositive, ""};
}

inline ZParams::ZParams(GaussianRational z_, GaussianRational zp_, Rational theta_)
    : z(std::move(z_)), zp(std::move(zp_)), theta(std::move(theta_)) {
  if (theta <= 0) throw DomainError("ZParams: theta must be positive");
  t = (z * zp) / GaussianRational(theta);
  cls = classify(z, zp, theta);
}

// (t)_n with a pole check.
inline GaussianRational t_pochhammer(const ZParams& p, unsigned n) {
  GaussianRational v = pochhammer(p.t, n);
  if (v.is_zero()) throw PoleError("(t)_n vanishes for these parameters");
  return v;
}

// The z-measure weight of lambda. Computed through the symmetric combination
// z z' + c(z+z') + c^2 per box, so principal-series values stay real exact.
inline Rational measure(const Partition& lam, const ZParams& p) {
  unsigned n = static_cast<unsigned>(lam.size());
  GaussianRational s = p.sum(), q = p.prod();
  GaussianRational num(1);
  for (int i = 1; i <= lam.length(); ++i)
    for (int j = 1; j <= lam.part(i); ++j) {
      Rational c = Partition::content(i, j, p.theta);
      num = num * (q + s * GaussianRational(c) + GaussianRational(c * c));
    }
  auto [h, hp] = hook_products(lam, p.theta);
  GaussianRational denom = t_pochhammer(p, n) * GaussianRational(h * hp);
  GaussianRational val = GaussianRational(Rational(factorial(n))) * num / denom;
  return val.real_or_throw("measure: nonzero imaginary part (parameters not admissible)");
}

// Plancherel weight n! theta^n / (H H').
inline Rational plancherel(const Partition& lam, const Rational& theta) {
  auto [h, hp] = hook_products(lam, theta);
  unsigned n = static_cast<unsigned>(lam.size());
  return Rational(factorial(n)) * pow_int(theta, n) / (h * hp);
}

// Exact identity M_{z,z',theta}(lambda) = M_{-z/theta,-z'/theta,1/theta}(lambda').
inline bool duality_check(const Partition& lam, const ZParams& p) {
  ZParams dual(-p.z / GaussianRational(p.theta), -p.zp / GaussianRational(p.theta), Rational(1) / p.theta);
  return measure(lam, p) == measure(lam.transpose(), dual);
}

// Pieri coefficient kappa_theta(mu, lambda) for lambda = mu + one box.
// Returns 0 if lambda does not cover mu.
inline Rational kappa(const Partition& mu, const Partition& lam, const Rational& theta) {
  if (lam.size() != mu.size() + 1) return Rational(0);
  // Find the added box.
  int row = -1;
  int m = std::max(lam.length(), mu.length());
  for (int i = 1; i <= m; ++i) {
    int d = lam.part(i) - mu.part(i);
    if (d == 1 && row == -1)
      row = i;
    else if (d != 0)
      return Rational(0);
  }
  if (row == -1) return Rational(0);
  int col = lam.part(row);  // the new box sits at (row, col)
  Partition mtr = mu.transpose();
  Rational k(1);
  for (int i = 1; i <= mu.length(); ++i) {
    if (mu.part(i) < col) break;  // boxes in column col of mu
    Rational a(mu.part(i) - col);
    Rational l(mtr.part(col) - i);
    k *= (a + (l + 2) * theta) * (a + 1 + l * theta) / ((a + (l + 1) * theta) * (a + 1 + (l + 1) * theta));
  }
  return k;
}

// Down transition q_theta(mu, lambda) = H(lambda)/(n H(mu)) kappa(mu,lambda).
inline Rational q_down(const Partition& mu, const Partition& lam, const Rational& theta) {
  Rational kap = kappa(mu, lam, theta);
  if (kap == 0) return Rational(0);
  Rational h_lam = hook_products(lam, theta).first;
  Rational h_mu = hook_products(mu, theta).first;
  return h_lam / (Rational(lam.size()) * h_mu) * kap;
}

// M^(n-1)(mu) - sum_lambda q(mu,lambda) M^(n)(lambda); exactly 0 by coherency.
inline Rational coherency_residual(const Partition& mu, const ZParams& p) {
  unsigned n = static_cast<unsigned>(mu.size()) + 1;
  Rational lhs = measure(mu, p);
  Rational rhs(0);
  // Only covers of mu contribute.
  std::vector<int> parts = mu.parts();
  for (int i = 0; i <= mu.length(); ++i) {
    std::vector<int> q = parts;
    if (i == mu.length())
      q.push_back(1);
    else
      q[i] += 1;
    // Valid partition only if still weakly decreasing.
    bool ok = true;
    for (size_t j = 1; j < q.size(); ++j)
      if (q[j] > q[j - 1]) ok = false;
    if (!ok) continue;
    Partition lam(q);
    if (lam.size() != n) continue;
    rhs += q_down(mu, lam, p.theta) * measure(lam, p);
  }
  return lhs - rhs;
}

// Covers of lambda (all Lambda obtained by adding one box).
inline std::vector<Partition> covers(const Partition& lam) {
  std::vector<Partition> out;
  std::vector<int> parts = lam.parts();
  for (int i = 0; i <= lam.length(); ++i) {
    std::vector<int> q = parts;
    if (i == lam.length())
      q.push_back(1);
    else
      q[i] += 1;
    bool ok = true;
    for (size_t j = 1; j < q.size(); ++j)
      if (q[j] > q[j - 1]) ok = false;
    if (!ok) continue;
    out.emplace_back(q);
  }
  return out;
}

// Conditional up transition p^(lambda -> Lambda) = M(Lambda) q(lambda,Lambda) / M(lambda).
inline Rational up_transition(const Partition& lam, const Partition& big, const ZParams& p) {
  Rational m_lam = measure(lam, p);
  if (m_lam == 0) throw DomainError("up_transition: conditioning on a null state");
  Rational q = q_down(lam, big, p.theta);
  if (q == 0) return Rational(0);
  return measure(big, p) * q / m_lam;
}

// Negative-binomial mixing of the z-measures over n.
struct MixedParams {
  ZParams base;
  Rational xi;

  MixedParams(ZParams b, Rational x) : base(std::move(b)), xi(std::move(x)) {
    if (!(xi > 0 && xi < 1)) throw DomainError("MixedParams: xi must lie in (0,1)");
    base.t.real_or_throw("MixedParams: t = zz'/theta must be real");
  }
};

// A value with an exact rational core and a prefactor (1-xi)^t that is exact
// when t is an integer and double-precision otherwise.
struct MixedValue {
  Rational core{0};
  bool prefactor_exact = true;
  Rational prefactor{1};
  double prefactor_approx = 1.0;

  Rational exact() const {
    if (!prefactor_exact) throw NumericError("MixedValue: prefactor (1-xi)^t is not exact for non-integer t");
    return prefactor * core;
  }
  double value() const { return prefactor_exact ? to_double(prefactor * core) : prefactor_approx * to_double(core); }
};

// The negative-binomial weight (1-xi)^t (t)_n xi^n / n!, split into exact core
// and the (1-xi)^t prefactor.
inline MixedValue nb_weight(const MixedParams& mp, unsigned n) {
  Rational t = mp.base.t.real_or_throw();
  MixedValue v;
  GaussianRational tp = pochhammer(GaussianRational(t), n);
  v.core = tp.re * pow_int(mp.xi, n) / Rational(factorial(n));
  if (is_integer(t)) {
    long long ti = t.convert_to<long long>();
    v.prefactor = pow_int(Rational(1) - mp.xi, ti);
    v.prefactor_exact = true;
  } else {
    v.prefactor_exact = false;
    v.prefactor_approx = std::pow(1.0 - to_double(mp.xi), to_double(t));
  }
  return v;
}

inline MixedValue mixed_measure(const Partition& lam, const MixedParams& mp) {
  Rational t = mp.base.t.real_or_throw();
  if (is_nonpositive_integer(t)) throw PoleError("mixed_measure: t is a nonpositive integer");
  MixedValue v = nb_weight(mp, static_cast<unsigned>(lam.size()));
  v.core *= measure(lam, mp.base);
  return v;
}

// Jack moment: integral of P_lambda against the boundary measure,
// equal to (z)_{lambda,theta} (z')_{lambda,theta} / ((t)_n H'(lambda,theta)).
inline Rational jack_moment(const Partition& lam, const ZParams& p) {
  unsigned n = static_cast<unsigned>(lam.size());
  GaussianRational num = gen_pochhammer(p.z, lam, p.theta) * gen_pochhammer(p.zp, lam, p.theta);
  GaussianRational denom = t_pochhammer(p, n) * GaussianRational(hook_products(lam, p.theta).second);
  return (num / denom).real_or_throw("jack_moment: nonzero imaginary part");
}

}  // namespace zmeas
