#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "zmeas/gamma.hpp"
#include "zmeas/jack.hpp"
#include "zmeas/jack_numeric.hpp"
#include "zmeas/numeric_policy.hpp"
#include "zmeas/partition.hpp"
#include "zmeas/quadrature.hpp"

namespace zmeas {

using Cx = std::complex<double>;

struct HyperParams {
  Cx a{0.0};
  Cx b{0.0};
  Cx c{0.0};
  Rational nu{1};
  int l = 1;
};

inline Cx gen_pochhammer_c(Cx a, const Partition& lam, double nu) {
  Cx p(1.0);
  for (int i = 1; i <= lam.length(); ++i)
    for (int j = 1; j <= lam.part(i); ++j) p *= a + Cx(static_cast<double>(j - 1) - (i - 1) * nu);
  return p;
}

// Product of nums / product of dens with interleaved division, so that
// factorial-scale factors cancel without overflowing on the way.
inline Cx stable_ratio(const std::vector<Cx>& nums, const std::vector<Cx>& dens) {
  Cx r(1.0);
  size_t i = 0, j = 0;
  while (i < nums.size() || j < dens.size()) {
    if (j >= dens.size() || (i < nums.size() && std::abs(r) <= 1.0)) {
      r *= nums[i++];
    } else {
      r /= dens[j++];
    }
  }
  return r;
}

inline bool is_nonpositive_int_re(Cx a) {
  return a.imag() == 0.0 && a.real() <= 0.0 && a.real() == std::nearbyint(a.real());
}

// 1/Gamma(z), zero at the poles.
inline Cx recip_gamma(Cx z) {
  if (is_nonpositive_int_re(z)) return Cx(0.0);
  return Cx(1.0) / cgamma(z);
}

inline std::vector<Partition> partitions_bounded(int d, int rows) {
  std::vector<Partition> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int rest, int maxpart) {
    if (rest == 0) {
      out.emplace_back(cur);
      return;
    }
    if (static_cast<int>(cur.size()) == rows) return;
    for (int k = std::min(rest, maxpart); k >= 1; --k) {
      cur.push_back(k);
      rec(rest - k, k);
      cur.pop_back();
    }
  };
  rec(d, d);
  return out;
}

namespace detail {

// Shell-based summation with the three-quiet-shells stopping rule.
// term(lam) is summed over partitions with at most `rows` rows, by total
// degree. Terminating series should pass `hard_cap` = the largest non-empty
// shell degree.
inline SeriesResult sum_shells(const std::function<Cx(const Partition&)>& term, int rows, const NumericPolicy& pol,
                               std::optional<int> hard_cap = std::nullopt) {
  SeriesResult res;
  res.policy = pol;
  Cx sum(1.0);  // empty partition
  double prev_shell = 1.0;
  double ratio = 0.0;
  int quiet = 0;
  int d = 1;
  int cap = hard_cap ? std::min(*hard_cap, pol.max_degree) : pol.max_degree;
  for (; d <= cap; ++d) {
    Cx shell(0.0);
    for (const Partition& lam : partitions_bounded(d, rows)) shell += term(lam);
    sum += shell;
    double mag = std::abs(shell);
    if (prev_shell > 0.0 && mag > 0.0) ratio = mag / prev_shell;
    prev_shell = mag > 0.0 ? mag : prev_shell;
    if (mag <= pol.series_tol * std::max(1.0, std::abs(sum)))
      ++quiet;
    else
      quiet = 0;
    if (!hard_cap && quiet >= 3) break;
  }
  res.value = sum;
  res.degree_used = std::min(d, cap);
  if (hard_cap) {
    res.tail_estimate = 0.0;
    res.converged = true;
  } else if (quiet >= 3) {
    double r = std::min(ratio, 0.999);
    res.tail_estimate = prev_shell * r / (1.0 - r);
    res.converged = true;
  } else {
    res.tail_estimate = prev_shell;
    res.converged = false;  // ratio test failed within the degree budget
  }
  return res;
}

inline int terminating_cap(Cx a, int rows) {
  // (a)_{lam,nu} = 0 once lambda_1 > -a for nonpositive integer a
  int m = static_cast<int>(-a.real());
  return m * rows;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// 1F0: binomial theorem. Returns the closed product; tail_estimate records
// the |series - product| residual when the series path applies.
inline SeriesResult f10(Cx a, const Rational& nu, const std::vector<Cx>& x, const NumericPolicy& pol = {}) {
  for (const Cx& xi : x)
    if (xi == Cx(1.0)) throw PoleError("f10: pole at x = 1");
  Cx product(1.0);
  for (const Cx& xi : x) product *= std::pow(Cx(1.0) - xi, -a);
  double nud = to_double(nu);
  double maxabs = 0.0;
  for (const Cx& xi : x) maxabs = std::max(maxabs, std::abs(xi));
  SeriesResult res;
  res.policy = pol;
  res.value = product;
  if (maxabs < 1.0 && !x.empty()) {
    JackEvaluator jack(nu, x);
    auto term = [&](const Partition& lam) {
      Cx cx = jack.C(lam);
      if (cx == Cx(0.0)) return Cx(0.0);
      std::vector<Cx> nums, dens;
      nums.push_back(cx);
      for (int i = 1; i <= lam.length(); ++i)
        for (int j = 1; j <= lam.part(i); ++j) nums.push_back(a + Cx(static_cast<double>(j - 1) - (i - 1) * nud));
      for (int k = 1; k <= static_cast<int>(lam.size()); ++k) dens.push_back(Cx(static_cast<double>(k)));
      return stable_ratio(nums, dens);
    };
    SeriesResult series = detail::sum_shells(term, static_cast<int>(x.size()), pol);
    res.degree_used = series.degree_used;
    res.converged = series.converged;
    res.tail_estimate = std::abs(series.value - product);
  }
  return res;
}

// ---------------------------------------------------------------------------
// Two-set 1F0 series. Terminates exactly for nonpositive integer a; otherwise
// summed with the shell ratio test, and failures of the test are recorded in
// `converged` rather than guessing a domain.
inline SeriesResult f10_two(Cx a, const Rational& nu, const std::vector<Cx>& x, const std::vector<Cx>& y,
                            const NumericPolicy& pol = {}) {
  if (x.size() != y.size()) throw DomainError("f10_two: variable sets must have equal size");
  int l = static_cast<int>(x.size());
  double nud = to_double(nu);
  JackEvaluator jx(nu, x), jy(nu, y);
  auto term = [&](const Partition& lam) {
    Cx cy = jy.C(lam);
    if (cy == Cx(0.0)) return Cx(0.0);
    Cx cx = jx.C(lam);
    if (cx == Cx(0.0)) return Cx(0.0);
    Rational ones = jack_C_ones(lam, nu, l);
    return gen_pochhammer_c(a, lam, nud) * cx * cy /
           (Cx(to_double(ones)) * Cx(to_double(Rational(factorial(static_cast<unsigned>(lam.size()))))));
  };
  std::optional<int> cap;
  if (is_nonpositive_int_re(a)) cap = detail::terminating_cap(a, l);
  return detail::sum_shells(term, l, pol, cap);
}

// Transformation to the tube Re x < 1/2:
//   1F0(a; x, y) = prod (1-x_j)^{-a} * 1F0(a; x/(x-1), 1-y).
inline SeriesResult f10_two_transformed(Cx a, const Rational& nu, const std::vector<Cx>& x, const std::vector<Cx>& y,
                                        const NumericPolicy& pol = {}) {
  for (const Cx& xi : x)
    if (!(xi.real() < 0.5)) throw DomainError("f10_two_transformed: requires Re x < 1/2");
  std::vector<Cx> xt(x.size()), yt(y.size());
  Cx pref(1.0);
  for (size_t i = 0; i < x.size(); ++i) {
    pref *= std::pow(Cx(1.0) - x[i], -a);
    xt[i] = x[i] / (x[i] - Cx(1.0));
    yt[i] = Cx(1.0) - y[i];
  }
  SeriesResult res = f10_two(a, nu, xt, yt, pol);
  res.value *= pref;
  res.tail_estimate *= std::abs(pref);
  return res;
}

// Inner 1F0 for integral representations: direct series when it terminates,
// else the transformed series.
inline Cx f10_two_auto(Cx a, const Rational& nu, const std::vector<Cx>& x, const std::vector<Cx>& y,
                       const NumericPolicy& pol) {
  if (is_nonpositive_int_re(a)) return f10_two(a, nu, x, y, pol).value;
  return f10_two_transformed(a, nu, x, y, pol).value;
}

// ---------------------------------------------------------------------------
// 2F1-hat: the Gauss-type series with ordinary Pochhammer (c)_{|lam|} in the
// denominator.
inline SeriesResult f21hat(const HyperParams& hp, const std::vector<Cx>& x, const NumericPolicy& pol = {}) {
  if (is_nonpositive_int_re(hp.c)) throw PoleError("f21hat: c is a nonpositive integer, use f21hat_reg");
  bool terminating = is_nonpositive_int_re(hp.a) || is_nonpositive_int_re(hp.b);
  double maxabs = 0.0;
  for (const Cx& xi : x) maxabs = std::max(maxabs, std::abs(xi));
  if (!terminating && !(maxabs < 1.0)) throw DomainError("f21hat: series requires max|x| < 1");
  double nud = to_double(hp.nu);
  JackEvaluator jack(hp.nu, x);
  auto term = [&](const Partition& lam) {
    Cx cx = jack.C(lam);
    if (cx == Cx(0.0)) return Cx(0.0);
    unsigned n = static_cast<unsigned>(lam.size());
    std::vector<Cx> nums, dens;
    nums.reserve(2 * n + 1);
    dens.reserve(2 * n);
    nums.push_back(cx);
    for (int i = 1; i <= lam.length(); ++i)
      for (int j = 1; j <= lam.part(i); ++j) {
        Cx cont(static_cast<double>(j - 1) - (i - 1) * nud);
        nums.push_back(hp.a + cont);
        nums.push_back(hp.b + cont);
      }
    for (unsigned k = 1; k <= n; ++k) {
      dens.push_back(hp.c + Cx(static_cast<double>(k - 1)));
      dens.push_back(Cx(static_cast<double>(k)));
    }
    return stable_ratio(nums, dens);
  };
  std::optional<int> cap;
  if (terminating) {
    Cx t = is_nonpositive_int_re(hp.a) ? hp.a : hp.b;
    cap = detail::terminating_cap(t, static_cast<int>(x.size()));
  }
  return detail::sum_shells(term, static_cast<int>(x.size()), pol, cap);
}

// Regularized series 2F1-hat / Gamma(c); entire in c.
inline SeriesResult f21hat_reg(const HyperParams& hp, const std::vector<Cx>& x, const NumericPolicy& pol = {}) {
  bool terminating = is_nonpositive_int_re(hp.a) || is_nonpositive_int_re(hp.b);
  double maxabs = 0.0;
  for (const Cx& xi : x) maxabs = std::max(maxabs, std::abs(xi));
  if (!terminating && !(maxabs < 1.0)) throw DomainError("f21hat_reg: series requires max|x| < 1");
  double nud = to_double(hp.nu);
  JackEvaluator jack(hp.nu, x);
  // 1/Gamma(c+n) split as recip_gamma(c+k0) / (c+k0)...(c+n-1) with
  // c+k0 >= 1, so large-n terms cancel factor by factor.
  int k0 = std::max(0, static_cast<int>(std::ceil(1.0 - hp.c.real())));
  auto term = [&](const Partition& lam) {
    Cx cx = jack.C(lam);
    if (cx == Cx(0.0)) return Cx(0.0);
    int n = static_cast<int>(lam.size());
    std::vector<Cx> nums, dens;
    nums.push_back(cx);
    for (int i = 1; i <= lam.length(); ++i)
      for (int j = 1; j <= lam.part(i); ++j) {
        Cx cont(static_cast<double>(j - 1) - (i - 1) * nud);
        nums.push_back(hp.a + cont);
        nums.push_back(hp.b + cont);
      }
    for (int k = 1; k <= n; ++k) dens.push_back(Cx(static_cast<double>(k)));
    if (n >= k0) {
      nums.push_back(recip_gamma(hp.c + Cx(static_cast<double>(k0))));
      for (int k = k0; k < n; ++k) dens.push_back(hp.c + Cx(static_cast<double>(k)));
    } else {
      nums.push_back(recip_gamma(hp.c + Cx(static_cast<double>(n))));
    }
    return stable_ratio(nums, dens);
  };
  // The lam = {} "1" of sum_shells must be replaced by 1/Gamma(c): rescale.
  std::optional<int> cap;
  if (terminating) {
    Cx t = is_nonpositive_int_re(hp.a) ? hp.a : hp.b;
    cap = detail::terminating_cap(t, static_cast<int>(x.size()));
  }
  // sum_shells seeds the sum with 1 for the empty partition; shift so the
  // seed carries the 1/Gamma(c) weight instead.
  SeriesResult res = detail::sum_shells(term, static_cast<int>(x.size()), pol, cap);
  res.value = res.value - Cx(1.0) + recip_gamma(hp.c);
  return res;
}

// ---------------------------------------------------------------------------
// Euler-type integral for 2F1-hat (returns the unnormalized 2F1-hat value,
// i.e. Gamma(c) times the regularized function). Real b, c with
// Re b > (l-1) nu and c > l b; x in the tube Re x_i < 1/2 unless the inner
// series terminates. l = 1 or 2.
inline SeriesResult euler_f21(const HyperParams& hp, const std::vector<Cx>& x, const NumericPolicy& pol = {}) {
  int l = static_cast<int>(x.size());
  if (hp.b.imag() != 0.0 || hp.c.imag() != 0.0) throw CapabilityError("euler_f21: quadrature path needs real b, c");
  double b = hp.b.real(), c = hp.c.real(), nu = to_double(hp.nu);
  if (!(b > (l - 1) * nu)) throw DomainError("euler_f21: requires Re b > (l-1) nu");
  if (!(c > l * b)) throw DomainError("euler_f21: requires Re c > l Re b");
  if (!is_nonpositive_int_re(hp.a)) {
    for (const Cx& xi : x)
      if (!(xi.real() < 0.5)) throw DomainError("euler_f21: x must lie in the tube Re x < 1/2");
  }
  if (l != 1 && l != 2) throw CapabilityError("euler_f21: quadrature path implemented for l <= 2");

  double pref = std::exp(std::lgamma(c) - std::lgamma(c - l * b));
  for (int j = 1; j <= l; ++j)
    pref *= std::exp(std::lgamma(nu + 1.0) - std::lgamma(b - (j - 1) * nu) - std::lgamma(j * nu + 1.0));

  std::function<Cx(int)> once;
  if (l == 1) {
    once = [&, b, c](int n) {
      QuadRule q = gauss_jacobi01(n, c - b - 1.0, b - 1.0);
      Cx acc(0.0);
      for (size_t i = 0; i < q.size(); ++i) {
        std::vector<Cx> tau = {Cx(q.x[i])};
        acc += q.w[i] * f10_two_auto(hp.a, hp.nu, x, tau, pol);
      }
      return acc;
    };
  } else {
    double A = b - nu;  // tau exponent + 1
    double B = c - 2 * b;
    once = [&, A, B](int n) {
      QuadRule qs = gauss_jacobi01(n, B - 1.0, 2.0 * b - 1.0);
      QuadRule qz = gauss_jacobi01(n, A - 1.0, 2.0 * nu);
      Cx acc(0.0);
      for (size_t i = 0; i < qs.size(); ++i) {
        double s = qs.x[i];
        Cx inner(0.0);
        for (size_t k = 0; k < qz.size(); ++k) {
          double zeta = qz.x[k];
          std::vector<Cx> tau = {Cx(s * (1.0 + zeta) / 2.0), Cx(s * (1.0 - zeta) / 2.0)};
          inner += qz.w[k] * std::pow(1.0 + zeta, A - 1.0) * f10_two_auto(hp.a, hp.nu, x, tau, pol);
        }
        acc += qs.w[i] * inner;
      }
      return acc * std::pow(4.0, 1.0 - A);
    };
  }
  SeriesResult res = detail::quad_converge(once, pol);
  res.value *= pref;
  res.tail_estimate *= std::abs(pref);
  return res;
}

// Integral representation of (b)_{lam,nu} / Gamma(c + |lam|); same domain as
// euler_f21. Cross-validated against the exact ratio in tests.
inline SeriesResult pochhammer_ratio_integral(const Partition& lam, double b, double c, const Rational& nu, int l,
                                              const NumericPolicy& pol = {}) {
  double nud = to_double(nu);
  if (!(b > (l - 1) * nud)) throw DomainError("pochhammer_ratio_integral: requires b > (l-1) nu");
  if (!(c > l * b)) throw DomainError("pochhammer_ratio_integral: requires c > l b");
  if (l != 1 && l != 2) throw CapabilityError("pochhammer_ratio_integral: implemented for l <= 2");
  if (lam.length() > l) throw DomainError("pochhammer_ratio_integral: lambda has more than l rows");

  double pref = std::exp(-std::lgamma(c - l * b));
  for (int j = 1; j <= l; ++j)
    pref *= std::exp(std::lgamma(nud + 1.0) - std::lgamma(b - (j - 1) * nud) - std::lgamma(j * nud + 1.0));
  double ones = to_double(jack_C_ones(lam, nu, l));

  std::function<Cx(int)> once;
  if (l == 1) {
    once = [&, b, c](int n) {
      QuadRule q = gauss_jacobi01(n, c - b - 1.0, b - 1.0);
      Cx acc(0.0);
      for (size_t i = 0; i < q.size(); ++i) {
        JackEvaluator jack(nu, {Cx(q.x[i])});
        acc += q.w[i] * jack.C(lam) / ones;
      }
      return acc;
    };
  } else {
    double A = b - nud;
    double B = c - 2 * b;
    once = [&, A, B](int n) {
      QuadRule qs = gauss_jacobi01(n, B - 1.0, 2.0 * b - 1.0);
      QuadRule qz = gauss_jacobi01(n, A - 1.0, 2.0 * nud);
      Cx acc(0.0);
      for (size_t i = 0; i < qs.size(); ++i) {
        double s = qs.x[i];
        Cx inner(0.0);
        for (size_t k = 0; k < qz.size(); ++k) {
          double zeta = qz.x[k];
          JackEvaluator jack(nu, {Cx(s * (1.0 + zeta) / 2.0), Cx(s * (1.0 - zeta) / 2.0)});
          inner += qz.w[k] * std::pow(1.0 + zeta, A - 1.0) * jack.C(lam);
        }
        acc += qs.w[i] * inner;
      }
      return acc * std::pow(4.0, 1.0 - A) / ones;
    };
  }
  SeriesResult res = detail::quad_converge(once, pol);
  res.value *= pref;
  res.tail_estimate *= pref;
  return res;
}

// ---------------------------------------------------------------------------
// Selberg-type integral over the (l-1)-dimensional simplex sum(t)=1 against
// prod t^{A-1} prod |t_i - t_j|^{2 nu} C_lam(t)/C_lam(1^l); returns
// {quadrature, closed form}. The simplex is parametrized by the first l-1
// coordinates, matching the beta-integral splitting it is derived from.
inline std::pair<double, double> selberg_simplex(const Partition& lam, double A, const Rational& nu, int l,
                                                 const NumericPolicy& pol = {}) {
  if (!(A > 0.0)) throw DomainError("selberg_simplex: requires Re A > 0");
  if (lam.length() > l) throw DomainError("selberg_simplex: lambda has more than l rows");
  double nud = to_double(nu);
  // closed form
  double logcf = -std::lgamma(lam.size() + A * l + l * (l - 1) * nud);
  for (int j = 1; j <= l; ++j)
    logcf += std::lgamma(lam.part(j) + A + (l - j) * nud) + std::lgamma(j * nud + 1.0) - std::lgamma(nud + 1.0);
  double closed = std::exp(logcf);

  double quad = 0.0;
  double ones = to_double(jack_C_ones(lam, nu, l));
  if (l == 1) {
    quad = 1.0;
  } else if (l == 2) {
    auto once = [&](int n) {
      QuadRule qz = gauss_jacobi01(n, A - 1.0, 2.0 * nud);
      Cx acc(0.0);
      for (size_t k = 0; k < qz.size(); ++k) {
        double zeta = qz.x[k];
        JackEvaluator jack(nu, {Cx((1.0 + zeta) / 2.0), Cx((1.0 - zeta) / 2.0)});
        acc += qz.w[k] * std::pow(1.0 + zeta, A - 1.0) * jack.C(lam);
      }
      return acc * std::pow(4.0, 1.0 - A) / ones;
    };
    quad = detail::quad_converge(once, pol).value.real();
  } else if (l == 3) {
    // 6 x ordered region t1 > t2 > t3 with t3 = r, t2 = r+p, t1 = r+p+q,
    // r = (1-2p-q)/3, Jacobian dt1 dt2 = (1/3) dp dq; then p = rho/2 and
    // q = (1-2p) v. The rho-rule absorbs (t2-t3)^{2nu} = p^{2nu}; the v-rule
    // absorbs (t1-t2)^{2nu} = q^{2nu} up to (1-2p) powers and r^{A-1}'s
    // (1-v)^{A-1} part.
    auto once = [&](int n) {
      QuadRule qr = gauss_jacobi01(n, 0.0, 2.0 * nud);
      QuadRule qv = gauss_jacobi01(n, A - 1.0, 2.0 * nud);
      double acc = 0.0;
      for (size_t i = 0; i < qr.size(); ++i) {
        double p = qr.x[i] / 2.0;
        double onem = 1.0 - 2.0 * p;
        for (size_t k = 0; k < qv.size(); ++k) {
          double v = qv.x[k];
          double q = onem * v;
          double r = onem * (1.0 - v) / 3.0;
          double t1 = r + p + q, t2 = r + p;
          double g = std::pow(onem, 2.0 * nud + 1.0 + (A - 1.0)) * std::pow(p + q, 2.0 * nud) *
                     std::pow(t1 * t2, A - 1.0) * std::pow(1.0 / 3.0, A - 1.0);
          JackEvaluator jack(nu, {Cx(t1), Cx(t2), Cx(r)});
          acc += qr.w[i] * qv.w[k] * g * jack.C(lam).real() / ones;
        }
      }
      return Cx(acc * 2.0 * std::pow(0.5, 2.0 * nud + 1.0));
    };
    quad = detail::quad_converge(once, pol).value.real();
  } else {
    throw CapabilityError("selberg_simplex: quadrature path implemented for l <= 3");
  }
  return {quad, closed};
}

// ---------------------------------------------------------------------------
// 2F0 via the gamma mixing of 2F1-hat. Paths:
//  - terminating (a in Z_{<=0}): exact finite sum of the divergent series;
//  - mixing integral over s with inner 2F1-hat at s*x, c a free regulator
//    (result must not depend on it; tested).
enum class F20Path { automatic, terminating, mixing_integral };

inline SeriesResult f20(Cx a, Cx b, const Rational& nu, const std::vector<double>& x,
                        std::optional<double> c_choice = std::nullopt, const NumericPolicy& pol = {},
                        F20Path path = F20Path::automatic) {
  for (double xi : x)
    if (!(xi < 0.0)) throw DomainError("f20: arguments must be negative reals");
  int l = static_cast<int>(x.size());
  double nud = to_double(nu);
  std::vector<Cx> xc(x.begin(), x.end());

  bool can_terminate = is_nonpositive_int_re(a) || is_nonpositive_int_re(b);
  if (path == F20Path::automatic && !c_choice) path = can_terminate ? F20Path::terminating : F20Path::mixing_integral;
  if (path == F20Path::automatic) path = F20Path::mixing_integral;

  if (path == F20Path::terminating) {
    if (!can_terminate)
      throw CapabilityError("f20: terminating path needs a or b in {0,-1,-2,...}");
    if (is_nonpositive_int_re(b) && !is_nonpositive_int_re(a)) std::swap(a, b);
    JackEvaluator jack(nu, xc);
    auto term = [&](const Partition& lam) {
      Cx cx = jack.C(lam);
      if (cx == Cx(0.0)) return Cx(0.0);
      return gen_pochhammer_c(a, lam, nud) * gen_pochhammer_c(b, lam, nud) * cx /
             Cx(to_double(Rational(factorial(static_cast<unsigned>(lam.size())))));
    };
    return detail::sum_shells(term, l, pol, detail::terminating_cap(a, l));
  }

  // mixing-integral path: needs a positive regulator c and an evaluable
  // inner function at s*x (terminating series anywhere; otherwise the Euler
  // path with its parameter constraints).
  double c = c_choice.value_or(std::max({2.0, l * b.real() + 1.0, 1.0}));
  if (!(c > 0.0)) throw DomainError("f20: regulator c must be positive");
  bool inner_terminating = can_terminate;
  if (!inner_terminating) {
    // Euler path constraints for the inner function
    if (b.imag() != 0.0) throw CapabilityError("f20: integral path needs real b");
    if (!(b.real() > (l - 1) * nud) || !(c > l * b.real()))
      throw CapabilityError("f20: no path applies: a,b not terminating and Euler domain Re b > (l-1)nu, c > l b fails");
  }
  HyperParams hp{a, b, Cx(c), nu, l};
  auto once = [&](int n) {
    QuadRule q = gauss_laguerre(n, c - 1.0);
    Cx acc(0.0);
    for (size_t i = 0; i < q.size(); ++i) {
      double s = q.x[i];
      std::vector<Cx> sx(l);
      for (int j = 0; j < l; ++j) sx[j] = Cx(s * x[j]);
      Cx inner;
      if (inner_terminating) {
        inner = f21hat(hp, sx, pol).value;
      } else {
        inner = euler_f21(hp, sx, pol).value;
      }
      acc += q.w[i] * inner;
    }
    return acc / std::tgamma(c);
  };
  return detail::quad_converge(once, pol);
}

// Laguerre-weight integral form of 2F0 over (0,inf)^l. Cross-validates f20.
inline SeriesResult f20_laguerre_form(Cx a, Cx b, const Rational& nu, const std::vector<double>& x,
                                      const NumericPolicy& pol = {}) {
  for (double xi : x)
    if (!(xi < 0.0)) throw DomainError("f20_laguerre_form: arguments must be negative reals");
  if (b.imag() != 0.0) throw CapabilityError("f20_laguerre_form: needs real b");
  int l = static_cast<int>(x.size());
  double nud = to_double(nu);
  double br = b.real();
  if (!(br > (l - 1) * nud)) throw DomainError("f20_laguerre_form: requires Re b > (l-1) nu");
  std::vector<Cx> xc(x.begin(), x.end());

  double logpref = 0.0;
  for (int j = 1; j <= l; ++j)
    logpref += std::lgamma(nud + 1.0) - std::lgamma(br - (j - 1) * nud) - std::lgamma(j * nud + 1.0);
  double pref = std::exp(logpref);

  std::function<Cx(int)> once;
  if (l == 1) {
    once = [&](int n) {
      QuadRule q = gauss_laguerre(n, br - 1.0);
      Cx acc(0.0);
      for (size_t i = 0; i < q.size(); ++i) {
        acc += q.w[i] * f10_two_auto(a, nu, xc, {Cx(q.x[i])}, pol);
      }
      return acc;
    };
  } else if (l == 2) {
    // ordered region tau1 > tau2: tau2 = v, tau1 = v + u; factor 2.
    double alpha_v = br - nud - 1.0;
    once = [&, alpha_v](int n) {
      QuadRule qv = gauss_laguerre(n, alpha_v);  // v-weight v^{b-nu-1} e^{-v}, rescaled for e^{-2v}
      QuadRule qu = gauss_laguerre(n, 2.0 * nud);
      Cx acc(0.0);
      for (size_t i = 0; i < qv.size(); ++i) {
        double v = qv.x[i] / 2.0;  // v = t/2 maps e^{-t} to e^{-2v}
        double wv = qv.w[i] * std::pow(0.5, alpha_v + 1.0);
        for (size_t k = 0; k < qu.size(); ++k) {
          double u = qu.x[k];
          double t1 = v + u, t2 = v;
          double rest = std::pow(t1, br - nud - 1.0);
          acc += wv * qu.w[k] * rest * f10_two_auto(a, nu, xc, {Cx(t1), Cx(t2)}, pol);
        }
      }
      return acc * 2.0;
    };
  } else {
    throw CapabilityError("f20_laguerre_form: implemented for l <= 2");
  }
  SeriesResult res = detail::quad_converge(once, pol);
  res.value *= pref;
  res.tail_estimate *= pref;
  return res;
}

// Terminating 1F1 with generalized Pochhammer denominators (c)_{lam,nu}.
inline Cx f11_terminating(int m, Cx c, const Rational& nu, const std::vector<Cx>& x) {
  if (m < 1) throw DomainError("f11_terminating: m must be a positive integer");
  int l = static_cast<int>(x.size());
  double nud = to_double(nu);
  JackEvaluator jack(nu, x);
  Cx sum(0.0);
  for (int d = 0; d <= m * l; ++d) {
    for (const Partition& lam : partitions_bounded(d, l)) {
      if (lam.part(1) > m) continue;
      Cx num = gen_pochhammer_c(Cx(-static_cast<double>(m)), lam, nud);
      if (num == Cx(0.0)) continue;
      Cx den = gen_pochhammer_c(c, lam, nud);
      sum += num * jack.C(lam) / (den * Cx(to_double(Rational(factorial(static_cast<unsigned>(d))))));
    }
  }
  return sum;
}

// Residual of the terminating 2F0 <-> 1F1 identity:
//   2F0(-m, b; 1/x_1..1/x_l) = (-1)^{lm} prod_i (b-(i-1)nu)_m (x_1..x_l)^{-m}
//                              * 1F1(-m; -b-m+1+(l-1)nu; -x_1..-x_l).
// The sign and the 1F1 denominator convention are pinned by the l=1 classical
// identity (see tests).
inline double f20_f11_residual(int m, Cx b, const Rational& nu, const std::vector<double>& x,
                                const NumericPolicy& pol = {}) {
  for (double xi : x)
    if (!(xi < 0.0)) throw DomainError("f20_f11_residual: x must be negative");
  int l = static_cast<int>(x.size());
  double nud = to_double(nu);
  std::vector<double> invx(l);
  for (int i = 0; i < l; ++i) invx[i] = 1.0 / x[i];
  Cx lhs = f20(Cx(-static_cast<double>(m)), b, nu, invx, std::nullopt, pol, F20Path::terminating).value;

  Cx pref(1.0);
  for (int i = 1; i <= l; ++i) {
    Cx base = b - Cx((i - 1) * nud);
    for (int j = 0; j < m; ++j) pref *= base + Cx(static_cast<double>(j));
  }
  double xprod = 1.0;
  for (double xi : x) xprod *= xi;
  pref *= std::pow(Cx(xprod), Cx(-static_cast<double>(m)));
  if ((static_cast<long long>(l) * m) % 2 != 0) pref = -pref;
  Cx cstar = -b - Cx(static_cast<double>(m) - 1.0) + Cx((l - 1) * nud);
  std::vector<Cx> negx(l);
  for (int i = 0; i < l; ++i) negx[i] = Cx(-x[i]);
  Cx rhs = pref * f11_terminating(m, cstar, nu, negx);
  return std::abs(lhs - rhs);
}

}  // namespace zmeas
