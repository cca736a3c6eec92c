#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "zmeas/jack.hpp"
#include "zmeas/jack_numeric.hpp"
#include "zmeas/lattice.hpp"
#include "zmeas/numeric_policy.hpp"
#include "zmeas/omega.hpp"
#include "zmeas/partition.hpp"
#include "zmeas/quadrature.hpp"

namespace zmeas {

// E_theta(omega; u) = e^{gamma/u} prod(1+alpha_i/u) / prod(1-theta beta_i/u)^{1/theta}
// with the principal branch. On the cone u must avoid [0,inf); viewed on the
// boundary space (delta=1) the admissible domain widens to C \ [0,theta].
inline std::complex<double> E_theta(const OmegaPoint& w, double theta, std::complex<double> u,
                                    bool on_omega = false) {
  if (u.imag() == 0.0) {
    double ur = u.real();
    double cut_hi = on_omega ? theta : std::numeric_limits<double>::infinity();
    if (ur >= 0.0 && ur <= cut_hi) throw DomainError("E_theta: u on the excluded ray");
  }
  std::complex<double> v = std::exp(std::complex<double>(w.gamma()) / u);
  for (double a : w.alpha) v *= 1.0 + a / u;
  for (double b : w.beta) {
    std::complex<double> base = 1.0 - theta * b / u;
    if (base.imag() == 0.0 && base.real() <= 0.0) throw DomainError("E_theta: branch cut hit in a beta factor");
    v /= std::pow(base, 1.0 / theta);
  }
  return v;
}

// Exact rational E at theta=1 for finite-support points with gamma = 0.
inline Rational E_theta1_exact(const OmegaPointQ& w, const Rational& u) {
  if (w.gamma() != 0) throw DomainError("E_theta1_exact: needs gamma = 0");
  Rational v(1);
  for (const Rational& a : w.alpha) v *= (1 + a / u);
  for (const Rational& b : w.beta) {
    Rational den = 1 - b / u;
    if (den == 0) throw PoleError("E_theta1_exact: pole in a beta factor");
    v /= den;
  }
  return v;
}

// Exact rational (E_theta)^theta for integer theta and gamma = 0.
inline Rational E_theta_pow_exact(const OmegaPointQ& w, long long theta, const Rational& u) {
  if (w.gamma() != 0) throw DomainError("E_theta_pow_exact: needs gamma = 0");
  Rational v(1);
  for (const Rational& a : w.alpha) v *= pow_int(1 + a / u, theta);
  for (const Rational& b : w.beta) {
    Rational den = 1 - Rational(theta) * b / u;
    if (den == 0) throw PoleError("E_theta_pow_exact: pole in a beta factor");
    v /= den;
  }
  return v;
}

// Power-sum specialization: p_1 = delta, p_k = sum alpha^k + (-theta)^{k-1} sum beta^k.
template <class S, class T>
std::vector<S> power_sums(const BasicOmegaPoint<S>& w, const T& theta, int k_max) {
  std::vector<S> out;
  if (k_max < 1) return out;
  out.push_back(w.delta);
  for (int k = 2; k <= k_max; ++k) {
    S s{0};
    for (const S& a : w.alpha) {
      S p = a;
      for (int j = 1; j < k; ++j) p = p * a;
      s += p;
    }
    S sb{0};
    for (const S& b : w.beta) {
      S p = b;
      for (int j = 1; j < k; ++j) p = p * b;
      sb += p;
    }
    S sign{1};
    for (int j = 1; j < k; ++j) sign = sign * S(-theta);
    out.push_back(s + sign * sb);
  }
  return out;
}

// Taylor coefficients of E_theta(omega; 1/v) in v up to order K, exact.
inline std::vector<Rational> E_theta_taylor(const OmegaPointQ& w, const Rational& theta, int K) {
  std::vector<Rational> series(K + 1, Rational(0));
  series[0] = Rational(1);
  auto mul_in = [&](const std::vector<Rational>& f) {
    std::vector<Rational> out(K + 1, Rational(0));
    for (int i = 0; i <= K; ++i) {
      if (series[i] == 0) continue;
      for (int j = 0; i + j <= K; ++j) out[i + j] += series[i] * f[j];
    }
    series = std::move(out);
  };
  // exp(gamma v)
  {
    std::vector<Rational> f(K + 1, Rational(0));
    Rational g = w.gamma();
    f[0] = 1;
    for (int j = 1; j <= K; ++j) f[j] = f[j - 1] * g / j;
    mul_in(f);
  }
  for (const Rational& a : w.alpha) {
    std::vector<Rational> f(K + 1, Rational(0));
    f[0] = 1;
    if (K >= 1) f[1] = a;
    mul_in(f);
  }
  for (const Rational& b : w.beta) {
    // (1 - theta b v)^{-1/theta}: c_j = c_{j-1} * b * (1 + theta(j-1)) / j
    std::vector<Rational> f(K + 1, Rational(0));
    f[0] = 1;
    for (int j = 1; j <= K; ++j) f[j] = f[j - 1] * b * (1 + theta * (j - 1)) / j;
    mul_in(f);
  }
  return series;
}

// Elementary symmetric values from Newton's identities on the power sums.
inline std::vector<Rational> elementary_from_power_sums(const std::vector<Rational>& p, int K) {
  std::vector<Rational> e(K + 1, Rational(0));
  e[0] = 1;
  for (int k = 1; k <= K; ++k) {
    Rational s(0);
    for (int i = 1; i <= k; ++i) {
      Rational term = e[k - i] * p[i - 1];
      s += (i % 2 == 1) ? term : -term;
    }
    e[k] = s / k;
  }
  return e;
}

// max_k |e_k(Newton on power sums) - k-th Taylor coefficient of E_theta|.
// Exactly zero for finite-support rational points.
inline Rational newton_residual(const OmegaPointQ& w, const Rational& theta, int K) {
  std::vector<Rational> taylor = E_theta_taylor(w, theta, K);
  std::vector<Rational> p = power_sums(w, theta, K);
  std::vector<Rational> e = elementary_from_power_sums(p, K);
  Rational worst(0);
  for (int k = 0; k <= K; ++k) {
    Rational d = taylor[k] - e[k];
    if (d < 0) d = -d;
    if (d > worst) worst = d;
  }
  return worst;
}

// The three structural identities tying the lattice observable E* to E_theta
// under theta-duplication and the cone embedding. All residuals vanish
// identically; returned exactly.
struct EstarStructureResiduals {
  Rational product_vs_duplicated;  // prod_s E*_th(lam;u-s) - E*(lam_th;u)
  Rational power_vs_duplicated;    // E_th(iota(lam);u)^th - E(omega_th;u)
  Rational estar_vs_embedding;     // E*(lam;u) - E(iota(lam);u+1/2)
};

inline EstarStructureResiduals estar_structure_residuals(const Partition& lam, int theta, const Rational& u) {
  if (theta < 1) throw DomainError("estar_structure_residuals: theta must be a positive integer");
  if (!(u < 0)) throw DomainError("estar_structure_residuals: take u < 0 to stay off all poles");
  if (u == Rational(-1, 2)) throw PoleError("estar_structure_residuals: u = -1/2 hits the shifted-argument pole");
  EstarStructureResiduals out;
  {
    Rational prod(1);
    for (int s = 0; s < theta; ++s) prod *= e_star(lam, theta, u - s);
    out.product_vs_duplicated = prod - e_star(theta_duplicate(lam, theta), 1, u);
  }
  {
    OmegaPointQ w = embed_iota(lam);
    OmegaPointQ wt;
    for (const Rational& a : w.alpha)
      for (int t = 0; t < theta; ++t) wt.alpha.push_back(a);
    for (const Rational& b : w.beta) wt.beta.push_back(Rational(theta) * b);
    wt.delta = Rational(theta) * w.delta;
    out.power_vs_duplicated = E_theta_pow_exact(w, theta, u) - E_theta1_exact(wt, u);
  }
  {
    OmegaPointQ w = embed_iota(lam);
    out.estar_vs_embedding = e_star(lam, 1, u) - E_theta1_exact(w, u + Rational(1, 2));
  }
  return out;
}

// Growth bound |E(omega;u)| <= e^{delta/|u|} for u < 0 (theta = 1 form).
inline bool growth_bound_check(const OmegaPoint& w, double u) {
  if (!(u < 0.0)) throw DomainError("growth_bound_check: needs u < 0");
  double lhs = std::abs(E_theta(w, 1.0, std::complex<double>(u)));
  return lhs <= std::exp(w.delta / std::abs(u)) * (1.0 + 1e-12);
}

// Dual Cauchy cross-check: the truncated expansion
//   E_theta(w;u_1)...E_theta(w;u_l) = sum_{l(lam)<=l} P_{lam'}^{(theta)}(w) P_lam^{(1/theta)}(1/u)
// summed to |lam| <= N; returns the absolute residual (geometric in 1/|u|).
inline double dual_cauchy_check(const Rational& theta, const std::vector<std::complex<double>>& u,
                                const OmegaPointQ& w, int N) {
  int l = static_cast<int>(u.size());
  double thd = to_double(theta);
  OmegaPoint wd = to_double_point(w);
  std::complex<double> lhs(1.0);
  for (const auto& ui : u) lhs *= E_theta(wd, thd, ui, true);

  std::vector<Rational> psums = power_sums(w, theta, std::max(1, N));
  std::vector<std::complex<double>> invu(l);
  for (int i = 0; i < l; ++i) invu[i] = 1.0 / u[i];
  JackEvaluator jack_inv(Rational(1) / theta, invu);
  std::complex<double> rhs(0.0);
  for (int d = 0; d <= N; ++d) {
    for (const Partition& lam : enumerate_partitions(d)) {
      if (lam.length() > l) continue;
      Rational left = jack_P_at_omega(lam.transpose(), theta, psums);
      rhs += to_double(left) * jack_inv.P(lam);
    }
  }
  return std::abs(lhs - rhs);
}

// Gamma-mixing of a k-point correlation density:
//   lifted(x) = int_0^inf s^{t-1} e^{-s} / Gamma(t) * rho(x/s) s^{-k} ds.
// rho must vanish for |x/s| outside the simplex sum <= 1, so the integral
// runs over s >= |x|; the substitution s = |x| + sigma with an optional known
// endpoint exponent (sigma^{endpoint_exponent} behavior of rho at the simplex
// boundary) picks the right Gauss-Laguerre rule.
inline double lift_density_transform(const std::function<double(const std::vector<double>&)>& rho, double t,
                                     const std::vector<double>& x, const NumericPolicy& pol = {},
                                     std::optional<double> endpoint_exponent = std::nullopt) {
  int k = static_cast<int>(x.size());
  if (k < 1) throw DomainError("lift_density_transform: needs at least one point");
  double xs = 0.0;
  for (double xi : x) {
    if (!(xi > 0.0)) throw DomainError("lift_density_transform: points must be positive");
    xs += xi;
  }
  double alpha = endpoint_exponent.value_or(0.0);
  if (!(alpha > -1.0)) throw NumericError("lift_density_transform: non-integrable endpoint exponent");
  double lg_t = std::lgamma(t);
  auto once = [&](int n) {
    QuadRule q = gauss_laguerre(n, alpha);
    double acc = 0.0;
    std::vector<double> scaled(k);
    for (size_t i = 0; i < q.size(); ++i) {
      double sigma = q.x[i];
      double s = xs + sigma;
      for (int j = 0; j < k; ++j) scaled[j] = x[j] / s;
      double r = rho(scaled);
      if (r == 0.0) continue;
      // the rule supplies sigma^alpha e^{-sigma}; divide the density's own
      // sigma^alpha factor back out and restore e^{-xs}
      double g = std::pow(s, t - 1.0 - k) * std::exp(-xs - lg_t) * r / std::pow(sigma, alpha);
      acc += q.w[i] * g;
    }
    return std::complex<double>(acc);
  };
  SeriesResult res = detail::quad_converge(once, pol);
  if (!res.converged) throw NumericError("lift_density_transform: quadrature did not stabilize");
  return res.value.real();
}

}  // namespace zmeas
