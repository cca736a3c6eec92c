#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "zmeas/boundary.hpp"
#include "zmeas/hypergeom.hpp"
#include "zmeas/zmeasure.hpp"

namespace zmeas {

// Parameter block for the limit correlation functions: theta must be a
// positive integer; each point is repeated 2*theta times in the
// hypergeometric argument lists.
struct LimitCorrParams {
  ZParams p;
  int k = 1;

  LimitCorrParams(ZParams params, int order) : p(std::move(params)), k(order) {
    if (!is_integer(p.theta) || p.theta < 1)
      throw DomainError("LimitCorrParams: theta must be a positive integer");
    if (k < 1) throw DomainError("LimitCorrParams: k must be positive");
  }

  long long theta_int() const { return p.theta.convert_to<long long>(); }
  int l() const { return static_cast<int>(2 * k * theta_int()); }
  GaussianRational a_exact() const { return (-p.z + GaussianRational(Rational(k) * p.theta)) / GaussianRational(p.theta); }
  GaussianRational b_exact() const { return (-p.zp + GaussianRational(Rational(k) * p.theta)) / GaussianRational(p.theta); }
  GaussianRational c_exact() const { return a_exact() * b_exact() * GaussianRational(p.theta); }
  Rational nu() const { return Rational(1) / p.theta; }
};

namespace detail {

// Gamma prefactor prod_j Gamma(theta)/(Gamma(z-(j-1)theta) Gamma(z'-(j-1)theta)):
// exactly zero whenever a denominator argument sits on a Gamma pole.
inline std::optional<std::complex<double>> corr_gamma_prefactor(const LimitCorrParams& lp) {
  long long th = lp.theta_int();
  std::complex<double> pref(1.0);
  for (int j = 1; j <= lp.k; ++j) {
    GaussianRational az = lp.p.z - GaussianRational(Rational(j - 1) * lp.p.theta);
    GaussianRational azp = lp.p.zp - GaussianRational(Rational(j - 1) * lp.p.theta);
    if (gamma_pole_at(az) || gamma_pole_at(azp)) return std::nullopt;  // exact zero
    pref *= std::tgamma(static_cast<double>(th)) / (cgamma(az.to_complex()) * cgamma(azp.to_complex()));
  }
  return pref;
}

inline void require_positive_distinct(const std::vector<double>& x) {
  for (size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0)) throw DomainError("limit correlation: points must be positive");
    for (size_t j = i + 1; j < x.size(); ++j)
      if (x[i] == x[j]) throw DomainError("limit correlation: points must be distinct");
  }
}

}  // namespace detail

// Lifted limit correlation function (gamma-mixed picture): a density on
// (0,inf)^k. Exact zero for k beyond the degenerate support.
inline double rho_tilde(const std::vector<double>& x, const LimitCorrParams& lp, const NumericPolicy& pol = {}) {
  if (static_cast<int>(x.size()) != lp.k) throw DomainError("rho_tilde: point count must equal k");
  detail::require_positive_distinct(x);
  auto pref = detail::corr_gamma_prefactor(lp);
  if (!pref) return 0.0;  // Gamma pole in a denominator kills the prefactor

  long long th = lp.theta_int();
  GaussianRational power_q = lp.p.z + lp.p.zp + GaussianRational(lp.p.theta) -
                             GaussianRational(Rational(1)) - GaussianRational(Rational(2 * lp.k) * lp.p.theta);
  double power = to_double(power_q.real_or_throw("rho_tilde: z+z' must be real"));
  double xprod = 1.0, xsum = 0.0;
  for (double xi : x) {
    xprod *= xi;
    xsum += xi;
  }
  double vdm = 1.0;
  for (size_t i = 0; i < x.size(); ++i)
    for (size_t j = i + 1; j < x.size(); ++j) vdm *= std::pow(x[i] - x[j], 2.0 * th);

  std::vector<double> args;
  args.reserve(lp.l());
  for (double xi : x)
    for (long long r = 0; r < 2 * th; ++r) args.push_back(-static_cast<double>(th) / xi);
  SeriesResult f = f20(lp.a_exact().to_complex(), lp.b_exact().to_complex(), lp.nu(), args, std::nullopt, pol);
  std::complex<double> val = *pref * std::pow(xprod, power) * std::exp(-xsum) * vdm * f.value;
  if (std::abs(val.imag()) > 1e-8 * std::max(1.0, std::abs(val.real())))
    throw NumericError("rho_tilde: unexpectedly complex value");
  return val.real();
}

// Unlifted limit correlation function: either a density
// on the open simplex, an atom on {|x| = 1} (c = 0), or exact zero outside.
struct DensityOrAtom {
  bool is_atom = false;
  double value = 0.0;  // density value, or the atom's coefficient at x
};

inline DensityOrAtom rho(const std::vector<double>& x, const LimitCorrParams& lp, const NumericPolicy& pol = {}) {
  if (static_cast<int>(x.size()) != lp.k) throw DomainError("rho: point count must equal k");
  detail::require_positive_distinct(x);
  double xsum = 0.0, xprod = 1.0;
  for (double xi : x) {
    xsum += xi;
    xprod *= xi;
  }
  DensityOrAtom out;
  if (xsum > 1.0) return out;  // supported in |x| <= 1

  auto pref = detail::corr_gamma_prefactor(lp);
  if (!pref) return out;

  GaussianRational c_q = lp.c_exact();
  Rational t = lp.p.t.real_or_throw();
  if (gamma_pole_at(GaussianRational(t))) throw PoleError("rho: Gamma(t) pole");
  long long th = lp.theta_int();

  GaussianRational power_q = lp.p.z + lp.p.zp + GaussianRational(lp.p.theta) -
                             GaussianRational(Rational(1)) - GaussianRational(Rational(2 * lp.k) * lp.p.theta);
  double power = to_double(power_q.real_or_throw("rho: z+z' must be real"));
  double vdm = 1.0;
  for (size_t i = 0; i < x.size(); ++i)
    for (size_t j = i + 1; j < x.size(); ++j) vdm *= std::pow(x[i] - x[j], 2.0 * th);
  double common = std::tgamma(to_double(t)) * pref->real() * std::pow(xprod, power) * vdm;

  if (c_q.is_zero()) {
    // distributional reading: (1-|x|)_+^{c-1}/Gamma(c) degenerates to a delta
    // at |x| = 1; the hypergeometric factor collapses to its empty term. For
    // k = 1 the atom sits at the point x = 1 and its mass does not depend on
    // the query point; for k >= 2 the value is the surface coefficient at x.
    out.is_atom = true;
    out.value = (lp.k == 1) ? std::tgamma(to_double(t)) * pref->real() : common;
    return out;
  }
  if (!c_q.is_real() || c_q.re > 0) {
    Cx a = lp.a_exact().to_complex(), b = lp.b_exact().to_complex(), c = c_q.to_complex();
    double rest = 1.0 - xsum;
    std::vector<Cx> args;
    for (double xi : x)
      for (long long r = 0; r < 2 * th; ++r) args.push_back(Cx(-th * rest / xi));
    bool terminating = is_nonpositive_int_re(a) || is_nonpositive_int_re(b);
    double maxabs = 0.0;
    for (auto& ar : args) maxabs = std::max(maxabs, std::abs(ar));
    if (!terminating && !(maxabs < 1.0))
      throw CapabilityError("rho: 2F1-hat argument outside the series disk and no terminating path");
    HyperParams hp{a, b, c, lp.nu(), lp.l()};
    Cx f = f21hat(hp, args, pol).value;
    // (1-|x|)^{c-1}/Gamma(c) against the series factor
    Cx val = common * std::pow(Cx(rest), c - Cx(1.0)) * recip_gamma(c) * f;
    if (std::abs(val.imag()) > 1e-8 * std::max(1.0, std::abs(val.real())))
      throw NumericError("rho: unexpectedly complex value");
    out.value = val.real();
    return out;
  }
  throw CapabilityError("rho: c < 0 means a derivative-order distribution, not represented");
}

// |lift(rho) - rho_tilde| at x: the gamma-mixing derivation of rho_tilde run
// numerically. Atom case handled in closed form.
inline double lifting_residual(const LimitCorrParams& lp, const std::vector<double>& x,
                               const NumericPolicy& pol = {}) {
  double target = rho_tilde(x, lp, pol);
  Rational t = lp.p.t.real_or_throw();
  GaussianRational c_q = lp.c_exact();
  if (c_q.is_zero()) {
    // gamma mixing of the unit-coefficient atom at |y| = 1 (k = 1 only)
    if (lp.k != 1) throw CapabilityError("lifting_residual: atom mixing implemented for k = 1");
    DensityOrAtom atom = rho({1.0 - 1e-12}, lp, pol);
    double td = to_double(t);
    double lifted = atom.value * std::pow(x[0], td - 1.0) * std::exp(-x[0] - std::lgamma(td));
    return std::abs(lifted - target);
  }
  if (!c_q.is_real() || !(c_q.re > 0)) throw CapabilityError("lifting_residual: needs the Re c > 0 density path");
  auto density = [&](const std::vector<double>& y) {
    double s = 0.0;
    for (double yi : y) s += yi;
    if (s >= 1.0) return 0.0;
    return rho(y, lp, pol).value;
  };
  double lifted = lift_density_transform(density, to_double(t), x, pol, to_double(c_q.re) - 1.0);
  return std::abs(lifted - target);
}

// Correlation functions of the m-particle Laguerre ensemble with weight
// prod alpha^{z'-(m-1)theta-1} e^{-alpha} prod |alpha_i-alpha_j|^{2 theta};
// direct quadrature, m <= 2. Normalization computed by quadrature as well.
inline double laguerre_oracle(int m, double zprime, int theta, int k, const std::vector<double>& x,
                              const NumericPolicy& pol = {}) {
  if (m > 2 || m < 1) throw CapabilityError("laguerre_oracle: quadrature path implemented for m <= 2");
  if (k > m || static_cast<int>(x.size()) != k) throw DomainError("laguerre_oracle: need k <= m points");
  double A = zprime - (m - 1) * theta;
  if (!(A > 0.0)) throw DomainError("laguerre_oracle: requires z' > (m-1) theta");
  if (m == 1) {
    // normalization by quadrature: integral of the bare weight
    QuadRule q = gauss_laguerre(64, A - 1.0);
    double Z = 0.0;
    for (size_t i = 0; i < q.size(); ++i) Z += q.w[i];
    return std::pow(x[0], A - 1.0) * std::exp(-x[0]) / Z;
  }
  // m = 2
  auto weight = [&](double a1, double a2) {
    return std::pow(a1 * a2, A - 1.0) * std::exp(-a1 - a2) * std::pow(std::abs(a1 - a2), 2.0 * theta);
  };
  auto z_once = [&](int n) {
    // ordered region a1 > a2: a2 = v, a1 = v+u, times 2
    QuadRule qv = gauss_laguerre(n, A - 1.0);
    QuadRule qu = gauss_laguerre(n, 2.0 * theta);
    double acc = 0.0;
    for (size_t i = 0; i < qv.size(); ++i) {
      double v = qv.x[i] / 2.0;
      double wv = qv.w[i] * std::pow(0.5, A);
      for (size_t j = 0; j < qu.size(); ++j) {
        double u = qu.x[j];
        acc += wv * qu.w[j] * std::pow(v + u, A - 1.0);
      }
    }
    return Cx(acc * 2.0);
  };
  double Z = detail::quad_converge(z_once, pol).value.real();
  if (k == 2) return 2.0 * weight(x[0], x[1]) / Z;
  // k = 1: 2 int weight(x, a) da
  auto marg = [&](int n) {
    QuadRule q = gauss_laguerre(n, A - 1.0);
    double acc = 0.0;
    for (size_t i = 0; i < q.size(); ++i) {
      double a = q.x[i];
      acc += q.w[i] * std::pow(std::abs(x[0] - a), 2.0 * theta);
    }
    return Cx(acc * std::pow(x[0], A - 1.0) * std::exp(-x[0]));
  };
  double inner = detail::quad_converge(marg, pol).value.real();
  return 2.0 * inner / Z;
}

// ---------------------------------------------------------------------------
// Bulk scaling limit (origin asymptotics in logarithmic coordinates).

struct BulkParams {
  ZParams p;
  int k = 1;

  BulkParams(ZParams params, int order) : p(std::move(params)), k(order) {
    if (!is_integer(p.theta) || p.theta < 1) throw DomainError("BulkParams: theta must be a positive integer");
    if (k < 1) throw DomainError("BulkParams: k must be positive");
  }
  long long theta_int() const { return p.theta.convert_to<long long>(); }
  int l() const { return static_cast<int>(2 * k * theta_int()); }

  // s = (s'_1..s'_{k theta}, s''_1..s''_{k theta})
  std::vector<GaussianRational> s_exact() const {
    std::vector<GaussianRational> s;
    GaussianRational th{Rational(theta_int())};
    GaussianRational two_th{Rational(2 * theta_int())};
    GaussianRational one{Rational(1)};
    for (long long j = 1; j <= static_cast<long long>(k) * theta_int(); ++j) {
      s.push_back((p.zp - p.z - GaussianRational{Rational(2 * j)} + th + one) / two_th);
    }
    for (long long j = 1; j <= static_cast<long long>(k) * theta_int(); ++j) {
      s.push_back((p.z - p.zp - GaussianRational{Rational(2 * j)} + th + one) / two_th);
    }
    return s;
  }

  // sum of the spectral parameters; equals -k(k-1)theta exactly, which is
  // what makes the limit density translation invariant against the
  // Vandermonde factor of total degree +k(k-1)theta. (At k = 1 this is 0.)
  Rational s_sum() const {
    GaussianRational total(Rational(0));
    for (const auto& sj : s_exact()) total = total + sj;
    return total.real_or_throw("BulkParams: s-sum must be real");
  }
  Rational homogeneity_defect() const { return s_sum() + Rational(static_cast<long long>(k) * (k - 1)) * p.theta; }
};

// Constant C of the bulk limit; exact zero on denominator Gamma poles
// (degenerate series).
inline std::complex<double> bulk_constant(const BulkParams& bp) {
  long long th = bp.theta_int();
  GaussianRational z = bp.p.z, zp = bp.p.zp;
  std::complex<double> C(1.0);
  for (long long j = 0; j < bp.k; ++j) {
    GaussianRational jt(Rational(j * th));
    // denominator pole -> exact zero
    for (const GaussianRational& arg :
         {jt - z + GaussianRational(Rational(1)), jt - zp + GaussianRational(Rational(1)), z - jt, zp - jt}) {
      if (gamma_pole_at(arg)) return {0.0, 0.0};
    }
    std::complex<double> num = std::tgamma(static_cast<double>(j * th + 1)) * std::tgamma(static_cast<double>(th)) *
                               cgamma((jt + z - zp + GaussianRational(Rational(1))).to_complex()) *
                               cgamma((jt + zp - z + GaussianRational(Rational(1))).to_complex());
    std::complex<double> den = std::tgamma(static_cast<double>(j * th + bp.k + 1)) *
                               cgamma((jt - z + GaussianRational(Rational(1))).to_complex()) *
                               cgamma((jt - zp + GaussianRational(Rational(1))).to_complex()) *
                               cgamma((z - jt).to_complex()) * cgamma((zp - jt).to_complex());
    C *= num / den;
  }
  return C;
}

// ---------------------------------------------------------------------------
// Spherical function at theta = 1 (determinant formula), with confluent
// columns/rows for repeated arguments.

namespace detail {

inline Cx binom_falling(Cx s, int r) {
  // s(s-1)...(s-r+1)/r!
  Cx v(1.0);
  for (int q = 0; q < r; ++q) v *= (s - Cx(static_cast<double>(q)));
  for (int q = 2; q <= r; ++q) v /= Cx(static_cast<double>(q));
  return v;
}

inline Cx cpow_int(Cx b, long long e) {
  Cx r(1.0);
  bool inv = e < 0;
  unsigned long long m = inv ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
  while (m) {
    if (m & 1) r *= b;
    b *= b;
    m >>= 1;
  }
  return inv ? Cx(1.0) / r : r;
}

inline Cx det_complex(std::vector<std::vector<Cx>> a) {
  int n = static_cast<int>(a.size());
  Cx det(1.0);
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    double best = 0.0;
    for (int r = c; r < n; ++r) {
      double mag = std::abs(a[r][c]);
      if (mag > best) {
        best = mag;
        piv = r;
      }
    }
    if (piv < 0 || best == 0.0) return Cx(0.0);
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (int r = c + 1; r < n; ++r) {
      Cx f = a[r][c] / a[c][c];
      for (int cc = c; cc < n; ++cc) a[r][cc] -= f * a[c][cc];
    }
  }
  return det;
}

}  // namespace detail

// phi_s at theta = 1:
//   0!1!...(l-1)! (prod x)^{(l-1)/2} det[x_i^{s_j}] / (prod_{i<j}(x_i-x_j)(s_i-s_j)),
// with repeated x handled by confluent (divided-difference) rows, and
// repeated s by confluent columns (needs distinct x in that case).
inline Cx spherical_phi_theta1(const std::vector<Cx>& s, const std::vector<Cx>& x) {
  if (s.size() != x.size()) throw DomainError("spherical_phi_theta1: argument lists differ in length");
  int l = static_cast<int>(s.size());
  if (l == 0) return Cx(1.0);
  // group equal values
  auto group = [](const std::vector<Cx>& v) {
    std::vector<std::pair<Cx, int>> g;
    for (const Cx& val : v) {
      if (!g.empty() && g.back().first == val)
        g.back().second += 1;
      else
        g.emplace_back(val, 1);
    }
    return g;
  };
  auto xg = group(x);
  auto sg = group(s);
  bool x_conf = static_cast<int>(xg.size()) != l;
  bool s_conf = static_cast<int>(sg.size()) != l;
  if (x_conf && s_conf)
    throw CapabilityError("spherical_phi_theta1: simultaneous x and s confluence not implemented");

  Cx xprod(1.0);
  for (const Cx& xi : x) xprod *= xi;
  double preffact = 1.0;
  for (int q = 1; q < l; ++q) preffact *= std::tgamma(static_cast<double>(q + 1));

  // R_x = det[x_i^{s_j}] / prod_{i<j}(x_i - x_j), confluent in x
  // R_s = same ratio further divided by prod_{i<j}(s_i - s_j), via columns
  std::vector<std::vector<Cx>> mat(l, std::vector<Cx>(l));
  Cx denom(1.0);
  long long sign_flips = 0;
  if (!s_conf) {
    int row = 0;
    for (auto& [X, m] : xg) {
      for (int r = 0; r < m; ++r, ++row) {
        for (int j = 0; j < l; ++j) mat[row][j] = detail::binom_falling(s[j], r) * std::pow(X, s[j] - Cx(r));
      }
      sign_flips += static_cast<long long>(m) * (m - 1) / 2;
    }
    for (size_t g1 = 0; g1 < xg.size(); ++g1)
      for (size_t g2 = g1 + 1; g2 < xg.size(); ++g2)
        denom *= detail::cpow_int(xg[g1].first - xg[g2].first,
                                  static_cast<long long>(xg[g1].second) * xg[g2].second);
    for (int i = 0; i < l; ++i)
      for (int j = i + 1; j < l; ++j) denom *= (s[i] - s[j]);
  } else {
    int col = 0;
    for (auto& [S, m] : sg) {
      for (int q = 0; q < m; ++q, ++col) {
        for (int i = 0; i < l; ++i) {
          Cx lx = std::log(x[i]);
          Cx lq(1.0);
          for (int qq = 0; qq < q; ++qq) lq *= lx / Cx(static_cast<double>(qq + 1));
          mat[i][col] = std::pow(x[i], S) * lq;
        }
      }
      sign_flips += static_cast<long long>(m) * (m - 1) / 2;
    }
    for (size_t g1 = 0; g1 < sg.size(); ++g1)
      for (size_t g2 = g1 + 1; g2 < sg.size(); ++g2)
        denom *= detail::cpow_int(sg[g1].first - sg[g2].first,
                                  static_cast<long long>(sg[g1].second) * sg[g2].second);
    for (int i = 0; i < l; ++i)
      for (int j = i + 1; j < l; ++j) denom *= (x[i] - x[j]);
  }
  Cx ratio = detail::det_complex(std::move(mat)) / denom;
  if (sign_flips % 2 != 0) ratio = -ratio;
  return preffact * std::pow(xprod, Cx(0.5 * (l - 1))) * ratio;
}

// phi_s at a spectral point s = lambda + rho for general nu: the normalized
// Jack polynomial P_lambda(x)/P_lambda(1^l).
inline Cx spherical_phi_jack(const Partition& lam, const Rational& nu, const std::vector<Cx>& x) {
  JackEvaluator jack(nu, x);
  Rational ones = principal_specialization(lam, nu, static_cast<int>(x.size()));
  if (ones == 0) throw DomainError("spherical_phi_jack: lambda has more rows than variables");
  return jack.P(lam) / Cx(to_double(ones));
}

// Bulk limit density at points y (theta = 1 explicit path; general theta only
// at Jack spectral points, which generic parameters do not hit).
inline double bulk_limit_density(const std::vector<double>& y, const BulkParams& bp) {
  if (static_cast<int>(y.size()) != bp.k) throw DomainError("bulk_limit_density: need k points");
  long long th = bp.theta_int();
  std::complex<double> C = bulk_constant(bp);
  if (C == std::complex<double>(0.0)) return 0.0;
  if (th != 1)
    throw CapabilityError(
        "bulk_limit_density: general theta needs the Heckman-Opdam function off spectral points; only theta = 1 "
        "has an explicit formula here");
  std::vector<Cx> xs, ss;
  for (double yi : y)
    for (long long r = 0; r < 2 * th; ++r) xs.push_back(Cx(std::exp(-yi)));
  for (const auto& sj : bp.s_exact()) ss.push_back(sj.to_complex());
  double vdm = 1.0;
  for (size_t i = 0; i < y.size(); ++i)
    for (size_t j = i + 1; j < y.size(); ++j)
      vdm *= std::pow(std::exp(-y[i]) - std::exp(-y[j]), 2.0 * th);
  Cx val = C * vdm * spherical_phi_theta1(ss, xs);
  if (std::abs(val.imag()) > 1e-8 * std::max(1.0, std::abs(val.real())))
    throw NumericError("bulk_limit_density: unexpectedly complex value");
  return val.real();
}

struct BulkAuditRow {
  double T = 0.0;
  bool computed = false;
  std::string note;
  double rescaled = 0.0;  // rho_k(e^{-y-T}) prod e^{-y_i-T}
  double limit = 0.0;
};

// Rescaled correlation values along T against the bulk limit (where a
// computation path exists; capability misses are recorded per T).
inline std::vector<BulkAuditRow> bulk_convergence_audit(const BulkParams& bp, const std::vector<double>& t_list,
                                                        const std::vector<double>& y, const NumericPolicy& pol = {}) {
  std::vector<BulkAuditRow> rows;
  LimitCorrParams lp(bp.p, bp.k);
  for (double T : t_list) {
    BulkAuditRow row;
    row.T = T;
    try {
      std::vector<double> xs(y.size());
      double jac = 1.0;
      for (size_t i = 0; i < y.size(); ++i) {
        xs[i] = std::exp(-y[i] - T);
        jac *= xs[i];
      }
      DensityOrAtom d = rho(xs, lp, pol);
      if (d.is_atom) throw CapabilityError("bulk audit hit the atom case");
      row.rescaled = d.value * jac;
      row.computed = true;
    } catch (const CapabilityError& e) {
      row.note = e.what();
    }
    try {
      row.limit = bulk_limit_density(y, bp);
    } catch (const CapabilityError& e) {
      if (row.note.empty()) row.note = e.what();
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace zmeas
