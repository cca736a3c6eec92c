#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "zmeas/gamma.hpp"
#include "zmeas/numbers.hpp"
#include "zmeas/numeric_policy.hpp"

namespace zmeas {

struct QuadRule {
  std::vector<double> x;
  std::vector<double> w;
  size_t size() const { return x.size(); }
};

namespace detail {

// Golub-Welsch: nodes/weights from the symmetric tridiagonal Jacobi matrix.
// d = recurrence alpha, e = sqrt(beta) offdiagonal, mu0 = integral of the weight.
// Implicit-shift QL with first-row eigenvector tracking.
inline QuadRule golub_welsch(std::vector<double> d, std::vector<double> e, double mu0) {
  int n = static_cast<int>(d.size());
  std::vector<double> z(n, 0.0);
  if (n == 0) return {};
  z[0] = 1.0;
  e.push_back(0.0);
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    while (true) {
      int m = l;
      for (; m < n - 1; ++m) {
        double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= 1e-15 * dd) break;
      }
      if (m == l) break;
      if (++iter > 64) throw NumericError("golub_welsch: QL failed to converge");
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + (g >= 0 ? std::abs(r) : -std::abs(r)));
      double s = 1.0, c = 1.0, p = 0.0;
      for (int i = m - 1; i >= l; --i) {
        double f = s * e[i];
        double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        f = z[i + 1];
        z[i + 1] = s * z[i] + c * f;
        z[i] = c * z[i] - s * f;
      }
      if (r == 0.0 && m - 1 >= l) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }
  // sort by node
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return d[a] < d[b]; });
  QuadRule q;
  q.x.resize(n);
  q.w.resize(n);
  for (int i = 0; i < n; ++i) {
    q.x[i] = d[idx[i]];
    q.w[i] = mu0 * z[idx[i]] * z[idx[i]];
  }
  return q;
}

}  // namespace detail

// Weight (1-x)^a (1+x)^b on [-1,1]. Requires a,b > -1.
inline QuadRule gauss_jacobi(int n, double a, double b) {
  if (!(a > -1.0) || !(b > -1.0)) throw DomainError("gauss_jacobi: exponents must exceed -1");
  std::vector<double> d(n), e(n > 0 ? n - 1 : 0);
  double ab = a + b;
  for (int k = 0; k < n; ++k) {
    if (k == 0)
      d[k] = (b - a) / (ab + 2.0);
    else
      d[k] = (b * b - a * a) / ((2.0 * k + ab) * (2.0 * k + ab + 2.0));
  }
  for (int k = 1; k < n; ++k) {
    double bk;
    if (k == 1)
      bk = 4.0 * (a + 1.0) * (b + 1.0) / ((ab + 2.0) * (ab + 2.0) * (ab + 3.0));
    else
      bk = 4.0 * k * (k + a) * (k + b) * (k + ab) /
           ((2.0 * k + ab) * (2.0 * k + ab) * (2.0 * k + ab + 1.0) * (2.0 * k + ab - 1.0));
    e[k - 1] = std::sqrt(bk);
  }
  double mu0 = std::pow(2.0, ab + 1.0) * std::exp(std::lgamma(a + 1.0) + std::lgamma(b + 1.0) - std::lgamma(ab + 2.0));
  return detail::golub_welsch(std::move(d), std::move(e), mu0);
}

inline QuadRule gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

// Weight x^a e^{-x} on (0, inf). Requires a > -1.
inline QuadRule gauss_laguerre(int n, double a) {
  if (!(a > -1.0)) throw DomainError("gauss_laguerre: exponent must exceed -1");
  std::vector<double> d(n), e(n > 0 ? n - 1 : 0);
  for (int k = 0; k < n; ++k) d[k] = 2.0 * k + a + 1.0;
  for (int k = 1; k < n; ++k) e[k - 1] = std::sqrt(k * (k + a));
  return detail::golub_welsch(std::move(d), std::move(e), std::tgamma(a + 1.0));
}

// Rule for integrating f over [0,1] against u^b0 (1-u)^a1 (node positions in
// (0,1), weights absorb the singular factors).
inline QuadRule gauss_jacobi01(int n, double a1, double b0) {
  QuadRule q = gauss_jacobi(n, a1, b0);
  double scale = std::pow(0.5, a1 + b0 + 1.0);
  for (size_t i = 0; i < q.size(); ++i) {
    q.x[i] = 0.5 * (q.x[i] + 1.0);
    q.w[i] *= scale;
  }
  return q;
}

namespace detail {

// Doubling loop: evaluate `once(nodes)` with doubling node counts until the
// relative change drops below quad_tol.
inline SeriesResult quad_converge(const std::function<std::complex<double>(int)>& once, const NumericPolicy& pol) {
  SeriesResult res;
  res.policy = pol;
  int n = pol.quad_min_nodes;
  std::complex<double> prev = once(n);
  int used = n;
  bool ok = false;
  for (n *= 2; n <= pol.quad_max_nodes; n *= 2) {
    std::complex<double> cur = once(n);
    used = n;
    double change = std::abs(cur - prev);
    double scale = std::max(1e-300, std::abs(cur));
    bool small = change <= pol.quad_tol * std::max(1.0, scale);
    prev = cur;
    if (small) {
      ok = true;
      break;
    }
  }
  res.value = prev;
  res.node_count = used;
  res.converged = ok;
  res.tail_estimate = ok ? pol.quad_tol * std::abs(prev) : std::abs(prev);
  return res;
}

}  // namespace detail

}  // namespace zmeas
