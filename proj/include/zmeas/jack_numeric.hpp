#pragma once

#include <complex>
#include <functional>
#include <map>
#include <vector>

#include "zmeas/numbers.hpp"
#include "zmeas/partition.hpp"

namespace zmeas {

// Fast numeric evaluator for Jack polynomials at fixed points, via the
// branching rule over horizontal strips:
//
//   P_lam(x_1..x_m) = sum_{mu: lam/mu horiz strip} psi_{lam/mu} P_mu(x_1..x_{m-1}) x_m^{|lam/mu|}
//
// psi is a product of hook ratios over the boxes of mu lying in a row that
// meets the strip but in a column that does not. Used by the hypergeometric
// series; cross-checked against the exact Gram-Schmidt construction in tests.
class JackEvaluator {
 public:
  using Cx = std::complex<double>;

  JackEvaluator(const Rational& nu, std::vector<Cx> x) : w_(to_double(nu)), x_(std::move(x)) {}

  Cx P(const Partition& lam) { return P_rec(lam.parts(), static_cast<int>(x_.size())); }

  // C_lam = |lam|! P_lam / H(lam, nu)
  Cx C(const Partition& lam) {
    Cx p = P(lam);
    if (p == Cx(0.0)) return p;
    return p * fact_over_H(lam);
  }

 private:
  // |lam|!/H(lam,nu) computed in one pass.
  double fact_over_H(const Partition& lam) const {
    double v = 1.0;
    Partition tr = lam.transpose();
    int box = 0;
    for (int i = 1; i <= lam.length(); ++i)
      for (int j = 1; j <= lam.part(i); ++j) {
        ++box;
        v *= static_cast<double>(box) / (lam.arm(i, j) + lam.leg_with_transpose(tr, i, j) * w_ + 1.0);
      }
    return v;
  }

  Cx P_rec(const std::vector<int>& lam, int m) {
    if (lam.empty()) return Cx(1.0);
    if (static_cast<int>(lam.size()) > m) return Cx(0.0);
    auto key = std::make_pair(lam, m);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    Cx total(0.0);
    // Enumerate horizontal strips lam/mu: lam_{i+1} <= mu_i <= lam_i.
    std::vector<int> mu(lam.size());
    std::function<void(size_t, long long)> rec = [&](size_t i, long long removed) {
      if (i == lam.size()) {
        std::vector<int> mu_clean;
        for (int p : mu)
          if (p > 0) mu_clean.push_back(p);
        Cx sub = P_rec(mu_clean, m - 1);
        if (sub != Cx(0.0) || removed == 0) {
          Cx term = sub * psi(lam, mu) * cpow(x_[m - 1], removed);
          total += term;
        }
        return;
      }
      int lo = i + 1 < lam.size() ? lam[i + 1] : 0;
      for (int v = lam[i]; v >= lo; --v) {
        mu[i] = v;
        rec(i + 1, removed + (lam[i] - v));
      }
    };
    rec(0, 0);
    memo_[key] = total;
    return total;
  }

  static Cx cpow(Cx b, long long e) {
    Cx r(1.0);
    while (e) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }

  double hook_ratio(const std::vector<int>& nu, const std::vector<int>& nutr, int i, int j) const {
    // b_nu(s) = (a + (l+1)w)/(a + l w + 1) at s=(i,j), 1-based
    double a = nu[i - 1] - j;
    double l = nutr[j - 1] - i;
    return (a + (l + 1) * w_) / (a + l * w_ + 1.0);
  }

  double psi(const std::vector<int>& lam, const std::vector<int>& mu) const {
    // rows meeting the strip; columns meeting the strip
    std::vector<int> lamtr = transpose_of(lam);
    std::vector<int> mutr = transpose_of(mu);
    double v = 1.0;
    for (size_t i0 = 0; i0 < mu.size(); ++i0) {
      int i = static_cast<int>(i0) + 1;
      bool row_meets = lam[i0] != mu[i0];
      if (!row_meets) continue;
      for (int j = 1; j <= mu[i0]; ++j) {
        int lam_col = j <= static_cast<int>(lamtr.size()) ? lamtr[j - 1] : 0;
        int mu_col = j <= static_cast<int>(mutr.size()) ? mutr[j - 1] : 0;
        bool col_meets = lam_col != mu_col;
        if (col_meets) continue;
        v *= hook_ratio(mu, mutr, i, j) / hook_ratio(lam, lamtr, i, j);
      }
    }
    return v;
  }

  static std::vector<int> transpose_of(const std::vector<int>& p) {
    if (p.empty()) return {};
    std::vector<int> t(p[0], 0);
    for (int j = 1; j <= p[0]; ++j) {
      int c = 0;
      for (int v : p)
        if (v >= j) ++c;
      t[j - 1] = c;
    }
    return t;
  }

  double w_;
  std::vector<Cx> x_;
  std::map<std::pair<std::vector<int>, int>, Cx> memo_;
};

}  // namespace zmeas
