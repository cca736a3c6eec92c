#pragma once

#include <algorithm>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "zmeas/numbers.hpp"
#include "zmeas/partition.hpp"

namespace zmeas {

// Exact symmetric polynomial, stored in the monomial basis. All monomial
// indices share the same degree.
struct SymmetricPolynomial {
  int degree = 0;
  std::map<Partition, Rational> terms;

  Rational coeff(const Partition& mu) const {
    auto it = terms.find(mu);
    return it == terms.end() ? Rational(0) : it->second;
  }
  bool is_zero() const {
    for (auto& [mu, c] : terms)
      if (c != 0) return false;
    return true;
  }
  void prune() {
    for (auto it = terms.begin(); it != terms.end();) {
      if (it->second == 0)
        it = terms.erase(it);
      else
        ++it;
    }
  }
  friend SymmetricPolynomial operator-(const SymmetricPolynomial& a, const SymmetricPolynomial& b) {
    SymmetricPolynomial r = a;
    for (auto& [mu, c] : b.terms) r.terms[mu] -= c;
    r.prune();
    return r;
  }
  friend SymmetricPolynomial operator*(const Rational& c, const SymmetricPolynomial& a) {
    SymmetricPolynomial r = a;
    for (auto& [mu, v] : r.terms) v *= c;
    r.prune();
    return r;
  }
};

// Per-degree transition data between the monomial and power-sum bases.
// Partitions are listed in ascending lex order, which refines dominance.
class DegreeTables {
 public:
  explicit DegreeTables(int n) : n_(n) {
    parts_ = enumerate_partitions(n, 64);
    std::reverse(parts_.begin(), parts_.end());  // ascending lex
    for (size_t i = 0; i < parts_.size(); ++i) index_[parts_[i]] = i;
    build();
  }

  int degree() const { return n_; }
  const std::vector<Partition>& partitions() const { return parts_; }
  size_t index_of(const Partition& p) const { return index_.at(p); }
  size_t count() const { return parts_.size(); }

  // Row kappa: expansion of p_kappa in the monomial basis.
  const std::vector<Rational>& p_in_m(size_t kappa) const { return p2m_[kappa]; }
  // Row mu: expansion of m_mu in the power-sum basis.
  const std::vector<Rational>& m_in_p(size_t mu) const { return m2p_[mu]; }

  // z_kappa = prod_i i^{m_i} m_i! over part multiplicities.
  const Rational& z_factor(size_t kappa) const { return z_[kappa]; }

 private:
  void build() {
    size_t P = parts_.size();
    p2m_.assign(P, std::vector<Rational>(P, Rational(0)));
    // p_kappa in the m basis by multiplying out p_{k} factors.
    for (size_t ki = 0; ki < P; ++ki) {
      // Start with the empty product: coefficient map {(): 1} at degree 0,
      // then multiply by each power sum.
      std::map<std::vector<int>, Rational> cur;
      cur[{}] = Rational(1);
      for (int k : parts_[ki].parts()) {
        std::map<std::vector<int>, Rational> next;
        for (auto& [mu, c] : cur) {
          // p_k * m_mu: add k to one part value (including a new part).
          // Coefficient of m_nu counts positions i with sort(nu - k e_i) = mu.
          // Enumerate targets: nu = sort(mu with one v -> v+k) over distinct
          // values v in mu and v = 0.
          std::vector<int> vals = mu;
          vals.push_back(0);
          std::sort(vals.begin(), vals.end());
          vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
          for (int v : vals) {
            std::vector<int> nu = mu;
            if (v == 0) {
              nu.push_back(k);
            } else {
              auto it = std::find(nu.begin(), nu.end(), v);
              *it = v + k;
            }
            std::sort(nu.begin(), nu.end(), std::greater<int>());
            // multiplicity of (v+k) in nu
            int mult = static_cast<int>(std::count(nu.begin(), nu.end(), v + k));
            next[nu] += c * mult;
          }
        }
        cur = std::move(next);
      }
      for (auto& [mu, c] : cur) p2m_[ki][index_.at(Partition(mu))] = c;
    }
    // Invert: ascending lex order makes p2m triangular with nonzero diagonal
    // (p_kappa is supported on mu >= kappa in dominance).
    m2p_.assign(P, std::vector<Rational>(P, Rational(0)));
    for (size_t mi = 0; mi < P; ++mi) {
      // Solve m_mi = sum_kappa x_kappa p_kappa. In ascending lex order p2m is
      // upper triangular (p_kappa lives on dominance-larger monomials), so
      // forward substitution over columns works.
      std::vector<Rational>& x = m2p_[mi];
      for (size_t j = 0; j < P; ++j) {
        Rational r = (j == mi) ? Rational(1) : Rational(0);
        for (size_t k = 0; k < j; ++k)
          if (x[k] != 0 && p2m_[k][j] != 0) r -= x[k] * p2m_[k][j];
        x[j] = r / p2m_[j][j];
      }
    }
    z_.resize(P);
    for (size_t ki = 0; ki < P; ++ki) {
      Rational z(1);
      const auto& ps = parts_[ki].parts();
      int run = 1;
      for (size_t i = 0; i < ps.size(); ++i) {
        z *= ps[i];
        if (i + 1 < ps.size() && ps[i + 1] == ps[i])
          ++run;
        else {
          z *= Rational(factorial(run));
          run = 1;
        }
      }
      z_[ki] = z;
    }
  }

  int n_;
  std::vector<Partition> parts_;
  std::map<Partition, size_t> index_;
  std::vector<std::vector<Rational>> p2m_;
  std::vector<std::vector<Rational>> m2p_;
  std::vector<Rational> z_;
};

class DegreeTableCache {
 public:
  const DegreeTables& get(int n) {
    std::lock_guard<std::mutex> lk(mu_);
    auto& slot = tables_[n];
    if (!slot) slot = std::make_unique<DegreeTables>(n);
    return *slot;
  }

 private:
  std::mutex mu_;
  std::map<int, std::unique_ptr<DegreeTables>> tables_;
};

inline DegreeTableCache& degree_tables() {
  static DegreeTableCache cache;
  return cache;
}

// f in m basis -> coordinates in p basis (length = #partitions(degree)).
inline std::vector<Rational> to_p_coords(const SymmetricPolynomial& f, const DegreeTables& t) {
  std::vector<Rational> v(t.count(), Rational(0));
  for (auto& [mu, c] : f.terms) {
    const auto& row = t.m_in_p(t.index_of(mu));
    for (size_t k = 0; k < v.size(); ++k)
      if (row[k] != 0) v[k] += c * row[k];
  }
  return v;
}

inline SymmetricPolynomial from_p_coords(const std::vector<Rational>& v, const DegreeTables& t) {
  SymmetricPolynomial f;
  f.degree = t.degree();
  for (size_t k = 0; k < v.size(); ++k) {
    if (v[k] == 0) continue;
    const auto& row = t.p_in_m(k);
    for (size_t m = 0; m < row.size(); ++m)
      if (row[m] != 0) f.terms[t.partitions()[m]] += v[k] * row[m];
  }
  f.prune();
  return f;
}

// Product of symmetric polynomials, computed through the power-sum basis
// where multiplication is concatenation of indices.
inline SymmetricPolynomial multiply(const SymmetricPolynomial& a, const SymmetricPolynomial& b) {
  const DegreeTables& ta = degree_tables().get(a.degree);
  const DegreeTables& tb = degree_tables().get(b.degree);
  const DegreeTables& tc = degree_tables().get(a.degree + b.degree);
  auto va = to_p_coords(a, ta);
  auto vb = to_p_coords(b, tb);
  std::vector<Rational> vc(tc.count(), Rational(0));
  for (size_t i = 0; i < va.size(); ++i) {
    if (va[i] == 0) continue;
    for (size_t j = 0; j < vb.size(); ++j) {
      if (vb[j] == 0) continue;
      std::vector<int> cat = ta.partitions()[i].parts();
      const auto& pj = tb.partitions()[j].parts();
      cat.insert(cat.end(), pj.begin(), pj.end());
      std::sort(cat.begin(), cat.end(), std::greater<int>());
      vc[tc.index_of(Partition(cat))] += va[i] * vb[j];
    }
  }
  return from_p_coords(vc, tc);
}

// Monomial symmetric polynomial m_mu at the given points (0 if fewer
// variables than parts). Enumerates distinct permutations of the exponent
// vector; fine at desk scale.
template <class S>
S evaluate_monomial(const Partition& mu, const std::vector<S>& x) {
  size_t l = x.size();
  if (static_cast<size_t>(mu.length()) > l) return S{0};
  if (mu.empty()) return S{1};
  std::vector<int> expo(l, 0);
  for (int i = 0; i < mu.length(); ++i) expo[i] = mu.parts()[i];
  std::sort(expo.begin(), expo.end());
  S total{0};
  do {
    S term{1};
    for (size_t i = 0; i < l; ++i) {
      for (int e = 0; e < expo[i]; ++e) term = term * x[i];
    }
    total += term;
  } while (std::next_permutation(expo.begin(), expo.end()));
  return total;
}

template <class S>
S evaluate(const SymmetricPolynomial& f, const std::vector<S>& x) {
  S total{0};
  for (auto& [mu, c] : f.terms) {
    S m = evaluate_monomial(mu, x);
    if constexpr (std::is_same_v<S, Rational>) {
      total += c * m;
    } else if constexpr (std::is_same_v<S, std::complex<double>>) {
      total += std::complex<double>(to_double(c)) * m;
    } else {
      total += static_cast<S>(to_double(c)) * m;
    }
  }
  return total;
}

}  // namespace zmeas
