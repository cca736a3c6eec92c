#pragma once

#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "zmeas/numbers.hpp"
#include "zmeas/partition.hpp"
#include "zmeas/symfunc.hpp"
#include "zmeas/zmeasure.hpp"

namespace zmeas {

// Exact Jack polynomials P_lambda with parameter nu, in the convention with
// deformed power-sum inner product <p_kappa, p_kappa> = z_kappa nu^{-l(kappa)}
// (i.e. parameter alpha = 1/nu in Macdonald's normalization).
//
// Built by Gram-Schmidt over the monomial basis in a dominance-compatible
// order; the whole degree is computed at once and memoized.
class JackBasis {
 public:
  static constexpr int kDefaultDegreeBound = 12;

  explicit JackBasis(int degree_bound = kDefaultDegreeBound) : bound_(degree_bound) {}

  int degree_bound() const { return bound_; }

  SymmetricPolynomial P(const Partition& lam, const Rational& nu) {
    if (nu <= 0) throw DomainError("JackBasis: nu must be positive");
    if (lam.size() > bound_) throw ResourceError("JackBasis: |lambda| exceeds configured degree bound");
    {
      std::lock_guard<std::mutex> lk(mu_);
      auto it = memo_.find({nu, lam});
      if (it != memo_.end()) return it->second;
    }
    compute_degree(static_cast<int>(lam.size()), nu);
    std::lock_guard<std::mutex> lk(mu_);
    return memo_.at({nu, lam});
  }

  // Insert a precomputed expansion (used by the disk cache loader).
  void insert(const Partition& lam, const Rational& nu, SymmetricPolynomial poly) {
    std::lock_guard<std::mutex> lk(mu_);
    memo_[{nu, lam}] = std::move(poly);
  }

  std::vector<std::pair<std::pair<Rational, Partition>, SymmetricPolynomial>> snapshot() const {
    std::lock_guard<std::mutex> lk(mu_);
    return {memo_.begin(), memo_.end()};
  }

 private:
  void compute_degree(int n, const Rational& nu) {
    const DegreeTables& t = degree_tables().get(n);
    size_t P = t.count();
    // Work in p-coordinates where the inner product is diagonal.
    std::vector<Rational> metric(P);
    for (size_t k = 0; k < P; ++k)
      metric[k] = t.z_factor(k) * pow_int(nu, -static_cast<long long>(t.partitions()[k].length()));
    auto ip = [&](const std::vector<Rational>& u, const std::vector<Rational>& v) {
      Rational s(0);
      for (size_t k = 0; k < P; ++k)
        if (u[k] != 0 && v[k] != 0) s += u[k] * v[k] * metric[k];
      return s;
    };
    std::vector<std::vector<Rational>> basis;
    std::vector<Rational> norms;
    basis.reserve(P);
    for (size_t li = 0; li < P; ++li) {
      SymmetricPolynomial m_lam;
      m_lam.degree = n;
      m_lam.terms[t.partitions()[li]] = Rational(1);
      std::vector<Rational> v = to_p_coords(m_lam, t);
      for (size_t mj = 0; mj < basis.size(); ++mj) {
        Rational c = ip(v, basis[mj]);
        if (c == 0) continue;
        c /= norms[mj];
        for (size_t k = 0; k < P; ++k)
          if (basis[mj][k] != 0) v[k] -= c * basis[mj][k];
      }
      norms.push_back(ip(v, v));
      basis.push_back(v);
    }
    std::lock_guard<std::mutex> lk(mu_);
    for (size_t li = 0; li < P; ++li) {
      memo_[{nu, t.partitions()[li]}] = from_p_coords(basis[li], t);
    }
  }

  int bound_;
  mutable std::mutex mu_;
  std::map<std::pair<Rational, Partition>, SymmetricPolynomial> memo_;
};

inline JackBasis& jack_basis() {
  static JackBasis basis;
  return basis;
}

inline SymmetricPolynomial jack_P(const Partition& lam, const Rational& nu) { return jack_basis().P(lam, nu); }

// Principal specialization P_lambda(1^l), exact product formula.
inline Rational principal_specialization(const Partition& lam, const Rational& nu, int l) {
  Partition tr = lam.transpose();
  Rational v(1);
  for (int i = 1; i <= lam.length(); ++i)
    for (int j = 1; j <= lam.part(i); ++j) {
      Rational num = Rational(l - i + 1) * nu + Rational(j - 1);
      Rational den = Rational(lam.arm(i, j)) + Rational(lam.leg_with_transpose(tr, i, j) + 1) * nu;
      v *= num / den;
    }
  return v;
}

// C_lambda = |lambda|! P_lambda / H(lambda,nu), evaluated at the given points.
template <class S>
S jack_C(const Partition& lam, const Rational& nu, const std::vector<S>& x) {
  SymmetricPolynomial p = jack_P(lam, nu);
  S val = evaluate(p, x);
  Rational scale = Rational(factorial(static_cast<unsigned>(lam.size()))) / hook_products(lam, nu).first;
  if constexpr (std::is_same_v<S, Rational>) {
    return scale * val;
  } else if constexpr (std::is_same_v<S, std::complex<double>>) {
    return std::complex<double>(to_double(scale)) * val;
  } else {
    return static_cast<S>(to_double(scale)) * val;
  }
}

// Exact C_lambda(1^l).
inline Rational jack_C_ones(const Partition& lam, const Rational& nu, int l) {
  return Rational(factorial(static_cast<unsigned>(lam.size()))) * principal_specialization(lam, nu, l) /
         hook_products(lam, nu).first;
}

// Pieri residual P_mu * P_(1) - sum over covers kappa_nu(mu,lambda) P_lambda.
// Identically zero; certifies the Jack construction and kappa against each other.
inline SymmetricPolynomial pieri_residual(const Partition& mu, const Rational& nu) {
  SymmetricPolynomial p1;
  p1.degree = 1;
  p1.terms[Partition{1}] = Rational(1);
  SymmetricPolynomial lhs = multiply(jack_P(mu, nu), p1);
  for (const Partition& lam : covers(mu)) {
    lhs = lhs - (kappa(mu, lam, nu) * jack_P(lam, nu));
  }
  lhs.prune();
  return lhs;
}

// Evaluate P_lambda under the boundary power-sum specialization
// p_1 = delta, p_k = sum alpha^k + (-theta)^{k-1} sum beta^k. Exact.
inline Rational jack_P_at_omega(const Partition& lam, const Rational& theta,
                                const std::vector<Rational>& psums) {
  if (lam.empty()) return Rational(1);
  int n = static_cast<int>(lam.size());
  const DegreeTables& t = degree_tables().get(n);
  std::vector<Rational> coords = to_p_coords(jack_P(lam, theta), t);
  Rational total(0);
  for (size_t k = 0; k < coords.size(); ++k) {
    if (coords[k] == 0) continue;
    Rational prod(1);
    for (int part : t.partitions()[k].parts()) prod *= psums[part - 1];
    total += coords[k] * prod;
  }
  return total;
}

}  // namespace zmeas
