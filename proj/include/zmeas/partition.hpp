#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <utility>
#include <vector>

#include "zmeas/numbers.hpp"
#include "zmeas/omega.hpp"

namespace zmeas {

// A partition (Young diagram): weakly decreasing positive parts.
// Row/column indices in box formulas are 1-based, matching the usual
// (i,j) box notation.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] <= 0) throw DomainError("Partition: parts must be positive");
      if (i > 0 && parts_[i] > parts_[i - 1]) throw DomainError("Partition: parts must be weakly decreasing");
    }
    n_ = std::accumulate(parts_.begin(), parts_.end(), 0LL);
  }
  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

  const std::vector<int>& parts() const { return parts_; }
  long long size() const { return n_; }
  int length() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }
  int part(int i) const { return (i >= 1 && i <= length()) ? parts_[i - 1] : 0; }  // 1-based, 0 beyond

  Partition transpose() const {
    if (parts_.empty()) return {};
    std::vector<int> t(parts_[0]);
    for (int j = 1; j <= parts_[0]; ++j) {
      int cnt = 0;
      for (int p : parts_)
        if (p >= j) ++cnt;
      t[j - 1] = cnt;
    }
    return Partition(std::move(t));
  }

  // Number of diagonal boxes.
  int diag() const {
    int d = 0;
    while (d < length() && parts_[d] >= d + 1) ++d;
    return d;
  }

  int arm(int i, int j) const { return part(i) - j; }
  int leg_with_transpose(const Partition& tr, int i, int j) const { return tr.part(j) - i; }

  bool contains_box(int i, int j) const { return i >= 1 && j >= 1 && part(i) >= j; }

  // theta-content (j-1) - (i-1)theta of box (i,j).
  static Rational content(int i, int j, const Rational& theta) { return Rational(j - 1) - Rational(i - 1) * theta; }

  friend bool operator==(const Partition& a, const Partition& b) { return a.parts_ == b.parts_; }
  friend bool operator!=(const Partition& a, const Partition& b) { return !(a == b); }
  friend bool operator<(const Partition& a, const Partition& b) { return a.parts_ < b.parts_; }  // lex

  // Dominance order on partitions of equal size.
  static bool dominates(const Partition& a, const Partition& b) {
    if (a.size() != b.size()) return false;
    long long pa = 0, pb = 0;
    int m = std::max(a.length(), b.length());
    for (int i = 1; i <= m; ++i) {
      pa += a.part(i);
      pb += b.part(i);
      if (pa < pb) return false;
    }
    return true;
  }

 private:
  std::vector<int> parts_;
  long long n_ = 0;
};

// All partitions of n in reverse lexicographic order: (n), (n-1,1), ..., (1^n).
inline std::vector<Partition> enumerate_partitions(int n, int bound = 40) {
  if (n < 0) throw DomainError("enumerate_partitions: n must be nonnegative");
  if (n > bound) throw ResourceError("enumerate_partitions: n exceeds configured bound");
  std::vector<Partition> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int rest, int maxpart) {
    if (rest == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int k = std::min(rest, maxpart); k >= 1; --k) {
      cur.push_back(k);
      rec(rest - k, k);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

inline long long count_partitions(int n) {
  std::vector<long long> p(n + 1, 0);
  p[0] = 1;
  for (int k = 1; k <= n; ++k)
    for (int m = k; m <= n; ++m) p[m] += p[m - k];
  return p[n];
}

// Hook-type products H and H' with Jack parameter theta:
//   H  = prod over boxes of (arm + leg*theta + 1)
//   H' = prod over boxes of (arm + leg*theta + theta)
inline std::pair<Rational, Rational> hook_products(const Partition& lam, const Rational& theta) {
  Partition tr = lam.transpose();
  Rational h(1), hp(1);
  for (int i = 1; i <= lam.length(); ++i) {
    for (int j = 1; j <= lam.part(i); ++j) {
      Rational a(lam.arm(i, j));
      Rational l(lam.leg_with_transpose(tr, i, j));
      h *= a + l * theta + 1;
      hp *= a + l * theta + theta;
    }
  }
  return {h, hp};
}

// Generalized Pochhammer symbol (z)_{lambda,theta} = prod (z + (j-1) - (i-1)theta).
inline GaussianRational gen_pochhammer(const GaussianRational& z, const Partition& lam, const Rational& theta) {
  GaussianRational p(1);
  for (int i = 1; i <= lam.length(); ++i)
    for (int j = 1; j <= lam.part(i); ++j) p = p * (z + GaussianRational(Partition::content(i, j, theta)));
  return p;
}

inline Rational gen_pochhammer(const Rational& z, const Partition& lam, const Rational& theta) {
  return gen_pochhammer(GaussianRational(z), lam, theta).re;
}

// Modified Frobenius coordinates a_i = lambda_i - i + 1/2, b_i = lambda'_i - i + 1/2.
struct FrobeniusCoords {
  std::vector<Rational> a;
  std::vector<Rational> b;
  long long n = 0;
};

inline FrobeniusCoords frobenius(const Partition& lam) {
  FrobeniusCoords fc;
  fc.n = lam.size();
  Partition tr = lam.transpose();
  int d = lam.diag();
  for (int i = 1; i <= d; ++i) {
    fc.a.push_back(Rational(lam.part(i)) - i + Rational(1, 2));
    fc.b.push_back(Rational(tr.part(i)) - i + Rational(1, 2));
  }
  return fc;
}

// Embedding into Omega (delta = 1): alpha_i = a_i/n, beta_i = b_i/n.
inline OmegaPointQ embed_iota_n(const Partition& lam) {
  if (lam.size() == 0) throw DomainError("embed_iota_n: empty diagram has no scale");
  FrobeniusCoords fc = frobenius(lam);
  OmegaPointQ w;
  Rational n(fc.n);
  for (auto& x : fc.a) w.alpha.push_back(x / n);
  for (auto& x : fc.b) w.beta.push_back(x / n);
  w.delta = Rational(1);
  return w;
}

// Unscaled embedding into the cone: alpha = a(lambda), beta = b(lambda), delta = |lambda|.
inline OmegaPointQ embed_iota(const Partition& lam) {
  FrobeniusCoords fc = frobenius(lam);
  OmegaPointQ w;
  w.alpha = fc.a;
  w.beta = fc.b;
  w.delta = Rational(lam.size());
  return w;
}

// True iff every box (i,j) of lambda has i <= k or j <= l.
inline bool fat_hook_contains(const Partition& lam, int k, int l) {
  if (k < 0 || l < 0) throw DomainError("fat_hook_contains: k,l must be nonnegative");
  return lam.part(k + 1) <= l;
}

// Each part repeated theta times.
inline Partition theta_duplicate(const Partition& lam, int theta) {
  if (theta < 1) throw DomainError("theta_duplicate: theta must be a positive integer");
  std::vector<int> parts;
  parts.reserve(lam.length() * theta);
  for (int p : lam.parts())
    for (int t = 0; t < theta; ++t) parts.push_back(p);
  return Partition(std::move(parts));
}

}  // namespace zmeas
