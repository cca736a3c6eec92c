#pragma once

#include <cmath>
#include <vector>

#include "zmeas/numbers.hpp"

namespace zmeas {

// A point of the cone over the boundary space: finite-support nonincreasing
// alpha/beta sequences plus a scale delta >= sum(alpha)+sum(beta). Points of
// the boundary space itself have delta = 1. gamma is the leftover mass.
template <class S>
struct BasicOmegaPoint {
  std::vector<S> alpha;
  std::vector<S> beta;
  S delta{0};

  S alpha_sum() const {
    S s{0};
    for (const auto& a : alpha) s += a;
    return s;
  }
  S beta_sum() const {
    S s{0};
    for (const auto& b : beta) s += b;
    return s;
  }
  S gamma() const { return delta - alpha_sum() - beta_sum(); }

  void validate() const {
    for (size_t i = 0; i < alpha.size(); ++i) {
      if (alpha[i] < S{0}) throw DomainError("OmegaPoint: alpha must be nonnegative");
      if (i > 0 && alpha[i] > alpha[i - 1]) throw DomainError("OmegaPoint: alpha must be nonincreasing");
    }
    for (size_t i = 0; i < beta.size(); ++i) {
      if (beta[i] < S{0}) throw DomainError("OmegaPoint: beta must be nonnegative");
      if (i > 0 && beta[i] > beta[i - 1]) throw DomainError("OmegaPoint: beta must be nonincreasing");
    }
    if (gamma() < S{0}) throw DomainError("OmegaPoint: delta < sum(alpha)+sum(beta)");
  }

  BasicOmegaPoint scaled(const S& s) const {
    BasicOmegaPoint w = *this;
    for (auto& a : w.alpha) a = a * s;
    for (auto& b : w.beta) b = b * s;
    w.delta = delta * s;
    return w;
  }
};

using OmegaPoint = BasicOmegaPoint<double>;
using OmegaPointQ = BasicOmegaPoint<Rational>;

inline OmegaPoint to_double_point(const OmegaPointQ& w) {
  OmegaPoint d;
  for (auto& a : w.alpha) d.alpha.push_back(to_double(a));
  for (auto& b : w.beta) d.beta.push_back(to_double(b));
  d.delta = to_double(w.delta);
  return d;
}

// The metric on the cone: |delta-delta'| + sum 2^{-i} min(|alpha_i-alpha_i'|,1) + same for beta.
inline double omega_dist(const OmegaPoint& a, const OmegaPoint& b) {
  double d = std::abs(a.delta - b.delta);
  size_t na = std::max(a.alpha.size(), b.alpha.size());
  double w = 0.5;
  for (size_t i = 0; i < na; ++i, w *= 0.5) {
    double x = i < a.alpha.size() ? a.alpha[i] : 0.0;
    double y = i < b.alpha.size() ? b.alpha[i] : 0.0;
    d += w * std::min(std::abs(x - y), 1.0);
  }
  size_t nb = std::max(a.beta.size(), b.beta.size());
  w = 0.5;
  for (size_t i = 0; i < nb; ++i, w *= 0.5) {
    double x = i < a.beta.size() ? a.beta[i] : 0.0;
    double y = i < b.beta.size() ? b.beta[i] : 0.0;
    d += w * std::min(std::abs(x - y), 1.0);
  }
  return d;
}

// k disjoint boxes in (0,infty), used for correlation queries.
struct CorrelationQuery {
  int k = 1;
  std::vector<std::pair<double, double>> boxes;  // half-open (lo, hi]

  void validate() const {
    if (k <= 0 || boxes.size() != static_cast<size_t>(k)) throw DomainError("CorrelationQuery: k/boxes mismatch");
    for (auto& b : boxes) {
      if (!(b.first > 0.0) || !(b.second > b.first)) throw DomainError("CorrelationQuery: boxes must lie in (0,inf)");
    }
    for (size_t i = 0; i < boxes.size(); ++i)
      for (size_t j = i + 1; j < boxes.size(); ++j) {
        if (boxes[i].first < boxes[j].second && boxes[j].first < boxes[i].second)
          throw DomainError("CorrelationQuery: boxes must be pairwise disjoint");
      }
  }
};

}  // namespace zmeas
