#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zmeas/boundary.hpp"
#include "zmeas/jack.hpp"
#include "zmeas/omega.hpp"
#include "zmeas/partition.hpp"
#include "zmeas/zmeasure.hpp"

namespace zmeas {

// splitmix64: tiny, documented, identical across platforms. One stream per
// sample, derived from (seed, sample index), so parallel draws are
// schedule-independent.
struct Rng {
  uint64_t state;

  explicit Rng(uint64_t s) : state(s) {}
  static Rng stream(uint64_t seed, uint64_t sample_index) {
    Rng r(seed ^ (0x9E3779B97F4A7C15ull * (sample_index + 1)));
    r.next();  // decorrelate nearby seeds
    return r;
  }
  uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  // uniform in [0,1)
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

namespace detail {

// Up-transition probabilities for all addable corners of lambda, in exact
// rational arithmetic. Index i is the (1-based) row receiving the box; the
// last entry is the new row.
inline std::vector<Rational> up_probabilities_exact(const Partition& lam, const ZParams& p) {
  std::vector<Rational> probs;
  Rational n(lam.size());
  GaussianRational s = p.sum(), q = p.prod();
  Rational tn = (p.t + GaussianRational(n)).real_or_throw("up probabilities: t must be real");
  Partition tr = lam.transpose();
  for (int i = 1; i <= lam.length() + 1; ++i) {
    if (i > 1 && lam.part(i - 1) == lam.part(i)) {
      probs.push_back(Rational(0));  // not an addable corner
      continue;
    }
    int j = lam.part(i) + 1;
    Rational c = Partition::content(i, j, p.theta);
    GaussianRational wg = q + s * GaussianRational(c) + GaussianRational(c * c);
    Rational w = wg.real_or_throw("up probabilities: nonreal weight");
    if (w == 0) {
      probs.push_back(Rational(0));  // exact null move (degenerate series)
      continue;
    }
    Rational hp_ratio(1);  // H'(Lambda)/H'(lambda)
    hp_ratio *= p.theta;   // the new box
    for (int jp = 1; jp < j; ++jp) {
      Rational a(lam.part(i) - jp);
      Rational l(tr.part(jp) - i);
      hp_ratio *= (a + 1 + l * p.theta + p.theta) / (a + l * p.theta + p.theta);
    }
    Rational kap(1);
    for (int ip = 1; ip < i; ++ip) {
      Rational a(lam.part(ip) - j);
      Rational l(i - 1 - ip);
      hp_ratio *= (a + (l + 1) * p.theta + p.theta) / (a + l * p.theta + p.theta);
      kap *= (a + (l + 2) * p.theta) * (a + 1 + l * p.theta) /
             ((a + (l + 1) * p.theta) * (a + 1 + (l + 1) * p.theta));
    }
    probs.push_back(w / (tn * p.theta) * kap * p.theta / hp_ratio);
  }
  return probs;
}

struct FastChainParams {
  double s, q, t, theta;
  // exact values for the null-move test
  Rational theta_q;
  GaussianRational zq, zpq;
};

// Diagram stored as runs of equal parts (value, multiplicity), values
// strictly decreasing. Addable corners sit at the first row of each run plus
// the new row, and the hook-ratio products in the up probabilities telescope
// over runs, so a step costs O(runs^2) instead of O(n).
struct RleDiagram {
  std::vector<std::pair<long long, long long>> runs;
  long long boxes = 0;

  long long rows() const {
    long long r = 0;
    for (auto& [v, m] : runs) r += m;
    return r;
  }

  // probability weights per candidate (one per run + the new row), up to the
  // common 1/(t+n) factor
  void candidate_weights(const FastChainParams& fp, std::vector<double>& out) const {
    size_t R = runs.size();
    out.assign(R + 1, 0.0);
    std::vector<long long> prefix(R + 1, 0);  // rows above run r
    for (size_t r = 0; r < R; ++r) prefix[r + 1] = prefix[r] + runs[r].second;
    for (size_t r = 0; r <= R; ++r) {
      long long i = (r < R ? prefix[r] : prefix[R]) + 1;  // receiving row
      long long v = r < R ? runs[r].first : 0;            // current length
      long long j = v + 1;
      double c = static_cast<double>(j - 1) - static_cast<double>(i - 1) * fp.theta;
      double w = fp.q + fp.s * c + c * c;
      {
        Rational cq = Rational(j - 1) - Rational(i - 1) * fp.theta_q;
        GaussianRational f1 = fp.zq + GaussianRational(cq);
        GaussianRational f2 = fp.zpq + GaussianRational(cq);
        if (f1.is_zero() || f2.is_zero()) continue;  // exact null move
      }
      double hp_ratio = fp.theta;
      // row segments: columns (v_{r'+1}, v_{r'}] share height prefix[r'+1]
      for (size_t rp = r; rp < R; ++rp) {
        long long vhi = runs[rp].first;
        long long vlo = rp + 1 < R ? runs[rp + 1].first : 0;
        long long hi = std::min(vhi, v);
        if (hi <= vlo) continue;
        double l = static_cast<double>(prefix[rp + 1]) - static_cast<double>(i);
        double amin = static_cast<double>(v - hi);
        double amax = static_cast<double>(v - vlo - 1);
        hp_ratio *= (amax + 1 + l * fp.theta + fp.theta) / (amin + l * fp.theta + fp.theta);
      }
      // column segments: rows of runs above r (values > v) all reach column j
      double kap = 1.0;
      for (size_t rp = 0; rp < r && rp < R; ++rp) {
        double a = static_cast<double>(runs[rp].first - j);
        double lmax = static_cast<double>(i - 2 - prefix[rp]);
        double lmin = static_cast<double>(i - 1 - prefix[rp] - runs[rp].second);
        hp_ratio *= (a + (lmax + 1) * fp.theta + fp.theta) / (a + lmin * fp.theta + fp.theta);
        kap *= (a + (lmax + 2) * fp.theta) / (a + (lmin + 1) * fp.theta);
        kap *= (a + 1 + lmin * fp.theta) / (a + 1 + (lmax + 1) * fp.theta);
      }
      out[r] = w * kap / hp_ratio;
    }
  }

  void apply(size_t r) {
    if (r == runs.size()) {
      if (!runs.empty() && runs.back().first == 1)
        runs.back().second += 1;
      else
        runs.emplace_back(1, 1);
    } else {
      long long v = runs[r].first;
      if (r > 0 && runs[r - 1].first == v + 1) {
        runs[r - 1].second += 1;
      } else {
        runs.insert(runs.begin() + r, {v + 1, 1});
        ++r;
      }
      runs[r].second -= 1;
      if (runs[r].second == 0) runs.erase(runs.begin() + r);
    }
    ++boxes;
  }

  Partition to_partition() const {
    std::vector<int> parts;
    for (auto& [v, m] : runs)
      for (long long k = 0; k < m; ++k) parts.push_back(static_cast<int>(v));
    return Partition(parts);
  }
};

}  // namespace detail

// One draw from M^(n) via the conditional growth chain; the product of
// up-transition probabilities telescopes to the exact law. Exact rational
// probabilities up to `exact_threshold` boxes, double beyond (the null-move
// guard stays exact either way).
inline Partition sample_partition(long long n, const ZParams& p, Rng& rng, long long exact_threshold = 64) {
  if (p.cls.series == Series::nonpositive)
    throw DomainError("sample_partition: parameters are not an admissible (positive) series");
  if (n <= exact_threshold) {
    std::vector<int> parts;
    for (long long step = 0; step < n; ++step) {
      Partition lam(parts);
      std::vector<Rational> probs = detail::up_probabilities_exact(lam, p);
      Rational total(0);
      for (auto& q : probs) total += q;
      if (total == 0) throw NumericError("sample_partition: no admissible move (internal error)");
      double u = rng.next_double();
      Rational uq(static_cast<long long>(u * 9007199254740992.0), 9007199254740992LL);
      uq *= total;
      Rational acc(0);
      size_t pick = probs.size() - 1;
      for (size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        if (uq < acc) {
          pick = i;
          break;
        }
      }
      while (probs[pick] == 0 && pick > 0) --pick;  // never land on a null move
      if (pick == parts.size())
        parts.push_back(1);
      else
        parts[pick] += 1;
    }
    return Partition(parts);
  }
  detail::FastChainParams fp;
  fp.s = p.sum().real_or_throw().convert_to<double>();
  fp.q = p.prod().real_or_throw().convert_to<double>();
  fp.t = p.t.real_or_throw().convert_to<double>();
  fp.theta = to_double(p.theta);
  fp.theta_q = p.theta;
  fp.zq = p.z;
  fp.zpq = p.zp;
  detail::RleDiagram diag;
  std::vector<double> weights;
  for (long long step = 0; step < n; ++step) {
    diag.candidate_weights(fp, weights);
    double total = 0.0;
    for (double w : weights) total += w;
    double tn = fp.t + static_cast<double>(step);
    if (!(std::abs(total / tn - 1.0) < 1e-6))
      throw NumericError("sample_partition: up probabilities drifted from 1");
    double u = rng.next_double() * total;
    double acc = 0.0;
    size_t pick = weights.size() - 1;
    for (size_t i = 0; i < weights.size(); ++i) {
      acc += weights[i];
      if (u < acc && weights[i] > 0.0) {
        pick = i;
        break;
      }
    }
    while (weights[pick] == 0.0 && pick > 0) --pick;
    diag.apply(pick);
  }
  return diag.to_partition();
}

// Inverse-CDF draw of the negative binomial size, then the growth chain.
// Exact partial sums are used when t is an integer and the walk stays short
// (the partial sums carry denominators den(xi)^n, so a long walk at xi near 1
// would drag thousand-digit rationals through every step); beyond that the
// double recurrence is ample for Monte Carlo tolerances.
inline Partition sample_mixed(const MixedParams& mp, Rng& rng) {
  Rational t = mp.base.t.real_or_throw();
  if (!(t > 0)) throw DomainError("sample_mixed: requires t > 0");
  double u = rng.next_double();
  long long n = 0;
  double expected = to_double(t) * to_double(mp.xi) / (1.0 - to_double(mp.xi));
  if (is_integer(t) && expected <= 64.0) {
    Rational uq(static_cast<long long>(u * 9007199254740992.0), 9007199254740992LL);
    Rational w = pow_int(Rational(1) - mp.xi, t.convert_to<long long>());
    Rational acc = w;
    while (acc <= uq) {
      // w_{n+1} = w_n * xi * (t+n)/(n+1)
      w *= mp.xi * (t + n) / Rational(n + 1);
      acc += w;
      ++n;
      if (n > 100000000) throw NumericError("sample_mixed: runaway CDF loop");
    }
  } else {
    double td = to_double(t), xid = to_double(mp.xi);
    double w = std::pow(1.0 - xid, td);
    double acc = w;
    while (acc <= u) {
      w *= xid * (td + n) / (n + 1.0);
      acc += w;
      ++n;
      if (n > 100000000) throw NumericError("sample_mixed: runaway CDF loop");
    }
  }
  return sample_partition(n, mp.base, rng);
}

enum class Scaling { by_n, by_one_minus_xi };

struct SampleRun {
  uint64_t seed = 0;
  long long n_target = 0;  // fixed-size mode when > 0
  bool mixed = false;
  Rational xi{0};
  long long samples = 0;
  std::vector<Partition> records;
  std::string provenance;  // generator + mode description
};

inline SampleRun run_fixed_n(long long n, const ZParams& p, uint64_t seed, long long samples) {
  SampleRun run;
  run.seed = seed;
  run.n_target = n;
  run.samples = samples;
  run.provenance = "splitmix64 growth chain, fixed n";
  run.records.reserve(samples);
  for (long long i = 0; i < samples; ++i) {
    Rng rng = Rng::stream(seed, static_cast<uint64_t>(i));
    run.records.push_back(sample_partition(n, p, rng));
  }
  return run;
}

inline SampleRun run_mixed(const MixedParams& mp, uint64_t seed, long long samples) {
  SampleRun run;
  run.seed = seed;
  run.mixed = true;
  run.xi = mp.xi;
  run.samples = samples;
  run.provenance = "splitmix64 growth chain, negative-binomial mixed";
  run.records.reserve(samples);
  for (long long i = 0; i < samples; ++i) {
    Rng rng = Rng::stream(seed, static_cast<uint64_t>(i));
    run.records.push_back(sample_mixed(mp, rng));
  }
  return run;
}

// Rescaled point configuration of one sample: x_i = scale * max(l_i - i*theta, 0)
// with l_i = lambda_i - i*theta the lattice heads (negative values clip to 0).
inline std::vector<double> scaled_points(const Partition& lam, double theta, double scale) {
  std::vector<double> pts;
  for (int i = 1; i <= lam.length(); ++i) {
    double v = lam.part(i) - 2.0 * i * theta;
    if (v > 0.0) pts.push_back(scale * v);
  }
  return pts;
}

struct EmpiricalCorrelation {
  int k = 1;
  double estimate = 0.0;
  double stderror = 0.0;
  long long samples = 0;
};

// Monte Carlo estimate of the k-point correlation measure of the rescaled
// configuration over the query boxes (sum over pairwise-distinct index
// tuples of box-indicator products).
inline EmpiricalCorrelation empirical_corr(const SampleRun& run, const ZParams& p, const CorrelationQuery& query,
                                           Scaling scaling) {
  query.validate();
  double theta = to_double(p.theta);
  double scale;
  if (scaling == Scaling::by_n) {
    if (run.n_target <= 0) throw DomainError("empirical_corr: by_n scaling needs a fixed-n run");
    scale = 1.0 / static_cast<double>(run.n_target);
  } else {
    if (!run.mixed) throw DomainError("empirical_corr: by_(1-xi) scaling needs a mixed run");
    scale = 1.0 - to_double(run.xi);
  }
  double sum = 0.0, sumsq = 0.0;
  for (const Partition& lam : run.records) {
    std::vector<double> pts = scaled_points(lam, theta, scale);
    // count points per box; boxes are disjoint so a k-tuple statistic is a
    // product of ordered distinct picks
    double stat = 1.0;
    for (auto& box : query.boxes) {
      long long c = 0;
      for (double x : pts)
        if (x > box.first && x <= box.second) ++c;
      stat *= static_cast<double>(c);
    }
    sum += stat;
    sumsq += stat * stat;
  }
  EmpiricalCorrelation out;
  out.k = query.k;
  out.samples = run.samples;
  double mean = sum / run.samples;
  out.estimate = mean;
  double var = std::max(0.0, sumsq / run.samples - mean * mean);
  out.stderror = std::sqrt(var / run.samples);
  return out;
}

// ---------------------------------------------------------------------------
// Exact moments of the scaled negative binomial gamma_{t,xi} against the
// gamma-distribution limit (t)_m, via Stirling numbers of the second kind.
struct NbMomentRow {
  int m = 0;
  Rational moment{0};
  Rational limit{0};
  Rational gap{0};
};

inline Rational stirling2(int m, int j) {
  // S(m,j) by the standard recurrence
  std::vector<std::vector<Rational>> s(m + 1, std::vector<Rational>(m + 1, Rational(0)));
  s[0][0] = 1;
  for (int a = 1; a <= m; ++a)
    for (int b = 1; b <= a; ++b) s[a][b] = s[a - 1][b - 1] + Rational(b) * s[a - 1][b];
  return s[m][j];
}

inline std::vector<NbMomentRow> nb_gamma_moments(const Rational& t, const Rational& xi, int m_max) {
  if (!(xi > 0 && xi < 1)) throw DomainError("nb_gamma_moments: xi must lie in (0,1)");
  std::vector<NbMomentRow> rows;
  for (int m = 0; m <= m_max; ++m) {
    // E[(n(1-xi))^m] = (1-xi)^m sum_j S(m,j) (t)_j (xi/(1-xi))^j, exact
    Rational moment(0);
    for (int j = 0; j <= m; ++j) {
      Rational s2 = stirling2(m, j);
      if (s2 == 0) continue;
      moment += s2 * pochhammer(t, static_cast<unsigned>(j)) * pow_int(xi / (1 - xi), j);
    }
    moment *= pow_int(1 - xi, m);
    NbMomentRow row;
    row.m = m;
    row.moment = moment;
    row.limit = pochhammer(t, static_cast<unsigned>(m));
    row.gap = moment - row.limit;
    if (row.gap < 0) row.gap = -row.gap;
    rows.push_back(row);
  }
  return rows;
}

// Sup gap between the scaled NB histogram (bin masses / width) and the
// gamma density on [lo, hi].
inline double nb_histogram_gap(double t, double xi, double width, double lo, double hi) {
  double w = std::pow(1.0 - xi, t);
  long long n = 0;
  std::vector<double> hist(static_cast<size_t>((hi - lo) / width) + 2, 0.0);
  double span = 1.0 - xi;
  while (n * span <= hi + 1.0 || w > 1e-18) {
    double x = n * span;
    if (x >= lo && x < hi + width) {
      size_t bin = static_cast<size_t>((x - lo) / width);
      if (bin < hist.size()) hist[bin] += w;
    }
    w *= xi * (t + n) / (n + 1.0);
    ++n;
    if (n > 50000000) break;
  }
  double worst = 0.0;
  for (size_t b = 0; b + 1 < hist.size(); ++b) {
    double center = lo + (b + 0.5) * width;
    double density = std::pow(center, t - 1.0) * std::exp(-center - std::lgamma(t));
    worst = std::max(worst, std::abs(hist[b] / width - density));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Exact finite-n averages of P_lambda under M^(N) (through the embedding)
// against the boundary moment; the gaps shrink with N.
struct MomentAuditRow {
  int N = 0;
  Rational average{0};
  Rational moment{0};
  Rational gap{0};
};

inline std::vector<MomentAuditRow> moment_convergence_audit(const Partition& lam, const ZParams& p,
                                                            const std::vector<int>& n_list) {
  if (lam.size() > 4) throw ResourceError("moment_convergence_audit: |lambda| must stay small");
  Rational target = jack_moment(lam, p);
  std::vector<MomentAuditRow> rows;
  for (int N : n_list) {
    if (N < 1 || N > 30) throw ResourceError("moment_convergence_audit: N out of range");
    Rational avg(0);
    for (const Partition& mu : enumerate_partitions(N)) {
      OmegaPointQ w = embed_iota_n(mu);
      std::vector<Rational> ps = power_sums(w, p.theta, std::max<int>(1, static_cast<int>(lam.size())));
      avg += measure(mu, p) * jack_P_at_omega(lam, p.theta, ps);
    }
    MomentAuditRow row;
    row.N = N;
    row.average = avg;
    row.moment = target;
    row.gap = avg - target;
    if (row.gap < 0) row.gap = -row.gap;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace zmeas
