#pragma once

#include <complex>

namespace zmeas {

// Knobs for every approximate computation. Attached to approximate results so
// a value always carries the policy it was computed under.
struct NumericPolicy {
  double series_tol = 1e-12;   // relative shell-contribution threshold
  int max_degree = 200;        // total-degree cap for shell sums
  double quad_tol = 1e-10;     // relative change threshold for node doubling
  int quad_min_nodes = 16;
  int quad_max_nodes = 1024;
  const char* precision = "binary64";
};

// Value of a truncated series or quadrature, with truncation bookkeeping.
struct SeriesResult {
  std::complex<double> value{0.0, 0.0};
  double tail_estimate = 0.0;
  int degree_used = 0;
  int node_count = 0;
  bool converged = true;
  NumericPolicy policy;

  double real() const { return value.real(); }
};

}  // namespace zmeas
