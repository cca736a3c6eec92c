#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "zmeas/jack.hpp"
#include "zmeas/numeric_policy.hpp"
#include "zmeas/partition.hpp"
#include "zmeas/zmeasure.hpp"

namespace zmeas {

using Json = nlohmann::ordered_json;

// Floats serialize with 17 significant digits so emitted values round-trip.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline Json partition_to_json(const Partition& lam) {
  Json arr = Json::array();
  for (int p : lam.parts()) arr.push_back(p);
  return arr;
}

inline Partition partition_from_json(const Json& j) {
  std::vector<int> parts;
  for (const auto& v : j) parts.push_back(v.get<int>());
  return Partition(parts);
}

inline Json params_to_json(const ZParams& p) {
  Json j;
  j["z"] = to_string(p.z);
  j["zp"] = to_string(p.zp);
  j["theta"] = to_string(p.theta);
  j["t"] = to_string(p.t);
  j["series"] = series_name(p.cls.series);
  if (!p.cls.detail.empty()) j["detail"] = p.cls.detail;
  return j;
}

// measure-table: exact values as numerator/denominator strings.
inline Json measure_table(int n, const ZParams& p) {
  Json j;
  j["n"] = n;
  j["params"] = params_to_json(p);
  Json rows = Json::array();
  for (const auto& lam : enumerate_partitions(n)) {
    Rational v = measure(lam, p);
    Json row;
    row["partition"] = partition_to_json(lam);
    row["value_num"] = numerator(v).convert_to<std::string>();
    row["value_den"] = denominator(v).convert_to<std::string>();
    rows.push_back(row);
  }
  j["rows"] = rows;
  return j;
}

// CSV with a fixed column order, trailing newline, UTF-8.
inline std::string to_csv(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream out;
  for (size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << "\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << "\n";
  }
  return out.str();
}

inline Json series_result_to_json(const SeriesResult& r) {
  Json j;
  j["value_re"] = format_double(r.value.real());
  if (r.value.imag() != 0.0) j["value_im"] = format_double(r.value.imag());
  j["tail_estimate"] = format_double(r.tail_estimate);
  j["degree_used"] = r.degree_used;
  j["node_count"] = r.node_count;
  j["converged"] = r.converged;
  j["precision"] = r.policy.precision;
  return j;
}

// ---------------------------------------------------------------------------
// Verification reports: a fail is a residual above budget, never a crash;
// capability skips carry the unmet precondition.
struct VerificationCase {
  std::string id;
  std::string status;  // "pass", "fail", "capability-skip"
  double residual = 0.0;
  double budget = 0.0;
  std::string note;
};

struct VerificationReport {
  std::string suite;
  std::vector<VerificationCase> cases;
  double wall_ms = 0.0;

  bool all_pass() const {
    for (auto& c : cases)
      if (c.status == "fail") return false;
    return true;
  }
  bool any_executed() const {
    for (auto& c : cases)
      if (c.status != "capability-skip") return true;
    return false;
  }
};

inline Json report_to_json(const VerificationReport& r) {
  Json j;
  j["suite"] = r.suite;
  Json cases = Json::array();
  for (auto& c : r.cases) {
    Json cj;
    cj["id"] = c.id;
    cj["status"] = c.status;
    cj["residual"] = format_double(c.residual);
    cj["budget"] = format_double(c.budget);
    if (!c.note.empty()) cj["note"] = c.note;
    cases.push_back(cj);
  }
  j["cases"] = cases;
  j["wall_ms"] = format_double(r.wall_ms);
  return j;
}

// ---------------------------------------------------------------------------
// Jack expansion disk cache: versioned JSON, coefficients as exact strings;
// a version bump invalidates the file. Deleting it changes timing only.
inline constexpr int kJackCacheVersion = 1;

inline void save_jack_cache(const JackBasis& basis, const std::string& path) {
  Json j;
  j["version"] = kJackCacheVersion;
  Json entries = Json::array();
  for (const auto& [key, poly] : basis.snapshot()) {
    Json e;
    e["nu"] = to_string(key.first);
    e["lambda"] = partition_to_json(key.second);
    Json terms = Json::array();
    for (const auto& [mu, c] : poly.terms) {
      Json t;
      t["mu"] = partition_to_json(mu);
      t["c"] = to_string(c);
      terms.push_back(t);
    }
    e["terms"] = terms;
    entries.push_back(e);
  }
  j["entries"] = entries;
  std::ofstream out(path);
  out << j.dump() << "\n";
}

inline bool load_jack_cache(JackBasis& basis, const std::string& path) {
  std::ifstream in(path);
  if (!in) return false;
  Json j;
  try {
    in >> j;
  } catch (...) {
    return false;
  }
  if (!j.contains("version") || j["version"].get<int>() != kJackCacheVersion) return false;
  for (const auto& e : j["entries"]) {
    Partition lam = partition_from_json(e["lambda"]);
    Rational nu = parse_rational(e["nu"].get<std::string>());
    SymmetricPolynomial poly;
    poly.degree = static_cast<int>(lam.size());
    for (const auto& t : e["terms"]) {
      poly.terms[partition_from_json(t["mu"])] = parse_rational(t["c"].get<std::string>());
    }
    basis.insert(lam, nu, std::move(poly));
  }
  return true;
}

// ---------------------------------------------------------------------------
// CLI run configuration. Parameters arrive as exact strings so identity
// suites stay exact end to end.
struct RunConfig {
  std::string command;
  std::string z = "1+1i";
  std::string zp = "1-1i";
  std::string theta = "1";
  std::string xi = "1/2";
  double tol = 1e-8;
  int max_degree = 200;
  int quad_max_nodes = 1024;
  uint64_t seed = 1;
  std::string format = "json";
  std::string cache_dir;

  ZParams zparams() const { return ZParams(parse_gaussian(z), parse_gaussian(zp), parse_rational(theta)); }
  MixedParams mixed() const { return MixedParams(zparams(), parse_rational(xi)); }
  NumericPolicy policy() const {
    NumericPolicy pol;
    pol.series_tol = tol;
    pol.max_degree = max_degree;
    pol.quad_max_nodes = quad_max_nodes;
    return pol;
  }
};

}  // namespace zmeas
