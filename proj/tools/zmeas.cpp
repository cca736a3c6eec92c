// Command-line surface for the z-measure library: exact measure tables,
// lattice correlation identities, limit correlation functions, sampling, and
// the verification suites.
#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

#include "zmeas/boundary.hpp"
#include "zmeas/io.hpp"
#include "zmeas/lattice.hpp"
#include "zmeas/limit_corr.hpp"
#include "zmeas/sampler.hpp"
#include "zmeas/verify.hpp"

using namespace zmeas;

namespace {

std::string cache_file(const RunConfig& cfg) { return cfg.cache_dir + "/zmeas_jack_cache.json"; }

int cmd_verify(const RunConfig&, const std::vector<std::string>& suites_arg) {
  std::vector<std::string> suites = suites_arg.empty() ? verify_suite_names() : suites_arg;
  std::vector<VerificationReport> reports = run_verify(suites);
  Json out = Json::array();
  for (const auto& r : reports) out.push_back(report_to_json(r));
  std::cout << out.dump(2) << "\n";
  return verify_exit_code(reports);
}

int cmd_measure(const RunConfig& cfg, int n) {
  ZParams p = cfg.zparams();
  if (cfg.format == "csv") {
    std::vector<std::vector<std::string>> rows;
    for (const auto& lam : enumerate_partitions(n)) {
      Rational v = measure(lam, p);
      std::string parts;
      for (int q : lam.parts()) parts += (parts.empty() ? "" : " ") + std::to_string(q);
      rows.push_back({parts, numerator(v).convert_to<std::string>(), denominator(v).convert_to<std::string>(),
                      format_double(to_double(v))});
    }
    std::cout << to_csv({"partition", "value_num", "value_den", "value"}, rows);
  } else {
    std::cout << measure_table(n, p).dump(2) << "\n";
  }
  return 0;
}

int cmd_corr_lattice(const RunConfig& cfg, const std::vector<long long>& A) {
  MixedParams mp = cfg.mixed();
  LatticeIdentityResult r = lattice_identity_residual(A, mp, cfg.tol, 64);
  Json j;
  Json ja = Json::array();
  for (long long a : A) ja.push_back(a);
  j["A"] = ja;
  j["params"] = params_to_json(mp.base);
  j["xi"] = to_string(mp.xi);
  j["lhs"] = format_double(r.lhs);
  j["rhs"] = format_double(r.rhs);
  j["residual"] = format_double(r.residual);
  j["exact"] = r.exact;
  j["N_lhs"] = r.lhs_cutoff;
  j["N_rhs"] = r.rhs_cutoff;
  j["tails"] = format_double(r.lhs_nb_tail);
  j["prefactor_gap"] = format_double(r.prefactor_gap);
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_corr_limit(const RunConfig& cfg, const std::string& kind, int k, const std::vector<double>& xs) {
  LimitCorrParams lp(cfg.zparams(), k);
  NumericPolicy pol = cfg.policy();
  std::vector<std::vector<std::string>> rows;
  auto eval_one = [&](const std::vector<double>& pt) {
    std::string label;
    for (double v : pt) label += (label.empty() ? "" : " ") + format_double(v);
    if (kind == "rho-tilde") {
      double v = rho_tilde(pt, lp, pol);
      rows.push_back({label, format_double(v), format_double(pol.series_tol * std::abs(v))});
    } else {
      DensityOrAtom d = rho(pt, lp, pol);
      rows.push_back(
          {label, format_double(d.value), d.is_atom ? "atom" : format_double(pol.series_tol * std::abs(d.value))});
    }
  };
  if (static_cast<int>(xs.size()) == k && k > 1) {
    eval_one(xs);
  } else if (k == 1) {
    for (double x : xs) eval_one({x});
  } else {
    throw DomainError("corr-limit: pass exactly k coordinates for k > 1, or a grid for k = 1");
  }
  std::cout << to_csv({"x", "value", "err"}, rows);
  return 0;
}

int cmd_sample(const RunConfig& cfg, long long n, long long samples, const std::string& emit, bool mixed_mode) {
  ZParams p = cfg.zparams();
  SampleRun run;
  double scale;
  if (mixed_mode) {
    MixedParams mp = cfg.mixed();
    run = run_mixed(mp, cfg.seed, samples);
    scale = 1.0 - to_double(mp.xi);
  } else {
    run = run_fixed_n(n, p, cfg.seed, samples);
    scale = 1.0 / static_cast<double>(n);
  }
  double theta = to_double(p.theta);
  if (emit == "records") {
    std::vector<std::vector<std::string>> rows;
    for (long long i = 0; i < run.samples; ++i) {
      for (double x : scaled_points(run.records[i], theta, scale)) {
        rows.push_back({std::to_string(i), format_double(x)});
      }
    }
    std::cout << to_csv({"sample", "point"}, rows);
  } else {
    double mean_size = 0.0, mean_rows = 0.0;
    for (const auto& lam : run.records) {
      mean_size += static_cast<double>(lam.size());
      mean_rows += lam.length();
    }
    mean_size /= run.samples;
    mean_rows /= run.samples;
    Json j;
    j["seed"] = cfg.seed;
    j["samples"] = run.samples;
    j["provenance"] = run.provenance;
    j["mean_size"] = format_double(mean_size);
    j["mean_rows"] = format_double(mean_rows);
    std::cout << j.dump(2) << "\n";
  }
  return 0;
}

int cmd_bulk(const RunConfig& cfg, int k, const std::vector<double>& ys) {
  BulkParams bp(cfg.zparams(), k);
  std::vector<std::vector<std::string>> rows;
  auto eval_one = [&](const std::vector<double>& pt) {
    std::string label;
    for (double v : pt) label += (label.empty() ? "" : " ") + format_double(v);
    try {
      double v = bulk_limit_density(pt, bp);
      rows.push_back({label, format_double(v), ""});
    } catch (const CapabilityError& e) {
      rows.push_back({label, "", e.what()});
    }
  };
  if (static_cast<int>(ys.size()) == k && k > 1) {
    eval_one(ys);
  } else if (k == 1) {
    for (double y : ys) eval_one({y});
  } else {
    throw DomainError("bulk: pass exactly k coordinates for k > 1, or a grid for k = 1");
  }
  std::cout << to_csv({"y", "value", "note"}, rows);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"z-measures on partitions: exact evaluation, scaling limits, verification"};
  app.set_config("--config", "", "read flags from a config file");
  app.require_subcommand(1);

  RunConfig cfg;
  app.add_option("--z", cfg.z, "parameter z as an exact string, e.g. 1+1i or 7/2")->capture_default_str();
  app.add_option("--zp", cfg.zp, "parameter z' as an exact string")->capture_default_str();
  app.add_option("--theta", cfg.theta, "Jack parameter theta as an exact rational")->capture_default_str();
  app.add_option("--xi", cfg.xi, "mixing parameter xi in (0,1) as an exact rational")->capture_default_str();
  app.add_option("--tol", cfg.tol, "target tolerance for truncations")->capture_default_str();
  app.add_option("--max-degree", cfg.max_degree, "series degree cap")->capture_default_str();
  app.add_option("--quad-max-nodes", cfg.quad_max_nodes, "quadrature node cap")->capture_default_str();
  app.add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
  app.add_option("--format", cfg.format, "output format: json or csv")->capture_default_str();
  app.add_option("--cache-dir", cfg.cache_dir, "Jack expansion cache directory (env ZMEAS_CACHE_DIR)");

  auto* verify_cmd = app.add_subcommand("verify", "run verification suites");
  verify_cmd->fallthrough();
  std::vector<std::string> suites;
  verify_cmd->add_option("--suites", suites, "subset of suites (default: all)")->delimiter(',');

  auto* measure_cmd = app.add_subcommand("measure", "tabulate the z-measure on partitions of n");
  measure_cmd->fallthrough();
  int measure_n = 4;
  measure_cmd->add_option("--n", measure_n, "partition size")->required();

  auto* lattice_cmd = app.add_subcommand("corr-lattice", "lattice correlation identity (both sides)");
  lattice_cmd->fallthrough();
  std::vector<long long> A;
  lattice_cmd->add_option("--A", A, "lattice points, comma separated")->delimiter(',')->required();

  auto* limit_cmd = app.add_subcommand("corr-limit", "limit correlation functions");
  limit_cmd->fallthrough();
  std::string limit_kind = "rho-tilde";
  int limit_k = 1;
  std::vector<double> limit_x;
  limit_cmd->add_option("--kind", limit_kind, "rho or rho-tilde")->capture_default_str();
  limit_cmd->add_option("--k", limit_k, "correlation order")->capture_default_str();
  limit_cmd->add_option("--x", limit_x, "grid (k=1) or k coordinates")->delimiter(',')->required();

  auto* sample_cmd = app.add_subcommand("sample", "draw from the measures");
  sample_cmd->fallthrough();
  long long sample_n = 0, sample_count = 100;
  std::string emit = "summary";
  bool sample_mixed_mode = false;
  sample_cmd->add_option("--n", sample_n, "fixed partition size (omit for mixed mode)");
  sample_cmd->add_flag("--mixed", sample_mixed_mode, "negative-binomial mixed mode (uses --xi)");
  sample_cmd->add_option("--samples", sample_count, "number of samples")->capture_default_str();
  sample_cmd->add_option("--emit", emit, "records or summary")->capture_default_str();

  auto* bulk_cmd = app.add_subcommand("bulk", "bulk limit density in log coordinates");
  bulk_cmd->fallthrough();
  int bulk_k = 1;
  std::vector<double> bulk_y;
  bulk_cmd->add_option("--k", bulk_k, "correlation order")->capture_default_str();
  bulk_cmd->add_option("--y", bulk_y, "grid (k=1) or k coordinates")->delimiter(',')->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  if (cfg.cache_dir.empty()) {
    if (const char* env = std::getenv("ZMEAS_CACHE_DIR")) cfg.cache_dir = env;
  }
  if (!cfg.cache_dir.empty()) load_jack_cache(jack_basis(), cache_file(cfg));

  int code = 0;
  try {
    if (*verify_cmd) {
      code = cmd_verify(cfg, suites);
    } else if (*measure_cmd) {
      code = cmd_measure(cfg, measure_n);
    } else if (*lattice_cmd) {
      code = cmd_corr_lattice(cfg, A);
    } else if (*limit_cmd) {
      code = cmd_corr_limit(cfg, limit_kind, limit_k, limit_x);
    } else if (*sample_cmd) {
      if (!sample_mixed_mode && sample_n <= 0) throw DomainError("sample: pass --n or --mixed");
      code = cmd_sample(cfg, sample_n, sample_count, emit, sample_mixed_mode);
    } else if (*bulk_cmd) {
      code = cmd_bulk(cfg, bulk_k, bulk_y);
    }
  } catch (const CapabilityError& e) {
    std::cerr << "capability: " << e.what() << "\n";
    code = 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = 2;
  }
  if (code == 0 && !cfg.cache_dir.empty()) save_jack_cache(jack_basis(), cache_file(cfg));
  return code;
}
