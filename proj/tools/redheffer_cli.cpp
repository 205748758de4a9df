// Command-line front end: each subcommand runs one experiment and emits a
// CSV table (figure-ready data) or a JSON report (constants with full
// provenance: config echo, cutoffs, tail coefficients, timings).
#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "redheffer/constants.hpp"
#include "redheffer/gcd_constants.hpp"
#include "redheffer/kahan.hpp"
#include "redheffer/number_theory.hpp"
#include "redheffer/operators.hpp"
#include "redheffer/spectral.hpp"
#include "redheffer/zeta.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace redheffer;

namespace {

constexpr const char* kArtifactName = "redheffer";
constexpr const char* kArtifactVersion = "1.0.0";

// Exit codes: 0 success, 1 invalid arguments, 2 size-guard violation
// without --force, 3 iteration did not converge (result still written).
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitGuard = 2;
constexpr int kExitNotConverged = 3;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                     start)
        .count();
  }
};

// 17 significant digits: round-trip safe for IEEE doubles.
std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::fputs(content.c_str(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open output file " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path);
}

std::string csv_join(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) line += ',';
    line += fields[i];
  }
  line += '\n';
  return line;
}

// Sieve tables, through the binary cache when a cache dir is configured.
// Unreadable or stale cache files are silently rebuilt and overwritten.
DivisorTables obtain_tables(std::uint64_t n, const std::string& cache_dir) {
  if (cache_dir.empty()) return sieve_tables(n);
  const fs::path dir(cache_dir);
  fs::create_directories(dir);
  const fs::path file = dir / ("tables_" + std::to_string(n) + ".bin");
  if (fs::exists(file)) {
    try {
      DivisorTables t = load_tables(file);
      if (t.n == n) return t;
    } catch (const std::exception& e) {
      std::fprintf(stderr, "cache: rebuilding %s (%s)\n", file.string().c_str(), e.what());
    }
  }
  DivisorTables t = sieve_tables(n);
  const fs::path tmp = file.string() + ".tmp";
  save_tables(t, tmp);
  fs::rename(tmp, file);
  return t;
}

json base_report(const std::string& command, json config) {
  return json{{"artifact", {{"name", kArtifactName}, {"version", kArtifactVersion}}},
              {"command", command},
              {"config", std::move(config)}};
}

json estimate_to_json(const ExtrapolationEstimate& e) {
  return json{{"cutoff_lo", e.cutoff_lo},         {"cutoff_hi", e.cutoff_hi},
              {"sum_lo", e.sum_lo},               {"sum_hi", e.sum_hi},
              {"tail_coefficient", e.tail_coefficient},
              {"tail_exponent", e.tail_exponent}, {"limit", e.limit}};
}

struct CommonOpts {
  std::string output_path;
  std::string format;  // per-command default
  std::string cache_dir;
  unsigned threads = 0;  // 0 = auto
  bool force = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts, const std::string& default_format) {
  opts.format = default_format;
  cmd->add_option("-o,--output", opts.output_path,
                  "Output file path (default: stdout)");
  cmd->add_option("--format", opts.format,
                  "Output format (default: " + default_format + ")")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--cache-dir", opts.cache_dir,
                  "Directory for sieve-table caches (env REDHEFFER_CACHE_DIR; "
                  "default: no caching)");
  cmd->add_option("--threads", opts.threads,
                  "Worker threads for the O(D^2) double sums (0 = auto, default 0)");
}

void finish(const CommonOpts& opts, const json& report,
            const std::string& csv_content) {
  if (opts.format == "json") {
    write_output(opts.output_path, report.dump(2) + "\n");
  } else {
    write_output(opts.output_path, csv_content);
  }
}

// ---------------------------------------------------------------- verify-det

int run_verify_det(std::uint64_t n, const CommonOpts& opts) {
  Timer timer;
  if (n > kDeterminantDimGuard && !opts.force) {
    std::fprintf(stderr,
                 "verify-det: n = %llu exceeds the determinant guard (%zu); "
                 "pass --force to run anyway\n",
                 static_cast<unsigned long long>(n), kDeterminantDimGuard);
    return kExitGuard;
  }
  DivisorTables tables = obtain_tables(n, opts.cache_dir);

  std::string csv = csv_join({"n", "determinant", "mertens", "match"});
  json rows = json::array();
  bool all_match = true;
  for (std::uint64_t k = 1; k <= n; ++k) {
    const std::int64_t det = exact_determinant(k, opts.force);
    const std::int64_t mer = mertens(k, tables);
    const bool match = det == mer;
    all_match = all_match && match;
    csv += csv_join({std::to_string(k), std::to_string(det), std::to_string(mer),
                     match ? "true" : "false"});
    rows.push_back({{"n", k}, {"determinant", det}, {"mertens", mer}, {"match", match}});
  }

  json report = base_report("verify-det", {{"n", n},
                                           {"force", opts.force},
                                           {"format", opts.format},
                                           {"threads", opts.threads}});
  report["result"] = {{"rows", rows}, {"all_match", all_match}};
  report["elapsed_ms"] = timer.ms();
  finish(opts, report, csv);
  if (!all_match) {
    std::fprintf(stderr, "verify-det: determinant/Mertens mismatch detected\n");
    return kExitUsage;
  }
  return kExitOk;
}

// ----------------------------------------------------------- singular-vector

int run_singular_vector(std::uint64_t n, double tol, std::uint64_t max_iter,
                        const CommonOpts& opts) {
  Timer timer;
  DivisorTables tables = obtain_tables(n, opts.cache_dir);
  RedhefferOperator op(n, tables);
  PowerIterationResult r = power_iteration(op, tol, max_iter);
  std::vector<std::uint64_t> records = singular_vector_records(r.eigenvector);

  std::string csv = csv_join({"index", "entry", "sigma0", "sigma1_over_k", "is_record"});
  std::size_t next_record = 0;
  for (std::uint64_t k = 1; k <= n; ++k) {
    const bool is_rec = next_record < records.size() && records[next_record] == k;
    if (is_rec) ++next_record;
    csv += csv_join({std::to_string(k), fmt_double(r.eigenvector[k]),
                     std::to_string(tables.sigma0[k]),
                     fmt_double(static_cast<double>(tables.sigma1[k]) /
                                static_cast<double>(k)),
                     is_rec ? "true" : "false"});
  }

  json report = base_report("singular-vector", {{"n", n},
                                                {"tol", tol},
                                                {"max_iter", max_iter},
                                                {"format", opts.format},
                                                {"threads", opts.threads}});
  report["result"] = {{"rayleigh", r.rayleigh},
                      {"iterations", r.iterations},
                      {"residual", r.residual},
                      {"converged", r.converged},
                      {"record_indices", records}};
  report["elapsed_ms"] = timer.ms();
  finish(opts, report, csv);
  if (!r.converged) {
    std::fprintf(stderr,
                 "singular-vector: power iteration did not converge in %llu "
                 "iterations (residual %.3e); result written anyway\n",
                 static_cast<unsigned long long>(max_iter), r.residual);
    return kExitNotConverged;
  }
  return kExitOk;
}

// ----------------------------------------------------------------- similarity

int run_similarity(std::uint64_t n, const CommonOpts& opts) {
  Timer timer;
  DivisorTables tables = obtain_tables(n, opts.cache_dir);
  SimilarityReport rep = similarity_statistic(n, tables);

  std::string csv = csv_join({"n", "statistic", "inner", "norm_v", "norm_gram_v"});
  csv += csv_join({std::to_string(rep.n), fmt_double(rep.statistic), fmt_double(rep.inner),
                   fmt_double(rep.norm_v), fmt_double(rep.norm_gram_v)});

  json report = base_report(
      "similarity", {{"n", n}, {"format", opts.format}, {"threads", opts.threads}});
  report["result"] = {{"n", rep.n},
                      {"statistic", rep.statistic},
                      {"inner", rep.inner},
                      {"norm_v", rep.norm_v},
                      {"norm_gram_v", rep.norm_gram_v},
                      {"elapsed_ms", rep.elapsed_ms}};
  report["elapsed_ms"] = timer.ms();
  finish(opts, report, csv);
  return kExitOk;
}

// ----------------------------------------------------------------------- alpha

int run_alpha(std::uint64_t cutoff, std::uint64_t cutoff_lo, const CommonOpts& opts) {
  Timer timer;
  // Single-sum cutoffs (cutoff_lo, cutoff); the O(D^2) double sum runs at
  // 1/100 scale, which reproduces the reference procedure at the defaults
  // (1e6 single, 1e4 double) and keeps the gcd count near 5e7.
  const std::uint64_t s2_hi = std::max<std::uint64_t>(cutoff / 100, 2);
  const std::uint64_t s2_lo = std::max<std::uint64_t>(s2_hi / 2, 1);

  DivisorTables tables = obtain_tables(cutoff, opts.cache_dir);
  GcdConstants constants = build_gcd_constants(cutoff, tables);

  ExtrapolationEstimate s1 = extrapolate(
      [&](std::size_t d) { return sum_cd_squared(d, constants); }, cutoff_lo, cutoff);
  ExtrapolationEstimate s2 = extrapolate(
      [&](std::size_t d) { return double_gcd_sum_weighted(d, constants, opts.threads); },
      s2_lo, s2_hi);
  AlphaReport rep = compute_alpha(s1, s2);

  std::string csv = csv_join({"quantity", "value"});
  csv += csv_join({"s1_limit", fmt_double(rep.s1)});
  csv += csv_join({"s2_limit", fmt_double(rep.s2)});
  csv += csv_join({"prefactor", fmt_double(rep.prefactor)});
  csv += csv_join({"alpha", fmt_double(rep.alpha)});

  json report = base_report("alpha", {{"cutoff", cutoff},
                                      {"cutoff_lo", cutoff_lo},
                                      {"double_sum_cutoff", s2_hi},
                                      {"double_sum_cutoff_lo", s2_lo},
                                      {"format", opts.format},
                                      {"threads", opts.threads}});
  report["result"] = {{"s1_estimate", estimate_to_json(s1)},
                      {"s2_estimate", estimate_to_json(s2)},
                      {"s1", rep.s1},
                      {"s2", rep.s2},
                      {"prefactor", rep.prefactor},
                      {"alpha", rep.alpha}};
  report["elapsed_ms"] = timer.ms();
  finish(opts, report, csv);
  return kExitOk;
}

// --------------------------------------------------------------------- records

int run_records(std::uint64_t n, const CommonOpts& opts) {
  Timer timer;
  DivisorTables tables = obtain_tables(n, opts.cache_dir);

  std::vector<double> s0(n + 1, 0.0), ratio(n + 1, 0.0);
  for (std::uint64_t k = 1; k <= n; ++k) {
    s0[k] = static_cast<double>(tables.sigma0[k]);
    ratio[k] = static_cast<double>(tables.sigma1[k]) / static_cast<double>(k);
  }
  const std::vector<std::uint64_t> rec_s0 = record_indices(s0);
  const std::vector<std::uint64_t> rec_ratio = record_indices(ratio);

  // Union of both record sets, ascending, with a classification column:
  // sigma0 records are the highly composite numbers, sigma1(k)/k records the
  // superabundant numbers.
  std::vector<std::uint64_t> merged;
  std::set_union(rec_s0.begin(), rec_s0.end(), rec_ratio.begin(), rec_ratio.end(),
                 std::back_inserter(merged));

  std::string csv =
      csv_join({"index", "is_sigma0_record", "is_sigma1_over_k_record", "classification"});
  json rows = json::array();
  std::size_t i0 = 0, i1 = 0;
  for (std::uint64_t k : merged) {
    const bool hc = i0 < rec_s0.size() && rec_s0[i0] == k;
    if (hc) ++i0;
    const bool sa = i1 < rec_ratio.size() && rec_ratio[i1] == k;
    if (sa) ++i1;
    const char* cls = hc && sa ? "both" : (hc ? "highly_composite" : "superabundant");
    csv += csv_join({std::to_string(k), hc ? "true" : "false", sa ? "true" : "false", cls});
    rows.push_back({{"index", k},
                    {"is_sigma0_record", hc},
                    {"is_sigma1_over_k_record", sa},
                    {"classification", cls}});
  }

  json report = base_report(
      "records", {{"n", n}, {"format", opts.format}, {"threads", opts.threads}});
  report["result"] = {{"rows", rows},
                      {"sigma0_records", rec_s0},
                      {"sigma1_over_k_records", rec_ratio}};
  report["elapsed_ms"] = timer.ms();
  finish(opts, report, csv);
  return kExitOk;
}

// ------------------------------------------------------------------- constants

int run_constants(std::uint64_t cutoff, const CommonOpts& opts) {
  Timer timer;
  const double target = 2.5 * kZeta3;

  std::string csv = csv_join({"quantity", "n", "value", "reference", "abs_error"});
  json rows = json::array();
  auto push = [&](const std::string& quantity, std::uint64_t n, double value) {
    csv += csv_join({quantity, std::to_string(n), fmt_double(value), fmt_double(target),
                     fmt_double(std::abs(value - target))});
    rows.push_back({{"quantity", quantity},
                    {"n", n},
                    {"value", value},
                    {"reference", target},
                    {"abs_error", std::abs(value - target)}});
  };

  // ||v_n||^2 / n marches toward 5 zeta(3)/2 (one sieve covers all rows).
  const std::vector<std::uint64_t> norm_sizes{1000, 10000, 100000, 1000000};
  DivisorTables tables = obtain_tables(norm_sizes.back(), opts.cache_dir);
  for (std::uint64_t n : norm_sizes) {
    KahanAccumulator acc;
    for (std::uint64_t k = 1; k <= n; ++k) {
      const double v = static_cast<double>(tables.sigma1[k]) / static_cast<double>(k);
      acc.add(v * v);
    }
    push("norm_sq_over_n", n, acc.value() / static_cast<double>(n));
  }

  // Same constant from the unweighted double gcd sum, with tail correction.
  const std::uint64_t lo = std::max<std::uint64_t>(cutoff / 2, 1);
  ExtrapolationEstimate est = extrapolate(
      [&](std::size_t d) { return double_gcd_sum_unweighted(d, opts.threads); }, lo,
      cutoff);
  push("unweighted_double_gcd_partial", est.cutoff_hi, est.sum_hi);
  push("unweighted_double_gcd_limit", est.cutoff_hi, est.limit);

  json report = base_report("constants", {{"cutoff", cutoff},
                                          {"format", opts.format},
                                          {"threads", opts.threads}});
  report["result"] = {{"rows", rows},
                      {"reference", target},
                      {"extrapolation", estimate_to_json(est)}};
  report["elapsed_ms"] = timer.ms();
  finish(opts, report, csv);
  return kExitOk;
}

// --------------------------------------------------------------------- profile

json profile_to_json(const ProfileSummary& p) {
  return json{{"prime_mean", p.prime_mean},
              {"many_divisor_mean", p.many_divisor_mean},
              {"min", p.min},
              {"max", p.max},
              {"record_indices", p.records}};
}

int run_profile(std::uint64_t n, double tol, std::uint64_t max_iter,
                const CommonOpts& opts) {
  Timer timer;
  DivisorTables tables = obtain_tables(n, opts.cache_dir);
  RedhefferOperator op(n, tables);

  CandidateVector v = candidate_vector(n, tables);
  ProfileSummary pv = prime_vs_composite_profile(v.entries, tables);

  PowerIterationResult r = power_iteration(op, tol, max_iter);
  ProfileSummary pu = prime_vs_composite_profile(r.eigenvector, tables);
  // For the singular vector also report records in the from-index-2
  // convention; its entry 1 is the global maximum, so the plain scan stops
  // there.
  std::vector<std::uint64_t> u_records = singular_vector_records(r.eigenvector);

  std::string csv = csv_join(
      {"vector", "prime_mean", "many_divisor_mean", "min", "max", "num_records"});
  csv += csv_join({"candidate", fmt_double(pv.prime_mean), fmt_double(pv.many_divisor_mean),
                   fmt_double(pv.min), fmt_double(pv.max), std::to_string(pv.records.size())});
  csv += csv_join({"singular_vector", fmt_double(pu.prime_mean),
                   fmt_double(pu.many_divisor_mean), fmt_double(pu.min), fmt_double(pu.max),
                   std::to_string(u_records.size())});

  json report = base_report("profile", {{"n", n},
                                        {"tol", tol},
                                        {"max_iter", max_iter},
                                        {"format", opts.format},
                                        {"threads", opts.threads}});
  json uj = profile_to_json(pu);
  uj["record_indices_from_2"] = u_records;
  uj["rayleigh"] = r.rayleigh;
  uj["iterations"] = r.iterations;
  uj["residual"] = r.residual;
  uj["converged"] = r.converged;
  report["result"] = {{"candidate", profile_to_json(pv)}, {"singular_vector", uj}};
  report["elapsed_ms"] = timer.ms();
  finish(opts, report, csv);
  return r.converged ? kExitOk : kExitNotConverged;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical experiments around the divisibility 0/1 matrix, its Gram\n"
               "operator, and the sigma1(k)/k candidate for the top singular vector."};
  app.require_subcommand(1);

  // verify-det
  std::uint64_t vd_n = 50;
  CommonOpts vd_opts;
  CLI::App* vd = app.add_subcommand(
      "verify-det", "Exact determinant vs Mertens partial sums for all k <= n");
  vd->add_option("--n", vd_n, "Largest dimension to verify (default 50, guard 300)");
  vd->add_flag("--force", vd_opts.force, "Override the size guard");
  add_common(vd, vd_opts, "csv");

  // singular-vector
  std::uint64_t sv_n = 1000;
  double sv_tol = 1e-10;
  std::uint64_t sv_max_iter = 10000;
  CommonOpts sv_opts;
  CLI::App* sv = app.add_subcommand(
      "singular-vector",
      "Power iteration for the top right singular vector; per-index CSV");
  sv->add_option("--n", sv_n, "Dimension (default 1000)");
  sv->add_option("--tol", sv_tol, "Relative convergence tolerance (default 1e-10)");
  sv->add_option("--max-iter", sv_max_iter, "Iteration cap (default 10000)");
  add_common(sv, sv_opts, "csv");

  // similarity
  std::uint64_t sim_n = 50000;
  CommonOpts sim_opts;
  CLI::App* sim = app.add_subcommand(
      "similarity", "Cosine alignment of the candidate vector with its Gram image");
  sim->add_option("--n", sim_n, "Dimension (default 50000)");
  add_common(sim, sim_opts, "json");

  // alpha
  std::uint64_t al_cutoff = 1000000;
  std::uint64_t al_cutoff_lo = 0;  // default: cutoff / 10
  CommonOpts al_opts;
  CLI::App* al = app.add_subcommand(
      "alpha", "Closed-form limit of the similarity statistic via extrapolated sums");
  al->add_option("--cutoff", al_cutoff,
                 "Upper cutoff for the single sum (default 1e6); the double sum "
                 "runs at cutoff/100");
  al->add_option("--cutoff-lo", al_cutoff_lo,
                 "Lower cutoff for the single-sum extrapolation (default cutoff/10)");
  add_common(al, al_opts, "json");

  // records
  std::uint64_t rec_n = 1000;
  CommonOpts rec_opts;
  CLI::App* rec = app.add_subcommand(
      "records", "Record indices of sigma0 and sigma1(k)/k with classification");
  rec->add_option("--n", rec_n, "Scan range (default 1000)");
  add_common(rec, rec_opts, "csv");

  // constants
  std::uint64_t con_cutoff = 10000;
  CommonOpts con_opts;
  CLI::App* con = app.add_subcommand(
      "constants",
      "Candidate-norm growth constant 5 zeta(3)/2 from partial sums and the "
      "unweighted double gcd sum");
  con->add_option("--cutoff", con_cutoff,
                  "Upper cutoff for the double-sum extrapolation (default 1e4)");
  add_common(con, con_opts, "csv");

  // profile
  std::uint64_t pr_n = 1000;
  double pr_tol = 1e-10;
  std::uint64_t pr_max_iter = 10000;
  CommonOpts pr_opts;
  CLI::App* pr = app.add_subcommand(
      "profile",
      "Prime-vs-composite entry statistics for the candidate and the computed "
      "singular vector");
  pr->add_option("--n", pr_n, "Dimension (default 1000)");
  pr->add_option("--tol", pr_tol, "Power-iteration tolerance (default 1e-10)");
  pr->add_option("--max-iter", pr_max_iter, "Iteration cap (default 10000)");
  add_common(pr, pr_opts, "json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  // Env fallback for the cache directory.
  for (CommonOpts* o : {&vd_opts, &sv_opts, &sim_opts, &al_opts, &rec_opts, &con_opts,
                        &pr_opts}) {
    if (o->cache_dir.empty()) {
      if (const char* env = std::getenv("REDHEFFER_CACHE_DIR")) o->cache_dir = env;
    }
  }

  try {
    if (vd->parsed()) return run_verify_det(vd_n, vd_opts);
    if (sv->parsed()) return run_singular_vector(sv_n, sv_tol, sv_max_iter, sv_opts);
    if (sim->parsed()) return run_similarity(sim_n, sim_opts);
    if (al->parsed()) {
      if (al_cutoff_lo == 0) al_cutoff_lo = std::max<std::uint64_t>(al_cutoff / 10, 1);
      return run_alpha(al_cutoff, al_cutoff_lo, al_opts);
    }
    if (rec->parsed()) return run_records(rec_n, rec_opts);
    if (con->parsed()) return run_constants(con_cutoff, con_opts);
    if (pr->parsed()) return run_profile(pr_n, pr_tol, pr_max_iter, pr_opts);
  } catch (const GuardViolation& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitGuard;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;  // unreachable with require_subcommand(1)
}
