#pragma once

// Run configuration, result documents and their JSON/CSV encodings, and the
// per-command dispatch used by the cyclic_roots binary.

#include <array>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cyclic/hadamard.hpp"
#include "cyclic/index_k.hpp"
#include "cyclic/solver.hpp"
#include "cyclic/verify.hpp"

namespace cyclic::cli {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,         // malformed flags, invalid prime
  kExitVerification = 3,  // a check failed or some path did not converge
  kExitIntegrity = 4,     // a theoretically impossible event
  kExitBadK = 5,          // k does not divide p - 1
  kExitOutput = 6,        // output path not writable
};

/// Error carrying the process exit code it maps to.
class CliError : public std::runtime_error {
 public:
  CliError(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
  int code() const noexcept { return code_; }

 private:
  int code_;
};

enum class Command { starts, solve, index_k, hadamard, verify };
enum class Format { json, csv };

inline std::string_view to_string(Command c) {
  switch (c) {
    case Command::starts: return "starts";
    case Command::solve: return "solve";
    case Command::index_k: return "index-k";
    case Command::hadamard: return "hadamard";
    case Command::verify: return "verify";
  }
  return "?";
}

inline Command command_from_string(std::string_view s) {
  for (Command c : {Command::starts, Command::solve, Command::index_k, Command::hadamard, Command::verify})
    if (to_string(c) == s) return c;
  throw CliError(kExitUsage, "unknown command '" + std::string(s) + "'");
}

inline constexpr std::array<std::string_view, 5> kVerifyChecks = {"chebotarev", "uncertainty", "identities",
                                                                  "hfiber", "all"};

struct RunConfig {
  Command command = Command::solve;
  std::size_t p = 0;
  std::optional<std::size_t> k;
  std::uint64_t seed = 1;
  TrackerParams tracker;
  std::optional<std::string> out_path;
  std::optional<std::string> in_path;  // hadamard: read roots from a solve document
  Format format = Format::json;
  std::string check = "all";           // verify only
  std::size_t samples = 0;             // verify only; 0 picks the per-check default
  bool include_timing = false;

  /// Throws CliError with the matching exit code.
  void validate() const {
    if (!is_prime(p)) throw CliError(kExitUsage, "--p must be a prime, got " + std::to_string(p));
    if (command == Command::index_k) {
      if (!k || *k == 0) throw CliError(kExitUsage, "index-k requires --k >= 1");
      if ((p - 1) % *k != 0)
        throw CliError(kExitBadK, "--k " + std::to_string(*k) + " does not divide p - 1 = " + std::to_string(p - 1));
    } else if (k) {
      throw CliError(kExitUsage, "--k is only accepted by index-k");
    }
    if (command == Command::verify) {
      if (std::find(kVerifyChecks.begin(), kVerifyChecks.end(), check) == kVerifyChecks.end())
        throw CliError(kExitUsage, "unknown verify check '" + check + "'");
      if (format == Format::csv) throw CliError(kExitUsage, "CSV output is not available for verify reports");
    }
    if (in_path && command != Command::hadamard) throw CliError(kExitUsage, "--in is only accepted by hadamard");
    try {
      TrackerParams t = tracker;
      t.gamma_seed = seed;
      t.validate();
    } catch (const std::invalid_argument& e) {
      throw CliError(kExitUsage, e.what());
    }
  }

  TrackerParams effective_tracker() const {
    TrackerParams t = tracker;
    t.gamma_seed = seed;
    return t;
  }
};

// ---------------------------------------------------------------------------
// Encoding helpers

/// Non-finite parts become null so documents survive a JSON round trip.
inline json encode_real(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline json encode_complex(Complex c) { return json::array({encode_real(c.real()), encode_real(c.imag())}); }

inline json encode_vector(std::span<const Complex> v) {
  json out = json::array();
  for (const Complex& c : v) out.push_back(encode_complex(c));
  return out;
}

inline Complex decode_complex(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw std::invalid_argument("expected a complex number as [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline std::vector<Complex> decode_vector(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected an array of complex numbers");
  std::vector<Complex> out;
  for (const auto& c : j) out.push_back(decode_complex(c));
  return out;
}

inline json encode_status_counts(const std::map<PathStatus, std::size_t>& counts) {
  json out = json::object();
  for (PathStatus s : {PathStatus::converged, PathStatus::step_underflow, PathStatus::newton_divergence,
                       PathStatus::coordinate_blowup}) {
    auto it = counts.find(s);
    out[std::string(to_string(s))] = it == counts.end() ? 0 : it->second;
  }
  return out;
}

inline json encode_tracker(const TrackerParams& t) {
  return {{"initial_step", t.initial_step},     {"min_step", t.min_step},
          {"max_step", t.max_step},             {"newton_tol", t.newton_tol},
          {"newton_max_iters", t.newton_max_iters}, {"endpoint_tol", t.endpoint_tol},
          {"cluster_radius", t.cluster_radius}, {"unimodular_tol", t.unimodular_tol}};
}

/// Paths are left out so that runs writing to different files stay byte-identical.
inline json encode_config(const RunConfig& c) {
  json out = {{"command", std::string(to_string(c.command))},
              {"p", c.p},
              {"seed", c.seed},
              {"format", c.format == Format::json ? "json" : "csv"},
              {"tracker", encode_tracker(c.tracker)}};
  if (c.k) out["k"] = *c.k;
  if (c.command == Command::verify) {
    out["check"] = c.check;
    out["samples"] = c.samples;
  }
  if (c.command == Command::hadamard) out["source"] = c.in_path ? "file" : "solve";
  return out;
}

// ---------------------------------------------------------------------------

struct ResultDocument {
  int schema_version = kSchemaVersion;
  std::string command;
  json config;
  json payload;
  std::optional<double> wall_seconds;  // only with --timing
  bool passed = true;                  // false maps to exit code 3

  friend bool operator==(const ResultDocument&, const ResultDocument&) = default;
};

inline json to_json(const ResultDocument& d) {
  json out = {{"schema_version", d.schema_version},
              {"command", d.command},
              {"config", d.config},
              {"payload", d.payload},
              {"passed", d.passed}};
  if (d.wall_seconds) out["timing"] = {{"wall_seconds", *d.wall_seconds}};
  return out;
}

/// Cross-checks summary counts against the arrays they describe.
inline void check_consistency(const ResultDocument& d) {
  const json& p = d.payload;
  auto fail = [](const std::string& what) { throw std::invalid_argument("inconsistent document: " + what); };
  if (d.command == "starts") {
    if (p.at("count").get<std::size_t>() != p.at("solutions").size()) fail("starts count");
  } else if (d.command == "solve") {
    const json& s = p.at("summary");
    const json& roots = p.at("roots");
    std::size_t uni = 0, mult = 0;
    for (const auto& r : roots) {
      uni += r.at("unimodular").get<bool>() ? 1 : 0;
      mult += r.at("multiplicity").get<std::size_t>();
    }
    if (s.at("gamma").get<std::size_t>() != roots.size()) fail("gamma != number of roots");
    if (s.at("gamma_u").get<std::size_t>() != uni) fail("gamma_u != number of unimodular roots");
    if (s.at("total_multiplicity").get<std::size_t>() != mult) fail("total multiplicity");
    std::size_t total = 0;
    for (const auto& [name, n] : s.at("status_counts").items()) total += n.get<std::size_t>();
    if (total != s.at("paths").get<std::size_t>()) fail("status counts do not add up to the path total");
    if (s.at("failed").get<std::size_t>() != p.at("failed_paths").size()) fail("failed path count");
  } else if (d.command == "index-k") {
    const json& s = p.at("summary");
    if (s.at("distinct").get<std::size_t>() != p.at("solutions").size()) fail("index-k distinct count");
  } else if (d.command == "hadamard") {
    if (p.at("summary").at("matrices").get<std::size_t>() != p.at("matrices").size()) fail("matrix count");
  }
}

inline ResultDocument document_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("result document must be a JSON object");
  ResultDocument d;
  d.schema_version = j.at("schema_version").get<int>();
  if (d.schema_version != kSchemaVersion)
    throw std::invalid_argument("unsupported schema_version " + std::to_string(d.schema_version));
  d.command = j.at("command").get<std::string>();
  d.config = j.at("config");
  d.payload = j.at("payload");
  d.passed = j.at("passed").get<bool>();
  if (j.contains("timing")) d.wall_seconds = j.at("timing").at("wall_seconds").get<double>();
  check_consistency(d);
  return d;
}

/// Compact JSON with sorted keys, newline-terminated.
inline std::string serialize_json(const ResultDocument& d) { return to_json(d).dump() + "\n"; }

inline ResultDocument parse_json(std::string_view text) {
  try {
    return document_from_json(json::parse(text));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed result document: ") + e.what());
  }
}

namespace detail {

inline std::string csv_number(const json& v) { return v.is_null() ? "nan" : v.dump(); }

inline void csv_complex_columns(std::ostringstream& head, const std::string& name, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) head << ',' << name << i << "_re," << name << i << "_im";
}

inline void csv_complex_values(std::ostringstream& row, const json& v) {
  for (const auto& c : v) row << ',' << csv_number(c[0]) << ',' << csv_number(c[1]);
}

}  // namespace detail

/// One row per root (solve, index-k), start (starts) or sequence (hadamard).
inline std::string serialize_csv(const ResultDocument& d) {
  const json& p = d.payload;
  std::ostringstream out;
  std::ostringstream head;
  const auto n = p.contains("p") ? p.at("p").get<std::size_t>() : d.config.at("p").get<std::size_t>();
  if (d.command == "solve") {
    head << "index,multiplicity,unimodular,residual";
    detail::csv_complex_columns(head, "z", n);
    out << head.str() << '\n';
    std::size_t i = 0;
    for (const auto& r : p.at("roots")) {
      out << i++ << ',' << r.at("multiplicity").get<std::size_t>() << ','
          << (r.at("unimodular").get<bool>() ? 1 : 0) << ',' << detail::csv_number(r.at("residual"));
      detail::csv_complex_values(out, r.at("z"));
      out << '\n';
    }
  } else if (d.command == "starts") {
    head << "index,residual,jacobian_min_sv";
    detail::csv_complex_columns(head, "x", n);
    detail::csv_complex_columns(head, "y", n);
    out << head.str() << '\n';
    std::size_t i = 0;
    for (const auto& s : p.at("solutions")) {
      out << i++ << ',' << detail::csv_number(s.at("residual")) << ',' << detail::csv_number(s.at("jacobian_min_sv"));
      detail::csv_complex_values(out, s.at("x"));
      detail::csv_complex_values(out, s.at("y"));
      out << '\n';
    }
  } else if (d.command == "index-k") {
    head << "index,multiplicity,chi_residual,sigma_residual";
    detail::csv_complex_columns(head, "z", n);
    out << head.str() << '\n';
    std::size_t i = 0;
    for (const auto& s : p.at("solutions")) {
      out << i++ << ',' << s.at("multiplicity").get<std::size_t>() << ',' << detail::csv_number(s.at("chi_residual"))
          << ',' << detail::csv_number(s.at("sigma_residual"));
      detail::csv_complex_values(out, s.at("z"));
      out << '\n';
    }
  } else if (d.command == "hadamard") {
    head << "index,root_index,defect";
    detail::csv_complex_columns(head, "x", n);
    out << head.str() << '\n';
    std::size_t i = 0;
    for (const auto& m : p.at("matrices")) {
      out << i++ << ',' << m.at("root_index").get<std::size_t>() << ',' << detail::csv_number(m.at("defect"));
      detail::csv_complex_values(out, m.at("sequence"));
      out << '\n';
    }
  } else {
    throw std::invalid_argument("CSV output is not available for " + d.command + " documents");
  }
  return out.str();
}

inline std::string serialize(const ResultDocument& d, Format f) {
  return f == Format::json ? serialize_json(d) : serialize_csv(d);
}

// ---------------------------------------------------------------------------
// Payload builders

inline json starts_payload(std::size_t p) {
  json solutions = json::array();
  for_each_support_pair(p, [&](const SupportPair& pair) {
    const DegenerateSolution s = degenerate_solution(pair);
    solutions.push_back({{"K", pair.k().members()},
                         {"L", pair.l().members()},
                         {"x", encode_vector(s.point.full_x().values())},
                         {"y", encode_vector(s.point.full_y().values())},
                         {"residual", encode_real(s.residual)},
                         {"jacobian_min_sv", encode_real(s.jacobian_min_sv)}});
  });
  return {{"p", p},
          {"count", solutions.size()},
          {"expected", binomial(2 * p - 2, p - 1)},
          {"solutions", std::move(solutions)}};
}

inline json solve_payload(const SolveReport& r) {
  json roots = json::array();
  for (const RootCluster& c : r.clusters) {
    roots.push_back({{"z", encode_vector(c.z_level.values().values())},
                     {"x", encode_vector(c.representative.full_x().values())},
                     {"y", encode_vector(c.representative.full_y().values())},
                     {"multiplicity", c.multiplicity},
                     {"members", c.members},
                     {"unimodular", c.is_unimodular},
                     {"residual", encode_real(c.residual)},
                     {"jacobian_min_sv", encode_real(c.jacobian_min_sv)}});
  }
  json failed = json::array();
  for (const PathResult& f : r.failed) {
    failed.push_back({{"K", f.start_pair.k().members()},
                      {"L", f.start_pair.l().members()},
                      {"status", std::string(to_string(f.status))},
                      {"final_residual", encode_real(f.final_residual)},
                      {"steps", f.steps_taken},
                      {"endpoint", encode_vector(f.endpoint.stacked())}});
  }
  const json summary = {{"paths", r.total_paths},
                        {"expected_paths", binomial(2 * r.p - 2, r.p - 1)},
                        {"gamma", r.distinct()},
                        {"gamma_u", r.unimodular()},
                        {"total_multiplicity", r.total_multiplicity()},
                        {"failed", r.failed.size()},
                        {"status_counts", encode_status_counts(r.status_counts)}};
  return {{"p", r.p},
          {"summary", summary},
          {"gamma_phase", encode_complex(r.gamma)},
          {"roots", std::move(roots)},
          {"failed_paths", std::move(failed)}};
}

inline json structure_json(const CyclotomicStructure& s) {
  return {{"p", s.p}, {"k", s.k}, {"generator", s.generator}, {"cosets", s.cosets}, {"m", s.m}, {"n", s.n}};
}

inline json index_k_payload(const IndexKReport& r) {
  json solutions = json::array();
  for (const IndexKCluster& c : r.clusters) {
    solutions.push_back({{"c", encode_vector(c.c.values().values())},
                         {"c_y", encode_vector(c.c_y.values())},
                         {"z", encode_vector(c.z_level.values().values())},
                         {"multiplicity", c.multiplicity},
                         {"members", c.members},
                         {"chi_residual", encode_real(c.chi_residual)},
                         {"sigma_residual", encode_real(c.sigma_residual)}});
  }
  const std::size_t k = r.structure.k;
  const json summary = {{"starts", r.start_count},
                        {"expected_starts", binomial(2 * k, k)},
                        {"distinct", r.clusters.size()},
                        {"total_multiplicity", r.total_multiplicity()},
                        {"status_counts", encode_status_counts(r.status_counts)}};
  return {{"p", r.structure.p},
          {"structure", structure_json(r.structure)},
          {"summary", summary},
          {"gamma_phase", encode_complex(r.gamma)},
          {"solutions", std::move(solutions)}};
}

/// Matrices for the given unimodular roots; `root_index` refers to the
/// position in the solve document's root list.
inline json hadamard_payload(std::size_t p, const std::vector<std::pair<std::size_t, ZRoot>>& roots, double tol) {
  json matrices = json::array();
  json defects = json::array();
  double worst = 0.0;
  for (const auto& [index, z] : roots) {
    const BiunimodularSequence x = biunimodular_from_root(z, tol);
    const CirculantMatrix h = circulant_from_sequence(x);
    const double defect = hadamard_defect(h);
    worst = std::max(worst, defect);
    json rows = json::array();
    for (std::size_t j = 0; j < p; ++j) {
      json row = json::array();
      for (std::size_t k = 0; k < p; ++k) row.push_back(encode_complex(h(j, k)));
      rows.push_back(std::move(row));
    }
    matrices.push_back({{"root_index", index},
                        {"sequence", encode_vector(x.values().values())},
                        {"matrix", std::move(rows)},
                        {"defect", encode_real(defect)}});
    defects.push_back({{"root_index", index}, {"defect", encode_real(defect)}, {"passed", defect < 1e-8}});
  }
  const json summary = {{"matrices", matrices.size()}, {"max_defect", encode_real(worst)}, {"threshold", 1e-8}};
  return {{"p", p}, {"summary", summary}, {"defect_table", std::move(defects)}, {"matrices", std::move(matrices)}};
}

inline json minor_json(const MinorScan& s, bool exhaustive) {
  return {{"name", "chebotarev"},
          {"mode", exhaustive ? "exhaustive" : "random"},
          {"minors", s.minors},
          {"failures", s.failures},
          {"min_singular_value", encode_real(s.min_singular_value)},
          {"worst_rows", s.worst_rows},
          {"worst_cols", s.worst_cols},
          {"passed", s.passed()}};
}

// ---------------------------------------------------------------------------
// Dispatch

namespace detail {

/// Unimodular roots listed in a solve document, paired with their position.
inline std::vector<std::pair<std::size_t, ZRoot>> roots_from_solve_file(const std::string& path, std::size_t p) {
  std::ifstream in(path);
  if (!in) throw CliError(kExitUsage, "cannot read --in file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  ResultDocument doc;
  try {
    doc = parse_json(buf.str());
  } catch (const std::exception& e) {
    throw CliError(kExitUsage, std::string("--in: ") + e.what());
  }
  if (doc.command != "solve") throw CliError(kExitUsage, "--in must be a solve document, got " + doc.command);
  if (doc.payload.at("p").get<std::size_t>() != p)
    throw CliError(kExitUsage, "--in document is for p = " + doc.payload.at("p").dump());
  std::vector<std::pair<std::size_t, ZRoot>> roots;
  const json& list = doc.payload.at("roots");
  for (std::size_t i = 0; i < list.size(); ++i)
    if (list[i].at("unimodular").get<bool>()) roots.emplace_back(i, ZRoot(ComplexVector(decode_vector(list[i].at("z")))));
  return roots;
}

inline json run_verify(const RunConfig& c, bool& passed) {
  json checks = json::array();
  const bool all = c.check == "all";
  auto add = [&](json entry) {
    passed = passed && entry.at("passed").get<bool>();
    checks.push_back(std::move(entry));
  };
  if (all || c.check == "chebotarev") {
    const bool exhaustive = c.p <= 7;
    add(minor_json(exhaustive ? chebotarev_exhaustive(c.p)
                              : chebotarev_random(c.p, c.samples ? c.samples : 10000, c.seed),
                   exhaustive));
  }
  if (all || c.check == "uncertainty") {
    if (c.p > 13) throw CliError(kExitUsage, "verify uncertainty scans every support pattern; needs p <= 13");
    // Degenerate starts number C(2p-2, p-1); past p = 7 only the patterns are scanned.
    const UncertaintyScan s = uncertainty_scan(c.p, c.seed, c.p <= 7);
    add({{"name", "uncertainty"},
         {"patterns", s.patterns},
         {"violations", s.violations},
         {"min_support_sum", s.min_support_sum},
         {"bound", c.p + 1},
         {"degenerate_checked", s.degenerate_checked},
         {"degenerate_not_tight", s.degenerate_not_tight},
         {"passed", s.passed()}});
  }
  if (all || c.check == "identities") {
    const IdentityScan s = identity_scan(c.p, c.samples ? c.samples : 100, c.seed);
    add({{"name", "identities"},
         {"samples", s.samples},
         {"spectral_product", encode_real(s.spectral_product)},
         {"inverse_correlation", encode_real(s.inverse_correlation)},
         {"parseval", encode_real(s.parseval)},
         {"lambda_round_trip", encode_real(s.lambda_round_trip)},
         {"factorization", encode_real(s.factorization)},
         {"threshold", 1e-12},
         {"passed", s.passed()}});
  }
  if (all || c.check == "hfiber") {
    const FiberScan s = h_fiber_scan(c.p, c.samples ? c.samples : 100, c.seed);
    add({{"name", "hfiber"},
         {"samples", s.samples},
         {"wrong_size", s.wrong_size},
         {"max_round_trip", encode_real(s.max_round_trip)},
         {"threshold", 1e-10},
         {"passed", s.passed()}});
  }
  return {{"p", c.p}, {"checks", std::move(checks)}};
}

}  // namespace detail

/// Runs the configured pipeline. Library errors surface as CliError with
/// the matching exit code; `passed` records verification outcomes.
inline ResultDocument dispatch(const RunConfig& c) {
  c.validate();
  const auto started = std::chrono::steady_clock::now();
  ResultDocument doc;
  doc.command = std::string(to_string(c.command));
  doc.config = encode_config(c);
  const TrackerParams params = c.effective_tracker();
  try {
    switch (c.command) {
      case Command::starts: {
        doc.payload = starts_payload(c.p);
        break;
      }
      case Command::solve: {
        const SolveReport r = solve_cyclic_system(c.p, params);
        doc.payload = solve_payload(r);
        doc.passed = r.failed.empty();
        break;
      }
      case Command::index_k: {
        const IndexKReport r = solve_index_k(cyclotomic_structure(c.p, *c.k), params);
        doc.payload = index_k_payload(r);
        doc.passed = r.converged() == r.start_count;
        break;
      }
      case Command::hadamard: {
        std::vector<std::pair<std::size_t, ZRoot>> roots;
        if (c.in_path) {
          roots = detail::roots_from_solve_file(*c.in_path, c.p);
        } else {
          const SolveReport r = solve_cyclic_system(c.p, params);
          for (std::size_t i = 0; i < r.clusters.size(); ++i)
            if (r.clusters[i].is_unimodular) roots.emplace_back(i, r.clusters[i].z_level);
        }
        doc.payload = hadamard_payload(c.p, roots, params.unimodular_tol);
        doc.passed = doc.payload.at("summary").at("max_defect").get<double>() < 1e-8;
        break;
      }
      case Command::verify: {
        bool passed = true;
        doc.payload = detail::run_verify(c, passed);
        doc.passed = passed;
        break;
      }
    }
  } catch (const IntegrityError& e) {
    throw CliError(kExitIntegrity, std::string("integrity failure: ") + e.what());
  }
  if (c.include_timing)
    doc.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return doc;
}

/// Writes to `path`, or to `out` when no path is given.
inline void write_output(const std::string& bytes, const std::optional<std::string>& path, std::ostream& out) {
  if (!path) {
    out << bytes;
    out.flush();
    return;
  }
  std::ofstream file(*path, std::ios::binary | std::ios::trunc);
  if (!file) throw CliError(kExitOutput, "cannot open output file '" + *path + "' for writing");
  file << bytes;
  file.close();
  if (!file) throw CliError(kExitOutput, "failed writing output file '" + *path + "'");
}

/// Process exit status for a finished document. A singular minor in the
/// Chebotarev scan cannot happen for prime p, so it counts as an integrity
/// failure rather than an ordinary verification failure.
inline int exit_code(const ResultDocument& d) {
  if (d.passed) return kExitOk;
  if (d.command == "verify")
    for (const json& c : d.payload.at("checks"))
      if (c.at("name") == "chebotarev" && !c.at("passed").get<bool>()) return kExitIntegrity;
  return kExitVerification;
}

/// One-line human summary for stderr.
inline std::string summary_line(const ResultDocument& d) {
  std::ostringstream s;
  const json& p = d.payload;
  s << d.command << " p=" << d.config.at("p").get<std::size_t>();
  if (d.command == "starts") {
    s << " solutions=" << p.at("count");
  } else if (d.command == "solve") {
    const json& m = p.at("summary");
    s << " gamma=" << m.at("gamma") << " gamma_u=" << m.at("gamma_u") << " paths=" << m.at("paths")
      << " failed=" << m.at("failed");
  } else if (d.command == "index-k") {
    const json& m = p.at("summary");
    s << " k=" << d.config.at("k") << " starts=" << m.at("starts") << " distinct=" << m.at("distinct");
  } else if (d.command == "hadamard") {
    s << " matrices=" << p.at("summary").at("matrices") << " max_defect=" << p.at("summary").at("max_defect");
  } else {
    for (const auto& c : p.at("checks"))
      s << ' ' << c.at("name").get<std::string>() << '=' << (c.at("passed").get<bool>() ? "pass" : "FAIL");
  }
  s << (d.passed ? " ok" : " FAILED");
  return s.str();
}

}  // namespace cyclic::cli
