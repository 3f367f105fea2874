// cyclic_roots: start systems, full and index-k solves, circulant Hadamard
// matrices and numerical certificates for cyclic p-roots.

#include <CLI11.hpp>

#include "cyclic/cli.hpp"

namespace {

using cyclic::cli::Command;
using cyclic::cli::Format;
using cyclic::cli::RunConfig;

void add_common(CLI::App* app, RunConfig& c, std::string& format) {
  app->add_option("--p", c.p, "prime length")->required();
  app->add_option("--seed", c.seed, "seed for the homotopy phase and random samples")->capture_default_str();
  app->add_option("--out", c.out_path, "output file (default: stdout)");
  app->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app->add_flag("--timing", c.include_timing, "record wall time in the document");
}

void add_tracker(CLI::App* app, cyclic::TrackerParams& t) {
  app->add_option("--initial-step", t.initial_step)->capture_default_str();
  app->add_option("--min-step", t.min_step)->capture_default_str();
  app->add_option("--max-step", t.max_step)->capture_default_str();
  app->add_option("--newton-tol", t.newton_tol)->capture_default_str();
  app->add_option("--newton-max-iters", t.newton_max_iters)->capture_default_str();
  app->add_option("--endpoint-tol", t.endpoint_tol)->capture_default_str();
  app->add_option("--cluster-radius", t.cluster_radius)->capture_default_str();
  app->add_option("--unimodular-tol", t.unimodular_tol)->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cyclic p-roots by homotopy from a degenerate start system"};
  app.require_subcommand(1);

  RunConfig config;
  std::string format = "json";

  auto* starts = app.add_subcommand("starts", "list the degenerate start solutions");
  auto* solve = app.add_subcommand("solve", "track every start path and cluster the roots");
  auto* index_k = app.add_subcommand("index-k", "solve the reduced system for roots of simple index k");
  auto* hadamard = app.add_subcommand("hadamard", "circulant complex Hadamard matrices from unimodular roots");
  auto* verify = app.add_subcommand("verify", "numerical certificates");

  for (auto* sub : {starts, solve, index_k, hadamard, verify}) add_common(sub, config, format);
  for (auto* sub : {solve, index_k, hadamard}) add_tracker(sub, config.tracker);
  index_k->add_option("--k", config.k, "index, a divisor of p - 1")->required();
  hadamard->add_option("--in", config.in_path, "solve document to read roots from (default: run a solve)");
  verify->add_option("check", config.check, "chebotarev, uncertainty, identities, hfiber or all")
      ->capture_default_str();
  verify->add_option("--samples", config.samples, "random sample count (0: per-check default)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cyclic::cli::kExitUsage;
  }

  if (starts->parsed()) config.command = Command::starts;
  if (solve->parsed()) config.command = Command::solve;
  if (index_k->parsed()) config.command = Command::index_k;
  if (hadamard->parsed()) config.command = Command::hadamard;
  if (verify->parsed()) config.command = Command::verify;
  config.format = format == "csv" ? Format::csv : Format::json;

  try {
    const auto started = std::chrono::steady_clock::now();
    const cyclic::cli::ResultDocument doc = cyclic::cli::dispatch(config);
    cyclic::cli::write_output(cyclic::cli::serialize(doc, config.format), config.out_path, std::cout);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    std::cerr << cyclic::cli::summary_line(doc) << " wall=" << wall << "s\n";
    return cyclic::cli::exit_code(doc);
  } catch (const cyclic::cli::CliError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code();
  } catch (const cyclic::IntegrityError& e) {
    std::cerr << "error: integrity failure: " << e.what() << '\n';
    return cyclic::cli::kExitIntegrity;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cyclic::cli::kExitUsage;
  }
}
