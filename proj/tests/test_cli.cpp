#include "cyclic/cli.hpp"

#include <sys/wait.h>

#include <filesystem>

#include "test_support.hpp"

using namespace cyclic;
using namespace cyclic::cli;

namespace {

RunConfig config(Command c, std::size_t p) {
  RunConfig r;
  r.command = c;
  r.p = p;
  return r;
}

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() / ("cyclic_cli_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir;
}

int run_binary(const std::string& args) {
  const std::string cmd = std::string(CYCLIC_ROOTS_BIN) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(RunConfig, Validation) {
  EXPECT_NO_THROW(config(Command::solve, 5).validate());
  try {
    config(Command::solve, 4).validate();
    FAIL();
  } catch (const CliError& e) {
    EXPECT_EQ(e.code(), kExitUsage);
  }
  RunConfig k = config(Command::index_k, 7);
  k.k = 4;
  try {
    k.validate();
    FAIL();
  } catch (const CliError& e) {
    EXPECT_EQ(e.code(), kExitBadK);
  }
  RunConfig stray = config(Command::solve, 7);
  stray.k = 3;
  EXPECT_THROW(stray.validate(), CliError);
  RunConfig v = config(Command::verify, 5);
  v.format = Format::csv;
  EXPECT_THROW(v.validate(), CliError);
  RunConfig bad_check = config(Command::verify, 5);
  bad_check.check = "everything";
  EXPECT_THROW(bad_check.validate(), CliError);
  RunConfig bad_step = config(Command::solve, 5);
  bad_step.tracker.min_step = 1.0;
  EXPECT_THROW(bad_step.validate(), CliError);
  EXPECT_EQ(command_from_string("index-k"), Command::index_k);
  EXPECT_THROW(command_from_string("plot"), CliError);
}

TEST(Encoding, ComplexAsPair) {
  EXPECT_EQ(encode_complex({1.0, 2.0}).dump(), "[1.0,2.0]");
  EXPECT_EQ(decode_complex(json::parse("[1.0, 2.0]")), Complex(1.0, 2.0));
  EXPECT_EQ(encode_complex({std::nan(""), 0.0}).dump(), "[null,0.0]");
  EXPECT_THROW(decode_complex(json::parse("[1.0]")), std::invalid_argument);
}

TEST(Dispatch, StartsAtP2) {
  const ResultDocument d = dispatch(config(Command::starts, 2));
  EXPECT_EQ(d.payload.at("count"), 2);
  EXPECT_EQ(d.payload.at("solutions").size(), 2u);
  EXPECT_TRUE(d.passed);
}

TEST(Dispatch, SolveP5Summary) {
  const ResultDocument d = dispatch(config(Command::solve, 5));
  const json& s = d.payload.at("summary");
  EXPECT_EQ(s.at("gamma"), 70);
  EXPECT_EQ(s.at("gamma_u"), 20);
  EXPECT_EQ(s.at("paths"), 70);
  EXPECT_EQ(s.at("expected_paths"), 70);
  EXPECT_EQ(s.at("status_counts").at("converged"), 70);
  EXPECT_TRUE(d.passed);
  EXPECT_FALSE(d.wall_seconds.has_value());
  EXPECT_NO_THROW(check_consistency(d));
}

TEST(Dispatch, VerifyChebotarevP7) {
  RunConfig c = config(Command::verify, 7);
  c.check = "chebotarev";
  const ResultDocument d = dispatch(c);
  ASSERT_EQ(d.payload.at("checks").size(), 1u);
  const json& check = d.payload.at("checks")[0];
  EXPECT_EQ(check.at("minors"), 3431);
  EXPECT_TRUE(check.at("passed").get<bool>());
  EXPECT_GT(check.at("min_singular_value").get<double>(), 1e-12);
  EXPECT_TRUE(d.passed);
}

TEST(Dispatch, IndexKStructure) {
  RunConfig c = config(Command::index_k, 7);
  c.k = 3;
  const ResultDocument d = dispatch(c);
  EXPECT_EQ(d.payload.at("structure").at("cosets"), json::parse("[[1,6],[3,4],[2,5]]"));
  EXPECT_EQ(d.payload.at("summary").at("distinct"), 20);
}

TEST(Dispatch, HadamardFromSolveRun) {
  const ResultDocument d = dispatch(config(Command::hadamard, 3));
  EXPECT_EQ(d.payload.at("summary").at("matrices"), 6);
  EXPECT_LT(d.payload.at("summary").at("max_defect").get<double>(), 1e-8);
  const json& m = d.payload.at("matrices")[0].at("matrix");
  ASSERT_EQ(m.size(), 3u);
  for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(m[j][j], json::parse("[1.0,0.0]"));
}

TEST(Serialize, JsonRoundTripAndNewline) {
  RunConfig c = config(Command::solve, 3);
  c.include_timing = true;
  const ResultDocument d = dispatch(c);
  ASSERT_TRUE(d.wall_seconds.has_value());
  const std::string text = serialize_json(d);
  EXPECT_EQ(text.back(), '\n');
  EXPECT_EQ(parse_json(text), d);
  EXPECT_EQ(serialize_json(parse_json(text)), text);
}

TEST(Serialize, JsonIsDeterministic) {
  EXPECT_EQ(serialize_json(dispatch(config(Command::solve, 5))), serialize_json(dispatch(config(Command::solve, 5))));
}

TEST(Serialize, ParseRejectsBadDocuments) {
  EXPECT_THROW(parse_json("not json"), std::invalid_argument);
  ResultDocument d = dispatch(config(Command::solve, 2));
  json j = to_json(d);
  j["schema_version"] = 2;
  EXPECT_THROW(parse_json(j.dump()), std::invalid_argument);
  j = to_json(d);
  j["payload"]["summary"]["gamma_u"] = 5;
  EXPECT_THROW(parse_json(j.dump()), std::invalid_argument);
}

TEST(Serialize, CsvOneRowPerRoot) {
  const std::string csv = serialize_csv(dispatch(config(Command::solve, 2)));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);  // header + 2 rows
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "index,multiplicity,unimodular,residual,z0_re,z0_im,z1_re,z1_im");

  const std::string starts = serialize_csv(dispatch(config(Command::starts, 3)));
  EXPECT_EQ(std::count(starts.begin(), starts.end(), '\n'), 7);

  RunConfig v = config(Command::verify, 3);
  v.check = "hfiber";
  EXPECT_THROW(serialize_csv(dispatch(v)), std::invalid_argument);
}

TEST(Binary, ExitCodes) {
  const auto dir = scratch_dir();
  EXPECT_EQ(run_binary("starts --p 2"), kExitOk);
  EXPECT_EQ(run_binary("solve --p 4"), kExitUsage);
  EXPECT_EQ(run_binary("solve --p 1"), kExitUsage);
  EXPECT_EQ(run_binary("solve"), kExitUsage);
  EXPECT_EQ(run_binary("bogus --p 5"), kExitUsage);
  EXPECT_EQ(run_binary("index-k --p 7 --k 4"), kExitBadK);
  EXPECT_EQ(run_binary("starts --p 3 --out " + (dir / "missing" / "x.json").string()), kExitOutput);
  EXPECT_EQ(run_binary("verify --p 5 --format csv"), kExitUsage);
  EXPECT_EQ(run_binary("verify hfiber --p 5"), kExitOk);
  EXPECT_EQ(run_binary("--help"), kExitOk);
}

TEST(Binary, ByteIdenticalOutputAndHadamardFromFile) {
  const auto dir = scratch_dir();
  const auto a = dir / "a.json", b = dir / "b.json";
  ASSERT_EQ(run_binary("solve --p 5 --seed 3 --out " + a.string()), kExitOk);
  ASSERT_EQ(run_binary("solve --p 5 --seed 3 --out " + b.string()), kExitOk);
  EXPECT_EQ(slurp(a), slurp(b));
  const auto h = dir / "h.json";
  ASSERT_EQ(run_binary("hadamard --p 5 --in " + a.string() + " --out " + h.string()), kExitOk);
  const ResultDocument doc = parse_json(slurp(h));
  EXPECT_EQ(doc.payload.at("summary").at("matrices"), 20);
  EXPECT_EQ(run_binary("hadamard --p 7 --in " + a.string()), kExitUsage);
  std::filesystem::remove_all(dir);
}

TEST(ExitCode, SingularMinorIsAnIntegrityFailure) {
  RunConfig c = config(Command::verify, 3);
  ResultDocument d = dispatch(c);
  EXPECT_EQ(exit_code(d), kExitOk);
  d.passed = false;
  EXPECT_EQ(exit_code(d), kExitVerification);
  d.payload["checks"][0]["passed"] = false;
  EXPECT_EQ(exit_code(d), kExitIntegrity);
  ResultDocument s = dispatch(config(Command::solve, 2));
  s.passed = false;
  EXPECT_EQ(exit_code(s), kExitVerification);
}
