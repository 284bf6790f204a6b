#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "doctest.h"
#include "padyn/cli.hpp"

using namespace padyn::cli;

namespace {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string spec_text(const std::string& name) { return read_file(std::filesystem::path(PADYN_SPEC_DIR) / (name + ".spec")); }

std::vector<nlohmann::json> records(const RunOutput& out) {
  std::vector<nlohmann::json> rs;
  std::istringstream in(out.records);
  for (std::string line; std::getline(in, line);) rs.push_back(nlohmann::json::parse(line));
  return rs;
}

RunOutput run_named(const std::string& name, const std::string& command) {
  RunOptions o;
  o.command = command;
  o.format = Format::Records;
  return run(parse_spec(spec_text(name)), o);
}

bool has_message(const SpecError& e, const std::string& needle) {
  for (const auto& d : e.diagnostics())
    if (d.message.find(needle) != std::string::npos) return true;
  return false;
}

const char* const kMinimal =
    "[field]\nprime = 5\n\n[operator]\nkind = unilateral-shift\n\n[weights]\nforward.period = [-1]\n\n"
    "[command]\nname = decide\nproperty = hypercyclic\n";

}  // namespace

TEST_CASE("minimal decide spec parses and round-trips") {
  const ExperimentSpec s = parse_spec(kMinimal);
  CHECK(s.field.prime == 5);
  CHECK(s.op.kind == OperatorKind::UnilateralShift);
  CHECK(s.command.property == PropertyChoice::Hypercyclic);
  CHECK(parse_spec(serialize_spec(s)) == s);
  CHECK(serialize_spec(parse_spec(serialize_spec(s))) == serialize_spec(s));
}

TEST_CASE("validation diagnostics") {
  std::string text = kMinimal;
  text.replace(text.find("prime = 5"), 9, "prime = 4");
  try {
    (void)parse_spec(text);
    FAIL("expected a validation error");
  } catch (const SpecError& e) {
    CHECK(e.kind() == SpecError::Kind::Validation);
    CHECK(has_message(e, "not prime"));
  }
  std::string zero = kMinimal;
  zero.replace(zero.find("forward.period = [-1]"), 21, "forward.period.values = [0/1]");
  try {
    (void)parse_spec(zero);
    FAIL("expected a validation error");
  } catch (const SpecError& e) {
    CHECK(has_message(e, "zero weight"));
  }
}

TEST_CASE("syntax errors carry line numbers") {
  try {
    (void)parse_spec("[field]\nprime = 5\ncolour = red\n");
    FAIL("expected a parse error");
  } catch (const SpecError& e) {
    CHECK(e.kind() == SpecError::Kind::Parse);
    REQUIRE_FALSE(e.diagnostics().empty());
    CHECK(e.diagnostics().front().line == 3);
  }
  CHECK_THROWS_AS((void)parse_spec("prime = 5\n"), SpecError);
  CHECK_THROWS_AS((void)parse_spec("[field]\nprime = 5\nprime = 7\n"), SpecError);
  CHECK_THROWS_AS((void)parse_spec("[nowhere]\n"), SpecError);
  CHECK_THROWS_AS((void)parse_spec("[operator]\nlambda = 1/0\n"), SpecError);
}

TEST_CASE("every sample spec round-trips") {
  int seen = 0;
  for (const auto& entry : std::filesystem::directory_iterator(PADYN_SPEC_DIR)) {
    const std::string text = read_file(entry.path());
    ExperimentSpec s;
    try {
      s = parse_spec_syntax(text);
    } catch (const SpecError&) {
      continue;  // the deliberately malformed samples
    }
    ++seen;
    CAPTURE(entry.path().filename().string());
    CHECK(parse_spec_syntax(serialize_spec(s)) == s);
  }
  CHECK(seen >= 10);
}

TEST_CASE("decide reports the lambda/mu rule with a certificate") {
  const RunOutput out = run_named("decide_lambda_mu", "decide");
  CHECK(out.exit_code == kExitCompleted);
  bool found = false;
  for (const auto& r : records(out)) {
    if (r["record"] != "verdict") continue;
    found = true;
    CHECK(r["answer"] == "Yes");
    CHECK(r["rule"] == "LambdaMuN_HC");
    CHECK(r.contains("certificate"));
  }
  CHECK(found);
}

TEST_CASE("every Yes carries a certificate and every No a citation") {
  for (const char* name : {"decide_lambda_mu", "decide_unilateral", "decide_bilateral_perturbed"}) {
    ExperimentSpec s = parse_spec(spec_text(name));
    s.command.property = PropertyChoice::Both;
    RunOptions o;
    o.command = "decide";
    o.format = Format::Records;
    for (const auto& r : records(run(s, o))) {
      if (r["record"] != "verdict") continue;
      if (r["answer"] == "Yes") CHECK(r["certificate"].is_object());
      else CHECK_FALSE(r["citation"].get<std::string>().empty());
    }
  }
}

TEST_CASE("exit codes") {
  CHECK(run_named("witness_lambda_mu", "witness").exit_code == kExitCompleted);
  CHECK(run_named("witness_identity", "witness").exit_code == kExitInconclusive);
  CHECK(run_named("obstruct_lem3", "obstruct").exit_code == kExitCompleted);
  CHECK(run_named("decide_lambda_mu", "orbit").exit_code == kExitError);
  const auto rs = records(run_named("witness_identity", "witness"));
  REQUIRE_FALSE(rs.empty());
  CHECK(rs.back()["record"] == "status");
  CHECK(rs.back()["exit_code"] == kExitInconclusive);
}

TEST_CASE("identical spec and seed give byte-identical records") {
  for (const char* name : {"obstruct_lem3", "obstruct_finite_dim", "scaling", "verify_lambda_mu"}) {
    const ExperimentSpec s = parse_spec(spec_text(name));
    RunOptions o;
    o.command = *s.command.name;
    o.format = Format::Records;
    o.seed = 77;
    CHECK(run(s, o).records == run(s, o).records);
  }
}

TEST_CASE("budget caps the search") {
  const ExperimentSpec s = parse_spec(spec_text("witness_lambda_mu"));
  RunOptions o;
  o.command = "witness";
  o.budget = 0;
  CHECK(run(s, o).exit_code == kExitInconclusive);
}
