#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "padyn/cli.hpp"

namespace {

int usage_error(const std::string& message) {
  std::cerr << "error: " << message << '\n';
  return padyn::cli::kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace padyn::cli;
  CLI::App app{"padyn: exact hypercyclicity deciders and witnesses for shifts on c0 over Q_p"};
  app.require_subcommand(1, 1);

  std::string spec_path;
  std::string report_path;
  std::string format = "human";
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> budget;

  for (const char* name : kCommands) {
    const std::string n = name;
    CLI::App* sub = app.add_subcommand(n, n == "selftest" ? "run the acceptance suite" : "run the " + n + " experiment");
    auto* spec_opt = sub->add_option("--spec", spec_path, "experiment spec file (see docs/spec-format.md)");
    if (n != "selftest") spec_opt->required();
    spec_opt->check(CLI::ExistingFile);
    sub->add_option("--report", report_path, "also write line-delimited JSON records to this file");
    sub->add_option("--format", format, "standard output format")->check(CLI::IsMember({"human", "records"}));
    sub->add_option("--seed", seed, "random seed (overrides command.seed)");
    sub->add_option("--budget", budget, "upper bound on n for searches and k for criterion checks")
        ->check(CLI::NonNegativeNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  RunOptions opts;
  opts.command = app.get_subcommands().front()->get_name();
  opts.format = format == "records" ? Format::Records : Format::Human;
  opts.seed = seed;
  opts.budget = budget;

  ExperimentSpec spec;
  RunOutput out;
  try {
    if (!spec_path.empty()) {
      std::ifstream in(spec_path);
      if (!in) return usage_error("cannot read " + spec_path);
      std::stringstream text;
      text << in.rdbuf();
      spec = parse_spec(text.str());
    }
    out = run(spec, opts);
  } catch (const SpecError& e) {
    // The record stream still carries every diagnostic.
    out.exit_code = kExitError;
    out.human = std::string(e.what()) + "\nstatus: error\n";
    std::ostringstream rec;
    for (const auto& d : e.diagnostics()) {
      rec << nlohmann::ordered_json{{"record", "error"}, {"code", to_string(e.kind())}, {"line", d.line},
                                    {"key", d.key}, {"message", d.message}}
                 .dump()
          << '\n';
    }
    rec << nlohmann::ordered_json{{"record", "status"}, {"exit_code", kExitError}, {"outcome", "error"}}.dump() << '\n';
    out.records = rec.str();
  }

  if (!report_path.empty()) {
    std::ofstream rep(report_path, std::ios::binary);
    if (!rep) return usage_error("cannot write " + report_path);
    rep << out.records;
  }
  if (opts.format == Format::Records) std::cout << out.records;
  else std::cout << out.human;
  if (out.exit_code == kExitError) std::cerr << "padyn: " << opts.command << " failed\n";
  return out.exit_code;
}
