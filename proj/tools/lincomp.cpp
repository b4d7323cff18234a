#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace lincomp::cli;
  CLI::App app{"Linear network codes for computing linear functions at one receiver"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  Args args;
  bool json = false;
  auto add = [&](const std::string& name, const std::string& help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--network", args.network, "network file");
    sub->add_option("--target", args.target, "target matrix file");
    sub->add_option("--code", args.code, "linear code file");
    sub->add_option("--seed", args.seed, "random seed");
    sub->add_option("--out", args.out, "output file");
    sub->add_flag("--json", json, "print the full report as JSON");
    return sub;
  };
  add("validate", "check a network file");
  add("mincut", "min-cut ratio with a witness cut");
  auto* gb = add("groebner-test", "decide solvability with a Groebner basis");
  gb->add_option("--pin", args.pins, "fix an indeterminate, e.g. x[A,0,1]=1");
  gb->add_option("--order", args.order, "grevlex or lex")->check(CLI::IsMember({"grevlex", "lex"}));
  gb->add_option("--max-reductions", args.max_reductions, "abort after this many reductions");
  gb->add_flag("--dump-basis", args.dump_basis, "include the reduced basis");
  add("classify", "equivalence class of a target matrix");
  add("synthesize", "construct a code or report why none is built");
  add("verify", "check a code against a target");
  add("counterexample", "network without a linear solution for a zero-class target")
      ->add_option("--out-dir", args.out_dir, "directory for network.json, target.json, report.json");
  add("simulate", "run messages through a code")->add_option("--messages", args.messages, "JSON array, one per source");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kInputError;
  }
  args.command = app.get_subcommands().front()->get_name();

  const auto outcome = run(args);
  const bool writes_code = args.command == "synthesize";
  if (!args.out.empty() && !writes_code) {
    try {
      write_json(args.out, outcome.report);
    } catch (const lincomp::Error& ex) {
      std::cerr << "error: " << ex.what() << '\n';
      return kInputError;
    }
  }
  if (json) std::cout << outcome.report.dump(2) << '\n';
  else if (outcome.exit_code == kInputError) std::cerr << "error: " << outcome.summary << '\n';
  else std::cout << outcome.summary << '\n';
  return outcome.exit_code;
}
