// verify run <suite> [--config PATH] [--seed N] [--format json|text] [--out PATH]
// verify list
// exit codes: 0 all cases pass, 1 a case fails, 2 usage or configuration error

#include <iostream>

#include "CLI11.hpp"
#include "ca/report.hpp"
#include "ca/suites.hpp"

using namespace ca::cli;

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification suites for the current algebras"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "print suite names");
  auto* run = app.add_subcommand("run", "run a suite and emit its report");
  std::string suite, config_path, format = "text", out;
  long long seed = -1;
  run->add_option("suite", suite, "suite name or 'all'")->required();
  run->add_option("--config", config_path, "key = value configuration file");
  run->add_option("--seed", seed, "overrides the configured seed")->check(CLI::NonNegativeNumber);
  run->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
  run->add_option("--out", out, "report path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (*list) {
    for (auto& n : suite_names()) std::cout << n << "\n";
    std::cout << "all\n";
    return 0;
  }

  try {
    SuiteConfig cfg = config_path.empty() ? SuiteConfig{} : load_config(config_path);
    if (seed >= 0) cfg.seed = std::uint64_t(seed);
    cfg.suite = suite;
    validate(cfg);
    auto rep = run_suite(suite, cfg);
    emit_report(rep, format == "json" ? Format::json : Format::text, out);
    return all_pass(rep) ? 0 : 1;
  } catch (const config_error& e) {
    std::cerr << "verify: " << e.what() << "\n";
    return 2;
  }
}
