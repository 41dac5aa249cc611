#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qsrlab/errors.hpp"
#include "qsrlab/harness.hpp"

#ifndef QSRLAB_DATA_DIR
#define QSRLAB_DATA_DIR "data"
#endif

using namespace qsrlab;

int main(int argc, char** argv) {
  CLI::App app{"Quasi-semiregular elements in permutation group actions"};
  app.require_subcommand(1);

  harness::RunConfig cfg;
  cfg.data_dir = QSRLAB_DATA_DIR;
  std::string format = "text";
  std::string max_order = cfg.budgets.max_order.str();
  bool no_timing = false;

  app.add_option("--data", cfg.data_dir, "Dataset directory")->check(CLI::ExistingDirectory);
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "jsonl"}));
  app.add_option("--seed", cfg.seed, "RNG seed");
  app.add_option("--max-order", max_order, "Largest group order handled");
  app.add_option("--max-degree", cfg.budgets.max_degree, "Largest action degree")->check(CLI::PositiveNumber);
  app.add_flag("--no-timing", no_timing, "Omit wall times so structured output is reproducible byte for byte");

  std::size_t max_n = 13;
  auto* tables = app.add_subcommand("tables", "Sym/Alt actions against the closed forms, exceptional rows");
  tables->add_option("--max-n", max_n, "Largest n")->check(CLI::Range(5, 13));

  std::vector<std::string> only;
  auto* sporadic = app.add_subcommand("sporadic", "Mathieu coset actions against the expected rows");
  sporadic->add_option("--only", only, "Restrict to these groups")->check(CLI::IsMember(harness::sporadic_groups()));

  auto* structural = app.add_subcommand("structural", "Product action, simple diagonal and HS-type checks");
  auto* affine = app.add_subcommand("affine", "Affine instances");

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "Cross-module property suites");
  std::vector<std::string> suites = harness::verify_suites();
  suites.push_back("all");
  verify->add_option("--suite", suite, "Suite name")->check(CLI::IsMember(suites));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    cfg.budgets.max_order = BigInt(max_order);
  } catch (const std::exception&) {
    std::cerr << "--max-order: not an integer: " << max_order << "\n";
    return 2;
  }
  if (cfg.budgets.max_order <= 0) {
    std::cerr << "--max-order must be positive\n";
    return 2;
  }
  cfg.timing = !no_timing;

  try {
    harness::Report report;
    if (*tables)
      report = harness::run_tables(max_n, cfg);
    else if (*sporadic)
      report = harness::run_sporadic(only, cfg);
    else if (*structural)
      report = harness::run_structural(cfg);
    else if (*affine)
      report = harness::run_affine(cfg);
    else if (*verify)
      report = harness::run_verify(suite, cfg);
    std::cout << (format == "jsonl" ? harness::format_jsonl(report, cfg) : harness::format_text(report, cfg));
    return report.exit_code();
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DatasetError& e) {
    std::cerr << "dataset error: " << e.what() << "\n";
    return 2;
  }
}
