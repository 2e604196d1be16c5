#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

using namespace isodescent::cli;

int main(int argc, char** argv) {
  CLI::App app{"isodescent: integral isometries of unimodular hermitian forms from rational ones"};
  app.require_subcommand(1);

  DescendOptions descend;
  auto* descend_cmd = app.add_subcommand("descend", "construct an isometry over S from a problem file");
  descend_cmd->add_option("input", descend.input, "problem file (JSON)")->required();
  descend_cmd->add_option("-o,--output", descend.output, "solution file (default: standard output)");
  descend_cmd->add_flag("--trace", descend.trace, "include the transformation trace");
  descend_cmd->add_flag("--report", descend.report, "include the cost report");

  GenerateOptions generate;
  auto* generate_cmd = app.add_subcommand("generate", "emit a random valid problem file");
  generate_cmd->add_option("--field", generate.field, "q-padic:P | gaussian-inert:P | ratfunc-tadic[:Q]");
  generate_cmd->add_option("--n", generate.n, "matrix size")->required();
  generate_cmd->add_option("--levels", generate.levels, "diagonal valuations of u, e.g. +1,-1 (padded with 0)");
  generate_cmd->add_option("--rounds", generate.rounds, "obfuscation rounds");
  generate_cmd->add_option("--seed", generate.seed, "PRNG seed");

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "check a problem file, and optionally a solution");
  verify_cmd->add_option("input", verify.input, "problem file (JSON)")->required();
  verify_cmd->add_option("--solution", verify.solution, "solution file to check against (a, b)");

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "cost profile over generated instances (CSV)");
  bench_cmd->add_option("--field", bench.field, "field descriptor");
  bench_cmd->add_option("--range", bench.range, "sizes, e.g. 2..10");
  bench_cmd->add_option("--seeds", bench.seeds, "seed count k (seeds 1..k) or comma list");
  bench_cmd->add_option("--repetitions", bench.repetitions, "runs per (n, seed)");
  bench_cmd->add_option("--rounds", bench.rounds, "obfuscation rounds per instance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kInvalidInput;
  }

  if (*descend_cmd) return cmd_descend(descend, std::cout, std::cerr);
  if (*generate_cmd) return cmd_generate(generate, std::cout, std::cerr);
  if (*verify_cmd) return cmd_verify(verify, std::cout, std::cerr);
  return cmd_bench(bench, std::cout, std::cerr);
}
