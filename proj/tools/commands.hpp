#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "isodescent/error.hpp"
#include "problem_io.hpp"

namespace isodescent::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kInvalidInput = 2,
  kParseError = 3,
  kInternalInvariant = 4,
  kGenerationFailed = 5,
};

int exit_code_for(ErrorCode code);

struct DescendOptions {
  std::string input;
  std::string output;  // empty: standard output
  bool trace = false;
  bool report = false;
};

struct GenerateOptions {
  std::string field = "q-padic:5";
  std::size_t n = 2;
  std::string levels;  // e.g. "+1,-1"; empty means all zero
  std::size_t rounds = 0;
  std::uint64_t seed = 0;
};

struct VerifyOptions {
  std::string input;
  std::string solution;  // optional solution file to check against (a, b)
};

struct BenchOptions {
  std::string field = "q-padic:5";
  std::string range = "2..10";
  std::string seeds = "3";  // a count k (seeds 1..k) or a comma list
  std::size_t repetitions = 1;
  std::size_t rounds = 1;
};

int cmd_descend(const DescendOptions& opts, std::ostream& out, std::ostream& err);
int cmd_generate(const GenerateOptions& opts, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err);
int cmd_bench(const BenchOptions& opts, std::ostream& out, std::ostream& err);

/// "+1,-1,0" -> {1, -1, 0}; throws InvalidInput.
std::vector<std::int64_t> parse_levels(const std::string& text);
/// "2..10" -> {2, 10}; a single number means a one-element range.
std::pair<std::size_t, std::size_t> parse_range(const std::string& text);
std::vector<std::uint64_t> parse_seeds(const std::string& text);

struct BenchRow {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::size_t repetition = 0;
  std::string status = "ok";
  io::CostReport report;
};

/// Generates the staircase instance for (n, seed), descends it and measures.
BenchRow run_bench_cell(const FieldDescriptor& fd, std::size_t n, std::uint64_t seed, std::size_t rounds,
                        std::size_t repetition = 0);

const char* bench_csv_header();
std::string bench_csv_row(const BenchRow& row);

}  // namespace isodescent::cli
