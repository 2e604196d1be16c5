#include "commands.hpp"

#include <charconv>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "isodescent/descent.hpp"
#include "isodescent/forge.hpp"

namespace isodescent::cli {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::DimensionMismatch: return kParseError;
    case ErrorCode::InvalidInput:
    case ErrorCode::InvalidField:
    case ErrorCode::FieldMismatch:
    case ErrorCode::DivisionByZero: return kInvalidInput;
    case ErrorCode::SingularMatrix:
    case ErrorCode::BalanceViolation:
    case ErrorCode::InternalInvariant: return kInternalInvariant;
    case ErrorCode::GenerationFailed: return kGenerationFailed;
  }
  return kInternalInvariant;
}

namespace {

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
}

std::int64_t parse_int(std::string_view s, const std::string& what) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::InvalidInput, "bad " + what + " '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream ss(text);
  while (std::getline(ss, cur, sep)) parts.push_back(cur);
  return parts;
}

}  // namespace

std::vector<std::int64_t> parse_levels(const std::string& text) {
  std::vector<std::int64_t> levels;
  if (text.empty()) return levels;
  for (const std::string& part : split(text, ',')) levels.push_back(parse_int(part, "level"));
  return levels;
}

std::pair<std::size_t, std::size_t> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  const std::int64_t lo = parse_int(text.substr(0, dots), "range");
  const std::int64_t hi = dots == std::string::npos ? lo : parse_int(text.substr(dots + 2), "range");
  if (lo < 0 || hi < lo) throw Error(ErrorCode::InvalidInput, "bad range '" + text + "'");
  return {static_cast<std::size_t>(lo), static_cast<std::size_t>(hi)};
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  if (text.find(',') == std::string::npos) {
    const std::int64_t k = parse_int(text, "seed count");
    if (k <= 0) throw Error(ErrorCode::InvalidInput, "seed count must be positive");
    for (std::int64_t s = 1; s <= k; ++s) seeds.push_back(static_cast<std::uint64_t>(s));
    return seeds;
  }
  for (const std::string& part : split(text, ',')) {
    const std::int64_t s = parse_int(part, "seed");
    if (s < 0) throw Error(ErrorCode::InvalidInput, "seeds must be non-negative");
    seeds.push_back(static_cast<std::uint64_t>(s));
  }
  return seeds;
}

int cmd_descend(const DescendOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const DescentProblem problem = io::parse_problem(io::read_file(opts.input));
    CostRecorder recorder;
    const auto start = std::chrono::steady_clock::now();
    const DescentResult result = descend(problem, opts.report ? &recorder : nullptr);
    const auto stop = std::chrono::steady_clock::now();

    io::CostReport report;
    report.n = problem.a.rows();
    report.counters = recorder;
    report.max_bit_length = max_bit_length(result.v);
    report.wall_seconds = std::chrono::duration<double>(stop - start).count();

    const std::string text =
        io::emit_solution(result.v, opts.trace ? &result.trace : nullptr, opts.report ? &report : nullptr);
    if (opts.output.empty()) {
      out << text;
    } else {
      std::ofstream file(opts.output, std::ios::binary);
      if (!file) throw Error(ErrorCode::InvalidInput, "cannot write '" + opts.output + "'");
      file << text;
    }
    return static_cast<int>(kOk);
  });
}

int cmd_generate(const GenerateOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const FieldDescriptor fd = FieldDescriptor::parse(opts.field);
    GenProfile profile{opts.n, parse_levels(opts.levels), opts.rounds, opts.seed};
    const DescentProblem problem = generate_instance(fd, profile);
    out << io::emit_problem(problem);
    return static_cast<int>(kOk);
  });
}

int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const DescentProblem problem = io::parse_problem(io::read_file(opts.input));
    VerificationReport report = verify_instance(problem);
    if (!opts.solution.empty()) {
      const Matrix v = io::parse_solution(io::read_file(opts.solution), problem.fd, problem.a.rows());
      for (Check c : verify_solution(problem.a, problem.b, v).checks) {
        c.name = "solution_" + c.name;
        report.checks.push_back(std::move(c));
      }
    }
    for (const Check& c : report.checks) out << (c.passed ? "PASS " : "FAIL ") << c.name << "\n";
    return static_cast<int>(report.all_passed() ? kOk : kVerificationFailed);
  });
}

BenchRow run_bench_cell(const FieldDescriptor& fd, std::size_t n, std::uint64_t seed, std::size_t rounds,
                        std::size_t repetition) {
  BenchRow row;
  row.n = n;
  row.seed = seed;
  row.repetition = repetition;
  row.report.n = n;
  try {
    const DescentProblem problem = generate_instance(fd, {n, staircase_levels(n), rounds, seed});
    const auto start = std::chrono::steady_clock::now();
    const DescentResult result = descend(problem, &row.report.counters);
    const auto stop = std::chrono::steady_clock::now();
    row.report.wall_seconds = std::chrono::duration<double>(stop - start).count();
    row.report.max_bit_length = max_bit_length(result.v);
  } catch (const Error& e) {
    row.status = to_string(e.code());
  }
  return row;
}

const char* bench_csv_header() {
  return "n,seed,repetition,status,matrix_mul_inv,valuations,value_group_ops,uniformizer_lookups,"
         "max_bit_length,wall_ms";
}

std::string bench_csv_row(const BenchRow& row) {
  std::ostringstream s;
  const auto& c = row.report.counters;
  s << row.n << ',' << row.seed << ',' << row.repetition << ',' << row.status << ',' << c.matrix_mul_inv << ','
    << c.valuations << ',' << c.value_group_ops << ',' << c.uniformizer_lookups << ','
    << row.report.max_bit_length << ',' << std::fixed << std::setprecision(3)
    << row.report.wall_seconds * 1000.0;
  return s.str();
}

int cmd_bench(const BenchOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const FieldDescriptor fd = FieldDescriptor::parse(opts.field);
    const auto [lo, hi] = parse_range(opts.range);
    const std::vector<std::uint64_t> seeds = parse_seeds(opts.seeds);
    out << bench_csv_header() << "\n";
    bool all_ok = true;
    for (std::size_t n = lo; n <= hi; ++n) {
      for (std::uint64_t seed : seeds) {
        for (std::size_t rep = 0; rep < opts.repetitions; ++rep) {
          const BenchRow row = run_bench_cell(fd, n, seed, opts.rounds, rep);
          all_ok = all_ok && row.status == "ok";
          out << bench_csv_row(row) << "\n" << std::flush;
        }
      }
    }
    return static_cast<int>(all_ok ? kOk : kInternalInvariant);
  });
}

}  // namespace isodescent::cli
