#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "isodescent/cost.hpp"
#include "isodescent/descent.hpp"

namespace isodescent::io {

using Json = nlohmann::ordered_json;

/// Per-run cost summary written by `descend --report` and `bench`.
struct CostReport {
  std::size_t n = 0;
  CostRecorder counters;
  std::size_t max_bit_length = 0;  // over the entries of v
  double wall_seconds = 0.0;
};

Json field_to_json(const FieldDescriptor& fd);
/// {"kind": ..., "p": ...}; for ratfunc-tadic "p" is the coefficient prime
/// (0 or absent for Q).
FieldDescriptor field_from_json(const Json& j);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, const FieldDescriptor& fd, std::size_t n, std::string_view name);

Json trace_to_json(const DescentTrace& trace);
Json report_to_json(const CostReport& report);

/// Problem file:
///   {"field": {...}, "n": N, "a": [[...]], "b": [[...]], "u": [[...]]}
/// Element strings use the element grammar. Output is stable: one matrix row
/// per line, so emit(parse(emit(p))) == emit(p) byte for byte.
std::string emit_problem(const DescentProblem& problem);
/// Throws ParseError for malformed JSON, missing keys, wrong shapes or bad
/// element strings; throws Error(InvalidField) for inadmissible fields.
DescentProblem parse_problem(std::string_view text);

/// Solution file: {"v": [[...]], "trace": [...], "report": {...}}; the last
/// two keys are optional.
std::string emit_solution(const Matrix& v, const DescentTrace* trace, const CostReport* report);
Matrix parse_solution(std::string_view text, const FieldDescriptor& fd, std::size_t n);

std::string read_file(const std::string& path);

}  // namespace isodescent::io
