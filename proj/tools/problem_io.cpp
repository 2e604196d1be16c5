#include "problem_io.hpp"

#include <fstream>
#include <sstream>

#include "isodescent/element_io.hpp"
#include "isodescent/error.hpp"

namespace isodescent::io {

namespace {

[[noreturn]] void structure_error(const std::string& what) { throw ParseError(0, what); }

const Json& require_key(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) structure_error(std::string("missing key '") + key + "'");
  return j.at(key);
}

std::string rows_block(const Matrix& m, const std::string& indent) {
  if (m.rows() == 0) return "[]";
  std::string s = "[\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(format_element(m(i, j)));
    s += indent + "  " + row.dump() + (i + 1 < m.rows() ? ",\n" : "\n");
  }
  return s + indent + "]";
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(e.byte, std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

Json field_to_json(const FieldDescriptor& fd) {
  Json j;
  j["kind"] = fd.kind_name();
  j["p"] = fd.kind == FieldKind::RatfuncTadic ? fd.coefficient_prime : fd.p;
  return j;
}

FieldDescriptor field_from_json(const Json& j) {
  const Json& kind = require_key(j, "kind");
  if (!kind.is_string()) structure_error("field kind must be a string");
  std::int64_t p = 0;
  if (j.contains("p")) {
    if (!j.at("p").is_number_integer()) structure_error("field p must be an integer");
    p = j.at("p").get<std::int64_t>();
  }
  const std::string k = kind.get<std::string>();
  if (k == "q-padic") return FieldDescriptor::rational_padic(p);
  if (k == "gaussian-inert") return FieldDescriptor::gaussian_inert(p);
  if (k == "ratfunc-tadic") return FieldDescriptor::ratfunc_tadic(p);
  structure_error("unknown field kind '" + k + "'");
}

Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(format_element(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

Matrix matrix_from_json(const Json& j, const FieldDescriptor& fd, std::size_t n, std::string_view name) {
  const std::string nm(name);
  if (!j.is_array() || j.size() != n) structure_error("'" + nm + "' must have " + std::to_string(n) + " rows");
  Matrix m(fd, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const Json& row = j[i];
    if (!row.is_array() || row.size() != n) {
      structure_error("'" + nm + "' row " + std::to_string(i) + " must have " + std::to_string(n) + " entries");
    }
    for (std::size_t c = 0; c < n; ++c) {
      const std::string where = nm + "[" + std::to_string(i) + "][" + std::to_string(c) + "]";
      if (!row[c].is_string()) structure_error(where + " must be a string");
      try {
        m.at(i, c) = parse_element(row[c].get<std::string>(), fd);
      } catch (const ParseError& e) {
        throw ParseError(e.position(), where + " \"" + row[c].get<std::string>() + "\": " + e.what());
      }
    }
  }
  return m;
}

Json trace_to_json(const DescentTrace& trace) {
  Json out = Json::array();
  for (const TraceStep& step : trace.steps) {
    Json j;
    j["step"] = step_name(step);
    if (const auto* s = std::get_if<FactorStep>(&step)) {
      j["left"] = matrix_to_json(s->left);
      j["right"] = matrix_to_json(s->right);
    } else if (const auto* s = std::get_if<PermuteStep>(&step)) {
      j["permutation"] = s->perm.images;
    } else if (const auto* s = std::get_if<LevelReduceStep>(&step)) {
      j["gamma_top"] = s->gamma_top;
      j["gamma_next"] = s->gamma_next;
      j["r"] = s->r;
      j["s"] = s->s;
      j["pi"] = format_element(s->pi);
      j["uprime"] = matrix_to_json(s->uprime);
    } else if (const auto* s = std::get_if<BlockEliminateStep>(&step)) {
      j["v"] = matrix_to_json(s->v);
      j["w"] = matrix_to_json(s->w);
    } else if (const auto* s = std::get_if<NormalizeYStep>(&step)) {
      j["nhat"] = matrix_to_json(s->nhat);
    } else if (const auto* s = std::get_if<CoreIdentityStep>(&step)) {
      j["u"] = matrix_to_json(s->u);
    }
    out.push_back(std::move(j));
  }
  return out;
}

Json report_to_json(const CostReport& report) {
  Json j;
  j["n"] = report.n;
  j["matrix_mul_inv"] = report.counters.matrix_mul_inv;
  j["valuations"] = report.counters.valuations;
  j["value_group_ops"] = report.counters.value_group_ops;
  j["uniformizer_lookups"] = report.counters.uniformizer_lookups;
  j["max_bit_length"] = report.max_bit_length;
  j["wall_seconds"] = report.wall_seconds;
  return j;
}

std::string emit_problem(const DescentProblem& problem) {
  std::string s = "{\n";
  s += "  \"field\": " + field_to_json(problem.fd).dump() + ",\n";
  s += "  \"n\": " + std::to_string(problem.a.rows()) + ",\n";
  s += "  \"a\": " + rows_block(problem.a, "  ") + ",\n";
  s += "  \"b\": " + rows_block(problem.b, "  ") + ",\n";
  s += "  \"u\": " + rows_block(problem.u, "  ") + "\n";
  return s + "}\n";
}

DescentProblem parse_problem(std::string_view text) {
  const Json j = parse_json(text);
  if (!j.is_object()) structure_error("problem file must be a JSON object");
  const FieldDescriptor fd = field_from_json(require_key(j, "field"));
  const Json& n_json = require_key(j, "n");
  if (!n_json.is_number_integer() || n_json.get<long long>() < 0) structure_error("'n' must be a non-negative integer");
  const auto n = n_json.get<std::size_t>();
  DescentProblem p{fd, matrix_from_json(require_key(j, "a"), fd, n, "a"),
                   matrix_from_json(require_key(j, "b"), fd, n, "b"),
                   matrix_from_json(require_key(j, "u"), fd, n, "u")};
  return p;
}

std::string emit_solution(const Matrix& v, const DescentTrace* trace, const CostReport* report) {
  std::string s = "{\n  \"v\": " + rows_block(v, "  ");
  if (trace) {
    s += ",\n  \"trace\": [";
    const Json steps = trace_to_json(*trace);
    for (std::size_t k = 0; k < steps.size(); ++k) s += (k ? ",\n    " : "\n    ") + steps[k].dump();
    s += steps.empty() ? "]" : "\n  ]";
  }
  if (report) s += ",\n  \"report\": " + report_to_json(*report).dump();
  return s + "\n}\n";
}

Matrix parse_solution(std::string_view text, const FieldDescriptor& fd, std::size_t n) {
  const Json j = parse_json(text);
  return matrix_from_json(require_key(j, "v"), fd, n, "v");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace isodescent::io
