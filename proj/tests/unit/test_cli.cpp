#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "isodescent/forge.hpp"
#include "problem_io.hpp"
#include "support.hpp"

namespace isodescent {
namespace {

namespace fs = std::filesystem;
using testing::mat;
using testing::q5;

const char* kWorked = R"({
  "field": {"kind": "q-padic", "p": 5},
  "n": 2,
  "a": [["1","1"],["1","25"]],
  "b": [["25","1"],["1","1"]],
  "u": [["5","0"],["0","1/5"]]
}
)";

class Workspace : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("isodescent_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p, std::ios::binary) << text;
    return p.string();
  }

  /// Runs the installed executable; returns its exit status.
  int run(const std::string& args, std::string* out = nullptr) {
    const fs::path capture = dir_ / "stdout.txt";
    const std::string cmd = std::string(ISODESCENT_EXE) + " " + args + " > " + capture.string() + " 2> " +
                            (dir_ / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    if (out) *out = io::read_file(capture.string());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  fs::path dir_;
};

TEST_F(Workspace, DescendWorkedInstance) {
  const std::string problem = write("p.json", kWorked);
  std::string out;
  ASSERT_EQ(run("descend " + problem, &out), 0);
  EXPECT_EQ(out, "{\n  \"v\": [\n    [\"0\",\"1\"],\n    [\"1\",\"0\"]\n  ]\n}\n");
}

TEST_F(Workspace, DescendWritesTraceAndReport) {
  const std::string problem = write("p.json", kWorked);
  const std::string solution = (dir_ / "s.json").string();
  ASSERT_EQ(run("descend " + problem + " --trace --report -o " + solution), 0);
  const io::Json j = io::Json::parse(io::read_file(solution));
  EXPECT_EQ(j["trace"].size(), 5u);
  EXPECT_EQ(j["trace"][0]["step"], "LEFT_RIGHT_FACTOR");
  EXPECT_EQ(j["report"]["n"], 2);
  EXPECT_GT(j["report"]["matrix_mul_inv"].get<int>(), 0);
  std::string out;
  EXPECT_EQ(run("verify " + problem + " --solution " + solution, &out), 0);
  EXPECT_NE(out.find("PASS solution_congruence"), std::string::npos);
}

TEST_F(Workspace, GenerateVerifyDescendPipeline) {
  std::string problem_text;
  ASSERT_EQ(run("generate --field gaussian-inert:7 --n 5 --levels +2,-2,+1,-1 --rounds 1 --seed 3", &problem_text),
            0);
  const std::string problem = write("g.json", problem_text);
  EXPECT_EQ(run("verify " + problem), 0);
  const std::string solution = (dir_ / "s.json").string();
  ASSERT_EQ(run("descend " + problem + " -o " + solution), 0);
  EXPECT_EQ(run("verify " + problem + " --solution " + solution), 0);
  // Same flags, same bytes.
  std::string again;
  ASSERT_EQ(run("generate --field gaussian-inert:7 --n 5 --levels +2,-2,+1,-1 --rounds 1 --seed 3", &again), 0);
  EXPECT_EQ(again, problem_text);
}

TEST_F(Workspace, ExitCodes) {
  const std::string good = write("p.json", kWorked);
  EXPECT_EQ(run("descend " + write("bad.json", "{\"field\": ")), 3);

  std::string el_bad = kWorked;
  el_bad.replace(el_bad.find("\"1/5\""), 5, "\"5//3\"");
  EXPECT_EQ(run("descend " + write("el.json", el_bad)), 3);

  std::string asym = kWorked;
  const std::string sym_a = R"([["1","1"],["1","25"]])";
  asym.replace(asym.find(sym_a), sym_a.size(), R"([["1","2"],["1","25"]])");
  EXPECT_EQ(run("descend " + write("asym.json", asym)), 2);

  std::string wrong_u = kWorked;
  wrong_u.replace(wrong_u.find("[\"5\",\"0\"]"), 9, "[\"1\",\"0\"]");
  EXPECT_EQ(run("descend " + write("u.json", wrong_u)), 2);
  EXPECT_EQ(run("verify " + write("u2.json", wrong_u)), 1);

  std::string p2 = kWorked;
  p2.replace(p2.find("\"p\": 5"), 6, "\"p\": 2");
  EXPECT_EQ(run("descend " + write("p2.json", p2)), 2);
  EXPECT_EQ(run("generate --field q-padic:2 --n 2"), 2);

  EXPECT_EQ(run("generate --field q-padic:5 --n 3 --levels +1"), 2);  // unbalanced
  EXPECT_EQ(run("descend /nonexistent/problem.json"), 2);
  EXPECT_EQ(run("frobnicate"), 2);

  const std::string tampered = write("v.json", "{\"v\": [[\"1\",\"0\"],[\"0\",\"1\"]]}\n");
  EXPECT_EQ(run("verify " + good + " --solution " + tampered), 1);
}

TEST(ProblemIo, EmitParseRoundTripIsByteIdentical) {
  for (const auto& fd : testing::all_fields()) {
    const DescentProblem p = generate_instance(fd, {3, staircase_levels(3), 1, 12});
    const std::string text = io::emit_problem(p);
    const DescentProblem q = io::parse_problem(text);
    EXPECT_EQ(q.a, p.a);
    EXPECT_EQ(q.u, p.u);
    EXPECT_EQ(q.fd, p.fd);
    EXPECT_EQ(io::emit_problem(q), text);
  }
}

TEST(ProblemIo, StructuralErrors) {
  EXPECT_THROW(io::parse_problem("[]"), ParseError);
  EXPECT_THROW(io::parse_problem(R"({"field": {"kind": "q-padic", "p": 5}, "n": 1, "a": [["1"]], "b": [["1"]]})"),
               ParseError);
  EXPECT_THROW(io::parse_problem(
                   R"({"field": {"kind": "q-padic", "p": 5}, "n": 2, "a": [["1"]], "b": [["1"]], "u": [["1"]]})"),
               ParseError);
  EXPECT_THROW(io::parse_problem(R"({"field": {"kind": "q-padic", "p": 5}, "n": 1, "a": [[1]], "b": [["1"]], "u": [["1"]]})"),
               ParseError);
  try {
    io::parse_problem(R"({"field": {"kind": "q-padic", "p": 5}, "n": 1, "a": [["5//3"]], "b": [["1"]], "u": [["1"]]})");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 2u);
  }
}

TEST(ProblemIo, RatfuncFieldCarriesCoefficientPrime) {
  EXPECT_EQ(io::field_to_json(FieldDescriptor::ratfunc_tadic(7)).dump(), R"({"kind":"ratfunc-tadic","p":7})");
  EXPECT_EQ(io::field_from_json(io::Json::parse(R"({"kind":"ratfunc-tadic"})")), FieldDescriptor::ratfunc_tadic());
}

TEST(CliHelpers, ParseArguments) {
  EXPECT_EQ(cli::parse_levels("+1,-1,0"), (std::vector<std::int64_t>{1, -1, 0}));
  EXPECT_EQ(cli::parse_range("2..10"), (std::pair<std::size_t, std::size_t>{2, 10}));
  EXPECT_EQ(cli::parse_range("4"), (std::pair<std::size_t, std::size_t>{4, 4}));
  EXPECT_EQ(cli::parse_seeds("3"), (std::vector<std::uint64_t>{1, 2, 3}));
  EXPECT_EQ(cli::parse_seeds("7,9"), (std::vector<std::uint64_t>{7, 9}));
  EXPECT_THROW(cli::parse_levels("1,x"), Error);
  EXPECT_THROW(cli::parse_range("5..2"), Error);
}

TEST(Bench, CsvIsDeterministicApartFromTime) {
  cli::BenchOptions opts;
  opts.range = "2..4";
  opts.seeds = "2";
  std::ostringstream first, second, err;
  ASSERT_EQ(cli::cmd_bench(opts, first, err), 0);
  ASSERT_EQ(cli::cmd_bench(opts, second, err), 0);
  auto strip_time = [](const std::string& csv) {
    std::istringstream in(csv);
    std::string line, out;
    while (std::getline(in, line)) out += line.substr(0, line.rfind(',')) + "\n";
    return out;
  };
  EXPECT_EQ(strip_time(first.str()), strip_time(second.str()));
  std::istringstream lines(first.str());
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header, cli::bench_csv_header());
  int rows = 0;
  for (std::string line; std::getline(lines, line);) ++rows;
  EXPECT_EQ(rows, 6);
}

}  // namespace
}  // namespace isodescent
