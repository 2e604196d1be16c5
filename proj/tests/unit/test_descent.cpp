#include <gtest/gtest.h>

#include "isodescent/descent.hpp"
#include "isodescent/error.hpp"
#include "isodescent/forge.hpp"
#include "support.hpp"

namespace isodescent {
namespace {

using testing::all_fields;
using testing::el;
using testing::mat;
using testing::q5;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an isodescent::Error";
  return ErrorCode::InternalInvariant;
}

DescentProblem worked_instance() {
  const FieldDescriptor fd = q5();
  return {fd, mat(fd, {{"1", "1"}, {"1", "25"}}), mat(fd, {{"25", "1"}, {"1", "1"}}),
          mat(fd, {{"5", "0"}, {"0", "1/5"}})};
}

std::vector<std::string> step_names(const DescentTrace& trace) {
  std::vector<std::string> out;
  for (const auto& s : trace.steps) out.emplace_back(step_name(s));
  return out;
}

TEST(Descend, WorkedInstanceGivesTheSwap) {
  const DescentProblem p = worked_instance();
  const DescentResult r = descend(p);
  EXPECT_EQ(r.v, mat(p.fd, {{"0", "1"}, {"1", "0"}}));
  EXPECT_TRUE(is_unimodular(r.v));
  EXPECT_EQ(congruence(p.a, r.v), p.b);
  EXPECT_EQ(step_names(r.trace), (std::vector<std::string>{"LEFT_RIGHT_FACTOR", "LEVEL_REDUCE", "BLOCK_ELIMINATE",
                                                           "NORMALIZE_Y", "CORE_IDENTITY"}));
  const auto& lr = std::get<LevelReduceStep>(r.trace.steps[1]);
  EXPECT_EQ(lr.gamma_top, 1);
  EXPECT_EQ(lr.gamma_next, 0);
  EXPECT_EQ(lr.r, 1u);
  EXPECT_EQ(lr.s, 1u);
  EXPECT_EQ(lr.pi, el(p.fd, "5"));
  EXPECT_EQ(replay(p, r.trace), r.v);
}

TEST(Descend, UnimodularIsometryNeedsNoLevels) {
  const FieldDescriptor fd = q5();
  const Matrix a = mat(fd, {{"1", "0"}, {"0", "2"}});
  const Matrix u = mat(fd, {{"1", "1"}, {"0", "1"}});
  const DescentProblem p{fd, a, congruence(a, u), u};
  const DescentResult r = descend(p);
  EXPECT_EQ(congruence(a, r.v), p.b);
  EXPECT_TRUE(is_unimodular(r.v));
  EXPECT_EQ(step_names(r.trace), std::vector<std::string>{"LEFT_RIGHT_FACTOR"});
}

TEST(Descend, RejectsInvalidProblems) {
  DescentProblem p = worked_instance();
  p.a.at(0, 1) = el(p.fd, "2");  // no longer symmetric
  EXPECT_EQ(code_of([&] { descend(p); }), ErrorCode::InvalidInput);

  DescentProblem q = worked_instance();
  q.u = mat(q.fd, {{"1", "0"}, {"0", "1"}});  // u a u* != b
  EXPECT_EQ(code_of([&] { descend(q); }), ErrorCode::InvalidInput);

  DescentProblem r = worked_instance();
  r.a = mat(r.fd, {{"5", "1"}, {"1", "0"}});
  r.a.at(1, 1) = el(r.fd, "1/5");  // not integral
  EXPECT_EQ(code_of([&] { descend(r); }), ErrorCode::InvalidInput);

  DescentProblem s = worked_instance();
  s.u = Matrix(s.fd, 2, 2);
  EXPECT_EQ(code_of([&] { descend(s); }), ErrorCode::InvalidInput);
}

TEST(DiagonalDecompose, UnimodularInputHasTrivialDiagonal) {
  const FieldDescriptor fd = q5();
  const Matrix z = mat(fd, {{"5", "1"}, {"1", "0"}});
  const DiagonalDecomposition d = diagonal_decompose(z);
  EXPECT_EQ(d.diag, Matrix::identity(fd, 2));
  EXPECT_TRUE(is_unimodular(d.left));
  EXPECT_TRUE(is_unimodular(d.right));
  EXPECT_EQ(mul(d.left, mul(d.diag, d.right)), z);
}

TEST(DiagonalDecompose, DiagonalInputIsReturnedAsIs) {
  const FieldDescriptor fd = q5();
  const Matrix z = mat(fd, {{"1/5", "0"}, {"0", "125"}});
  const DiagonalDecomposition d = diagonal_decompose(z);
  EXPECT_EQ(d.diag, z);
  EXPECT_EQ(d.left, Matrix::identity(fd, 2));
  EXPECT_EQ(d.right, Matrix::identity(fd, 2));
}

TEST(DiagonalDecompose, PivotsOnMinimalValuation) {
  const FieldDescriptor fd = q5();
  const Matrix z = mat(fd, {{"1/5", "2"}, {"10", "3"}});
  const DiagonalDecomposition d = diagonal_decompose(z);
  // The 1/5 entry is the unique minimal valuation, so it survives as d_11
  // and the Schur complement 3 - 10 * 5 * 2 = -97 is the other entry.
  EXPECT_EQ(d.diag, mat(fd, {{"1/5", "0"}, {"0", "-97"}}));
  EXPECT_EQ(mul(d.left, mul(d.diag, d.right)), z);
}

TEST(DiagonalDecompose, SingularInput) {
  const FieldDescriptor fd = q5();
  EXPECT_EQ(code_of([&] { diagonal_decompose(mat(fd, {{"1", "2"}, {"2", "4"}})); }), ErrorCode::SingularMatrix);
}

TEST(DiagonalDecompose, ReconstructsRandomMatrices) {
  for (const auto& fd : all_fields()) {
    Rng rng(41 + static_cast<std::uint64_t>(fd.p + 13 * fd.coefficient_prime));
    for (int k = 0; k < 30; ++k) {
      const auto n = static_cast<std::size_t>(rng.uniform(1, 4));
      const Matrix z = testing::random_invertible(fd, n, rng);
      const DiagonalDecomposition d = diagonal_decompose(z);
      ASSERT_TRUE(d.diag.is_diagonal());
      ASSERT_TRUE(is_unimodular(d.left));
      ASSERT_TRUE(is_unimodular(d.right));
      ASSERT_EQ(mul(d.left, mul(d.diag, d.right)), z) << fd.to_string();
    }
  }
}

TEST(SortBalance, OrdersLevelsOutsideIn) {
  const FieldDescriptor fd = q5();
  const std::vector<FieldElement> ds{el(fd, "5"), el(fd, "1/25"), el(fd, "25"), el(fd, "1/5")};
  const SortBalance sb = sort_balance(Matrix::diagonal(fd, ds));
  const Matrix sorted = apply_permutation(sb.perm, Matrix::diagonal(fd, ds), PermuteSide::Congruent);
  const std::vector<FieldElement> expect{el(fd, "25"), el(fd, "1/25"), el(fd, "5"), el(fd, "1/5")};
  EXPECT_EQ(sorted, Matrix::diagonal(fd, expect));
  EXPECT_EQ(sb.profile.gammas, (std::vector<std::int64_t>{2, 1, 0}));
  EXPECT_EQ(sb.profile.plus, (std::vector<std::size_t>{1, 1, 0}));
  EXPECT_EQ(sb.profile.minus, (std::vector<std::size_t>{1, 1, 0}));
  EXPECT_EQ(sb.profile.levels(), 2u);
}

TEST(SortBalance, UnitDiagonalHasNoLevels) {
  const FieldDescriptor fd = q5();
  const SortBalance sb = sort_balance(Matrix::identity(fd, 3));
  EXPECT_EQ(sb.profile.levels(), 0u);
  EXPECT_EQ(sb.perm, Permutation::identity(3));
}

TEST(SortBalance, UnbalancedTopLevelIsReported) {
  const FieldDescriptor fd = q5();
  const std::vector<FieldElement> ds{el(fd, "5"), el(fd, "1")};
  EXPECT_EQ(code_of([&] { sort_balance(Matrix::diagonal(fd, ds)); }), ErrorCode::BalanceViolation);
}

TEST(LevelReduce, WorkedInstance) {
  const DescentProblem p = worked_instance();
  const SortBalance sb = sort_balance(p.u);
  const LevelReduction lr = level_reduce(p.a, p.u, sb.profile);
  EXPECT_EQ(lr.pi, el(p.fd, "5"));
  EXPECT_EQ(lr.r, 1u);
  EXPECT_EQ(lr.uprime, p.u);
  EXPECT_EQ(lr.bprime, p.b);
}

TEST(BlockEliminate, ThreeByThreeByHand) {
  const FieldDescriptor fd = q5();
  // a = [a11, a12, a13; a12, pi^2 a22, pi a23; a13, pi a23, a33] with
  // pi = 5, a11 = 1, a12 = 1, a13 = 2, a22 = 1, a23 = 1, a33 = 1.
  const Matrix a = mat(fd, {{"1", "1", "2"}, {"1", "25", "5"}, {"2", "5", "1"}});
  const Matrix uprime = mat(fd, {{"5", "0", "0"}, {"0", "1/5", "0"}, {"0", "0", "1"}});
  const Matrix bprime = congruence(a, uprime);
  ASSERT_EQ(bprime, mat(fd, {{"25", "1", "10"}, {"1", "1", "1"}, {"10", "1", "1"}}));
  const BlockElimination be = block_eliminate(a, bprime, el(fd, "5"), 1);
  // x = 1 - 2*2 = -3, y = 1 - 5*2*1 = -9, z = 1 - 1*1 = 0.
  EXPECT_EQ(be.x, mat(fd, {{"-3"}}));
  EXPECT_EQ(be.y, mat(fd, {{"-9"}}));
  EXPECT_EQ(be.z, mat(fd, {{"0"}}));
  EXPECT_EQ(be.a33, mat(fd, {{"1"}}));
  EXPECT_EQ(be.v, mat(fd, {{"1", "0", "-2"}, {"0", "1", "-5"}, {"0", "0", "1"}}));
  EXPECT_EQ(be.w, mat(fd, {{"1", "0", "-10"}, {"0", "1", "-1"}, {"0", "0", "1"}}));
}

TEST(NormalizeY, MakesOffDiagonalBlockTheIdentity) {
  const FieldDescriptor fd = q5();
  const NormalizedY ny = normalize_y(mat(fd, {{"-3"}}), mat(fd, {{"-9"}}), mat(fd, {{"0"}}), el(fd, "5"));
  EXPECT_EQ(ny.nhat, mat(fd, {{"-1/9", "0"}, {"0", "1"}}));
  EXPECT_EQ(ny.xprime, mat(fd, {{"-1/27"}}));
}

TEST(CoreIsometry, HandComputedCase) {
  const FieldDescriptor fd = q5();
  // x = 1, z = 0, pi = 5: w = (2 - 5)^{-1} = -1/3.
  const Matrix u = core_isometry(mat(fd, {{"1"}}), mat(fd, {{"0"}}), el(fd, "5"));
  EXPECT_EQ(u, mat(fd, {{"-25/3", "8/3"}, {"-2/3", "1/3"}}));
  EXPECT_EQ(determinant(u), el(fd, "-1"));
  EXPECT_EQ(congruence(mat(fd, {{"1", "1"}, {"1", "0"}}), u), mat(fd, {{"25", "1"}, {"1", "0"}}));
}

TEST(CoreIsometry, DegenerateCasesAreTheSwap) {
  const FieldDescriptor fd = q5();
  const Matrix swap = mat(fd, {{"0", "1"}, {"1", "0"}});
  // x = z = 1: w = -1/8, (1 - pi x) w = 1/2.
  EXPECT_EQ(core_isometry(mat(fd, {{"1"}}), mat(fd, {{"1"}}), el(fd, "5")), swap);
  // x = z = 0: w = 1/2.
  EXPECT_EQ(core_isometry(mat(fd, {{"0"}}), mat(fd, {{"0"}}), el(fd, "5")), swap);
}

TEST(CoreIsometry, RejectsBadArguments) {
  const FieldDescriptor fd = q5();
  EXPECT_EQ(code_of([&] { core_isometry(mat(fd, {{"1/5"}}), mat(fd, {{"0"}}), el(fd, "5")); }),
            ErrorCode::InvalidInput);
  EXPECT_EQ(code_of([&] { core_isometry(mat(fd, {{"1"}}), mat(fd, {{"0"}}), el(fd, "1")); }),
            ErrorCode::InvalidInput);
  EXPECT_EQ(code_of([&] { core_isometry(mat(fd, {{"1"}}), mat(fd, {{"0", "0"}}), el(fd, "5")); }),
            ErrorCode::DimensionMismatch);
}

TEST(CoreIsometry, GaussianBlocks) {
  const FieldDescriptor g = FieldDescriptor::gaussian_inert(3);
  const Matrix x = mat(g, {{"1", "1+i"}, {"1-i", "0"}});
  const Matrix z = mat(g, {{"2", "i"}, {"-i", "1"}});
  const FieldElement pi = el(g, "9");
  const Matrix u = core_isometry(x, z, pi);
  const Matrix id = Matrix::identity(g, 2);
  const FieldElement pi2 = pi * pi;
  EXPECT_EQ(congruence(assemble({{x, id}, {id, scalar_mul(pi2, z)}}), u),
            assemble({{scalar_mul(pi2, x), id}, {id, z}}));
}

TEST(LevelIsometry, WorkedInstance) {
  const DescentProblem p = worked_instance();
  const LevelIsometry li = level_isometry(p.a, p.b, el(p.fd, "5"), 1);
  EXPECT_EQ(li.s1, mat(p.fd, {{"0", "1"}, {"1", "0"}}));
  EXPECT_EQ(congruence(p.a, li.s1), p.b);
}

TEST(Descend, EveryFieldKindRoundTrips) {
  for (const auto& fd : all_fields()) {
    const std::size_t max_n = fd.kind == FieldKind::RatfuncTadic && fd.coefficient_prime == 0 ? 3 : 5;
    for (std::size_t n = 1; n <= max_n; ++n) {
      for (std::size_t rounds = 0; rounds <= 1; ++rounds) {
        const DescentProblem p = generate_instance(fd, {n, staircase_levels(n), rounds, 100 + n});
        const DescentResult r = descend(p);
        ASSERT_TRUE(verify_solution(p.a, p.b, r.v).all_passed()) << fd.to_string() << " n=" << n;
        ASSERT_EQ(replay(p, r.trace), r.v) << fd.to_string() << " n=" << n;
      }
    }
  }
}

TEST(Descend, CountersAreDeterministic) {
  const DescentProblem p = generate_instance(q5(), {6, staircase_levels(6), 2, 9});
  CostRecorder first, second;
  const DescentResult r1 = descend(p, &first);
  const DescentResult r2 = descend(p, &second);
  EXPECT_EQ(r1.v, r2.v);
  EXPECT_EQ(first.matrix_mul_inv, second.matrix_mul_inv);
  EXPECT_EQ(first.valuations, second.valuations);
  EXPECT_EQ(first.value_group_ops, second.value_group_ops);
  EXPECT_EQ(first.uniformizer_lookups, second.uniformizer_lookups);
  EXPECT_GT(first.matrix_mul_inv, 0u);
}

TEST(Descend, RepeatedLevels) {
  // Two entries at each of +-2 plus a +-1 pair and a unit: r = 2 at the top.
  const FieldDescriptor fd = FieldDescriptor::rational_padic(3);
  const DescentProblem p = generate_instance(fd, {7, {2, 2, -2, -2, 1, -1, 0}, 1, 5});
  const DescentResult r = descend(p);
  EXPECT_TRUE(verify_solution(p.a, p.b, r.v).all_passed());
  bool saw_r2 = false;
  for (const auto& s : r.trace.steps)
    if (const auto* lr = std::get_if<LevelReduceStep>(&s)) saw_r2 = saw_r2 || lr->r == 2;
  EXPECT_TRUE(saw_r2);
}

}  // namespace
}  // namespace isodescent
