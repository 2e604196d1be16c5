#include <gtest/gtest.h>

#include <algorithm>

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

TEST(Rng, StreamIsPinned) {
  // mt19937_64 with the default seed reproduces the C++ standard's check value.
  Rng rng(5489);
  for (int k = 0; k < 9999; ++k) rng.next();
  EXPECT_EQ(rng.next(), 9981545732273789042ull);
}

TEST(Rng, UniformStaysInRange) {
  Rng rng(1);
  std::vector<int> hits(7, 0);
  for (int k = 0; k < 7000; ++k) {
    const auto v = rng.uniform(-3, 3);
    ASSERT_GE(v, -3);
    ASSERT_LE(v, 3);
    ++hits[static_cast<std::size_t>(v + 3)];
  }
  for (int h : hits) EXPECT_GT(h, 800);
}

TEST(Levels, StaircaseAndNormalization) {
  EXPECT_EQ(staircase_levels(5), (std::vector<std::int64_t>{1, -1, 2, -2, 0}));
  EXPECT_EQ(staircase_levels(4), (std::vector<std::int64_t>{1, -1, 2, -2}));
  EXPECT_EQ(normalized_levels({5, {1, -1}, 0, 0}), (std::vector<std::int64_t>{1, 0, 0, 0, -1}));
  EXPECT_EQ(code_of([] { normalized_levels({3, {1, 1, -1}, 0, 0}); }), ErrorCode::InvalidInput);
  EXPECT_EQ(code_of([] { normalized_levels({1, {1, -1}, 0, 0}); }), ErrorCode::InvalidInput);
}

TEST(Generate, SmallestBalancedShape) {
  const DescentProblem p = generate_instance(q5(), {2, {1, -1}, 0, 3});
  EXPECT_EQ(p.u, mat(p.fd, {{"5", "0"}, {"0", "1/5"}}));
  // Valuation bounds: nu(a_11) >= 0, nu(a_22) >= 2, nu(a_12) >= 0.
  EXPECT_GE(valuation(p.a(1, 1)), ValExt(2));
  EXPECT_TRUE(verify_instance(p).all_passed());
}

TEST(Generate, SingleUnit) {
  const DescentProblem p = generate_instance(q5(), {1, {0}, 0, 8});
  EXPECT_EQ(p.u, Matrix::identity(p.fd, 1));
  EXPECT_EQ(p.a, p.b);
  EXPECT_EQ(valuation(p.a(0, 0)), ValExt(0));
}

TEST(Generate, IsDeterministic) {
  for (const auto& fd : all_fields()) {
    const GenProfile profile{4, staircase_levels(4), 1, 77};
    const DescentProblem a = generate_instance(fd, profile);
    const DescentProblem b = generate_instance(fd, profile);
    EXPECT_EQ(a.a, b.a);
    EXPECT_EQ(a.b, b.b);
    EXPECT_EQ(a.u, b.u);
    const DescentProblem c = generate_instance(fd, {4, staircase_levels(4), 1, 78});
    EXPECT_FALSE(a.a == c.a && a.u == c.u) << fd.to_string();
  }
}

TEST(Generate, RealizesRequestedLevels) {
  const std::vector<std::int64_t> levels{3, -3, 1, 1, -1, -1, 0};
  const DescentProblem p = generate_instance(FieldDescriptor::gaussian_inert(7), {7, levels, 0, 4});
  std::vector<std::int64_t> seen;
  for (std::size_t i = 0; i < 7; ++i) seen.push_back(valuation(p.u(i, i)).value());
  std::vector<std::int64_t> want = levels;
  std::sort(want.begin(), want.end(), std::greater<>());
  EXPECT_EQ(seen, want);
}

TEST(Generate, SoundAcrossFields) {
  for (const auto& fd : all_fields()) {
    for (std::uint64_t seed = 1; seed <= 24; ++seed) {
      const auto n = static_cast<std::size_t>(1 + seed % 6);
      const std::size_t rounds = fd.kind == FieldKind::RatfuncTadic && fd.coefficient_prime == 0 ? 0 : seed % 3;
      const DescentProblem p = generate_instance(fd, {n, staircase_levels(n), rounds, seed});
      ASSERT_TRUE(verify_instance(p).all_passed()) << fd.to_string() << " seed " << seed;
    }
  }
}

TEST(RandomUnimodular, UnimodularAndSeedStable) {
  for (const auto& fd : all_fields()) {
    for (std::uint64_t seed = 0; seed < 200; seed += 7) {
      const auto n = static_cast<std::size_t>(1 + seed % 8);
      const Matrix m = random_unimodular(fd, n, seed);
      ASSERT_TRUE(is_unimodular(m)) << fd.to_string();
      ASSERT_EQ(m, random_unimodular(fd, n, seed));
    }
    const Matrix one = random_unimodular(fd, 1, 3);
    EXPECT_EQ(valuation(one(0, 0)), ValExt(0));
  }
}

TEST(Obfuscate, ZeroRoundsIsIdentity) {
  const DescentProblem p = generate_instance(q5(), {4, staircase_levels(4), 0, 2});
  const DescentProblem q = obfuscate(p, 0, 99);
  EXPECT_EQ(q.a, p.a);
  EXPECT_EQ(q.b, p.b);
  EXPECT_EQ(q.u, p.u);
}

TEST(Obfuscate, PreservesTheIsometry) {
  for (const auto& fd : all_fields()) {
    const DescentProblem p = generate_instance(fd, {3, staircase_levels(3), 0, 2});
    const DescentProblem q = obfuscate(p, 2, 5);
    EXPECT_EQ(congruence(q.a, q.u), q.b);
    EXPECT_TRUE(verify_instance(q).all_passed());
    EXPECT_FALSE(q.a == p.a && q.u == p.u);
  }
}

TEST(Verify, WorkedInstancePasses) {
  const FieldDescriptor fd = q5();
  const DescentProblem p{fd, mat(fd, {{"1", "1"}, {"1", "25"}}), mat(fd, {{"25", "1"}, {"1", "1"}}),
                         mat(fd, {{"5", "0"}, {"0", "1/5"}})};
  const VerificationReport r = verify_instance(p);
  EXPECT_TRUE(r.all_passed());
  EXPECT_EQ(r.checks.size(), 7u);
}

TEST(Verify, TamperedInstancesFail) {
  const FieldDescriptor fd = q5();
  DescentProblem p{fd, mat(fd, {{"1", "1"}, {"1", "25"}}), mat(fd, {{"25", "1"}, {"1", "1"}}),
                   mat(fd, {{"5", "0"}, {"0", "1/5"}})};
  DescentProblem tampered = p;
  tampered.b.at(1, 1) = el(fd, "2");
  VerificationReport r = verify_instance(tampered);
  EXPECT_FALSE(r.all_passed());
  EXPECT_EQ(r.first_failure(), "congruence");

  DescentProblem degenerate = p;
  degenerate.a = mat(fd, {{"5", "0"}, {"0", "1"}});
  r = verify_instance(degenerate);
  EXPECT_FALSE(r.all_passed());
  EXPECT_EQ(r.first_failure(), "a_unimodular");

  DescentProblem shapes = p;
  shapes.u = Matrix(fd, 2, 3);
  EXPECT_FALSE(verify_instance(shapes).all_passed());

  EXPECT_TRUE(verify_solution(p.a, p.b, mat(fd, {{"0", "1"}, {"1", "0"}})).all_passed());
  EXPECT_FALSE(verify_solution(p.a, p.b, p.u).all_passed());  // rational, not integral
}

}  // namespace
}  // namespace isodescent
