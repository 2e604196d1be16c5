#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "isodescent/cost.hpp"
#include "isodescent/field.hpp"
#include "isodescent/matrix.hpp"

namespace isodescent {

/// Two Gram matrices a, b of unimodular 1-hermitian forms over S and a
/// rational isometry u with u a u* = b.
struct DescentProblem {
  FieldDescriptor fd;
  Matrix a;
  Matrix b;
  Matrix u;
};

/// Throws InvalidInput naming the first violated hypothesis: a, b must be
/// *-symmetric and unimodular, u square and invertible, and u a u* = b.
void validate_problem(const DescentProblem& problem);

// --- transformation trace -------------------------------------------------

/// u = left * diag * right with left, right in GL_n(S).
struct FactorStep {
  Matrix left;
  Matrix right;
};

/// Conjugation of the current (a, b, diagonal isometry) by a permutation.
struct PermuteStep {
  Permutation perm;
};

/// Scaling by uprime = pi I_r + pi^{-1} I_r + I_{n-2r}; pi has valuation
/// gamma_top - gamma_next. `s` is the independently counted number of
/// entries at valuation -gamma_top and always equals r on success.
struct LevelReduceStep {
  std::int64_t gamma_top = 0;
  std::int64_t gamma_next = 0;
  std::size_t r = 0;
  std::size_t s = 0;
  FieldElement pi;
  Matrix uprime;
};

struct BlockEliminateStep {
  Matrix v;
  Matrix w;
};

struct NormalizeYStep {
  Matrix nhat;
};

struct CoreIdentityStep {
  Matrix u;
};

using TraceStep = std::variant<FactorStep, PermuteStep, LevelReduceStep, BlockEliminateStep,
                               NormalizeYStep, CoreIdentityStep>;

const char* step_name(const TraceStep& step);

struct DescentTrace {
  std::vector<TraceStep> steps;
};

struct DescentResult {
  Matrix v;
  DescentTrace trace;
};

/// Recomputes the isometry from the original problem and the recorded steps
/// alone. Reproduces DescentResult::v exactly.
Matrix replay(const DescentProblem& problem, const DescentTrace& trace);

// --- pipeline stages ------------------------------------------------------

struct DiagonalDecomposition {
  Matrix left;
  Matrix diag;
  Matrix right;
};

/// z = left * diag * right with left, right unimodular over S and diag
/// diagonal. Pivots on an entry of minimal valuation (ties: smallest row, then
/// column) and clears its row and column with integral multipliers. An
/// already diagonal z is returned as (I, z, I).
DiagonalDecomposition diagonal_decompose(const Matrix& z, CostRecorder* rec = nullptr);

/// Absolute valuation levels of a diagonal isometry. gammas is strictly
/// decreasing and ends with 0; plus[k] / minus[k] count the diagonal entries
/// of valuation +gammas[k] / -gammas[k] (both equal the number of unit
/// entries for the final 0 level).
struct LevelProfile {
  std::vector<std::int64_t> gammas;
  std::vector<std::size_t> plus;
  std::vector<std::size_t> minus;

  /// Number of nonzero levels (t).
  std::size_t levels() const { return gammas.empty() ? 0 : gammas.size() - 1; }
  std::int64_t top() const { return gammas.empty() ? 0 : gammas.front(); }
};

struct SortBalance {
  Permutation perm;
  LevelProfile profile;
};

/// Orders the diagonal of u by (-|nu|, +gamma before -gamma, index) and
/// reports the level profile. Throws BalanceViolation when the top level has
/// unequal numbers of +gamma_t and -gamma_t entries.
SortBalance sort_balance(const Matrix& u, CostRecorder* rec = nullptr);

struct LevelReduction {
  Matrix uprime;
  Matrix bprime;
  FieldElement pi;
  std::size_t r = 0;
};

/// Given a and a diagonal isometry u already sorted by sort_balance, forms
/// uprime = pi I_r + pi^{-1} I_r + I and bprime = uprime a uprime*. Asserts
/// that bprime is unimodular.
LevelReduction level_reduce(const Matrix& a, const Matrix& u, const LevelProfile& profile,
                            CostRecorder* rec = nullptr);

struct BlockElimination {
  Matrix v;
  Matrix w;
  Matrix x;
  Matrix y;
  Matrix z;
  Matrix a33;
};

/// Clears the trailing n-2r block. With a in its forced shape
/// [a11, a12, a13; a12*, pi^2 a22, pi a23; a13*, pi a23*, a33]:
///   v a v*      = [x, y, 0; y*, pi^2 z, 0; 0, 0, a33]
///   w bprime w* = [pi^2 x, y, 0; y*, z, 0; 0, 0, a33]
/// Both identities are checked exactly before returning.
BlockElimination block_eliminate(const Matrix& a, const Matrix& bprime, const FieldElement& pi,
                                 std::size_t r, CostRecorder* rec = nullptr);

struct NormalizedY {
  Matrix xprime;
  Matrix nhat;
};

/// nhat = diag(y^{-1}, I) turns the off-diagonal block into the identity on
/// both sides; xprime = y^{-1} x y^{-*}.
NormalizedY normalize_y(const Matrix& x, const Matrix& y, const Matrix& z, const FieldElement& pi,
                        CostRecorder* rec = nullptr);

/// The integral isometry U with U [x, 1; 1, pi^2 z] U* = [pi^2 x, 1; 1, z]:
///   w = (2 - pi x - pi z)^{-1}
///   U = [pi - 2 pi (1 - pi x) w,  2 (1 - pi x) w;
///        2 (1 - pi z) w,          pi^{-1} - 2 pi^{-1} (1 - pi z) w]
/// Requires x, z *-symmetric integral r x r and pi sigma-fixed with nu(pi) > 0.
/// Integrality, unimodularity and the identity itself are verified exactly.
Matrix core_isometry(const Matrix& x, const Matrix& z, const FieldElement& pi,
                     CostRecorder* rec = nullptr);

struct LevelIsometry {
  Matrix s1;
  BlockElimination blocks;
  NormalizedY normalized;
  Matrix core;
};

/// s1 = w^{-1} nhat^{-1} U nhat v (padded by identities) with s1 a s1* = bprime.
LevelIsometry level_isometry(const Matrix& a, const Matrix& bprime, const FieldElement& pi,
                             std::size_t r, CostRecorder* rec = nullptr);

/// Constructs v in GL_n(S) with v a v* = b from a rational isometry.
/// Throws InvalidInput, SingularMatrix, BalanceViolation or
/// InternalInvariant.
DescentResult descend(const DescentProblem& problem, CostRecorder* rec = nullptr);

}  // namespace isodescent
