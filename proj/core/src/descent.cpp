#include "isodescent/descent.hpp"

#include <algorithm>

#include "isodescent/error.hpp"

namespace isodescent {

namespace {

[[noreturn]] void invariant_failed(const std::string& what) {
  throw Error(ErrorCode::InternalInvariant, what);
}

Matrix diag_block(const FieldDescriptor& fd, std::size_t r, const FieldElement& first,
                  const FieldElement& second, std::size_t rest) {
  std::vector<FieldElement> d;
  d.reserve(2 * r + rest);
  for (std::size_t i = 0; i < r; ++i) d.push_back(first);
  for (std::size_t i = 0; i < r; ++i) d.push_back(second);
  for (std::size_t i = 0; i < rest; ++i) d.push_back(FieldElement::one(fd));
  return Matrix::diagonal(fd, d);
}

Matrix pad_identity(const Matrix& m, std::size_t extra) {
  if (extra == 0) return m;
  return direct_sum(m, Matrix::identity(m.field(), extra));
}

// [p, q; q*, s] for square r x r blocks.
Matrix hermitian_2x2(const Matrix& p, const Matrix& q, const Matrix& s) {
  return assemble({{p, q}, {star_adjoint(q), s}});
}

Matrix three_block(const Matrix& p, const Matrix& q, const Matrix& s, const Matrix& t) {
  const FieldDescriptor& fd = p.field();
  const std::size_t r = p.rows();
  const std::size_t m = t.rows();
  return assemble({{p, q, zeros(fd, r, m)},
                   {star_adjoint(q), s, zeros(fd, r, m)},
                   {zeros(fd, m, r), zeros(fd, m, r), t}});
}

}  // namespace

const char* step_name(const TraceStep& step) {
  struct Visitor {
    const char* operator()(const FactorStep&) const { return "LEFT_RIGHT_FACTOR"; }
    const char* operator()(const PermuteStep&) const { return "PERMUTE"; }
    const char* operator()(const LevelReduceStep&) const { return "LEVEL_REDUCE"; }
    const char* operator()(const BlockEliminateStep&) const { return "BLOCK_ELIMINATE"; }
    const char* operator()(const NormalizeYStep&) const { return "NORMALIZE_Y"; }
    const char* operator()(const CoreIdentityStep&) const { return "CORE_IDENTITY"; }
  };
  return std::visit(Visitor{}, step);
}

void validate_problem(const DescentProblem& problem) {
  const auto bad = [](const std::string& what) { throw Error(ErrorCode::InvalidInput, what); };
  const auto& [fd, a, b, u] = problem;
  if (!(a.field() == fd && b.field() == fd && u.field() == fd)) bad("matrices are not over the problem field");
  if (!a.is_square() || !b.is_square() || !u.is_square()) bad("a, b and u must be square");
  if (a.rows() != b.rows() || a.rows() != u.rows()) bad("a, b and u must have the same size");
  if (!is_star_symmetric(a)) bad("a is not *-symmetric");
  if (!is_star_symmetric(b)) bad("b is not *-symmetric");
  if (!is_unimodular(a)) bad("a is not unimodular over S");
  if (!is_unimodular(b)) bad("b is not unimodular over S");
  if (determinant(u).is_zero()) bad("u is singular");
  if (!(congruence(a, u) == b)) bad("u a u* != b");
}

DiagonalDecomposition diagonal_decompose(const Matrix& z, CostRecorder* rec) {
  if (!z.is_square()) throw Error(ErrorCode::DimensionMismatch, "diagonal_decompose needs a square matrix");
  const FieldDescriptor& fd = z.field();
  const std::size_t n = z.rows();
  if (z.is_diagonal()) {
    for (std::size_t i = 0; i < n; ++i)
      if (z(i, i).is_zero()) throw Error(ErrorCode::SingularMatrix, "singular diagonal matrix");
    return {Matrix::identity(fd, n), z, Matrix::identity(fd, n)};
  }

  Matrix m = z;
  Matrix left = Matrix::identity(fd, n);
  Matrix right = Matrix::identity(fd, n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pr = n, pc = n;
    ValExt best = ValExt::infinity();
    for (std::size_t i = k; i < n; ++i) {
      for (std::size_t j = k; j < n; ++j) {
        const ValExt v = valuation(m(i, j), rec);
        cost::value_group(rec);
        if (v.is_finite() && (pr == n || v < best)) {
          best = v;
          pr = i;
          pc = j;
        }
      }
    }
    if (pr == n) throw Error(ErrorCode::SingularMatrix, "matrix is singular");

    // Row swap on m is compensated by a column swap on left, and vice versa.
    if (pr != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(pr, j));
      for (std::size_t i = 0; i < n; ++i) std::swap(left.at(i, k), left.at(i, pr));
    }
    if (pc != k) {
      for (std::size_t i = 0; i < n; ++i) std::swap(m.at(i, k), m.at(i, pc));
      for (std::size_t j = 0; j < n; ++j) std::swap(right.at(k, j), right.at(pc, j));
    }

    const FieldElement pinv = m(k, k).inverse();
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m(i, k).is_zero()) continue;
      // row_i -= c row_k, compensated by col_k(left) += c col_i(left).
      const FieldElement c = m(i, k) * pinv;
      for (std::size_t j = k; j < n; ++j)
        if (!m(k, j).is_zero()) m.at(i, j) -= c * m(k, j);
      for (std::size_t t = 0; t < n; ++t)
        if (!left(t, i).is_zero()) left.at(t, k) += c * left(t, i);
    }
    for (std::size_t j = k + 1; j < n; ++j) {
      if (m(k, j).is_zero()) continue;
      // col_j -= c col_k, compensated by row_k(right) += c row_j(right).
      const FieldElement c = pinv * m(k, j);
      for (std::size_t t = 0; t < n; ++t)
        if (!right(j, t).is_zero()) right.at(k, t) += c * right(j, t);
      m.at(k, j) = FieldElement::zero(fd);
    }
  }
  return {std::move(left), std::move(m), std::move(right)};
}

SortBalance sort_balance(const Matrix& u, CostRecorder* rec) {
  if (!u.is_diagonal()) throw Error(ErrorCode::InvalidInput, "sort_balance needs a diagonal isometry");
  const std::size_t n = u.rows();
  std::vector<std::int64_t> tau(n);
  for (std::size_t i = 0; i < n; ++i) {
    const ValExt v = valuation(u(i, i), rec);
    if (v.is_infinite()) throw Error(ErrorCode::SingularMatrix, "zero on the diagonal");
    tau[i] = v.value();
  }

  SortBalance out;
  out.perm = Permutation::identity(n);
  std::stable_sort(out.perm.images.begin(), out.perm.images.end(), [&](std::size_t i, std::size_t j) {
    cost::value_group(rec, 2);
    const std::int64_t ai = std::abs(tau[i]), aj = std::abs(tau[j]);
    if (ai != aj) return ai > aj;
    return tau[i] > tau[j];
  });

  LevelProfile& prof = out.profile;
  for (std::size_t k = 0; k < n; ++k) {
    const std::int64_t t = tau[out.perm.images[k]];
    const std::int64_t g = std::abs(t);
    if (prof.gammas.empty() || prof.gammas.back() != g) {
      prof.gammas.push_back(g);
      prof.plus.push_back(0);
      prof.minus.push_back(0);
    }
    if (t > 0) ++prof.plus.back();
    else if (t < 0) ++prof.minus.back();
    else {
      ++prof.plus.back();
      ++prof.minus.back();
    }
  }
  if (prof.gammas.empty() || prof.gammas.back() != 0) {
    prof.gammas.push_back(0);
    prof.plus.push_back(0);
    prof.minus.push_back(0);
  }
  if (prof.levels() > 0 && prof.plus.front() != prof.minus.front()) {
    throw Error(ErrorCode::BalanceViolation,
                "top level " + std::to_string(prof.top()) + " has r = " + std::to_string(prof.plus.front()) +
                    " but s = " + std::to_string(prof.minus.front()));
  }
  return out;
}

LevelReduction level_reduce(const Matrix& a, const Matrix& u, const LevelProfile& profile,
                            CostRecorder* rec) {
  if (profile.levels() == 0) throw Error(ErrorCode::InvalidInput, "level_reduce at level 0");
  const FieldDescriptor& fd = a.field();
  const std::size_t n = a.rows();
  const std::size_t r = profile.plus.front();
  if (r == 0 || r != profile.minus.front() || 2 * r > n || u.rows() != n) {
    throw Error(ErrorCode::InvalidInput, "level profile does not match the matrices");
  }
  const std::int64_t top = profile.gammas[0];
  const std::int64_t next = profile.gammas[1];
  for (std::size_t i = 0; i < 2 * r; ++i) {
    const ValExt want = i < r ? ValExt(top) : ValExt(-top);
    if (valuation(u(i, i), rec) != want) throw Error(ErrorCode::InvalidInput, "u is not sorted by level");
  }

  cost::value_group(rec);
  LevelReduction out;
  out.r = r;
  out.pi = uniformizer_power(fd, top - next, rec);
  out.uprime = diag_block(fd, r, out.pi, out.pi.inverse(), n - 2 * r);
  out.bprime = congruence(a, out.uprime, rec);
  if (!is_unimodular(out.bprime, rec)) invariant_failed("level_reduce: bprime is not unimodular");
  return out;
}

BlockElimination block_eliminate(const Matrix& a, const Matrix& bprime, const FieldElement& pi,
                                 std::size_t r, CostRecorder* rec) {
  const FieldDescriptor& fd = a.field();
  const std::size_t n = a.rows();
  if (2 * r > n || r == 0 || !bprime.is_square() || bprime.rows() != n) {
    throw Error(ErrorCode::DimensionMismatch, "block_eliminate: bad block sizes");
  }
  const std::size_t m = n - 2 * r;
  const FieldElement pi2 = pi * pi;
  const FieldElement pi_inv = pi.inverse();

  const Matrix a11 = block(a, 0, r, 0, r);
  const Matrix a12 = block(a, 0, r, r, 2 * r);
  const Matrix a13 = block(a, 0, r, 2 * r, n);
  // The (2,2) and (2,3) blocks of a are forced to be divisible by pi^2 and pi.
  const Matrix a22 = scalar_mul(pi_inv * pi_inv, block(a, r, 2 * r, r, 2 * r));
  const Matrix a23 = scalar_mul(pi_inv, block(a, r, 2 * r, 2 * r, n));
  if (!is_integral(a22, rec) || !is_integral(a23, rec)) {
    invariant_failed("block_eliminate: a22 / a23 not divisible by pi^2 / pi");
  }

  BlockElimination out;
  out.a33 = block(a, 2 * r, n, 2 * r, n);
  if (m == 0) {
    out.v = Matrix::identity(fd, n);
    out.w = Matrix::identity(fd, n);
    out.x = a11;
    out.y = a12;
    out.z = a22;
  } else {
    if (!is_unimodular(out.a33, rec)) invariant_failed("block_eliminate: a33 is not unimodular");
    const Matrix c = inverse(out.a33, rec);
    const Matrix a13c = mul(a13, c, rec);
    const Matrix a23c = mul(a23, c, rec);
    const Matrix id = Matrix::identity(fd, r);
    const Matrix zr = zeros(fd, r, r);
    const Matrix neg1 = scalar_mul(FieldElement::from_integer(fd, -1), a13c);
    const Matrix neg2 = scalar_mul(FieldElement::from_integer(fd, -1), a23c);
    out.v = assemble({{id, zr, neg1},
                      {zr, id, scalar_mul(pi, neg2)},
                      {zeros(fd, m, r), zeros(fd, m, r), Matrix::identity(fd, m)}});
    out.w = assemble({{id, zr, scalar_mul(pi, neg1)},
                      {zr, id, neg2},
                      {zeros(fd, m, r), zeros(fd, m, r), Matrix::identity(fd, m)}});
    const Matrix a23_star = star_adjoint(a23);
    out.x = a11 - mul(a13c, star_adjoint(a13), rec);
    out.y = a12 - scalar_mul(pi, mul(a13c, a23_star, rec));
    out.z = a22 - mul(a23c, a23_star, rec);
  }

  if (!(congruence(a, out.v, rec) == three_block(out.x, out.y, scalar_mul(pi2, out.z), out.a33))) {
    invariant_failed("block_eliminate: v a v* does not have the reduced block form");
  }
  if (!(congruence(bprime, out.w, rec) == three_block(scalar_mul(pi2, out.x), out.y, out.z, out.a33))) {
    invariant_failed("block_eliminate: w bprime w* does not have the reduced block form");
  }
  return out;
}

NormalizedY normalize_y(const Matrix& x, const Matrix& y, const Matrix& z, const FieldElement& pi,
                        CostRecorder* rec) {
  const FieldDescriptor& fd = x.field();
  const std::size_t r = x.rows();
  if (!is_unimodular(y, rec)) invariant_failed("normalize_y: y is not unimodular");
  const Matrix yinv = inverse(y, rec);
  const Matrix id = Matrix::identity(fd, r);
  const FieldElement pi2 = pi * pi;

  NormalizedY out;
  out.xprime = congruence(x, yinv, rec);
  out.nhat = direct_sum(yinv, id);
  if (!(congruence(hermitian_2x2(x, y, scalar_mul(pi2, z)), out.nhat, rec) ==
        hermitian_2x2(out.xprime, id, scalar_mul(pi2, z)))) {
    invariant_failed("normalize_y: a-side normalization failed");
  }
  if (!(congruence(hermitian_2x2(scalar_mul(pi2, x), y, z), out.nhat, rec) ==
        hermitian_2x2(scalar_mul(pi2, out.xprime), id, z))) {
    invariant_failed("normalize_y: b-side normalization failed");
  }
  return out;
}

Matrix core_isometry(const Matrix& x, const Matrix& z, const FieldElement& pi, CostRecorder* rec) {
  const FieldDescriptor& fd = x.field();
  const std::size_t r = x.rows();
  if (!x.is_square() || !z.is_square() || z.rows() != r) {
    throw Error(ErrorCode::DimensionMismatch, "core_isometry: x and z must be r x r");
  }
  if (!is_star_symmetric(x) || !is_star_symmetric(z) || !is_integral(x, rec) || !is_integral(z, rec)) {
    throw Error(ErrorCode::InvalidInput, "core_isometry: x and z must be *-symmetric and integral");
  }
  if (!(involute(pi) == pi) || !(valuation(pi, rec) > ValExt(0))) {
    throw Error(ErrorCode::InvalidInput, "core_isometry: pi must be sigma-fixed with positive valuation");
  }
  const Matrix id = Matrix::identity(fd, r);
  const FieldElement two = FieldElement::from_integer(fd, 2);
  const FieldElement pi_inv = pi.inverse();
  const Matrix pix = scalar_mul(pi, x);
  const Matrix piz = scalar_mul(pi, z);

  // 2 - pi x - pi z is 2 mod Jac(S), hence invertible since 2 is a unit.
  Matrix w;
  try {
    w = inverse(scalar_mul(two, id) - pix - piz, rec);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SingularMatrix) throw;
    invariant_failed("core_isometry: 2 - pi x - pi z is singular");
  }
  const Matrix t1w = mul(id - pix, w, rec);  // (1 - pi x) w
  const Matrix t2w = mul(id - piz, w, rec);  // (1 - pi z) w

  const Matrix u11 = scalar_mul(pi, id) - scalar_mul(two * pi, t1w);
  const Matrix u12 = scalar_mul(two, t1w);
  const Matrix u21 = scalar_mul(two, t2w);
  const Matrix u22 = scalar_mul(pi_inv, id) - scalar_mul(two * pi_inv, t2w);
  Matrix u = assemble({{u11, u12}, {u21, u22}});

  if (!is_integral(u, rec)) invariant_failed("core_isometry: U is not integral");
  if (!is_unimodular(u, rec)) invariant_failed("core_isometry: U is not unimodular");
  const FieldElement pi2 = pi * pi;
  if (!(congruence(hermitian_2x2(x, id, scalar_mul(pi2, z)), u, rec) ==
        hermitian_2x2(scalar_mul(pi2, x), id, z))) {
    invariant_failed("core_isometry: U [x,1;1,pi^2 z] U* != [pi^2 x,1;1,z]");
  }
  return u;
}

LevelIsometry level_isometry(const Matrix& a, const Matrix& bprime, const FieldElement& pi,
                             std::size_t r, CostRecorder* rec) {
  const FieldDescriptor& fd = a.field();
  const std::size_t n = a.rows();
  LevelIsometry out;
  out.blocks = block_eliminate(a, bprime, pi, r, rec);
  out.normalized = normalize_y(out.blocks.x, out.blocks.y, out.blocks.z, pi, rec);
  out.core = core_isometry(out.normalized.xprime, out.blocks.z, pi, rec);

  const std::size_t m = n - 2 * r;
  const Matrix nhat = pad_identity(out.normalized.nhat, m);
  const Matrix nhat_inv = pad_identity(direct_sum(out.blocks.y, Matrix::identity(fd, r)), m);
  const Matrix core = pad_identity(out.core, m);
  // w - I is square-zero, so w^{-1} = 2I - w.
  const Matrix w_inv = scalar_mul(FieldElement::from_integer(fd, 2), Matrix::identity(fd, n)) - out.blocks.w;

  out.s1 = mul(w_inv, mul(nhat_inv, mul(core, mul(nhat, out.blocks.v, rec), rec), rec), rec);
  if (!is_unimodular(out.s1, rec)) invariant_failed("level_isometry: s1 is not unimodular");
  if (!(congruence(a, out.s1, rec) == bprime)) invariant_failed("level_isometry: s1 a s1* != bprime");
  return out;
}

namespace {

Matrix divide_diagonal(const Matrix& d, const Matrix& by) {
  Matrix out = d;
  for (std::size_t i = 0; i < d.rows(); ++i) out.at(i, i) = d(i, i) / by(i, i);
  return out;
}

bool is_identity(const Permutation& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p.images[i] != i) return false;
  return true;
}

}  // namespace

DescentResult descend(const DescentProblem& problem, CostRecorder* rec) {
  validate_problem(problem);
  const FieldDescriptor& fd = problem.fd;
  const std::size_t n = problem.a.rows();
  DescentResult result;
  if (n == 0) {
    result.v = Matrix(fd, 0, 0);
    return result;
  }

  // Reduce to a diagonal rational isometry: u = left diag right.
  DiagonalDecomposition dd = diagonal_decompose(problem.u, rec);
  result.trace.steps.emplace_back(FactorStep{dd.left, dd.right});
  Matrix a = congruence(problem.a, dd.right, rec);
  Matrix b = congruence(problem.b, inverse(dd.left, rec), rec);
  Matrix d = std::move(dd.diag);
  Matrix left = std::move(dd.left);
  Matrix right = std::move(dd.right);

  // Invariant: d a d* = b, and the answer is left * (isometry a -> b) * right.
  std::int64_t previous_top = -1;
  while (true) {
    SortBalance sb = sort_balance(d, rec);
    if (sb.profile.levels() == 0) break;
    cost::value_group(rec);
    if (previous_top >= 0 && sb.profile.top() >= previous_top) {
      invariant_failed("descend: top level did not decrease");
    }
    previous_top = sb.profile.top();

    if (!is_identity(sb.perm)) {
      a = apply_permutation(sb.perm, a, PermuteSide::Congruent);
      b = apply_permutation(sb.perm, b, PermuteSide::Congruent);
      d = apply_permutation(sb.perm, d, PermuteSide::Congruent);
      left = apply_permutation(sb.perm, left, PermuteSide::Cols);
      right = apply_permutation(sb.perm, right, PermuteSide::Rows);
      result.trace.steps.emplace_back(PermuteStep{sb.perm});
    }

    LevelReduction lr = level_reduce(a, d, sb.profile, rec);
    result.trace.steps.emplace_back(LevelReduceStep{sb.profile.gammas[0], sb.profile.gammas[1], lr.r,
                                                    sb.profile.minus.front(), lr.pi, lr.uprime});
    LevelIsometry li = level_isometry(a, lr.bprime, lr.pi, lr.r, rec);
    result.trace.steps.emplace_back(BlockEliminateStep{li.blocks.v, li.blocks.w});
    result.trace.steps.emplace_back(NormalizeYStep{li.normalized.nhat});
    result.trace.steps.emplace_back(CoreIdentityStep{li.core});

    right = mul(li.s1, right, rec);
    a = std::move(lr.bprime);
    d = divide_diagonal(d, lr.uprime);
  }

  // d now has unit diagonal and is itself an isometry over S.
  result.v = mul(left, mul(d, right, rec), rec);
  if (!is_unimodular(result.v, rec)) invariant_failed("descend: v is not unimodular");
  if (!(congruence(problem.a, result.v, rec) == problem.b)) invariant_failed("descend: v a v* != b");
  return result;
}

Matrix replay(const DescentProblem& problem, const DescentTrace& trace) {
  const FieldDescriptor& fd = problem.fd;
  const std::size_t n = problem.u.rows();
  if (trace.steps.empty()) return n == 0 ? Matrix(fd, 0, 0) : problem.u;

  Matrix left = Matrix::identity(fd, n);
  Matrix right = Matrix::identity(fd, n);
  Matrix d = problem.u;
  const BlockEliminateStep* pending_blocks = nullptr;
  const NormalizeYStep* pending_norm = nullptr;
  std::size_t pending_r = 0;

  for (const TraceStep& step : trace.steps) {
    if (const auto* s = std::get_if<FactorStep>(&step)) {
      left = s->left;
      right = s->right;
      d = mul(inverse(left), mul(problem.u, inverse(right)));
      if (!d.is_diagonal()) invariant_failed("replay: factor step does not diagonalize u");
    } else if (const auto* s = std::get_if<PermuteStep>(&step)) {
      d = apply_permutation(s->perm, d, PermuteSide::Congruent);
      left = apply_permutation(s->perm, left, PermuteSide::Cols);
      right = apply_permutation(s->perm, right, PermuteSide::Rows);
    } else if (const auto* s = std::get_if<LevelReduceStep>(&step)) {
      d = divide_diagonal(d, s->uprime);
      pending_r = s->r;
    } else if (const auto* s = std::get_if<BlockEliminateStep>(&step)) {
      pending_blocks = s;
    } else if (const auto* s = std::get_if<NormalizeYStep>(&step)) {
      pending_norm = s;
    } else if (const auto* s = std::get_if<CoreIdentityStep>(&step)) {
      if (!pending_blocks || !pending_norm) invariant_failed("replay: incomplete level record");
      const std::size_t m = n - 2 * pending_r;
      const Matrix nhat = pad_identity(pending_norm->nhat, m);
      const Matrix w_inv =
          scalar_mul(FieldElement::from_integer(fd, 2), Matrix::identity(fd, n)) - pending_blocks->w;
      const Matrix s1 =
          mul(w_inv, mul(inverse(nhat), mul(pad_identity(s->u, m), mul(nhat, pending_blocks->v))));
      right = mul(s1, right);
      pending_blocks = nullptr;
      pending_norm = nullptr;
    }
  }
  return mul(left, mul(d, right));
}

}  // namespace isodescent
