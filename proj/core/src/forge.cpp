#include "isodescent/forge.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "isodescent/error.hpp"

namespace isodescent {

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return lo + static_cast<std::int64_t>(next());
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return lo + static_cast<std::int64_t>(x % span);
}

namespace {

constexpr int kRetryBudget = 64;

// Small positive integer not divisible by the residue characteristic.
std::int64_t unit_denominator(const FieldDescriptor& fd, Rng& rng) {
  while (true) {
    const std::int64_t d = rng.uniform(1, 4);
    if (d % fd.p != 0) return d;
  }
}

mpq_class small_integral_rational(const FieldDescriptor& fd, Rng& rng) {
  mpq_class q(rng.uniform(-9, 9), unit_denominator(fd, rng));
  q.canonicalize();
  return q;
}

Polynomial small_poly(const FieldDescriptor& fd, Rng& rng, long max_degree) {
  std::vector<mpq_class> c;
  const long deg = rng.uniform(0, max_degree);
  for (long k = 0; k <= deg; ++k) c.emplace_back(rng.uniform(-4, 4));
  return Polynomial(std::move(c), fd.coefficient_prime);
}

}  // namespace

FieldElement random_integral(const FieldDescriptor& fd, Rng& rng) {
  switch (fd.kind) {
    case FieldKind::RationalPadic: return FieldElement::from_rational(fd, small_integral_rational(fd, rng));
    case FieldKind::GaussianInert:
      return FieldElement::gaussian(fd, small_integral_rational(fd, rng), small_integral_rational(fd, rng));
    case FieldKind::RatfuncTadic: {
      // Degree stays low: the descent multiplies degrees at every level.
      Polynomial num = small_poly(fd, rng, 1);
      Polynomial den = Polynomial::constant(1, fd.coefficient_prime);
      if (rng.coin(1, 8)) {
        // 1 + c t is a unit of the t-adic valuation ring.
        den = Polynomial(std::vector<mpq_class>{1, mpq_class(rng.uniform(1, 2))}, fd.coefficient_prime);
      }
      return FieldElement::rational_function(fd, std::move(num), std::move(den));
    }
  }
  return FieldElement::zero(fd);
}

FieldElement random_unit(const FieldDescriptor& fd, Rng& rng) {
  while (true) {
    FieldElement x = random_integral(fd, rng);
    if (valuation(x) == ValExt(0)) return x;
  }
}

FieldElement random_fixed_unit(const FieldDescriptor& fd, Rng& rng) {
  while (true) {
    FieldElement x = random_unit(fd, rng);
    if (fd.kind != FieldKind::GaussianInert) return x;
    const auto& g = std::get<GaussianRational>(x.repr());
    FieldElement re = FieldElement::from_rational(fd, g.re);
    if (valuation(re) == ValExt(0)) return re;
  }
}

std::vector<std::int64_t> staircase_levels(std::size_t n) {
  std::vector<std::int64_t> levels;
  for (std::size_t k = 1; k <= n / 2; ++k) {
    levels.push_back(static_cast<std::int64_t>(k));
    levels.push_back(-static_cast<std::int64_t>(k));
  }
  if (n % 2 == 1) levels.push_back(0);
  return levels;
}

std::vector<std::int64_t> normalized_levels(const GenProfile& profile) {
  if (profile.levels.size() > profile.n) {
    throw Error(ErrorCode::InvalidInput, "more levels than the matrix size");
  }
  std::map<std::int64_t, long> balance;
  for (std::int64_t g : profile.levels) {
    if (g > 0) ++balance[g];
    if (g < 0) --balance[-g];
  }
  for (const auto& [g, diff] : balance) {
    if (diff != 0) {
      throw Error(ErrorCode::InvalidInput,
                  "unbalanced profile: valuations +" + std::to_string(g) + " and -" + std::to_string(g) +
                      " occur a different number of times");
    }
  }
  std::vector<std::int64_t> levels = profile.levels;
  levels.resize(profile.n, 0);
  std::sort(levels.begin(), levels.end(), std::greater<>());
  return levels;
}

Matrix random_unimodular(const FieldDescriptor& fd, std::size_t n, Rng& rng) {
  // Random permutation (Fisher-Yates) scaled by random units.
  Permutation perm = Permutation::identity(n);
  for (std::size_t i = n; i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(i) - 1));
    std::swap(perm.images[i - 1], perm.images[j]);
  }
  Matrix m(fd, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, perm.images[i]) = random_unit(fd, rng);

  // n elementary row operations row_i += c row_j with integral c.
  for (std::size_t k = 0; n > 1 && k < n; ++k) {
    const auto i = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(n) - 1));
    auto j = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(n) - 2));
    if (j >= i) ++j;
    const FieldElement c = random_integral(fd, rng);
    if (c.is_zero()) continue;
    for (std::size_t t = 0; t < n; ++t)
      if (!m(j, t).is_zero()) m.at(i, t) += c * m(j, t);
  }
  if (!is_unimodular(m)) throw Error(ErrorCode::InternalInvariant, "random_unimodular produced a non-unit");
  return m;
}

Matrix random_unimodular(const FieldDescriptor& fd, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return random_unimodular(fd, n, rng);
}

DescentProblem obfuscate(const DescentProblem& problem, std::size_t rounds, std::uint64_t seed) {
  Rng rng(seed);
  DescentProblem out = problem;
  const std::size_t n = problem.a.rows();
  for (std::size_t k = 0; k < rounds; ++k) {
    const Matrix x = random_unimodular(out.fd, n, rng);
    const Matrix y = random_unimodular(out.fd, n, rng);
    out.a = congruence(out.a, x);
    out.b = congruence(out.b, y);
    out.u = mul(y, mul(out.u, inverse(x)));
  }
  if (rounds > 0 && !(congruence(out.a, out.u) == out.b)) {
    throw Error(ErrorCode::InternalInvariant, "obfuscation broke u a u* = b");
  }
  return out;
}

DescentProblem generate_instance(const FieldDescriptor& fd, const GenProfile& profile) {
  const std::vector<std::int64_t> tau = normalized_levels(profile);
  const std::size_t n = profile.n;
  Rng rng(profile.seed);

  std::vector<FieldElement> diag;
  for (std::int64_t g : tau) diag.push_back(uniformizer_power(fd, g));
  const Matrix u = Matrix::diagonal(fd, diag);
  const FieldElement half = FieldElement::from_rational(fd, mpq_class(1, 2));

  for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
    // Sorted descending and balanced, so tau[i] = -tau[n-1-i].
    Matrix scaffold(fd, n, n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = n - 1 - i;
      if (tau[i] == 0) {
        scaffold.at(i, i) = random_fixed_unit(fd, rng);
      } else if (i < j) {
        const FieldElement c = random_unit(fd, rng);
        scaffold.at(i, j) = c;
        scaffold.at(j, i) = involute(c);
      }
    }
    Matrix noise(fd, n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (rng.coin(1, 3)) continue;
        const std::int64_t bound = std::max<std::int64_t>(0, -tau[i] - tau[j]);
        noise.at(i, j) = uniformizer_power(fd, bound) * random_integral(fd, rng);
      }
    }
    const Matrix a = scaffold + scalar_mul(half, noise + star_adjoint(noise));
    if (!is_unimodular(a)) continue;
    const Matrix b = congruence(a, u);
    if (!is_unimodular(b)) continue;

    DescentProblem problem{fd, a, b, u};
    if (profile.obfuscate_rounds > 0) problem = obfuscate(problem, profile.obfuscate_rounds, rng.next());
    const VerificationReport report = verify_instance(problem);
    if (!report.all_passed()) {
      throw Error(ErrorCode::InternalInvariant, "generated instance fails " + report.first_failure());
    }
    return problem;
  }
  throw Error(ErrorCode::GenerationFailed,
              "no unimodular Gram matrix found in " + std::to_string(kRetryBudget) + " attempts");
}

bool VerificationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::string VerificationReport::first_failure() const {
  for (const Check& c : checks)
    if (!c.passed) return c.name;
  return {};
}

VerificationReport verify_instance(const DescentProblem& problem) {
  VerificationReport report;
  const auto& [fd, a, b, u] = problem;
  const bool shapes = a.field() == fd && b.field() == fd && u.field() == fd && a.is_square() &&
                      b.is_square() && u.is_square() && a.rows() == b.rows() && a.rows() == u.rows();
  report.checks.push_back({"shapes", shapes});
  report.checks.push_back({"a_star_symmetric", shapes && is_star_symmetric(a)});
  report.checks.push_back({"b_star_symmetric", shapes && is_star_symmetric(b)});
  report.checks.push_back({"a_unimodular", shapes && is_unimodular(a)});
  report.checks.push_back({"b_unimodular", shapes && is_unimodular(b)});
  report.checks.push_back({"u_invertible", shapes && !determinant(u).is_zero()});
  report.checks.push_back({"congruence", shapes && congruence(a, u) == b});
  return report;
}

VerificationReport verify_solution(const Matrix& a, const Matrix& b, const Matrix& v) {
  VerificationReport report;
  const bool shapes = a.field() == v.field() && b.field() == v.field() && a.is_square() && v.is_square() &&
                      b.is_square() && a.rows() == v.rows() && b.rows() == v.rows();
  report.checks.push_back({"shapes", shapes});
  report.checks.push_back({"v_unimodular", shapes && is_unimodular(v)});
  report.checks.push_back({"congruence", shapes && congruence(a, v) == b});
  return report;
}

}  // namespace isodescent
