#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "isodescent/descent.hpp"
#include "isodescent/field.hpp"
#include "isodescent/matrix.hpp"

namespace isodescent {

/// Seeded generator with a fixed algorithm (64-bit Mersenne twister) and
/// portable bounded draws, so a seed produces the same stream on every
/// platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform on [lo, hi], by rejection sampling.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  bool coin(std::uint32_t numerator, std::uint32_t denominator) {
    return uniform(0, denominator - 1) < numerator;
  }

 private:
  std::mt19937_64 engine_;
};

/// A random element of S (valuation >= 0) with small coefficients.
FieldElement random_integral(const FieldDescriptor& fd, Rng& rng);
/// A random unit of S (valuation exactly 0).
FieldElement random_unit(const FieldDescriptor& fd, Rng& rng);
/// A random sigma-fixed unit.
FieldElement random_fixed_unit(const FieldDescriptor& fd, Rng& rng);

struct GenProfile {
  std::size_t n = 0;
  /// Diagonal valuations of the rational isometry; shorter lists are padded
  /// with zeros. Each gamma must occur as often as -gamma.
  std::vector<std::int64_t> levels;
  std::size_t obfuscate_rounds = 0;
  std::uint64_t seed = 0;
};

/// Levels +-1, +-2, ..., +-floor(n/2), plus a 0 when n is odd: the deepest
/// profile available at size n.
std::vector<std::int64_t> staircase_levels(std::size_t n);

/// Throws InvalidInput when the profile is not balanced or too long.
std::vector<std::int64_t> normalized_levels(const GenProfile& profile);

/// Builds a valid problem: u is the diagonal of uniformizer powers (sorted
/// descending), a is a unit scaffold (anti-diagonal on each +-gamma pairing,
/// diagonal on the unit block) plus *-symmetrized noise respecting
/// nu(a_ij) >= max(0, -tau_i - tau_j), retried up to 64 times until a and
/// u a u* are unimodular, then obfuscated. Deterministic in (fd, profile).
DescentProblem generate_instance(const FieldDescriptor& fd, const GenProfile& profile);

/// `rounds` times: a <- x a x*, b <- y b y*, u <- y u x^{-1} for random
/// unimodular x, y.
DescentProblem obfuscate(const DescentProblem& problem, std::size_t rounds, std::uint64_t seed);

/// Product of a random permutation, a random unit diagonal and n random
/// integral elementary matrices.
Matrix random_unimodular(const FieldDescriptor& fd, std::size_t n, std::uint64_t seed);
Matrix random_unimodular(const FieldDescriptor& fd, std::size_t n, Rng& rng);

struct Check {
  std::string name;
  bool passed = false;
};

struct VerificationReport {
  std::vector<Check> checks;

  bool all_passed() const;
  /// First failing check, or empty.
  std::string first_failure() const;
};

/// Independent oracle over the matrix primitives only.
VerificationReport verify_instance(const DescentProblem& problem);
/// Checks that v is unimodular and v a v* = b.
VerificationReport verify_solution(const Matrix& a, const Matrix& b, const Matrix& v);

}  // namespace isodescent
