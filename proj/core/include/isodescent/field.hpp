#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

#include "isodescent/cost.hpp"
#include "isodescent/polynomial.hpp"
#include "isodescent/value_group.hpp"

namespace isodescent {

enum class FieldKind {
  RationalPadic,  // Q with the p-adic valuation, trivial involution
  GaussianInert,  // Q(i), p = 3 mod 4 inert, complex conjugation
  RatfuncTadic,   // k(t) with the t-adic valuation, trivial involution
};

/// Names the concrete involutive valued field. Construct through the factory
/// functions, which enforce the hypotheses the descent relies on: the
/// residue characteristic is odd (so 2 is a unit) and, for the Gaussian
/// field, p stays prime in Z[i] (so the quadratic extension is unramified).
struct FieldDescriptor {
  FieldKind kind = FieldKind::RationalPadic;
  std::int64_t p = 3;                  // unused for RatfuncTadic
  std::int64_t coefficient_prime = 0;  // RatfuncTadic only; 0 means Q

  static FieldDescriptor rational_padic(std::int64_t p);
  static FieldDescriptor gaussian_inert(std::int64_t p);
  static FieldDescriptor ratfunc_tadic(std::int64_t coefficient_prime = 0);

  /// Accepts the CLI/JSON spelling: "q-padic:5", "gaussian-inert:3",
  /// "ratfunc-tadic" or "ratfunc-tadic:7".
  static FieldDescriptor parse(std::string_view text);
  std::string to_string() const;
  std::string kind_name() const;

  bool operator==(const FieldDescriptor&) const = default;
};

bool is_prime(std::int64_t n);

struct GaussianRational {
  mpq_class re;
  mpq_class im;
  bool operator==(const GaussianRational&) const = default;
};

/// Reduced quotient num/den with den monic and gcd(num, den) = 1; zero is 0/1.
struct RationalFunction {
  Polynomial num;
  Polynomial den;
  bool operator==(const RationalFunction&) const = default;
};

/// Exact element of the field named by its descriptor. Values are immutable
/// and always kept in canonical form, so equality is representation equality.
class FieldElement {
 public:
  using Repr = std::variant<mpq_class, GaussianRational, RationalFunction>;

  FieldElement() : FieldElement(zero(FieldDescriptor{})) {}

  static FieldElement zero(const FieldDescriptor& fd);
  static FieldElement one(const FieldDescriptor& fd);
  static FieldElement from_integer(const FieldDescriptor& fd, long v);
  /// Embeds a rational into any of the three fields (constant function for k(t)).
  static FieldElement from_rational(const FieldDescriptor& fd, const mpq_class& q);
  static FieldElement gaussian(const FieldDescriptor& fd, const mpq_class& re, const mpq_class& im);
  static FieldElement rational_function(const FieldDescriptor& fd, Polynomial num, Polynomial den);

  const FieldDescriptor& field() const { return fd_; }
  const Repr& repr() const { return repr_; }

  bool is_zero() const;
  bool is_one() const;

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement inverse() const;

  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

  bool operator==(const FieldElement& o) const { return fd_ == o.fd_ && repr_ == o.repr_; }

 private:
  FieldElement(FieldDescriptor fd, Repr repr) : fd_(fd), repr_(std::move(repr)) {}

  FieldDescriptor fd_;
  Repr repr_;
};

enum class ArithOp { Add, Sub, Mul, Div, Neg };

/// Binary dispatcher over the operators; `Neg` ignores y.
FieldElement arith(ArithOp op, const FieldElement& x, const FieldElement& y);

/// The field involution: complex conjugation on Q(i), identity otherwise.
FieldElement involute(const FieldElement& x);

/// nu(x); nu(0) is infinity. Counts one valuation application on `rec`.
ValExt valuation(const FieldElement& x, CostRecorder* rec = nullptr);

/// A sigma-fixed element of the base field with valuation exactly gamma:
/// p^gamma, or t^gamma for rational functions.
FieldElement uniformizer_power(const FieldDescriptor& fd, std::int64_t gamma,
                               CostRecorder* rec = nullptr);

/// Largest bit length of any integer numerator or denominator inside x.
std::size_t bit_length(const FieldElement& x);

/// p-adic valuation of a nonzero rational.
std::int64_t padic_valuation(const mpq_class& q, std::int64_t p);

}  // namespace isodescent
