#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace isodescent {

/// Dense univariate polynomial in t over either the rationals (modulus 0) or
/// the prime field F_q (modulus q). Coefficients are stored lowest degree
/// first with no trailing zeros. Over F_q they are machine words in [0, q),
/// so q must stay below 2^62.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::int64_t modulus) : modulus_(modulus) {}
  Polynomial(std::vector<mpq_class> coeffs, std::int64_t modulus);

  static Polynomial constant(const mpq_class& c, std::int64_t modulus);
  static Polynomial monomial(const mpq_class& c, std::size_t degree, std::int64_t modulus);

  std::int64_t modulus() const { return modulus_; }
  bool is_zero() const { return size() == 0; }
  bool is_one() const;
  /// Degree; -1 for the zero polynomial.
  long degree() const { return static_cast<long>(size()) - 1; }
  std::vector<mpq_class> coeffs() const;
  mpq_class coeff(std::size_t k) const;
  mpq_class leading() const { return coeff(size() - 1); }
  /// Multiplicity of t as a factor (order of vanishing at t = 0). Zero
  /// polynomial has no finite order; callers must check is_zero first.
  std::size_t order_at_zero() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial scaled(const mpq_class& c) const;
  Polynomial shifted_down(std::size_t k) const;  // divide by t^k, exact

  /// Euclidean division; divisor must be nonzero.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const;
  Polynomial exact_div(const Polynomial& divisor) const;
  Polynomial monic() const;

  /// Bit length of the largest numerator or denominator among coefficients.
  std::size_t max_bit_length() const;

  std::string to_string() const;

  bool operator==(const Polynomial& o) const = default;

  using Words = std::vector<std::int64_t>;

  /// Reduce c into the coefficient field (no-op over Q). Throws
  /// DivisionByZero when the denominator vanishes mod q.
  static mpq_class reduce(const mpq_class& c, std::int64_t modulus);
  static mpq_class inverse(const mpq_class& c, std::int64_t modulus);

 private:
  Polynomial(Words words, std::int64_t modulus);
  std::size_t size() const { return modulus_ == 0 ? coeffs_.size() : words_.size(); }
  void normalize();

  std::vector<mpq_class> coeffs_;  // modulus 0
  Words words_;                    // modulus q
  std::int64_t modulus_ = 0;

  friend Polynomial gcd(Polynomial a, Polynomial b);
};

/// Monic greatest common divisor; gcd(0, 0) = 0.
Polynomial gcd(Polynomial a, Polynomial b);

}  // namespace isodescent
