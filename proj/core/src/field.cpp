#include "isodescent/field.hpp"

#include <algorithm>
#include <charconv>

#include "isodescent/error.hpp"

namespace isodescent {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  mpz_class z = n;
  return mpz_probab_prime_p(z.get_mpz_t(), 30) > 0;
}

FieldDescriptor FieldDescriptor::rational_padic(std::int64_t p) {
  if (!is_prime(p)) throw Error(ErrorCode::InvalidField, "p = " + std::to_string(p) + " is not prime");
  if (p == 2) throw Error(ErrorCode::InvalidField, "p = 2 is excluded: 2 must be a unit");
  return {FieldKind::RationalPadic, p, 0};
}

FieldDescriptor FieldDescriptor::gaussian_inert(std::int64_t p) {
  if (!is_prime(p)) throw Error(ErrorCode::InvalidField, "p = " + std::to_string(p) + " is not prime");
  if (p == 2) throw Error(ErrorCode::InvalidField, "p = 2 is excluded: 2 must be a unit");
  if (p % 4 != 3) {
    throw Error(ErrorCode::InvalidField,
                "p = " + std::to_string(p) + " splits in Z[i]; need p = 3 mod 4");
  }
  return {FieldKind::GaussianInert, p, 0};
}

FieldDescriptor FieldDescriptor::ratfunc_tadic(std::int64_t coefficient_prime) {
  if (coefficient_prime != 0) {
    if (!is_prime(coefficient_prime)) {
      throw Error(ErrorCode::InvalidField,
                  "coefficient prime " + std::to_string(coefficient_prime) + " is not prime");
    }
    if (coefficient_prime == 2) {
      throw Error(ErrorCode::InvalidField, "characteristic 2 is excluded: 2 must be a unit");
    }
  }
  return {FieldKind::RatfuncTadic, 0, coefficient_prime};
}

FieldDescriptor FieldDescriptor::parse(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view kind = text.substr(0, colon);
  std::int64_t value = 0;
  const bool has_value = colon != std::string_view::npos;
  if (has_value) {
    const std::string_view digits = text.substr(colon + 1);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
      throw Error(ErrorCode::InvalidField, "bad prime in field descriptor '" + std::string(text) + "'");
    }
  }
  if (kind == "q-padic" && has_value) return rational_padic(value);
  if (kind == "gaussian-inert" && has_value) return gaussian_inert(value);
  if (kind == "ratfunc-tadic") return ratfunc_tadic(value);
  throw Error(ErrorCode::InvalidField, "unknown field descriptor '" + std::string(text) + "'");
}

std::string FieldDescriptor::kind_name() const {
  switch (kind) {
    case FieldKind::RationalPadic: return "q-padic";
    case FieldKind::GaussianInert: return "gaussian-inert";
    case FieldKind::RatfuncTadic: return "ratfunc-tadic";
  }
  return "?";
}

std::string FieldDescriptor::to_string() const {
  if (kind == FieldKind::RatfuncTadic) {
    return coefficient_prime == 0 ? kind_name() : kind_name() + ":" + std::to_string(coefficient_prime);
  }
  return kind_name() + ":" + std::to_string(p);
}

namespace {

void require_same(const FieldElement& x, const FieldElement& y) {
  if (!(x.field() == y.field())) {
    throw Error(ErrorCode::FieldMismatch,
                "operands from " + x.field().to_string() + " and " + y.field().to_string());
  }
}

RationalFunction canonical(Polynomial num, Polynomial den) {
  if (den.is_zero()) throw Error(ErrorCode::DivisionByZero, "rational function with zero denominator");
  const std::int64_t m = den.modulus();
  if (num.is_zero()) return {Polynomial(m), Polynomial::constant(1, m)};
  if (!den.is_one()) {
    Polynomial g = gcd(num, den);
    if (!g.is_one()) {
      num = num.exact_div(g);
      den = den.exact_div(g);
    }
    if (den.leading() != 1) {
      const mpq_class inv = Polynomial::inverse(den.leading(), m);
      num = num.scaled(inv);
      den = den.scaled(inv);
    }
  }
  return {std::move(num), std::move(den)};
}

RationalFunction rf_add(const RationalFunction& x, const RationalFunction& y) {
  if (x.den == y.den) return canonical(x.num + y.num, x.den);
  if (x.den.is_one()) return {x.num * y.den + y.num, y.den};
  if (y.den.is_one()) return {y.num * x.den + x.num, x.den};
  // With g = gcd(dx, dy) only g can share factors with the new numerator.
  const Polynomial g = gcd(x.den, y.den);
  if (g.is_one()) return canonical(x.num * y.den + y.num * x.den, x.den * y.den);
  const Polynomial xq = x.den.exact_div(g);
  const Polynomial yq = y.den.exact_div(g);
  Polynomial num = x.num * yq + y.num * xq;
  Polynomial den = x.den * yq;
  if (num.is_zero()) return {Polynomial(den.modulus()), Polynomial::constant(1, den.modulus())};
  const Polynomial h = gcd(num, g);
  if (!h.is_one()) {
    num = num.exact_div(h);
    den = den.exact_div(h);
  }
  return {std::move(num), std::move(den)};
}

RationalFunction rf_mul(const RationalFunction& x, const RationalFunction& y) {
  if (x.num.is_zero() || y.num.is_zero()) return canonical(x.num * y.num, x.den);
  // Cross-cancel first so the products stay small.
  Polynomial g1 = gcd(x.num, y.den);
  Polynomial g2 = gcd(y.num, x.den);
  Polynomial n1 = g1.is_one() ? x.num : x.num.exact_div(g1);
  Polynomial d2 = g1.is_one() ? y.den : y.den.exact_div(g1);
  Polynomial n2 = g2.is_one() ? y.num : y.num.exact_div(g2);
  Polynomial d1 = g2.is_one() ? x.den : x.den.exact_div(g2);
  Polynomial num = n1 * n2;
  Polynomial den = d1 * d2;
  const mpq_class inv = Polynomial::inverse(den.leading(), den.modulus());
  return {num.scaled(inv), den.scaled(inv)};
}

RationalFunction rf_inverse(const RationalFunction& x) {
  if (x.num.is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  return canonical(x.den, x.num);
}

}  // namespace

FieldElement FieldElement::from_rational(const FieldDescriptor& fd, const mpq_class& input) {
  mpq_class q = input;
  q.canonicalize();
  switch (fd.kind) {
    case FieldKind::RationalPadic: return FieldElement(fd, q);
    case FieldKind::GaussianInert: return FieldElement(fd, GaussianRational{q, 0});
    case FieldKind::RatfuncTadic:
      return FieldElement(fd, RationalFunction{Polynomial::constant(q, fd.coefficient_prime),
                                               Polynomial::constant(1, fd.coefficient_prime)});
  }
  return FieldElement(fd, q);
}

FieldElement FieldElement::zero(const FieldDescriptor& fd) { return from_rational(fd, 0); }
FieldElement FieldElement::one(const FieldDescriptor& fd) { return from_rational(fd, 1); }
FieldElement FieldElement::from_integer(const FieldDescriptor& fd, long v) {
  return from_rational(fd, mpq_class(v));
}

FieldElement FieldElement::gaussian(const FieldDescriptor& fd, const mpq_class& re, const mpq_class& im) {
  if (fd.kind != FieldKind::GaussianInert) {
    throw Error(ErrorCode::FieldMismatch, "Gaussian element requested in " + fd.to_string());
  }
  return FieldElement(fd, GaussianRational{re, im});
}

FieldElement FieldElement::rational_function(const FieldDescriptor& fd, Polynomial num, Polynomial den) {
  if (fd.kind != FieldKind::RatfuncTadic || num.modulus() != fd.coefficient_prime ||
      den.modulus() != fd.coefficient_prime) {
    throw Error(ErrorCode::FieldMismatch, "rational function requested in " + fd.to_string());
  }
  return FieldElement(fd, canonical(std::move(num), std::move(den)));
}

bool FieldElement::is_zero() const {
  return std::visit(
      [](const auto& r) -> bool {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, mpq_class>) return r == 0;
        else if constexpr (std::is_same_v<T, GaussianRational>) return r.re == 0 && r.im == 0;
        else return r.num.is_zero();
      },
      repr_);
}

bool FieldElement::is_one() const {
  return std::visit(
      [](const auto& r) -> bool {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, mpq_class>) return r == 1;
        else if constexpr (std::is_same_v<T, GaussianRational>) return r.re == 1 && r.im == 0;
        else return r.num.is_one() && r.den.is_one();
      },
      repr_);
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  require_same(*this, o);
  switch (fd_.kind) {
    case FieldKind::RationalPadic:
      return FieldElement(fd_, mpq_class(std::get<mpq_class>(repr_) + std::get<mpq_class>(o.repr_)));
    case FieldKind::GaussianInert: {
      const auto& x = std::get<GaussianRational>(repr_);
      const auto& y = std::get<GaussianRational>(o.repr_);
      return FieldElement(fd_, GaussianRational{x.re + y.re, x.im + y.im});
    }
    case FieldKind::RatfuncTadic:
      return FieldElement(fd_, rf_add(std::get<RationalFunction>(repr_), std::get<RationalFunction>(o.repr_)));
  }
  return *this;
}

FieldElement FieldElement::operator-() const {
  switch (fd_.kind) {
    case FieldKind::RationalPadic: return FieldElement(fd_, mpq_class(-std::get<mpq_class>(repr_)));
    case FieldKind::GaussianInert: {
      const auto& x = std::get<GaussianRational>(repr_);
      return FieldElement(fd_, GaussianRational{-x.re, -x.im});
    }
    case FieldKind::RatfuncTadic: {
      const auto& x = std::get<RationalFunction>(repr_);
      return FieldElement(fd_, RationalFunction{-x.num, x.den});
    }
  }
  return *this;
}

FieldElement FieldElement::operator-(const FieldElement& o) const { return *this + (-o); }

FieldElement FieldElement::operator*(const FieldElement& o) const {
  require_same(*this, o);
  switch (fd_.kind) {
    case FieldKind::RationalPadic:
      return FieldElement(fd_, mpq_class(std::get<mpq_class>(repr_) * std::get<mpq_class>(o.repr_)));
    case FieldKind::GaussianInert: {
      const auto& x = std::get<GaussianRational>(repr_);
      const auto& y = std::get<GaussianRational>(o.repr_);
      return FieldElement(fd_, GaussianRational{x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re});
    }
    case FieldKind::RatfuncTadic:
      return FieldElement(fd_, rf_mul(std::get<RationalFunction>(repr_), std::get<RationalFunction>(o.repr_)));
  }
  return *this;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  switch (fd_.kind) {
    case FieldKind::RationalPadic: return FieldElement(fd_, mpq_class(1 / std::get<mpq_class>(repr_)));
    case FieldKind::GaussianInert: {
      const auto& x = std::get<GaussianRational>(repr_);
      const mpq_class norm = x.re * x.re + x.im * x.im;
      return FieldElement(fd_, GaussianRational{x.re / norm, -x.im / norm});
    }
    case FieldKind::RatfuncTadic:
      return FieldElement(fd_, rf_inverse(std::get<RationalFunction>(repr_)));
  }
  return *this;
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
  require_same(*this, o);
  if (o.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by zero");
  return *this * o.inverse();
}

FieldElement arith(ArithOp op, const FieldElement& x, const FieldElement& y) {
  switch (op) {
    case ArithOp::Add: return x + y;
    case ArithOp::Sub: return x - y;
    case ArithOp::Mul: return x * y;
    case ArithOp::Div: return x / y;
    case ArithOp::Neg: return -x;
  }
  return x;
}

FieldElement involute(const FieldElement& x) {
  if (x.field().kind != FieldKind::GaussianInert) return x;
  const auto& g = std::get<GaussianRational>(x.repr());
  return FieldElement::gaussian(x.field(), g.re, -g.im);
}

std::int64_t padic_valuation(const mpq_class& q, std::int64_t p) {
  mpz_class prime = p;
  mpz_class rest;
  const auto vn = mpz_remove(rest.get_mpz_t(), q.get_num_mpz_t(), prime.get_mpz_t());
  const auto vd = mpz_remove(rest.get_mpz_t(), q.get_den_mpz_t(), prime.get_mpz_t());
  return static_cast<std::int64_t>(vn) - static_cast<std::int64_t>(vd);
}

ValExt valuation(const FieldElement& x, CostRecorder* rec) {
  cost::valuation(rec);
  if (x.is_zero()) return ValExt::infinity();
  const FieldDescriptor& fd = x.field();
  switch (fd.kind) {
    case FieldKind::RationalPadic: return padic_valuation(std::get<mpq_class>(x.repr()), fd.p);
    case FieldKind::GaussianInert: {
      const auto& g = std::get<GaussianRational>(x.repr());
      const std::int64_t v = padic_valuation(g.re * g.re + g.im * g.im, fd.p);
      // p inert: the norm valuation is always even.
      if (v % 2 != 0) throw Error(ErrorCode::InternalInvariant, "odd norm valuation for inert prime");
      return v / 2;
    }
    case FieldKind::RatfuncTadic: {
      const auto& f = std::get<RationalFunction>(x.repr());
      return static_cast<std::int64_t>(f.num.order_at_zero()) -
             static_cast<std::int64_t>(f.den.order_at_zero());
    }
  }
  return ValExt::infinity();
}

FieldElement uniformizer_power(const FieldDescriptor& fd, std::int64_t gamma, CostRecorder* rec) {
  cost::uniformizer(rec);
  const auto k = static_cast<unsigned long>(gamma < 0 ? -gamma : gamma);
  if (fd.kind == FieldKind::RatfuncTadic) {
    const std::int64_t m = fd.coefficient_prime;
    Polynomial tk = Polynomial::monomial(1, k, m);
    Polynomial one = Polynomial::constant(1, m);
    return gamma >= 0 ? FieldElement::rational_function(fd, tk, one)
                      : FieldElement::rational_function(fd, one, tk);
  }
  mpz_class pk;
  mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(fd.p), k);
  mpq_class q = gamma >= 0 ? mpq_class(pk) : mpq_class(mpz_class(1), pk);
  return FieldElement::from_rational(fd, q);
}

namespace {
std::size_t bits(const mpq_class& q) {
  return std::max(mpz_sizeinbase(q.get_num_mpz_t(), 2), mpz_sizeinbase(q.get_den_mpz_t(), 2));
}
}  // namespace

std::size_t bit_length(const FieldElement& x) {
  return std::visit(
      [](const auto& r) -> std::size_t {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, mpq_class>) return bits(r);
        else if constexpr (std::is_same_v<T, GaussianRational>) return std::max(bits(r.re), bits(r.im));
        else return std::max(r.num.max_bit_length(), r.den.max_bit_length());
      },
      x.repr());
}

}  // namespace isodescent
