#include "isodescent/element_io.hpp"

#include <cctype>

#include "isodescent/error.hpp"

namespace isodescent {

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  std::size_t pos() const { return pos_; }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(pos_, what); }

  mpz_class digits() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  /// Unsigned rational magnitude: digits ['/' digits]. With `lookahead`, a
  /// '/' not followed by a digit is left for the caller ("1/t").
  mpq_class magnitude(bool lookahead = false) {
    mpz_class num = digits();
    mpz_class den = 1;
    skip_space();
    const bool slash_digit = pos_ + 1 < text_.size() && is_digit_at(pos_ + 1);
    if ((!lookahead || slash_digit) && accept('/')) {
      const std::size_t at = pos_;
      den = digits();
      if (den == 0) throw ParseError(at, "zero denominator");
    }
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  }

  bool is_digit_at(std::size_t k) const { return std::isdigit(static_cast<unsigned char>(text_[k])) != 0; }

  void finish() {
    if (!at_end()) fail("unexpected trailing input");
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

mpq_class parse_rational(Cursor& cur) {
  bool negative = false;
  if (cur.accept('-')) negative = true;
  else cur.accept('+');
  mpq_class q = cur.magnitude();
  return negative ? mpq_class(-q) : q;
}

FieldElement parse_gaussian(Cursor& cur, const FieldDescriptor& fd) {
  mpq_class re = 0, im = 0;
  bool first = true;
  do {
    bool negative = false;
    if (cur.accept('-')) negative = true;
    else if (!cur.accept('+') && !first) cur.fail("expected '+' or '-'");
    first = false;
    if (cur.accept('i')) {
      im += negative ? -1 : 1;
      continue;
    }
    if (!is_digit(cur.peek())) cur.fail("expected a number or 'i'");
    mpq_class q = cur.magnitude();
    if (negative) q = -q;
    if (cur.accept('*')) {
      cur.expect('i');
      im += q;
    } else {
      re += q;
    }
  } while (!cur.at_end() && (cur.peek() == '+' || cur.peek() == '-'));
  return FieldElement::gaussian(fd, re, im);
}

/// poly := ['+'|'-'] term (('+'|'-') term)* ; term := coef ['*' tpow] | tpow
Polynomial parse_poly(Cursor& cur, std::int64_t modulus) {
  Polynomial acc(modulus);
  bool first = true;
  while (true) {
    bool negative = false;
    if (cur.accept('-')) negative = true;
    else if (!cur.accept('+') && !first) cur.fail("expected '+' or '-'");
    first = false;
    mpq_class coef = 1;
    std::size_t degree = 0;
    bool has_t = false;
    if (is_digit(cur.peek())) {
      coef = cur.magnitude(true);
      if (cur.accept('*')) {
        if (cur.peek() != 't') cur.fail("expected 't'");
        has_t = true;
      }
    } else if (cur.peek() == 't') {
      has_t = true;
    } else {
      cur.fail("expected a coefficient or 't'");
    }
    if (has_t) {
      cur.expect('t');
      degree = 1;
      if (cur.accept('^')) {
        const std::size_t at = cur.pos();
        mpz_class d = cur.digits();
        if (!d.fits_ulong_p() || d > 1000000) throw ParseError(at, "exponent too large");
        degree = d.get_ui();
      }
    }
    if (negative) coef = -coef;
    acc = acc + Polynomial::monomial(coef, degree, modulus);
    const char next = cur.peek();
    if (next != '+' && next != '-') break;
  }
  return acc;
}

FieldElement parse_ratfunc(Cursor& cur, const FieldDescriptor& fd) {
  const std::int64_t m = fd.coefficient_prime;
  auto group = [&]() {
    if (cur.accept('(')) {
      Polynomial p = parse_poly(cur, m);
      cur.expect(')');
      return p;
    }
    return parse_poly(cur, m);
  };
  Polynomial num = group();
  Polynomial den = Polynomial::constant(1, m);
  if (cur.accept('/')) {
    const std::size_t at = cur.pos();
    den = group();
    if (den.is_zero()) throw ParseError(at, "zero denominator");
  }
  return FieldElement::rational_function(fd, std::move(num), std::move(den));
}

}  // namespace

FieldElement parse_element(std::string_view text, const FieldDescriptor& fd) {
  Cursor cur(text);
  if (cur.at_end()) cur.fail("empty element");
  FieldElement out;
  try {
    switch (fd.kind) {
      case FieldKind::RationalPadic: out = FieldElement::from_rational(fd, parse_rational(cur)); break;
      case FieldKind::GaussianInert: out = parse_gaussian(cur, fd); break;
      case FieldKind::RatfuncTadic: out = parse_ratfunc(cur, fd); break;
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    // e.g. a coefficient denominator divisible by the coefficient prime
    throw ParseError(cur.pos(), e.what());
  }
  cur.finish();
  return out;
}

std::string format_element(const FieldElement& x) {
  const auto& repr = x.repr();
  if (const auto* q = std::get_if<mpq_class>(&repr)) return q->get_str();
  if (const auto* g = std::get_if<GaussianRational>(&repr)) {
    if (g->im == 0) return g->re.get_str();
    std::string imag;
    if (g->im == 1) imag = "i";
    else if (g->im == -1) imag = "-i";
    else imag = g->im.get_str() + "*i";
    if (g->re == 0) return imag;
    return g->re.get_str() + (g->im > 0 ? "+" : "") + imag;
  }
  const auto& f = std::get<RationalFunction>(repr);
  if (f.den.is_one()) return f.num.to_string();
  return "(" + f.num.to_string() + ")/(" + f.den.to_string() + ")";
}

}  // namespace isodescent
