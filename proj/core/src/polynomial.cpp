#include "isodescent/polynomial.hpp"

#include <algorithm>
#include <bit>

#include "isodescent/error.hpp"

namespace isodescent {

namespace {

mpz_class mod_positive(const mpz_class& a, std::int64_t m) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(m));
  return r;
}

void check_same(const Polynomial& a, const Polynomial& b) {
  if (a.modulus() != b.modulus()) {
    throw Error(ErrorCode::FieldMismatch, "polynomials over different coefficient fields");
  }
}


using Limbs = Polynomial::Words;

__extension__ typedef __int128 Wide;

constexpr std::int64_t kNarrowModulus = std::int64_t{1} << 31;
constexpr std::int64_t kSmallModulus = std::int64_t{1} << 16;


// Operands lie in [0, m).
std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
  if (m < kNarrowModulus) {
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(b) %
                                     static_cast<std::uint64_t>(m));
  }
  return static_cast<std::int64_t>(static_cast<Wide>(a) * b % m);
}

std::int64_t powmod(std::int64_t b, std::int64_t e, std::int64_t m) {
  std::int64_t r = 1 % m;
  b %= m;
  while (e > 0) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

std::int64_t invmod(std::int64_t a, std::int64_t m) { return powmod(a, m - 2, m); }

void trim(Limbs& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

// Long division over F_m: returns the remainder of a by b and stores the
// quotient when asked. b is nonzero with no trailing zeros.
Limbs divide_mod(const Limbs& a, const Limbs& b, std::int64_t m, Limbs* quot) {
  const std::size_t db = b.size() - 1;
  if (a.size() <= db) {
    if (quot) quot->clear();
    return a;
  }
  const std::int64_t lead_inv = invmod(b.back(), m);
  const std::size_t steps = a.size() - db;
  if (quot) quot->assign(steps, 0);
  Limbs rem;
  if (m < kSmallModulus) {
    // Lazy reduction: every update adds less than 2^32, so a slot absorbs
    // fewer than 2^32 updates without overflow. Only the slot being
    // eliminated needs reducing.
    const auto um = static_cast<std::uint64_t>(m);
    std::vector<std::uint64_t> acc(a.begin(), a.end());
    for (std::size_t k = steps; k-- > 0;) {
      const std::uint64_t top = acc[k + db] % um;
      if (top == 0) continue;
      const std::uint64_t q = top * static_cast<std::uint64_t>(lead_inv) % um;
      if (quot) (*quot)[k] = static_cast<std::int64_t>(q);
      const std::uint64_t neg_q = um - q;
      for (std::size_t j = 0; j < db; ++j) acc[k + j] += neg_q * static_cast<std::uint64_t>(b[j]);
    }
    rem.resize(db);
    for (std::size_t j = 0; j < db; ++j) rem[j] = static_cast<std::int64_t>(acc[j] % um);
  } else {
    rem = a;
    for (std::size_t k = steps; k-- > 0;) {
      const std::int64_t q = mulmod(rem[k + db], lead_inv, m);
      if (quot) (*quot)[k] = q;
      if (q == 0) continue;
      for (std::size_t j = 0; j <= db; ++j) {
        rem[k + j] -= mulmod(q, b[j], m);
        if (rem[k + j] < 0) rem[k + j] += m;
      }
    }
    rem.resize(db);
  }
  trim(rem);
  return rem;
}

// Monic gcd over F_m.
Limbs gcd_mod(Limbs a, Limbs b, std::int64_t m) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    a = divide_mod(a, b, m, nullptr);
    std::swap(a, b);
  }
  if (!a.empty()) {
    const std::int64_t inv = invmod(a.back(), m);
    for (auto& c : a) c = mulmod(c, inv, m);
  }
  return a;
}

// Integer polynomial proportional to the rational one, with content 1 and
// positive leading coefficient.
std::vector<mpz_class> primitive_integer(const std::vector<mpq_class>& coeffs) {
  mpz_class lcm = 1;
  for (const auto& c : coeffs) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
  std::vector<mpz_class> out(coeffs.size());
  mpz_class content = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    out[i] = coeffs[i].get_num() * (lcm / coeffs[i].get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), out[i].get_mpz_t());
  }
  if (!out.empty() && out.back() < 0) content = -content;
  if (content != 0 && content != 1) {
    for (auto& c : out) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), content.get_mpz_t());
  }
  return out;
}

void make_primitive(std::vector<mpz_class>& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
  mpz_class content = 0;
  for (const auto& c : v) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
  if (!v.empty() && v.back() < 0) content = -content;
  if (content != 0 && content != 1) {
    for (auto& c : v) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), content.get_mpz_t());
  }
}

// Images mod a word-sized prime; used to certify coprimality cheaply.
constexpr std::int64_t kProbePrime = 2147483629;  // largest prime below 2^31

bool coprime_by_probe(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
  auto image = [](const std::vector<mpz_class>& v) {
    Limbs out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      out[i] = static_cast<std::int64_t>(mpz_fdiv_ui(v[i].get_mpz_t(), kProbePrime));
    }
    return out;
  };
  Limbs ia = image(a);
  Limbs ib = image(b);
  // A degree drop in either image invalidates the probe.
  if (ia.back() == 0 || ib.back() == 0) return false;
  return gcd_mod(std::move(ia), std::move(ib), kProbePrime).size() == 1;
}

// Primitive remainder sequence over Z; returns the primitive gcd.
std::vector<mpz_class> gcd_integer(std::vector<mpz_class> a, std::vector<mpz_class> b) {
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    // Pseudo-remainder of a by b.
    const std::size_t db = b.size() - 1;
    const mpz_class lead = b.back();
    while (a.size() > db && !a.empty()) {
      const mpz_class top = a.back();
      const std::size_t shift = a.size() - 1 - db;
      for (auto& c : a) c *= lead;
      for (std::size_t j = 0; j <= db; ++j) a[shift + j] -= top * b[j];
      a.pop_back();
      while (!a.empty() && a.back() == 0) a.pop_back();
    }
    make_primitive(a);
    std::swap(a, b);
  }
  return a;
}

}  // namespace

mpq_class Polynomial::reduce(const mpq_class& c, std::int64_t modulus) {
  if (modulus == 0) return c;
  if (c.get_den() == 1 && c.get_num() >= 0 && c.get_num() < modulus) return c;
  mpq_class canonical = c;
  canonical.canonicalize();
  mpz_class num = mod_positive(canonical.get_num(), modulus);
  mpz_class den = mod_positive(canonical.get_den(), modulus);
  if (den == 0) throw Error(ErrorCode::DivisionByZero, "denominator vanishes in F_q");
  if (den != 1) {
    mpz_class inv;
    mpz_class m = modulus;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
    num = mod_positive(num * inv, modulus);
  }
  return mpq_class(num);
}

mpq_class Polynomial::inverse(const mpq_class& c, std::int64_t modulus) {
  if (c == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero coefficient");
  if (modulus == 0) return 1 / c;
  return mpq_class(static_cast<long>(invmod(reduce(c, modulus).get_num().get_si(), modulus)));
}

Polynomial::Polynomial(std::vector<mpq_class> coeffs, std::int64_t modulus) : modulus_(modulus) {
  if (modulus_ == 0) {
    coeffs_ = std::move(coeffs);
    for (mpq_class& c : coeffs_) c.canonicalize();
  } else {
    words_.resize(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) words_[i] = reduce(coeffs[i], modulus_).get_num().get_si();
  }
  normalize();
}

Polynomial::Polynomial(Words words, std::int64_t modulus) : words_(std::move(words)), modulus_(modulus) {
  normalize();
}

Polynomial Polynomial::constant(const mpq_class& c, std::int64_t modulus) {
  return Polynomial(std::vector<mpq_class>{c}, modulus);
}

Polynomial Polynomial::monomial(const mpq_class& c, std::size_t degree, std::int64_t modulus) {
  std::vector<mpq_class> v(degree + 1);
  v[degree] = c;
  return Polynomial(std::move(v), modulus);
}

void Polynomial::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

bool Polynomial::is_one() const {
  if (modulus_ == 0) return coeffs_.size() == 1 && coeffs_[0] == 1;
  return words_.size() == 1 && words_[0] == 1;
}

std::vector<mpq_class> Polynomial::coeffs() const {
  if (modulus_ == 0) return coeffs_;
  std::vector<mpq_class> out(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) out[i] = static_cast<long>(words_[i]);
  return out;
}

mpq_class Polynomial::coeff(std::size_t k) const {
  if (k >= size()) return 0;
  return modulus_ == 0 ? coeffs_[k] : mpq_class(static_cast<long>(words_[k]));
}

std::size_t Polynomial::order_at_zero() const {
  std::size_t k = 0;
  if (modulus_ == 0) {
    while (k < coeffs_.size() && coeffs_[k] == 0) ++k;
  } else {
    while (k < words_.size() && words_[k] == 0) ++k;
  }
  return k;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  check_same(*this, o);
  if (modulus_ != 0) {
    Words r(std::max(words_.size(), o.words_.size()), 0);
    for (std::size_t i = 0; i < words_.size(); ++i) r[i] = words_[i];
    for (std::size_t i = 0; i < o.words_.size(); ++i) {
      r[i] += o.words_[i];
      if (r[i] >= modulus_) r[i] -= modulus_;
    }
    return Polynomial(std::move(r), modulus_);
  }
  std::vector<mpq_class> r(std::max(coeffs_.size(), o.coeffs_.size()));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r[i] = coeffs_[i];
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) r[i] += o.coeffs_[i];
  return Polynomial(std::move(r), modulus_);
}

Polynomial Polynomial::operator-() const {
  if (modulus_ != 0) {
    Words r(words_.size());
    for (std::size_t i = 0; i < words_.size(); ++i) r[i] = words_[i] == 0 ? 0 : modulus_ - words_[i];
    return Polynomial(std::move(r), modulus_);
  }
  std::vector<mpq_class> r(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r[i] = -coeffs_[i];
  return Polynomial(std::move(r), modulus_);
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  check_same(*this, o);
  if (is_zero() || o.is_zero()) return Polynomial(modulus_);
  if (modulus_ != 0) {
    const std::size_t n = words_.size() + o.words_.size() - 1;
    Words r(n);
    if (modulus_ < kSmallModulus) {
      // Products stay below 2^32, so 64-bit sums of fewer than 2^32 terms
      // cannot overflow; reduce once per coefficient.
      std::vector<std::uint64_t> acc(n, 0);
      for (std::size_t i = 0; i < words_.size(); ++i) {
        if (words_[i] == 0) continue;
        const auto x = static_cast<std::uint64_t>(words_[i]);
        for (std::size_t j = 0; j < o.words_.size(); ++j) acc[i + j] += x * static_cast<std::uint64_t>(o.words_[j]);
      }
      for (std::size_t k = 0; k < n; ++k) r[k] = static_cast<std::int64_t>(acc[k] % static_cast<std::uint64_t>(modulus_));
    } else {
      std::vector<Wide> acc(n, 0);
      for (std::size_t i = 0; i < words_.size(); ++i) {
        if (words_[i] == 0) continue;
        for (std::size_t j = 0; j < o.words_.size(); ++j) acc[i + j] += static_cast<Wide>(words_[i]) * o.words_[j];
      }
      for (std::size_t k = 0; k < n; ++k) r[k] = static_cast<std::int64_t>(acc[k] % modulus_);
    }
    return Polynomial(std::move(r), modulus_);
  }
  std::vector<mpq_class> r(coeffs_.size() + o.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) r[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  return Polynomial(std::move(r), modulus_);
}

Polynomial Polynomial::scaled(const mpq_class& c) const {
  if (modulus_ != 0) {
    const std::int64_t k = reduce(c, modulus_).get_num().get_si();
    Words r(words_.size());
    for (std::size_t i = 0; i < words_.size(); ++i) r[i] = mulmod(words_[i], k, modulus_);
    return Polynomial(std::move(r), modulus_);
  }
  std::vector<mpq_class> r(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r[i] = coeffs_[i] * c;
  return Polynomial(std::move(r), modulus_);
}

Polynomial Polynomial::shifted_down(std::size_t k) const {
  if (k == 0) return *this;
  k = std::min(k, size());
  if (modulus_ != 0) return Polynomial(Words(words_.begin() + static_cast<long>(k), words_.end()), modulus_);
  return Polynomial(std::vector<mpq_class>(coeffs_.begin() + static_cast<long>(k), coeffs_.end()), modulus_);
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& divisor) const {
  check_same(*this, divisor);
  if (divisor.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  if (degree() < divisor.degree()) return {Polynomial(modulus_), *this};
  if (modulus_ != 0) {
    Words quot;
    Words rem = divide_mod(words_, divisor.words_, modulus_, &quot);
    return {Polynomial(std::move(quot), modulus_), Polynomial(std::move(rem), modulus_)};
  }
  std::vector<mpq_class> rem = coeffs_;
  std::vector<mpq_class> quot(coeffs_.size() - divisor.coeffs_.size() + 1);
  const mpq_class lead_inv = 1 / divisor.coeffs_.back();
  const std::size_t dd = divisor.coeffs_.size() - 1;
  for (std::size_t k = quot.size(); k-- > 0;) {
    mpq_class q = rem[k + dd] * lead_inv;
    quot[k] = q;
    if (q == 0) continue;
    for (std::size_t j = 0; j <= dd; ++j) rem[k + j] -= q * divisor.coeffs_[j];
  }
  rem.resize(dd);
  return {Polynomial(std::move(quot), modulus_), Polynomial(std::move(rem), modulus_)};
}

Polynomial Polynomial::exact_div(const Polynomial& divisor) const {
  auto [q, r] = divmod(divisor);
  if (!r.is_zero()) throw Error(ErrorCode::InternalInvariant, "inexact polynomial division");
  return q;
}

Polynomial Polynomial::monic() const {
  if (is_zero() || leading() == 1) return *this;
  return scaled(inverse(leading(), modulus_));
}

std::size_t Polynomial::max_bit_length() const {
  std::size_t best = 0;
  if (modulus_ != 0) {
    for (std::int64_t w : words_) best = std::max<std::size_t>(best, w == 0 ? 1 : std::bit_width(static_cast<std::uint64_t>(w)));
    return best;
  }
  for (const auto& c : coeffs_) {
    best = std::max(best, mpz_sizeinbase(c.get_num_mpz_t(), 2));
    best = std::max(best, mpz_sizeinbase(c.get_den_mpz_t(), 2));
  }
  return best;
}

std::string Polynomial::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  bool first = true;
  for (std::size_t k = size(); k-- > 0;) {
    const mpq_class c = coeff(k);
    if (c == 0) continue;
    const bool negative = c < 0;
    const mpq_class mag = negative ? mpq_class(-c) : c;
    if (negative) {
      out += "-";
    } else if (!first) {
      out += "+";
    }
    if (k == 0) {
      out += mag.get_str();
    } else {
      if (mag != 1) out += mag.get_str() + "*";
      out += "t";
      if (k > 1) out += "^" + std::to_string(k);
    }
    first = false;
  }
  return out;
}

Polynomial gcd(Polynomial a, Polynomial b) {
  check_same(a, b);
  const std::int64_t m = a.modulus();
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.degree() == 0 || b.degree() == 0) return Polynomial::constant(1, m);
  if (m != 0) return Polynomial(gcd_mod(std::move(a.words_), std::move(b.words_), m), m);
  std::vector<mpz_class> ia = primitive_integer(a.coeffs_);
  std::vector<mpz_class> ib = primitive_integer(b.coeffs_);
  if (coprime_by_probe(ia, ib)) return Polynomial::constant(1, 0);
  const std::vector<mpz_class> g = gcd_integer(std::move(ia), std::move(ib));
  std::vector<mpq_class> out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    out[i] = mpq_class(g[i], g.back());
    out[i].canonicalize();
  }
  return Polynomial(std::move(out), 0);
}

}  // namespace isodescent
