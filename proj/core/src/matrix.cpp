#include "isodescent/matrix.hpp"

#include <algorithm>
#include <numeric>

#include "isodescent/element_io.hpp"
#include "isodescent/error.hpp"

namespace isodescent {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::DimensionMismatch, what);
}

void require_field(const Matrix& a, const Matrix& b) {
  if (!(a.field() == b.field())) {
    throw Error(ErrorCode::FieldMismatch,
                "matrices over " + a.field().to_string() + " and " + b.field().to_string());
  }
}

std::string shape(const Matrix& a) {
  return std::to_string(a.rows()) + "x" + std::to_string(a.cols());
}

}  // namespace

Matrix::Matrix(const FieldDescriptor& fd, std::size_t rows, std::size_t cols)
    : fd_(fd), rows_(rows), cols_(cols), entries_(rows * cols, FieldElement::zero(fd)) {}

Matrix Matrix::identity(const FieldDescriptor& fd, std::size_t n) {
  Matrix m(fd, n, n);
  const FieldElement one = FieldElement::one(fd);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = one;
  return m;
}

Matrix Matrix::diagonal(const FieldDescriptor& fd, std::span<const FieldElement> ds) {
  Matrix m(fd, ds.size(), ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (!(ds[i].field() == fd)) throw Error(ErrorCode::FieldMismatch, "diagonal entry from another field");
    m.at(i, i) = ds[i];
  }
  return m;
}

Matrix Matrix::from_rows(const FieldDescriptor& fd, const std::vector<std::vector<FieldElement>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows[0].size();
  Matrix m(fd, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    require(rows[i].size() == c, "ragged rows");
    for (std::size_t j = 0; j < c; ++j) {
      if (!(rows[i][j].field() == fd)) throw Error(ErrorCode::FieldMismatch, "entry from another field");
      m.at(i, j) = rows[i][j];
    }
  }
  return m;
}

bool Matrix::is_diagonal() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (i != j && !(*this)(i, j).is_zero()) return false;
  return true;
}

std::vector<FieldElement> Matrix::diagonal_entries() const {
  std::vector<FieldElement> d;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) d.push_back((*this)(i, i));
  return d;
}

Matrix zeros(const FieldDescriptor& fd, std::size_t rows, std::size_t cols) { return Matrix(fd, rows, cols); }

Matrix add(const Matrix& a, const Matrix& b) {
  require_field(a, b);
  require(a.rows() == b.rows() && a.cols() == b.cols(), "add " + shape(a) + " + " + shape(b));
  Matrix r(a.field(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a(i, j) + b(i, j);
  return r;
}

Matrix sub(const Matrix& a, const Matrix& b) {
  require_field(a, b);
  require(a.rows() == b.rows() && a.cols() == b.cols(), "sub " + shape(a) + " - " + shape(b));
  Matrix r(a.field(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a(i, j) - b(i, j);
  return r;
}

Matrix scalar_mul(const FieldElement& c, const Matrix& a) {
  Matrix r(a.field(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = c * a(i, j);
  return r;
}

namespace {

const RationalFunction& rf(const FieldElement& x) { return std::get<RationalFunction>(x.repr()); }

Polynomial lcm(const Polynomial& x, const Polynomial& y) {
  if (x.is_one()) return y;
  if (y.is_one() || x == y) return x;
  return x * y.exact_div(gcd(x, y));
}

// Over k(t): bring row i of a over one denominator r_i and column j of b over
// c_j, so every product entry needs a single reduction instead of one per term.
Matrix mul_rational_functions(const Matrix& a, const Matrix& b) {
  const FieldDescriptor& fd = a.field();
  const std::int64_t m = fd.coefficient_prime;
  const std::size_t n = a.rows(), inner = a.cols(), cols = b.cols();
  std::vector<Polynomial> row_den(n, Polynomial::constant(1, m));
  std::vector<Polynomial> col_den(cols, Polynomial::constant(1, m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < inner; ++k) row_den[i] = lcm(row_den[i], rf(a(i, k)).den);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t k = 0; k < inner; ++k) col_den[j] = lcm(col_den[j], rf(b(k, j)).den);
  std::vector<Polynomial> pa(n * inner, Polynomial(m));
  std::vector<Polynomial> pb(inner * cols, Polynomial(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      const RationalFunction& x = rf(a(i, k));
      if (!x.num.is_zero()) pa[i * inner + k] = x.den.is_one() ? x.num * row_den[i] : x.num * row_den[i].exact_div(x.den);
    }
  for (std::size_t k = 0; k < inner; ++k)
    for (std::size_t j = 0; j < cols; ++j) {
      const RationalFunction& x = rf(b(k, j));
      if (!x.num.is_zero()) pb[k * cols + j] = x.den.is_one() ? x.num * col_den[j] : x.num * col_den[j].exact_div(x.den);
    }
  Matrix r(fd, n, cols);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      Polynomial acc(m);
      for (std::size_t k = 0; k < inner; ++k) {
        const Polynomial& x = pa[i * inner + k];
        const Polynomial& y = pb[k * cols + j];
        if (!x.is_zero() && !y.is_zero()) acc = acc + x * y;
      }
      if (!acc.is_zero()) r.at(i, j) = FieldElement::rational_function(fd, std::move(acc), row_den[i] * col_den[j]);
    }
  }
  return r;
}

}  // namespace

Matrix mul(const Matrix& a, const Matrix& b, CostRecorder* rec) {
  require_field(a, b);
  require(a.cols() == b.rows(), "mul " + shape(a) + " * " + shape(b));
  cost::matrix_op(rec);
  if (a.field().kind == FieldKind::RatfuncTadic) return mul_rational_functions(a, b);
  Matrix r(a.field(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const FieldElement& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        const FieldElement& bkj = b(k, j);
        if (bkj.is_zero()) continue;
        r.at(i, j) += aik * bkj;
      }
    }
  }
  return r;
}

Matrix star_adjoint(const Matrix& a) {
  Matrix r(a.field(), a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r.at(j, i) = involute(a(i, j));
  return r;
}

bool is_star_symmetric(const Matrix& a) { return a.is_square() && star_adjoint(a) == a; }

Matrix congruence(const Matrix& a, const Matrix& u, CostRecorder* rec) {
  require(a.is_square() && u.is_square() && a.rows() == u.rows(),
          "congruence of " + shape(a) + " by " + shape(u));
  return mul(mul(u, a, rec), star_adjoint(u), rec);
}

namespace {

struct Eliminated {
  FieldElement det;
  Matrix inverse;
};

// Gauss-Jordan with full pivoting on minimal valuation. Pivot searches are
// internal to the matrix primitive and are not charged to the recorder.
Eliminated eliminate(const Matrix& a, bool want_inverse) {
  require(a.is_square(), "elimination on non-square " + shape(a));
  const FieldDescriptor& fd = a.field();
  const std::size_t n = a.rows();
  Matrix m = a;
  Matrix right = want_inverse ? Matrix::identity(fd, n) : Matrix();
  std::vector<std::pair<std::size_t, std::size_t>> col_swaps;
  FieldElement det = FieldElement::one(fd);
  bool negate = false;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pr = n, pc = n;
    ValExt best = ValExt::infinity();
    for (std::size_t i = k; i < n; ++i) {
      for (std::size_t j = k; j < n; ++j) {
        if (m(i, j).is_zero()) continue;
        const ValExt v = valuation(m(i, j));
        if (pr == n || v < best) {
          best = v;
          pr = i;
          pc = j;
        }
      }
    }
    if (pr == n) {
      if (!want_inverse) return {FieldElement::zero(fd), Matrix()};
      throw Error(ErrorCode::SingularMatrix, "matrix is singular");
    }
    if (pr != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(pr, j));
      if (want_inverse)
        for (std::size_t j = 0; j < n; ++j) std::swap(right.at(k, j), right.at(pr, j));
      negate = !negate;
    }
    if (pc != k) {
      for (std::size_t i = 0; i < n; ++i) std::swap(m.at(i, k), m.at(i, pc));
      col_swaps.emplace_back(k, pc);
      negate = !negate;
    }
    const FieldElement pivot = m(k, k);
    det *= pivot;
    const FieldElement pinv = pivot.inverse();
    // Normalize pivot row, then clear the pivot column everywhere else.
    for (std::size_t j = k; j < n; ++j) m.at(k, j) *= pinv;
    if (want_inverse)
      for (std::size_t j = 0; j < n; ++j)
        if (!right(k, j).is_zero()) right.at(k, j) *= pinv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      if (!want_inverse && i < k) continue;
      const FieldElement f = m(i, k);
      if (f.is_zero()) continue;
      for (std::size_t j = k; j < n; ++j)
        if (!m(k, j).is_zero()) m.at(i, j) -= f * m(k, j);
      if (want_inverse)
        for (std::size_t j = 0; j < n; ++j)
          if (!right(k, j).is_zero()) right.at(i, j) -= f * right(k, j);
    }
  }
  if (negate) det = -det;
  if (want_inverse) {
    // m is now I = E a Q, so a^{-1} = Q E: undo the column swaps on rows.
    for (auto it = col_swaps.rbegin(); it != col_swaps.rend(); ++it)
      for (std::size_t j = 0; j < n; ++j) std::swap(right.at(it->first, j), right.at(it->second, j));
  }
  return {det, std::move(right)};
}

}  // namespace

Matrix inverse(const Matrix& a, CostRecorder* rec) {
  cost::matrix_op(rec);
  return eliminate(a, true).inverse;
}

FieldElement determinant(const Matrix& a, CostRecorder* rec) {
  cost::matrix_op(rec);
  return eliminate(a, false).det;
}

ValuationMatrix valuation_matrix(const Matrix& a, CostRecorder* rec) {
  ValuationMatrix out(a.rows(), std::vector<ValExt>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i][j] = valuation(a(i, j), rec);
  return out;
}

bool is_integral(const Matrix& a, CostRecorder* rec) {
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      cost::value_group(rec);
      if (valuation(a(i, j), rec) < ValExt(0)) return false;
    }
  }
  return true;
}

namespace {

// Element of the residue field S/m: F_p, F_p(i) with i^2 = -1 (p inert), Q or
// F_q. Over F_p the components are integers in [0, p).
struct Residue {
  mpq_class re;
  mpq_class im;
};

class ResidueField {
 public:
  explicit ResidueField(const FieldDescriptor& fd)
      : modulus_(fd.kind == FieldKind::RatfuncTadic ? fd.coefficient_prime : fd.p),
        gaussian_(fd.kind == FieldKind::GaussianInert) {}

  // Residue of an integral element.
  Residue of(const FieldElement& x) const {
    return std::visit(
        [this](const auto& r) -> Residue {
          using T = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<T, mpq_class>) return {reduce(r), 0};
          else if constexpr (std::is_same_v<T, GaussianRational>) return {reduce(r.re), reduce(r.im)};
          else return {reduce(r.num.coeff(0) / r.den.coeff(0)), 0};
        },
        x.repr());
  }

  bool is_zero(const Residue& x) const { return x.re == 0 && x.im == 0; }
  Residue sub(const Residue& x, const Residue& y) const { return {reduce(x.re - y.re), reduce(x.im - y.im)}; }
  Residue mul(const Residue& x, const Residue& y) const {
    return {reduce(x.re * y.re - x.im * y.im), reduce(x.re * y.im + x.im * y.re)};
  }
  Residue inverse(const Residue& x) const {
    // (a + bi)^{-1} = (a - bi) / (a^2 + b^2); the norm is a unit when p is inert.
    const mpq_class norm_inv = Polynomial::inverse(reduce(x.re * x.re + x.im * x.im), modulus_);
    return {reduce(x.re * norm_inv), reduce(-x.im * norm_inv)};
  }

 private:
  mpq_class reduce(const mpq_class& c) const {
    if (!gaussian_ && modulus_ == 0) return c;
    return Polynomial::reduce(c, modulus_);
  }

  std::int64_t modulus_;
  bool gaussian_;
};

}  // namespace

bool is_unimodular(const Matrix& a, CostRecorder* rec) {
  if (!a.is_square() || !is_integral(a, rec)) return false;
  // For integral a, nu(det a) = 0 iff det a has nonzero residue, and the
  // residue of det a is the determinant of the residue matrix.
  cost::matrix_op(rec);
  cost::value_group(rec);
  const ResidueField k(a.field());
  const std::size_t n = a.rows();
  std::vector<Residue> m(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i * n + j] = k.of(a(i, j));
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pr = c;
    while (pr < n && k.is_zero(m[pr * n + c])) ++pr;
    if (pr == n) return false;
    if (pr != c)
      for (std::size_t j = 0; j < n; ++j) std::swap(m[c * n + j], m[pr * n + j]);
    const Residue pinv = k.inverse(m[c * n + c]);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (k.is_zero(m[i * n + c])) continue;
      const Residue f = k.mul(m[i * n + c], pinv);
      for (std::size_t j = c; j < n; ++j) m[i * n + j] = k.sub(m[i * n + j], k.mul(f, m[c * n + j]));
    }
  }
  return true;
}

Permutation Permutation::identity(std::size_t n) {
  Permutation p;
  p.images.resize(n);
  std::iota(p.images.begin(), p.images.end(), 0);
  return p;
}

Permutation Permutation::swap(std::size_t n, std::size_t i, std::size_t j) {
  Permutation p = identity(n);
  std::swap(p.images.at(i), p.images.at(j));
  return p;
}

bool Permutation::is_valid() const {
  std::vector<bool> seen(images.size(), false);
  for (std::size_t v : images) {
    if (v >= images.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

Permutation Permutation::inverse() const {
  Permutation r;
  r.images.resize(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) r.images[images[i]] = i;
  return r;
}

Permutation Permutation::then(const Permutation& q) const {
  if (q.size() != size()) throw Error(ErrorCode::DimensionMismatch, "composing permutations of different sizes");
  Permutation r;
  r.images.resize(size());
  for (std::size_t i = 0; i < size(); ++i) r.images[i] = images[q.images[i]];
  return r;
}

Matrix Permutation::to_matrix(const FieldDescriptor& fd) const {
  Matrix m(fd, size(), size());
  const FieldElement one = FieldElement::one(fd);
  for (std::size_t i = 0; i < size(); ++i) m.at(i, images[i]) = one;
  return m;
}

Matrix apply_permutation(const Permutation& p, const Matrix& a, PermuteSide side) {
  if (!p.is_valid()) throw Error(ErrorCode::DimensionMismatch, "not a permutation");
  const bool rows = side != PermuteSide::Cols;
  const bool cols = side != PermuteSide::Rows;
  require(!rows || p.size() == a.rows(), "row permutation size");
  require(!cols || p.size() == a.cols(), "column permutation size");
  Matrix r(a.field(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      r.at(i, j) = a(rows ? p.images[i] : i, cols ? p.images[j] : j);
  return r;
}

Matrix block(const Matrix& a, std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) {
  require(r0 <= r1 && r1 <= a.rows() && c0 <= c1 && c1 <= a.cols(), "block range outside " + shape(a));
  Matrix r(a.field(), r1 - r0, c1 - c0);
  for (std::size_t i = r0; i < r1; ++i)
    for (std::size_t j = c0; j < c1; ++j) r.at(i - r0, j - c0) = a(i, j);
  return r;
}

Matrix assemble(const std::vector<std::vector<Matrix>>& blocks) {
  require(!blocks.empty() && !blocks[0].empty(), "assemble of an empty grid");
  const FieldDescriptor fd = blocks[0][0].field();
  const std::size_t bc = blocks[0].size();
  std::vector<std::size_t> heights, widths(bc);
  for (std::size_t j = 0; j < bc; ++j) widths[j] = blocks[0][j].cols();
  for (const auto& row : blocks) {
    require(row.size() == bc, "ragged block grid");
    heights.push_back(row[0].rows());
    for (std::size_t j = 0; j < bc; ++j) {
      require(row[j].rows() == heights.back() && row[j].cols() == widths[j], "non-conformant blocks");
      if (!(row[j].field() == fd)) throw Error(ErrorCode::FieldMismatch, "blocks over different fields");
    }
  }
  const std::size_t n = std::accumulate(heights.begin(), heights.end(), std::size_t{0});
  const std::size_t m = std::accumulate(widths.begin(), widths.end(), std::size_t{0});
  Matrix out(fd, n, m);
  std::size_t r0 = 0;
  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    std::size_t c0 = 0;
    for (std::size_t bj = 0; bj < bc; ++bj) {
      const Matrix& b = blocks[bi][bj];
      for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) out.at(r0 + i, c0 + j) = b(i, j);
      c0 += widths[bj];
    }
    r0 += heights[bi];
  }
  return out;
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
  const FieldDescriptor& fd = a.field();
  return assemble({{a, zeros(fd, a.rows(), b.cols())}, {zeros(fd, b.rows(), a.cols()), b}});
}

std::size_t max_bit_length(const Matrix& a) {
  std::size_t best = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) best = std::max(best, bit_length(a(i, j)));
  return best;
}

std::string to_string(const Matrix& a) {
  std::string s = "[";
  for (std::size_t i = 0; i < a.rows(); ++i) {
    s += i ? ", [" : "[";
    for (std::size_t j = 0; j < a.cols(); ++j) s += (j ? ", " : "") + format_element(a(i, j));
    s += "]";
  }
  return s + "]";
}

}  // namespace isodescent
