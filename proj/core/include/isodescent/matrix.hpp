#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "isodescent/cost.hpp"
#include "isodescent/field.hpp"

namespace isodescent {

/// Dense row-major matrix over one field. Every entry shares the matrix's
/// field descriptor.
class Matrix {
 public:
  Matrix() = default;
  Matrix(const FieldDescriptor& fd, std::size_t rows, std::size_t cols);

  static Matrix identity(const FieldDescriptor& fd, std::size_t n);
  static Matrix diagonal(const FieldDescriptor& fd, std::span<const FieldElement> ds);
  /// Rows must all have the same length and entries must lie in `fd`.
  static Matrix from_rows(const FieldDescriptor& fd, const std::vector<std::vector<FieldElement>>& rows);

  const FieldDescriptor& field() const { return fd_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  const FieldElement& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  FieldElement& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }

  bool is_diagonal() const;
  std::vector<FieldElement> diagonal_entries() const;

  bool operator==(const Matrix& o) const {
    return fd_ == o.fd_ && rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
  }

 private:
  FieldDescriptor fd_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<FieldElement> entries_;
};

Matrix add(const Matrix& a, const Matrix& b);
Matrix sub(const Matrix& a, const Matrix& b);
Matrix scalar_mul(const FieldElement& c, const Matrix& a);
/// Counted as one matrix multiplication on `rec`.
Matrix mul(const Matrix& a, const Matrix& b, CostRecorder* rec = nullptr);

inline Matrix operator+(const Matrix& a, const Matrix& b) { return add(a, b); }
inline Matrix operator-(const Matrix& a, const Matrix& b) { return sub(a, b); }
inline Matrix operator*(const Matrix& a, const Matrix& b) { return mul(a, b); }

/// (a*)_{ij} = sigma(a_{ji}).
Matrix star_adjoint(const Matrix& a);
bool is_star_symmetric(const Matrix& a);

/// u a u*, counted as two multiplications.
Matrix congruence(const Matrix& a, const Matrix& u, CostRecorder* rec = nullptr);

/// Exact Gauss-Jordan elimination. The pivot is always an entry of minimal
/// valuation in the remaining submatrix (ties broken by smallest row, then
/// column). Throws SingularMatrix.
Matrix inverse(const Matrix& a, CostRecorder* rec = nullptr);
FieldElement determinant(const Matrix& a, CostRecorder* rec = nullptr);

using ValuationMatrix = std::vector<std::vector<ValExt>>;
ValuationMatrix valuation_matrix(const Matrix& a, CostRecorder* rec = nullptr);

/// Every entry lies in the valuation ring S.
bool is_integral(const Matrix& a, CostRecorder* rec = nullptr);
/// Square, integral and with unit determinant: a lies in GL_n(S).
bool is_unimodular(const Matrix& a, CostRecorder* rec = nullptr);

/// Permutation of {0..n-1}. The associated permutation matrix P has
/// P(i, images[i]) = 1, so row i of P*a is row images[i] of a.
struct Permutation {
  std::vector<std::size_t> images;

  static Permutation identity(std::size_t n);
  static Permutation swap(std::size_t n, std::size_t i, std::size_t j);

  std::size_t size() const { return images.size(); }
  bool is_valid() const;
  Permutation inverse() const;
  /// (p.then(q)) as matrices is Q*P: apply p first, then q.
  Permutation then(const Permutation& q) const;
  Matrix to_matrix(const FieldDescriptor& fd) const;

  bool operator==(const Permutation&) const = default;
};

enum class PermuteSide {
  Rows,       // P a
  Cols,       // a P^T (column j of the result is column images[j] of a)
  Congruent,  // P a P^T = P a P*
};

Matrix apply_permutation(const Permutation& p, const Matrix& a, PermuteSide side);

/// Half-open ranges [r0, r1) x [c0, c1).
Matrix block(const Matrix& a, std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1);
/// Glue a grid of blocks; every block row must share a height and every
/// block column a width. Empty (0-sized) blocks are allowed.
Matrix assemble(const std::vector<std::vector<Matrix>>& blocks);
Matrix direct_sum(const Matrix& a, const Matrix& b);
Matrix zeros(const FieldDescriptor& fd, std::size_t rows, std::size_t cols);

/// Largest numerator/denominator bit length over all entries.
std::size_t max_bit_length(const Matrix& a);

std::string to_string(const Matrix& a);

}  // namespace isodescent
