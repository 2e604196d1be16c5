#pragma once

#include <string>
#include <vector>

#include "isodescent/element_io.hpp"
#include "isodescent/field.hpp"
#include "isodescent/forge.hpp"
#include "isodescent/matrix.hpp"

namespace isodescent::testing {

inline FieldElement el(const FieldDescriptor& fd, const std::string& text) { return parse_element(text, fd); }

inline Matrix mat(const FieldDescriptor& fd, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::vector<FieldElement>> out;
  for (const auto& row : rows) {
    out.emplace_back();
    for (const auto& text : row) out.back().push_back(parse_element(text, fd));
  }
  return Matrix::from_rows(fd, out);
}

inline FieldDescriptor q5() { return FieldDescriptor::rational_padic(5); }

/// The field descriptors exercised by property tests.
inline std::vector<FieldDescriptor> all_fields() {
  return {FieldDescriptor::rational_padic(3), FieldDescriptor::rational_padic(5),
          FieldDescriptor::rational_padic(7), FieldDescriptor::gaussian_inert(3),
          FieldDescriptor::gaussian_inert(7), FieldDescriptor::ratfunc_tadic(0),
          FieldDescriptor::ratfunc_tadic(5)};
}

/// Random element of K: an integral element times a uniformizer power in
/// [-3, 3].
inline FieldElement random_element(const FieldDescriptor& fd, Rng& rng) {
  return random_integral(fd, rng) * uniformizer_power(fd, rng.uniform(-3, 3));
}

inline Matrix random_matrix(const FieldDescriptor& fd, std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix m(fd, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = random_element(fd, rng);
  return m;
}

inline Matrix random_invertible(const FieldDescriptor& fd, std::size_t n, Rng& rng) {
  while (true) {
    Matrix m = random_matrix(fd, n, n, rng);
    if (!determinant(m).is_zero()) return m;
  }
}

/// Random *-symmetric integral r x r matrix.
inline Matrix random_hermitian_integral(const FieldDescriptor& fd, std::size_t r, Rng& rng) {
  Matrix m(fd, r, r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i; j < r; ++j) {
      FieldElement x = random_integral(fd, rng);
      if (i == j) x = (x + involute(x)) * FieldElement::from_rational(fd, mpq_class(1, 2));
      m.at(i, j) = x;
      m.at(j, i) = involute(x);
    }
  }
  return m;
}

}  // namespace isodescent::testing
