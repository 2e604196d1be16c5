#pragma once

#include <string>
#include <string_view>

#include "isodescent/field.hpp"

namespace isodescent {

/// Text syntax for field elements:
///   rationals           "a" or "a/b" with optional sign
///   Gaussian rationals  "a/b+c/d*i"; either part may be omitted, "i" alone is 1*i
///   rational functions  "(poly)/(poly)", "(poly)" or a bare poly in t, with
///                       integer or rational coefficients and "^" for powers
/// Throws ParseError carrying the offending character position.
FieldElement parse_element(std::string_view text, const FieldDescriptor& fd);

/// Canonical text; parse_element(format_element(x), x.field()) == x.
std::string format_element(const FieldElement& x);

}  // namespace isodescent
