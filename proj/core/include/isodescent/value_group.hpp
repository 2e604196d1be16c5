#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

namespace isodescent {

/// Element of the value group (the integers) extended by +infinity, the
/// valuation of zero. Infinity absorbs addition and dominates every finite
/// value.
class ValExt {
 public:
  constexpr ValExt() = default;
  constexpr ValExt(std::int64_t v) : value_(v), finite_(true) {}  // NOLINT(implicit)

  static constexpr ValExt infinity() {
    ValExt r;
    r.finite_ = false;
    return r;
  }

  constexpr bool is_finite() const { return finite_; }
  constexpr bool is_infinite() const { return !finite_; }

  /// Only meaningful for finite values.
  constexpr std::int64_t value() const { return value_; }

  constexpr ValExt operator+(ValExt o) const {
    if (!finite_ || !o.finite_) return infinity();
    return ValExt(value_ + o.value_);
  }
  constexpr ValExt operator-() const { return finite_ ? ValExt(-value_) : infinity(); }

  constexpr bool operator==(const ValExt& o) const {
    return finite_ == o.finite_ && (!finite_ || value_ == o.value_);
  }
  constexpr std::strong_ordering operator<=>(const ValExt& o) const {
    if (!finite_ || !o.finite_) {
      if (finite_ == o.finite_) return std::strong_ordering::equal;
      return finite_ ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return value_ <=> o.value_;
  }

  std::string to_string() const { return finite_ ? std::to_string(value_) : "INFINITY"; }

 private:
  std::int64_t value_ = 0;
  bool finite_ = true;
};

inline std::ostream& operator<<(std::ostream& os, ValExt v) { return os << v.to_string(); }

inline ValExt min(ValExt a, ValExt b) { return b < a ? b : a; }

}  // namespace isodescent
