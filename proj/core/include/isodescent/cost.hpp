#pragma once

#include <cstdint>

namespace isodescent {

/// Operation counters for one descent run. The four buckets follow the
/// standard cost accounting of the algorithm: matrix products and inversions,
/// valuation evaluations, value-group arithmetic and comparisons, and
/// uniformizer (preimage) lookups. A recorder is owned by the caller and
/// passed down explicitly; a null recorder disables counting.
struct CostRecorder {
  std::uint64_t matrix_mul_inv = 0;
  std::uint64_t valuations = 0;
  std::uint64_t value_group_ops = 0;
  std::uint64_t uniformizer_lookups = 0;

  void reset() { *this = CostRecorder{}; }
};

namespace cost {

inline void matrix_op(CostRecorder* rec, std::uint64_t k = 1) {
  if (rec) rec->matrix_mul_inv += k;
}
inline void valuation(CostRecorder* rec, std::uint64_t k = 1) {
  if (rec) rec->valuations += k;
}
inline void value_group(CostRecorder* rec, std::uint64_t k = 1) {
  if (rec) rec->value_group_ops += k;
}
inline void uniformizer(CostRecorder* rec, std::uint64_t k = 1) {
  if (rec) rec->uniformizer_lookups += k;
}

}  // namespace cost
}  // namespace isodescent
