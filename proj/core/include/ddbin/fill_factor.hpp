#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ddbin/matrix.hpp"
#include "ddbin/naive_bayes.hpp"

namespace ddbin {

/// Fraction f_mn of pixel n's area wired to superpixel m. Physically valid
/// when 0 <= f_mn <= 1 and every pixel column sums to at most 1.
struct FillFactorMatrix {
  Matrix f;

  std::size_t classes() const noexcept { return f.rows(); }
  std::size_t pixels() const noexcept { return f.cols(); }

  bool operator==(const FillFactorMatrix&) const = default;
};

inline constexpr double kFillTolerance = 1e-12;

/// f = (w - min w) / max_n sum_m (w_mn - min w), min over the whole matrix.
/// A global affine map, so argmax over classes is unchanged for any image.
/// Throws DegenerateWeights for a constant matrix, InvalidArgument for
/// non-finite entries.
FillFactorMatrix normalize_nb(const WeightMatrix& weights);

/// f = w / max_n sum_m w_mn for non-negative w. Throws InvalidArgument on a
/// negative entry and DegenerateWeights on an all-zero matrix.
FillFactorMatrix normalize_ann(const WeightMatrix& weights);

struct Violation {
  enum class Kind { NonFinite, EntryBelowZero, EntryAboveOne, ColumnSumExceeded };
  Kind kind;
  std::size_t m;  // unused for ColumnSumExceeded
  std::size_t n;
  double value;

  std::string describe() const;
  bool operator==(const Violation&) const = default;
};

/// Every breach of the hardware constraints, within kFillTolerance. A column
/// sum is only reported when none of that column's entries is itself invalid.
std::vector<Violation> validate(const FillFactorMatrix& fill);

/// Binned area fraction: sum of all f_mn divided by the pixel count.
double coverage(const FillFactorMatrix& fill);

}  // namespace ddbin
