#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ddbin {

/// Dense row-major matrix of doubles. Rows are classes, columns are pixels
/// throughout the library.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::span<double> values() noexcept { return data_; }
  std::span<const double> values() const noexcept { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Sequential left-to-right dot product; the fixed order keeps results
/// reproducible bit for bit.
double dot(std::span<const double> a, std::span<const double> b) noexcept;

/// out = m * x. Throws DimensionMismatch on shape errors.
void multiply(const Matrix& m, std::span<const double> x, std::span<double> out);
std::vector<double> multiply(const Matrix& m, std::span<const double> x);

/// Index of the largest entry; ties go to the lowest index. Empty input -> 0.
std::size_t argmax(std::span<const double> values) noexcept;

}  // namespace ddbin
