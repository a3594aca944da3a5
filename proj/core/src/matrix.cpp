#include "ddbin/matrix.hpp"

#include <string>

#include "ddbin/errors.hpp"

namespace ddbin {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    fail(Errc::DimensionMismatch, "matrix data has " + std::to_string(data_.size()) +
                                      " entries, expected " + std::to_string(rows_ * cols_));
  }
}

double dot(std::span<const double> a, std::span<const double> b) noexcept {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

void multiply(const Matrix& m, std::span<const double> x, std::span<double> out) {
  if (x.size() != m.cols() || out.size() != m.rows()) {
    fail(Errc::DimensionMismatch, "matrix is " + std::to_string(m.rows()) + "x" +
                                      std::to_string(m.cols()) + ", vector has " +
                                      std::to_string(x.size()) + " entries");
  }
  for (std::size_t r = 0; r < m.rows(); ++r) out[r] = dot(m.row(r), x);
}

std::vector<double> multiply(const Matrix& m, std::span<const double> x) {
  std::vector<double> out(m.rows());
  multiply(m, x, out);
  return out;
}

std::size_t argmax(std::span<const double> values) noexcept {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

}  // namespace ddbin
