#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "idealflow/error.hpp"

namespace idealflow {

// Dense row-major matrix. Small enough that every matrix in this library is
// stored densely; n stays in the hundreds at most.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix square(std::size_t n, const T& fill = T{}) { return Matrix(n, n, fill); }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) {
        throw Error(ErrorKind::kDimensionMismatch, "ragged row " + std::to_string(i));
      }
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<T>& data() const noexcept { return data_; }

  bool same_shape(const Matrix& other) const noexcept {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<std::int64_t>;
using RealMatrix = Matrix<double>;
// Entries restricted to {0, 1}.
using BinaryMatrix = IntMatrix;

// Nonnegative hop count extended with an unreachable marker. The marker is a
// separate state, not a large integer.
class HopCount {
 public:
  constexpr HopCount() = default;
  constexpr explicit HopCount(std::int64_t hops) : hops_(hops) {}

  static constexpr HopCount unreachable() {
    HopCount h;
    h.hops_ = kUnreachable;
    return h;
  }

  constexpr bool finite() const noexcept { return hops_ != kUnreachable; }
  // Only meaningful when finite().
  constexpr std::int64_t value() const noexcept { return hops_; }

  friend constexpr bool operator==(HopCount, HopCount) = default;

 private:
  static constexpr std::int64_t kUnreachable = std::numeric_limits<std::int64_t>::min();
  std::int64_t hops_ = 0;
};

using HopMatrix = Matrix<HopCount>;

template <typename T>
void require_same_shape(const Matrix<T>& x, const Matrix<T>& y, const char* what) {
  if (!x.same_shape(y)) {
    throw Error(ErrorKind::kDimensionMismatch,
                std::string(what) + ": " + std::to_string(x.rows()) + "x" +
                    std::to_string(x.cols()) + " vs " + std::to_string(y.rows()) + "x" +
                    std::to_string(y.cols()));
  }
}

// 1 where the entry is strictly positive and finite, 0 otherwise.
BinaryMatrix binarize(const HopMatrix& m);
BinaryMatrix binarize(const IntMatrix& m);
BinaryMatrix binarize(const RealMatrix& m);

template <typename T>
Matrix<T> hadamard(const Matrix<T>& x, const Matrix<T>& y) {
  require_same_shape(x, y, "hadamard");
  Matrix<T> out(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) out(i, j) = x(i, j) * y(i, j);
  return out;
}

template <typename T>
Matrix<T> operator+(const Matrix<T>& x, const Matrix<T>& y) {
  require_same_shape(x, y, "add");
  Matrix<T> out(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) out(i, j) = x(i, j) + y(i, j);
  return out;
}

template <typename T>
Matrix<T> operator-(const Matrix<T>& x, const Matrix<T>& y) {
  require_same_shape(x, y, "subtract");
  Matrix<T> out(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) out(i, j) = x(i, j) - y(i, j);
  return out;
}

template <typename T>
std::vector<T> row_sums(const Matrix<T>& m) {
  std::vector<T> sums(m.rows(), T{});
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) sums[i] += m(i, j);
  return sums;
}

template <typename T>
std::vector<T> col_sums(const Matrix<T>& m) {
  std::vector<T> sums(m.cols(), T{});
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) sums[j] += m(i, j);
  return sums;
}

RealMatrix to_real(const IntMatrix& m);

}  // namespace idealflow
