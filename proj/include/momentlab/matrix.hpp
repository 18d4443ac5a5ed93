#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "momentlab/errors.hpp"
#include "momentlab/rational.hpp"

namespace momentlab {

// Dense row-major matrix over an exact or floating scalar. Values are
// immutable once built in typical use; all structure predicates (Hankel,
// symmetric) are derived by scanning, never stored.
template <typename T>
class Matrix {
 public:
  Matrix() = default;

  Matrix(std::size_t rows, std::size_t cols, const T& init = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, init) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n, T{});
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix ones(std::size_t rows, std::size_t cols) {
    return Matrix(rows, cols, T(1));
  }

  static Matrix from_rows(std::initializer_list<std::initializer_list<T>> rows) {
    Matrix m(rows.size(), rows.size() == 0 ? 0 : rows.begin()->size());
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != m.cols_) throw dimension_error("ragged row list");
      std::size_t j = 0;
      for (const auto& v : row) m(i, j++) = v;
      ++i;
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  bool empty() const { return data_.empty(); }

  T& operator()(std::size_t i, std::size_t j) {
    check_index(i, j);
    return data_[i * cols_ + j];
  }
  const T& operator()(std::size_t i, std::size_t j) const {
    check_index(i, j);
    return data_[i * cols_ + j];
  }

  bool operator==(const Matrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
  }
  bool operator!=(const Matrix& other) const { return !(*this == other); }

  Matrix submatrix(const std::vector<std::size_t>& row_set,
                   const std::vector<std::size_t>& col_set) const {
    Matrix m(row_set.size(), col_set.size());
    for (std::size_t i = 0; i < row_set.size(); ++i) {
      for (std::size_t j = 0; j < col_set.size(); ++j) {
        if (row_set[i] >= rows_ || col_set[j] >= cols_)
          throw index_error("submatrix index out of bounds");
        m(i, j) = (*this)(row_set[i], col_set[j]);
      }
    }
    return m;
  }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }

 private:
  void check_index(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw index_error("matrix index out of bounds");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

// True iff the matrix is square and each entry depends only on i+j,
// verified by scanning every anti-diagonal.
template <typename T>
bool is_hankel(const Matrix<T>& a) {
  if (!a.square()) return false;
  const std::size_t n = a.rows();
  for (std::size_t s = 1; s + 1 < 2 * n; ++s) {
    const std::size_t lo = s >= n ? s - n + 1 : 0;
    const std::size_t hi = s < n ? s : n - 1;
    for (std::size_t i = lo + 1; i <= hi; ++i) {
      if (a(i, s - i) != a(lo, s - lo)) return false;
    }
  }
  return true;
}

template <typename T>
bool is_symmetric(const Matrix<T>& a) {
  if (!a.square()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j)
      if (a(i, j) != a(j, i)) return false;
  return true;
}

inline bool is_symmetric_within(const Matrix<double>& a, double tol) {
  if (!a.square()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j)
      if (std::abs(a(i, j) - a(j, i)) > tol) return false;
  return true;
}

template <typename T>
Matrix<T> transpose(const Matrix<T>& a) {
  Matrix<T> m(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(j, i) = a(i, j);
  return m;
}

template <typename T>
Matrix<T> operator+(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw dimension_error("matrix sum shape mismatch");
  Matrix<T> m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j) + b(i, j);
  return m;
}

template <typename T>
Matrix<T> operator-(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw dimension_error("matrix difference shape mismatch");
  Matrix<T> m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j) - b(i, j);
  return m;
}

template <typename T>
Matrix<T> scale(const T& c, const Matrix<T>& a) {
  Matrix<T> m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = c * a(i, j);
  return m;
}

template <typename T>
Matrix<T> matmul(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw dimension_error("matrix product shape mismatch");
  Matrix<T> m(a.rows(), b.cols(), T{});
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T& aik = a(i, k);
      if (aik == T{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) m(i, j) += aik * b(k, j);
    }
  return m;
}

// Entrywise (Schur) product.
template <typename T>
Matrix<T> hadamard(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw dimension_error("hadamard shape mismatch");
  Matrix<T> m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j) * b(i, j);
  return m;
}

// Entrywise integer power, exact. alpha < 0 requires non-zero entries.
inline Matrix<Rational> hadamard_pow(const Matrix<Rational>& a, long long alpha) {
  Matrix<Rational> m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = pow_rational(a(i, j), alpha);
  return m;
}

// Entrywise real power. Non-integer alpha requires positive entries.
inline Matrix<double> hadamard_pow(const Matrix<double>& a, double alpha) {
  const bool integral = alpha == std::floor(alpha);
  Matrix<double> m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const double x = a(i, j);
      if (!integral && x <= 0.0)
        throw domain_error("non-integer entrywise power of a non-positive entry");
      m(i, j) = std::pow(x, alpha);
    }
  return m;
}

inline Matrix<double> to_float(const Matrix<Rational>& a) {
  Matrix<double> m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = to_double(a(i, j));
  return m;
}

inline double inf_norm(const Matrix<double>& a) {
  double best = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) row += std::abs(a(i, j));
    if (row > best) best = row;
  }
  return best;
}

}  // namespace momentlab
