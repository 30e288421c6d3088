#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "shimura/error.hpp"

namespace shimura {

// Dense row-major matrix over any commutative ring type T. Ring elements that
// need a parent object (Witt elements, truncated polynomials) are handled by
// requiring an explicit fill value and ADL functions `zero_like` / `one_like`.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    require(data_.size() == rows_ * cols_, ErrorKind::DimensionMismatch,
            "matrix data size does not match shape");
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<T>& data() const noexcept { return data_; }

  template <class F>
  auto map(F&& f) const -> Matrix<decltype(f(std::declval<const T&>()))> {
    using U = decltype(f(std::declval<const T&>()));
    std::vector<U> out;
    out.reserve(data_.size());
    for (const auto& x : data_) out.push_back(f(x));
    return Matrix<U>(rows_, cols_, std::move(out));
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class T>
Matrix<T> identity(std::size_t n, const T& zero, const T& one) {
  Matrix<T> m(n, n, zero);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
  return m;
}

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  require(a.cols() == b.rows(), ErrorKind::DimensionMismatch, "matrix product shape mismatch");
  require(!a.empty() || !b.empty(), ErrorKind::DimensionMismatch, "empty matrix product");
  const T zero = zero_like(a.empty() ? b(0, 0) : a(0, 0));
  Matrix<T> c(a.rows(), b.cols(), zero);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T& aik = a(i, k);
      if (is_zero(aik)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = c(i, j) + aik * b(k, j);
    }
  }
  return c;
}

template <class T>
Matrix<T> operator+(const Matrix<T>& a, const Matrix<T>& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorKind::DimensionMismatch,
          "matrix sum shape mismatch");
  std::vector<T> out;
  out.reserve(a.data().size());
  for (std::size_t i = 0; i < a.data().size(); ++i) out.push_back(a.data()[i] + b.data()[i]);
  return Matrix<T>(a.rows(), a.cols(), std::move(out));
}

template <class T>
Matrix<T> operator-(const Matrix<T>& a, const Matrix<T>& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorKind::DimensionMismatch,
          "matrix difference shape mismatch");
  std::vector<T> out;
  out.reserve(a.data().size());
  for (std::size_t i = 0; i < a.data().size(); ++i) out.push_back(a.data()[i] - b.data()[i]);
  return Matrix<T>(a.rows(), a.cols(), std::move(out));
}

template <class T>
Matrix<T> scale(const T& s, const Matrix<T>& a) {
  return a.map([&](const T& x) { return s * x; });
}

// Assembles (A B; C D).
template <class T>
Matrix<T> block(const Matrix<T>& a, const Matrix<T>& b, const Matrix<T>& c, const Matrix<T>& d) {
  require(a.rows() == b.rows() && c.rows() == d.rows() && a.cols() == c.cols() &&
              b.cols() == d.cols(),
          ErrorKind::DimensionMismatch, "block shapes are incompatible");
  const std::size_t r0 = a.rows(), c0 = a.cols();
  const T zero = zero_like(a(0, 0));
  Matrix<T> m(r0 + c.rows(), c0 + b.cols(), zero);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (i < r0) {
        m(i, j) = j < c0 ? a(i, j) : b(i, j - c0);
      } else {
        m(i, j) = j < c0 ? c(i - r0, j) : d(i - r0, j - c0);
      }
    }
  }
  return m;
}

template <class T>
Matrix<T> submatrix(const Matrix<T>& a, std::size_t r0, std::size_t c0, std::size_t rows,
                    std::size_t cols) {
  require(r0 + rows <= a.rows() && c0 + cols <= a.cols(), ErrorKind::DimensionMismatch,
          "submatrix out of range");
  std::vector<T> out;
  out.reserve(rows * cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out.push_back(a(r0 + i, c0 + j));
  return Matrix<T>(rows, cols, std::move(out));
}

// Division-free characteristic polynomial (Berkowitz). Returns the
// coefficients of det(x*I - A), highest degree first: {1, c_1, ..., c_h}.
// Only ring operations are used, so zero divisors in the coefficient ring are
// harmless.
template <class T>
std::vector<T> characteristic_polynomial(const Matrix<T>& a) {
  require(a.square() && a.rows() > 0, ErrorKind::DimensionMismatch,
          "characteristic polynomial needs a nonempty square matrix");
  const std::size_t n = a.rows();
  const T zero = zero_like(a(0, 0));
  const T one = one_like(a(0, 0));
  std::vector<T> coeffs{one, zero - a(0, 0)};
  for (std::size_t r = 1; r < n; ++r) {
    // A_{r+1} = (M S; R a): first column of the Toeplitz factor is
    // 1, -a, -R S, -R M S, ..., -R M^{r-1} S.
    std::vector<T> column;
    column.reserve(r + 2);
    column.push_back(one);
    column.push_back(zero - a(r, r));
    std::vector<T> v(r, zero);  // M^k S
    for (std::size_t i = 0; i < r; ++i) v[i] = a(i, r);
    for (std::size_t k = 0; k < r; ++k) {
      T dot = zero;
      for (std::size_t i = 0; i < r; ++i) dot = dot + a(r, i) * v[i];
      column.push_back(zero - dot);
      if (k + 1 < r) {
        std::vector<T> next(r, zero);
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < r; ++j) next[i] = next[i] + a(i, j) * v[j];
        v = std::move(next);
      }
    }
    std::vector<T> updated(r + 2, zero);
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= i && j < coeffs.size(); ++j)
        updated[i] = updated[i] + column[i - j] * coeffs[j];
    coeffs = std::move(updated);
  }
  return coeffs;
}

template <class T>
T determinant(const Matrix<T>& a) {
  auto chi = characteristic_polynomial(a);
  T det = chi.back();
  if (a.rows() % 2 == 1) det = zero_like(det) - det;
  return det;
}

// Gauss-Jordan inverse over a local ring: pivots must be units. Throws
// NotInvertible when no unit pivot exists in some column.
template <class T>
Matrix<T> inverse(const Matrix<T>& a) {
  require(a.square() && a.rows() > 0, ErrorKind::DimensionMismatch,
          "inverse needs a nonempty square matrix");
  const std::size_t n = a.rows();
  const T zero = zero_like(a(0, 0));
  const T one = one_like(a(0, 0));
  Matrix<T> work = a;
  Matrix<T> inv = identity(n, zero, one);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = n;
    for (std::size_t r = col; r < n; ++r) {
      if (is_unit(work(r, col))) {
        pivot = r;
        break;
      }
    }
    require(pivot < n, ErrorKind::NotInvertible, "matrix has no unit pivot");
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(work(pivot, j), work(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    }
    const T scale_by = unit_inverse(work(col, col));
    for (std::size_t j = 0; j < n; ++j) {
      work(col, j) = work(col, j) * scale_by;
      inv(col, j) = inv(col, j) * scale_by;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || is_zero(work(r, col))) continue;
      const T factor = work(r, col);
      for (std::size_t j = 0; j < n; ++j) {
        work(r, j) = work(r, j) - factor * work(col, j);
        inv(r, j) = inv(r, j) - factor * inv(col, j);
      }
    }
  }
  return inv;
}

// Rank by elimination with unit pivots; exact when the entries lie in a field.
template <class T>
std::size_t rank(Matrix<T> a) {
  std::size_t r = 0;
  for (std::size_t col = 0; col < a.cols() && r < a.rows(); ++col) {
    std::size_t pivot = a.rows();
    for (std::size_t i = r; i < a.rows(); ++i) {
      if (is_unit(a(i, col))) {
        pivot = i;
        break;
      }
    }
    if (pivot == a.rows()) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(pivot, j), a(r, j));
    const T inv = unit_inverse(a(r, col));
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (is_zero(a(i, col))) continue;
      const T factor = a(i, col) * inv;
      for (std::size_t j = col; j < a.cols(); ++j) a(i, j) = a(i, j) - factor * a(r, j);
    }
    ++r;
  }
  return r;
}

// M * sigma(M) * ... * sigma^{s-1}(M), where sigma(k, X) applies the k-th
// power of the twist entrywise.
template <class T, class Twist>
Matrix<T> twisted_product(const Matrix<T>& m, int s, Twist&& sigma) {
  require(s >= 1, ErrorKind::InvalidArgument, "twisted product needs s >= 1");
  Matrix<T> acc = m;
  for (int k = 1; k < s; ++k) acc = acc * sigma(k, m);
  return acc;
}

}  // namespace shimura
