#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "lincomp/error.hpp"

namespace lincomp {

/// Dense row-major matrix. Arithmetic is delegated to a ring object so the
/// same routines serve F_q, F_{q^n} and the polynomial ring.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<T> row(std::size_t r) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
  }
  std::vector<T> col(std::size_t c) const {
    std::vector<T> out;
    out.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out.push_back((*this)(r, c));
    return out;
  }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <typename Ring>
using MatrixOf = Matrix<typename Ring::value_type>;

template <typename Ring>
MatrixOf<Ring> zeros(const Ring& ring, std::size_t rows, std::size_t cols) {
  return MatrixOf<Ring>(rows, cols, ring.zero());
}

template <typename Ring>
MatrixOf<Ring> identity(const Ring& ring, std::size_t n) {
  auto m = zeros(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = ring.one();
  return m;
}

template <typename T>
Matrix<T> transpose(const Matrix<T>& m) {
  Matrix<T> out(m.cols(), m.rows(), T{});
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(c, r) = m(r, c);
  return out;
}

template <typename Ring>
MatrixOf<Ring> multiply(const Ring& ring, const MatrixOf<Ring>& a, const MatrixOf<Ring>& b) {
  if (a.cols() != b.rows()) throw Error(Errc::DimensionMismatch, "matrix product shape");
  auto out = zeros(ring, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (ring.is_zero(a(i, k))) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (ring.is_zero(b(k, j))) continue;
        out(i, j) = ring.add(out(i, j), ring.mul(a(i, k), b(k, j)));
      }
    }
  }
  return out;
}

template <typename Ring>
MatrixOf<Ring> add(const Ring& ring, const MatrixOf<Ring>& a, const MatrixOf<Ring>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(Errc::DimensionMismatch, "matrix sum shape");
  auto out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = ring.add(a(i, j), b(i, j));
  return out;
}

template <typename Ring>
MatrixOf<Ring> subtract(const Ring& ring, const MatrixOf<Ring>& a, const MatrixOf<Ring>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(Errc::DimensionMismatch, "matrix difference shape");
  auto out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = ring.sub(a(i, j), b(i, j));
  return out;
}

template <typename Ring>
MatrixOf<Ring> scale_rows(const Ring& ring, const MatrixOf<Ring>& m,
                          const std::vector<typename Ring::value_type>& factors) {
  auto out = m;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = ring.mul(factors[i], m(i, j));
  return out;
}

template <typename T>
Matrix<T> select_columns(const Matrix<T>& m, const std::vector<std::size_t>& cols) {
  Matrix<T> out(m.rows(), cols.size(), T{});
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t k = 0; k < cols.size(); ++k) out(r, k) = m(r, cols[k]);
  return out;
}

template <typename T>
Matrix<T> delete_row(const Matrix<T>& m, std::size_t row) {
  Matrix<T> out(m.rows() - 1, m.cols(), T{});
  for (std::size_t r = 0, o = 0; r < m.rows(); ++r) {
    if (r == row) continue;
    for (std::size_t c = 0; c < m.cols(); ++c) out(o, c) = m(r, c);
    ++o;
  }
  return out;
}

// Gaussian elimination; the ring must be a field (provide inv).
template <typename Field>
std::size_t rank(const Field& field, MatrixOf<Field> m) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t pivot = r;
    while (pivot < m.rows() && field.is_zero(m(pivot, c))) ++pivot;
    if (pivot == m.rows()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(pivot, j));
    auto inv = field.inv(m(r, c));
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (field.is_zero(m(i, c))) continue;
      auto factor = field.mul(m(i, c), inv);
      for (std::size_t j = c; j < m.cols(); ++j)
        m(i, j) = field.sub(m(i, j), field.mul(factor, m(r, j)));
    }
    ++r;
  }
  return r;
}

/// Gauss-Jordan inverse; nullopt when the matrix is singular.
template <typename Field>
std::optional<MatrixOf<Field>> try_inverse(const Field& field, MatrixOf<Field> m) {
  if (m.rows() != m.cols()) throw Error(Errc::DimensionMismatch, "inverse of non-square matrix");
  const std::size_t n = m.rows();
  auto inv = identity(field, n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && field.is_zero(m(pivot, c))) ++pivot;
    if (pivot == n) return std::nullopt;
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(m(c, j), m(pivot, j));
      std::swap(inv(c, j), inv(pivot, j));
    }
    auto p = field.inv(m(c, c));
    for (std::size_t j = 0; j < n; ++j) {
      m(c, j) = field.mul(p, m(c, j));
      inv(c, j) = field.mul(p, inv(c, j));
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || field.is_zero(m(i, c))) continue;
      auto factor = m(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) = field.sub(m(i, j), field.mul(factor, m(c, j)));
        inv(i, j) = field.sub(inv(i, j), field.mul(factor, inv(c, j)));
      }
    }
  }
  return inv;
}

template <typename Field>
MatrixOf<Field> inverse(const Field& field, const MatrixOf<Field>& m) {
  auto inv = try_inverse(field, m);
  if (!inv) throw Error(Errc::Singular, "matrix is not invertible");
  return *std::move(inv);
}

template <typename Field>
bool is_invertible(const Field& field, const MatrixOf<Field>& m) {
  return m.rows() == m.cols() && rank(field, m) == m.rows();
}

/// (I - F)^{-1} for nilpotent F as the truncated series I + F + ... + F^{k-1}.
template <typename Ring>
MatrixOf<Ring> nilpotent_resolvent(const Ring& ring, const MatrixOf<Ring>& f) {
  const std::size_t n = f.rows();
  auto sum = identity(ring, n);
  auto power = identity(ring, n);
  for (std::size_t k = 1; k < n; ++k) {
    power = multiply(ring, power, f);
    sum = add(ring, sum, power);
  }
  return sum;
}

}  // namespace lincomp
