#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "morext/field.hpp"

namespace morext {

class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(const std::string& what)
      : Error("dimension mismatch: " + what) {}
};

template <Field F>
using Vec = std::vector<typename F::value_type>;

// Coordinate-vector helpers. Every helper takes the field explicitly.
namespace vec {

template <Field F>
Vec<F> zeros(const F& f, std::size_t n) {
  return Vec<F>(n, f.zero());
}

template <Field F>
Vec<F> unit(const F& f, std::size_t n, std::size_t i) {
  Vec<F> v(n, f.zero());
  v[i] = f.one();
  return v;
}

template <Field F>
bool is_zero(const F& f, const Vec<F>& v) {
  for (const auto& x : v)
    if (!f.is_zero(x)) return false;
  return true;
}

template <Field F>
bool equal(const F& f, const Vec<F>& a, const Vec<F>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!f.equal(a[i], b[i])) return false;
  return true;
}

/// y += alpha * x
template <Field F>
void axpy(const F& f, Vec<F>& y, const typename F::value_type& alpha, const Vec<F>& x) {
  if (y.size() != x.size()) throw DimensionMismatch("axpy");
  if (f.is_zero(alpha)) return;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!f.is_zero(x[i])) y[i] = f.add(y[i], f.mul(alpha, x[i]));
}

template <Field F>
Vec<F> add(const F& f, Vec<F> a, const Vec<F>& b) {
  axpy(f, a, f.one(), b);
  return a;
}

template <Field F>
Vec<F> sub(const F& f, Vec<F> a, const Vec<F>& b) {
  axpy(f, a, f.neg(f.one()), b);
  return a;
}

template <Field F>
Vec<F> scale(const F& f, const typename F::value_type& alpha, Vec<F> v) {
  for (auto& x : v) x = f.mul(alpha, x);
  return v;
}

/// Concatenation, used to flatten tuples of vectors into one coordinate space.
template <Field F>
Vec<F> concat(const Vec<F>& a, const Vec<F>& b) {
  Vec<F> out(a);
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

template <Field F>
std::string format(const F& f, const Vec<F>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += f.format(v[i]);
  }
  return s + "]";
}

}  // namespace vec

/// Dense row-major matrix over a single field. Maps act on column vectors.
template <Field F>
class Matrix {
 public:
  using value_type = typename F::value_type;

  Matrix(F field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols),
        data_(rows * cols, field_.zero()) {}

  static Matrix identity(const F& f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
    return m;
  }

  static Matrix from_rows(const F& f, const std::vector<Vec<F>>& rows, std::size_t cols) {
    Matrix m(f, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols) throw DimensionMismatch("ragged rows");
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
  }

  static Matrix from_columns(const F& f, const std::vector<Vec<F>>& cols, std::size_t rows) {
    Matrix m(f, rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (cols[c].size() != rows) throw DimensionMismatch("ragged columns");
      for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
    }
    return m;
  }

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  value_type& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const value_type& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vec<F> row(std::size_t r) const {
    return Vec<F>(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
  }
  Vec<F> column(std::size_t c) const {
    Vec<F> v;
    v.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v.push_back((*this)(r, c));
    return v;
  }
  void set_column(std::size_t c, const Vec<F>& v) {
    if (v.size() != rows_) throw DimensionMismatch("set_column");
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
  }

  /// Row-major flattening, used when matrices are themselves vectors.
  const Vec<F>& flat() const { return data_; }
  static Matrix from_flat(const F& f, std::size_t rows, std::size_t cols, Vec<F> data) {
    if (data.size() != rows * cols) throw DimensionMismatch("from_flat");
    Matrix m(f, 0, 0);
    m.rows_ = rows;
    m.cols_ = cols;
    m.data_ = std::move(data);
    return m;
  }

  Vec<F> apply(const Vec<F>& v) const {
    if (v.size() != cols_) throw DimensionMismatch("matrix-vector product");
    Vec<F> out(rows_, field_.zero());
    for (std::size_t c = 0; c < cols_; ++c) {
      if (field_.is_zero(v[c])) continue;
      for (std::size_t r = 0; r < rows_; ++r) {
        const auto& a = (*this)(r, c);
        if (!field_.is_zero(a)) out[r] = field_.add(out[r], field_.mul(a, v[c]));
      }
    }
    return out;
  }

  Matrix operator*(const Matrix& o) const {
    if (!(field_ == o.field_)) throw FieldMismatch();
    if (cols_ != o.rows_) throw DimensionMismatch("matrix product");
    Matrix out(field_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const auto& a = (*this)(i, k);
        if (field_.is_zero(a)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) {
          const auto& b = o(k, j);
          if (!field_.is_zero(b)) out(i, j) = field_.add(out(i, j), field_.mul(a, b));
        }
      }
    return out;
  }

  Matrix operator+(const Matrix& o) const { return combine(o, field_.one()); }
  Matrix operator-(const Matrix& o) const { return combine(o, field_.neg(field_.one())); }

  Matrix scaled(const value_type& alpha) const {
    Matrix out(*this);
    for (auto& x : out.data_) x = field_.mul(alpha, x);
    return out;
  }

  Matrix transpose() const {
    Matrix out(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
    return out;
  }

  bool is_zero() const { return vec::is_zero(field_, data_); }

  bool operator==(const Matrix& o) const {
    return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ &&
           vec::equal(field_, data_, o.data_);
  }

 private:
  Matrix combine(const Matrix& o, const value_type& alpha) const {
    if (!(field_ == o.field_)) throw FieldMismatch();
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix sum");
    Matrix out(*this);
    vec::axpy(field_, out.data_, alpha, o.data_);
    return out;
  }

  F field_;
  std::size_t rows_;
  std::size_t cols_;
  Vec<F> data_;
};

}  // namespace morext
