#pragma once

// Dense exact linear algebra over a finite field.

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "gapforge/error.hpp"
#include "gapforge/field.hpp"

namespace gapforge {

class Vector {
 public:
  Vector() = default;
  Vector(FieldPtr field, std::size_t length) : field_(std::move(field)), data_(length, 0) {}
  Vector(FieldPtr field, std::vector<Elem> entries) : field_(std::move(field)), data_(std::move(entries)) {
    for (Elem e : data_)
      if (!field_->contains(e)) fail(ErrorKind::FieldMismatch, "vector entry outside the field");
  }

  const FieldPtr& field() const noexcept { return field_; }
  std::size_t size() const noexcept { return data_.size(); }
  Elem operator[](std::size_t i) const noexcept { return data_[i]; }
  Elem& operator[](std::size_t i) noexcept { return data_[i]; }
  std::span<const Elem> entries() const noexcept { return data_; }
  std::span<Elem> entries() noexcept { return data_; }

  bool is_zero() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](Elem e) { return e == 0; });
  }

  friend bool operator==(const Vector& a, const Vector& b) noexcept {
    return a.data_ == b.data_ && (a.field_ == b.field_ || same_field(a.field_, b.field_));
  }

 private:
  FieldPtr field_;
  std::vector<Elem> data_;
};

/// Row-major dense matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  Matrix(FieldPtr field, std::size_t rows, std::size_t cols, std::vector<Elem> entries)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) fail(ErrorKind::DimensionMismatch, "entry count does not match shape");
    for (Elem e : data_)
      if (!field_->contains(e)) fail(ErrorKind::FieldMismatch, "matrix entry outside the field");
  }

  static Matrix identity(FieldPtr field, std::size_t n) {
    Matrix m(std::move(field), n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// Matrix whose rows are the given vectors (all of equal length).
  static Matrix from_rows(FieldPtr field, std::span<const Vector> rows, std::size_t cols) {
    Matrix m(std::move(field), rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) fail(ErrorKind::DimensionMismatch, "row length mismatch");
      std::copy(rows[i].entries().begin(), rows[i].entries().end(), m.row(i).begin());
    }
    return m;
  }

  const FieldPtr& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Elem operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }
  Elem& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  std::span<const Elem> row(std::size_t i) const noexcept { return {data_.data() + i * cols_, cols_}; }
  std::span<Elem> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
  std::span<const Elem> entries() const noexcept { return data_; }

  Vector row_vector(std::size_t i) const { return {field_, std::vector<Elem>(row(i).begin(), row(i).end())}; }
  Vector column(std::size_t j) const {
    Vector v(field_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  /// Row-major flattening.
  Vector flatten() const { return {field_, data_}; }

  bool is_symmetric() const noexcept {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) noexcept {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_ &&
           (a.field_ == b.field_ || same_field(a.field_, b.field_));
  }

 private:
  FieldPtr field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

inline std::size_t weight(std::span<const Elem> entries) noexcept {
  return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](Elem e) { return e != 0; }));
}
inline std::size_t weight(const Vector& v) noexcept { return weight(v.entries()); }
inline std::size_t weight(const Matrix& m) noexcept { return weight(m.entries()); }

inline Matrix transpose(const Matrix& a) {
  Matrix t(a.field(), a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

inline Matrix matmul(const Matrix& a, const Matrix& b) {
  require_same_field(a.field(), b.field());
  if (a.cols() != b.rows()) fail(ErrorKind::DimensionMismatch, "matmul inner dimensions differ");
  const Field& f = *a.field();
  Matrix c(a.field(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Elem aik = a(i, k);
      if (aik == 0) continue;
      auto brow = b.row(k);
      auto crow = c.row(i);
      for (std::size_t j = 0; j < b.cols(); ++j) crow[j] = f.add(crow[j], f.mul(aik, brow[j]));
    }
  return c;
}

inline Vector matvec(const Matrix& a, const Vector& x) {
  require_same_field(a.field(), x.field());
  if (a.cols() != x.size()) fail(ErrorKind::DimensionMismatch, "matvec dimensions differ");
  const Field& f = *a.field();
  Vector y(a.field(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Elem acc = 0;
    auto r = a.row(i);
    for (std::size_t j = 0; j < a.cols(); ++j) acc = f.add(acc, f.mul(r[j], x[j]));
    y[i] = acc;
  }
  return y;
}

/// y += c * x
inline void axpy(const Field& f, Elem c, std::span<const Elem> x, std::span<Elem> y) noexcept {
  if (c == 0) return;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0) y[i] = f.add(y[i], f.mul(c, x[i]));
}

/// Reduced row echelon form. Pivots are chosen leftmost column first, topmost
/// eligible row first, so the result is a deterministic function of the input.
struct Echelon {
  Matrix reduced;
  std::vector<std::size_t> pivot_cols;
};

inline Echelon rref(Matrix a) {
  const Field& f = *a.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t pivot = r;
    while (pivot < a.rows() && a(pivot, c) == 0) ++pivot;
    if (pivot == a.rows()) continue;
    if (pivot != r) std::swap_ranges(a.row(pivot).begin(), a.row(pivot).end(), a.row(r).begin());
    const Elem scale = f.inv(a(r, c));
    for (auto& e : a.row(r)) e = f.mul(e, scale);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      axpy(f, f.neg(a(i, c)), a.row(r), a.row(i));
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(a), std::move(pivots)};
}

inline std::size_t rank(const Matrix& a) { return rref(a).pivot_cols.size(); }

/// Rank of the span of a list of equal-length vectors.
inline std::size_t rank(const FieldPtr& field, std::span<const Vector> vectors) {
  if (vectors.empty()) return 0;
  return rank(Matrix::from_rows(field, vectors, vectors.front().size()));
}

/// Basis of {x : Ax = 0}: one vector per free column f, with 1 at f, zero at
/// the other free columns, and the pivot entries read off the reduced form.
inline std::vector<Vector> nullspace_basis(const Matrix& a) {
  const Echelon e = rref(a);
  const Field& f = *a.field();
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(a.field(), a.cols());
    v[free] = 1;
    for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) v[e.pivot_cols[r]] = f.neg(e.reduced(r, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Linear functional X -> sum_{i,j} Q[i,j] X[i,j].
inline Elem apply_quadratic_form(const Matrix& q, const Matrix& x) {
  require_same_field(q.field(), x.field());
  if (q.rows() != x.rows() || q.cols() != x.cols()) fail(ErrorKind::DimensionMismatch, "form/matrix shape");
  const Field& f = *q.field();
  Elem acc = 0;
  for (std::size_t i = 0; i < q.entries().size(); ++i) acc = f.add(acc, f.mul(q.entries()[i], x.entries()[i]));
  return acc;
}

/// Evaluates x^T Q x = Q(x x^T).
inline Elem evaluate_quadratic(const Matrix& q, std::span<const Elem> x) {
  const Field& f = *q.field();
  if (q.rows() != x.size() || q.cols() != x.size()) fail(ErrorKind::DimensionMismatch, "form/vector shape");
  Elem acc = 0;
  for (std::size_t i = 0; i < q.rows(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < q.cols(); ++j) {
      if (x[j] == 0 || q(i, j) == 0) continue;
      acc = f.add(acc, f.mul(q(i, j), f.mul(x[i], x[j])));
    }
  }
  return acc;
}

/// Number of unknowns X[i,j], i <= j, of an n x n symmetric matrix.
constexpr std::size_t symmetric_unknowns(std::size_t n) noexcept { return n * (n + 1) / 2; }

/// Basis of {X symmetric : Q_l(X) = 0 for all l}. Unknowns are the upper
/// triangle scanned row-major; Q[i,j] and Q[j,i] both load onto X[i,j].
inline std::vector<Matrix> symmetric_solution_basis(const FieldPtr& field, std::span<const Matrix> forms,
                                                    std::size_t n) {
  const Field& f = *field;
  const std::size_t unknowns = symmetric_unknowns(n);
  std::vector<std::size_t> slot(n * n);
  for (std::size_t i = 0, k = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j, ++k) slot[i * n + j] = slot[j * n + i] = k;

  Matrix constraints(field, forms.size(), unknowns);
  for (std::size_t l = 0; l < forms.size(); ++l) {
    const Matrix& q = forms[l];
    require_same_field(q.field(), field);
    if (q.rows() != n || q.cols() != n) fail(ErrorKind::DimensionMismatch, "coefficient matrix is not n x n");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Elem& c = constraints(l, slot[i * n + j]);
        c = f.add(c, q(i, j));
      }
  }

  std::vector<Matrix> basis;
  if (unknowns == 0) return basis;
  for (const Vector& v : nullspace_basis(constraints)) {
    Matrix x(field, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) x(i, j) = v[slot[i * n + j]];
    basis.push_back(std::move(x));
  }
  return basis;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  require_same_field(a.field(), b.field());
  const Field& f = *a.field();
  Matrix k(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Elem s = a(i, j);
      if (s == 0) continue;
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c) k(i * b.rows() + r, j * b.cols() + c) = f.mul(s, b(r, c));
    }
  return k;
}

/// Kronecker product of vectors; equals the row-major flattening of u v^T.
inline Vector kron(const Vector& u, const Vector& v) {
  require_same_field(u.field(), v.field());
  const Field& f = *u.field();
  Vector k(u.field(), u.size() * v.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] == 0) continue;
    for (std::size_t j = 0; j < v.size(); ++j) k[i * v.size() + j] = f.mul(u[i], v[j]);
  }
  return k;
}

/// Linear combination sum_i coeffs[i] * vectors[i].
inline Vector combine(const FieldPtr& field, std::span<const Vector> vectors, std::span<const Elem> coeffs,
                      std::size_t length) {
  if (vectors.size() != coeffs.size()) fail(ErrorKind::DimensionMismatch, "coefficient count");
  Vector out(field, length);
  for (std::size_t i = 0; i < vectors.size(); ++i) axpy(*field, coeffs[i], vectors[i].entries(), out.entries());
  return out;
}

inline Matrix combine(const FieldPtr& field, std::span<const Matrix> mats, std::span<const Elem> coeffs,
                      std::size_t rows, std::size_t cols) {
  if (mats.size() != coeffs.size()) fail(ErrorKind::DimensionMismatch, "coefficient count");
  std::vector<Elem> acc(rows * cols, 0);
  for (std::size_t i = 0; i < mats.size(); ++i) axpy(*field, coeffs[i], mats[i].entries(), acc);
  return Matrix(field, rows, cols, std::move(acc));
}

}  // namespace gapforge
