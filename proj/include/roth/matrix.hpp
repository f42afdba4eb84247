#pragma once

#include "roth/real_linalg.hpp"
#include "roth/scalar.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace roth {

/// Row-major dense matrix whose entries all share one ScalarKind.
template <class T> class Matrix {
public:
  using scalar_type = Scalar<T>;

  Matrix() = default;
  Matrix(ScalarKind kind, std::size_t rows, std::size_t cols)
      : kind_(kind), rows_(rows), cols_(cols), data_(rows * cols, Scalar<T>(kind)) {}

  static Matrix zero(ScalarKind kind, std::size_t rows, std::size_t cols) {
    return Matrix(kind, rows, cols);
  }

  static Matrix identity(ScalarKind kind, std::size_t n) {
    Matrix m(kind, n, n);
    for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = Scalar<T>::real(kind, T(1));
    return m;
  }

  ScalarKind kind() const { return kind_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  std::span<const Scalar<T>> entries() const { return data_; }

  const Scalar<T> &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void set(std::size_t r, std::size_t c, const Scalar<T> &v) {
    require_same_kind(kind_, v.kind());
    data_[r * cols_ + c] = v;
  }

  Matrix &operator+=(const Matrix &o) {
    require_same_shape(o, "add");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix &operator-=(const Matrix &o) {
    require_same_shape(o, "subtract");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix &b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix &b) { return a -= b; }
  Matrix operator-() const {
    Matrix r(*this);
    for (auto &x : r.data_) x = -x;
    return r;
  }

  friend Matrix operator*(const Matrix &a, const Matrix &b) {
    require_same_kind(a.kind_, b.kind_);
    if (a.cols_ != b.rows_)
      throw ShapeError("multiply: " + a.shape_string() + " times " + b.shape_string());
    Matrix c(a.kind_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const auto &aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c.data_[i * c.cols_ + j] += aik * b(k, j);
      }
    return c;
  }

  Matrix scaled(const T &f) const {
    Matrix r(*this);
    for (auto &x : r.data_) x = x.scaled(f);
    return r;
  }

  /// Copy of the rows × cols block starting at (r0, c0).
  Matrix block(std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) const {
    if (r0 + rows > rows_ || c0 + cols > cols_) throw ShapeError("block out of range");
    Matrix b(kind_, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) b.data_[i * cols + j] = (*this)(r0 + i, c0 + j);
    return b;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix &b) {
    require_same_kind(kind_, b.kind_);
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw ShapeError("set_block out of range");
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) data_[(r0 + i) * cols_ + c0 + j] = b(i, j);
  }

  bool is_zero() const {
    for (const auto &x : data_)
      if (!x.is_zero()) return false;
    return true;
  }

  /// Squared Frobenius norm, exact in the rational backend.
  T frobenius2() const {
    T s(0);
    for (const auto &x : data_) s += x.norm2();
    return s;
  }

  std::string shape_string() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

  friend bool operator==(const Matrix &, const Matrix &) = default;

private:
  void require_same_shape(const Matrix &o, const char *op) const {
    require_same_kind(kind_, o.kind_);
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw ShapeError(std::string(op) + ": " + shape_string() + " vs " + o.shape_string());
  }

  ScalarKind kind_ = ScalarKind::Real;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar<T>> data_;
};

template <class T> double frobenius(const Matrix<T> &a) {
  return std::sqrt(NumTraits<T>::to_double(a.frobenius2()));
}

template <class T> Matrix<T> transpose(const Matrix<T> &a) {
  Matrix<T> t(a.kind(), a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t.set(j, i, a(i, j));
  return t;
}

/// A^σ: 1 ↦ A, ∁ ↦ entrywise h^∁, † ↦ (A^∘)^⊤, ⁎ ↦ (Ā)^⊤.
template <class T> Matrix<T> apply_sigma(const Matrix<T> &a, SigmaOp s) {
  const auto signs = component_signs(a.kind(), s);
  const bool t = transposes(s);
  Matrix<T> r(a.kind(), t ? a.cols() : a.rows(), t ? a.rows() : a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      auto v = a(i, j).with_signs(signs);
      if (t)
        r.set(j, i, v);
      else
        r.set(i, j, v);
    }
  return r;
}

/// Shape of X^σ for an m×n unknown.
inline std::pair<std::size_t, std::size_t> sigma_shape(std::size_t m, std::size_t n, SigmaOp s) {
  return transposes(s) ? std::pair{n, m} : std::pair{m, n};
}

struct BlockPartition {
  std::size_t row_split = 0;
  std::size_t col_split = 0;
  friend bool operator==(const BlockPartition &, const BlockPartition &) = default;
};

/// A matrix together with its 2×2 block structure.
template <class T> struct Partitioned {
  Matrix<T> matrix;
  BlockPartition partition;

  Matrix<T> block11() const { return matrix.block(0, 0, partition.row_split, partition.col_split); }
  Matrix<T> block12() const {
    return matrix.block(0, partition.col_split, partition.row_split, matrix.cols() - partition.col_split);
  }
  Matrix<T> block21() const {
    return matrix.block(partition.row_split, 0, matrix.rows() - partition.row_split, partition.col_split);
  }
  Matrix<T> block22() const {
    return matrix.block(partition.row_split, partition.col_split, matrix.rows() - partition.row_split,
                        matrix.cols() - partition.col_split);
  }
  friend bool operator==(const Partitioned &, const Partitioned &) = default;
};

/// [[a11, a12], [a21, a22]]; blocks must be conformal.
template <class T>
Partitioned<T> block2x2(const Matrix<T> &a11, const Matrix<T> &a12, const Matrix<T> &a21,
                        const Matrix<T> &a22) {
  require_same_kind(a11.kind(), a12.kind());
  require_same_kind(a11.kind(), a21.kind());
  require_same_kind(a11.kind(), a22.kind());
  if (a11.rows() != a12.rows() || a21.rows() != a22.rows() || a11.cols() != a21.cols() ||
      a12.cols() != a22.cols())
    throw ShapeError("block2x2: nonconformal blocks " + a11.shape_string() + ", " + a12.shape_string() +
                     ", " + a21.shape_string() + ", " + a22.shape_string());
  Matrix<T> m(a11.kind(), a11.rows() + a21.rows(), a11.cols() + a12.cols());
  m.set_block(0, 0, a11);
  m.set_block(0, a11.cols(), a12);
  m.set_block(a11.rows(), 0, a21);
  m.set_block(a11.rows(), a11.cols(), a22);
  return {std::move(m), {a11.rows(), a11.cols()}};
}

/// [[0_{n×m}, I_n], [−I_m, 0_{m×n}]], the J matching an (m, n)-partitioned P.
template <class T> Matrix<T> make_J(std::size_t m, std::size_t n, ScalarKind kind) {
  using M = Matrix<T>;
  return block2x2(M::zero(kind, n, m), M::identity(kind, n), -M::identity(kind, m), M::zero(kind, m, n))
      .matrix;
}

/// [[0_{m×n}, −I_m], [I_n, 0_{n×m}]] = make_J(m, n)⁻¹.
template <class T> Matrix<T> make_J_inverse(std::size_t m, std::size_t n, ScalarKind kind) {
  using M = Matrix<T>;
  return block2x2(M::zero(kind, m, n), -M::identity(kind, m), M::identity(kind, n), M::zero(kind, n, m))
      .matrix;
}

/// Real matrices A_p with A = Σ_p A_p e_p over the basis 1 / 1,i / 1,i,j,k.
template <class T> std::vector<RealMatrix<T>> components(const Matrix<T> &a);

template <class T> Matrix<T> recompose(ScalarKind kind, std::span<const RealMatrix<T>> parts);

/// Real matrix of x ↦ A·x on 𝔽^cols viewed as ℝ^{cols·e}; index (r, p) ↦ r·e + p.
template <class T> RealMatrix<T> real_embedding(const Matrix<T> &a);

/// Full rank of the real embedding at `tol` (exact backend: exactly).
template <class T> bool nonsingular(const Matrix<T> &a, double tol = kDefaultTol);

/// Inverse through the real embedding; throws SingularMatrix.
template <class T> Matrix<T> inverse(const Matrix<T> &a, double tol = kDefaultTol);

/// Entrywise conversion between backends (exact → float rounds).
template <class To, class From> Matrix<To> convert(const Matrix<From> &a);

} // namespace roth
