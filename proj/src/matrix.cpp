#include "roth/matrix.hpp"

namespace roth {

template <class T> std::vector<RealMatrix<T>> components(const Matrix<T> &a) {
  const std::size_t e = arity(a.kind());
  std::vector<RealMatrix<T>> parts(e, RealMatrix<T>(a.rows(), a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t p = 0; p < e; ++p) parts[p](i, j) = a(i, j)[p];
  return parts;
}

template <class T> Matrix<T> recompose(ScalarKind kind, std::span<const RealMatrix<T>> parts) {
  if (parts.size() != arity(kind))
    throw ShapeError("recompose: expected " + std::to_string(arity(kind)) + " components, got " +
                     std::to_string(parts.size()));
  const std::size_t rows = parts[0].rows();
  const std::size_t cols = parts[0].cols();
  for (const auto &p : parts)
    if (p.rows() != rows || p.cols() != cols) throw ShapeError("recompose: component shapes differ");
  Matrix<T> a(kind, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      std::array<T, 4> c{T(0), T(0), T(0), T(0)};
      for (std::size_t p = 0; p < parts.size(); ++p) c[p] = parts[p](i, j);
      a.set(i, j, Scalar<T>(kind, c));
    }
  return a;
}

template <class T> RealMatrix<T> real_embedding(const Matrix<T> &a) {
  const ScalarKind kind = a.kind();
  const std::size_t e = arity(kind);
  RealMatrix<T> l(a.rows() * e, a.cols() * e);
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) {
      if (a(r, c).is_zero()) continue;
      for (std::size_t q = 0; q < e; ++q) {
        auto col = a(r, c) * Scalar<T>::unit(kind, q);
        for (std::size_t p = 0; p < e; ++p) l(r * e + p, c * e + q) = col[p];
      }
    }
  return l;
}

template <class T> bool nonsingular(const Matrix<T> &a, double tol) {
  if (!a.square()) throw ShapeError("nonsingular: matrix is " + a.shape_string());
  const std::size_t n = a.rows() * arity(a.kind());
  return rank(real_embedding(a), tol, Exec::Serial).rank == n;
}

template <class T> Matrix<T> inverse(const Matrix<T> &a, double tol) {
  if (!a.square()) throw ShapeError("inverse: matrix is " + a.shape_string());
  const ScalarKind kind = a.kind();
  const std::size_t e = arity(kind);
  auto linv = inverse(real_embedding(a), tol);
  if (!linv) throw SingularMatrix("matrix is singular at tolerance");
  // Column c of A⁻¹ is A⁻¹ applied to the c-th unit vector, i.e. embedding column (c, 0).
  Matrix<T> out(kind, a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) {
      std::array<T, 4> v{T(0), T(0), T(0), T(0)};
      for (std::size_t p = 0; p < e; ++p) v[p] = (*linv)(r * e + p, c * e);
      out.set(r, c, Scalar<T>(kind, v));
    }
  return out;
}

template <class To, class From> Matrix<To> convert(const Matrix<From> &a) {
  Matrix<To> out(a.kind(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      std::array<To, 4> c{To(0), To(0), To(0), To(0)};
      for (std::size_t p = 0; p < arity(a.kind()); ++p) {
        if constexpr (std::is_same_v<To, double> && !std::is_same_v<From, double>)
          c[p] = NumTraits<From>::to_double(a(i, j)[p]);
        else
          c[p] = To(a(i, j)[p]);
      }
      out.set(i, j, Scalar<To>(a.kind(), c));
    }
  return out;
}

#define ROTH_INSTANTIATE(T)                                                                   \
  template std::vector<RealMatrix<T>> components(const Matrix<T> &);                          \
  template Matrix<T> recompose(ScalarKind, std::span<const RealMatrix<T>>);                   \
  template RealMatrix<T> real_embedding(const Matrix<T> &);                                   \
  template bool nonsingular(const Matrix<T> &, double);                                       \
  template Matrix<T> inverse(const Matrix<T> &, double);

ROTH_INSTANTIATE(double)
ROTH_INSTANTIATE(Rational)
#undef ROTH_INSTANTIATE

template Matrix<double> convert(const Matrix<double> &);
template Matrix<double> convert(const Matrix<Rational> &);
template Matrix<Rational> convert(const Matrix<double> &);
template Matrix<Rational> convert(const Matrix<Rational> &);

} // namespace roth
