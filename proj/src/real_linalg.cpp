#include "roth/real_linalg.hpp"

#include "roth/error.hpp"
#include "roth/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace roth {
namespace {

template <class T> double max_abs(const RealMatrix<T> &m, std::size_t cols) {
  T best(0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < cols; ++j) best = std::max(best, NumTraits<T>::abs(m(i, j)));
  return NumTraits<T>::to_double(best);
}

double threshold(double tol, double scale) { return tol * std::max(1.0, scale); }

} // namespace

template <class T> RealMatrix<T> multiply(const RealMatrix<T> &a, const RealMatrix<T> &b) {
  if (a.cols() != b.rows()) throw ShapeError("real multiply: inner dimensions differ");
  RealMatrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (NumTraits<T>::is_zero(a(i, k))) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

template <class T> RealVector<T> multiply(const RealMatrix<T> &a, std::span<const T> x) {
  if (a.cols() != x.size()) throw ShapeError("real matrix-vector: dimensions differ");
  RealVector<T> y(a.rows(), T(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!NumTraits<T>::is_zero(a(i, j))) y[i] += a(i, j) * x[j];
  return y;
}

template <class T> double norm2(std::span<const T> v) {
  T s(0);
  for (const auto &x : v) s += x * x;
  return std::sqrt(NumTraits<T>::to_double(s));
}

template <class T> RankReport rank(const RealMatrix<T> &m, double tol, Exec exec) {
  double thr = threshold(tol, max_abs(m, m.cols()));
  return kernels::echelon(m, m.cols(), thr, exec).report;
}

namespace {

template <class T>
ConsistentSolve<T> solve_once(const RealMatrix<T> &m, std::span<const T> b, double tol, Exec exec) {
  const std::size_t n = m.cols();
  RealMatrix<T> aug(m.rows(), n + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n) = b[i];
  }
  const double scale_m = max_abs(m, n);
  const double scale_aug = std::max(scale_m, max_abs(aug, n + 1));
  auto e = kernels::echelon(std::move(aug), n, threshold(tol, scale_m), exec);

  ConsistentSolve<T> out;
  out.rank_m = e.report.rank;
  out.rank_aug = e.report.rank;
  const double thr_aug = threshold(tol, scale_aug);
  for (std::size_t i = out.rank_m; i < e.w.rows(); ++i) {
    const T &v = e.w(i, n);
    bool nonzero = NumTraits<T>::exact ? !NumTraits<T>::is_zero(v)
                                       : NumTraits<T>::to_double(NumTraits<T>::abs(v)) > thr_aug;
    if (nonzero) {
      out.rank_aug = out.rank_m + 1;
      break;
    }
  }
  out.pivots = std::move(e.report);
  if (out.rank_aug != out.rank_m) return out;

  // Back substitution on the leading r×r triangle; free variables stay zero.
  const std::size_t r = out.rank_m;
  std::vector<T> y(r, T(0));
  for (std::size_t k = r; k-- > 0;) {
    T acc = e.w(k, n);
    for (std::size_t j = k + 1; j < r; ++j) acc -= e.w(k, j) * y[j];
    y[k] = acc / e.w(k, k);
  }
  RealVector<T> x(n, T(0));
  for (std::size_t k = 0; k < r; ++k) x[e.col_perm[k]] = y[k];

  auto mx = multiply(m, std::span<const T>(x));
  for (std::size_t i = 0; i < mx.size(); ++i) mx[i] -= b[i];
  out.residual = norm2<T>(mx);
  out.x = std::move(x);
  return out;
}

} // namespace

template <class T>
ConsistentSolve<T> solve_consistent(const RealMatrix<T> &m, std::span<const T> b, double tol, Exec exec) {
  if (m.rows() != b.size()) throw ShapeError("solve_consistent: rows(M) != length(b)");
  auto out = solve_once(m, b, tol, exec);
  if (!out.x || NumTraits<T>::exact) return out;
  const double bound = tol * std::max(1.0, norm2(b));
  // A few rounds of iterative refinement for badly scaled but consistent systems.
  for (int round = 0; round < 3 && out.residual > bound; ++round) {
    auto r = multiply(m, std::span<const T>(*out.x));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
    auto step = solve_once(m, std::span<const T>(r), tol, exec);
    if (!step.x) break;
    RealVector<T> x = *out.x;
    for (std::size_t j = 0; j < x.size(); ++j) x[j] += (*step.x)[j];
    auto mx = multiply(m, std::span<const T>(x));
    for (std::size_t i = 0; i < mx.size(); ++i) mx[i] -= b[i];
    double res = norm2<T>(mx);
    if (res >= out.residual) break;
    out.residual = res;
    out.x = std::move(x);
  }
  if (out.residual > bound)
    throw NumericalError("consistent system solved with residual " + std::to_string(out.residual) +
                         " above bound " + std::to_string(bound));
  return out;
}

template <class T> std::optional<RealMatrix<T>> inverse(const RealMatrix<T> &m, double tol) {
  if (m.rows() != m.cols()) throw ShapeError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  const double thr = threshold(tol, max_abs(m, n));
  RealMatrix<T> w(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) w(i, j) = m(i, j);
    w(i, n + i) = T(1);
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (NumTraits<T>::abs(w(i, k)) > NumTraits<T>::abs(w(p, k))) p = i;
    const bool ok = NumTraits<T>::exact
                        ? !NumTraits<T>::is_zero(w(p, k))
                        : NumTraits<T>::to_double(NumTraits<T>::abs(w(p, k))) > thr;
    if (!ok) return std::nullopt;
    kernels::swap_rows(w, k, p);
    T inv = T(1) / w(k, k);
    for (std::size_t j = 0; j < 2 * n; ++j) w(k, j) *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || NumTraits<T>::is_zero(w(i, k))) continue;
      T f = w(i, k);
      for (std::size_t j = 0; j < 2 * n; ++j)
        if (!NumTraits<T>::is_zero(w(k, j))) w(i, j) -= f * w(k, j);
    }
  }
  RealMatrix<T> out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = w(i, n + j);
  return out;
}

#define ROTH_INSTANTIATE(T)                                                                   \
  template RealMatrix<T> multiply(const RealMatrix<T> &, const RealMatrix<T> &);              \
  template RealVector<T> multiply(const RealMatrix<T> &, std::span<const T>);                 \
  template double norm2(std::span<const T>);                                                  \
  template RankReport rank(const RealMatrix<T> &, double, Exec);                              \
  template ConsistentSolve<T> solve_consistent(const RealMatrix<T> &, std::span<const T>,     \
                                               double, Exec);                                 \
  template std::optional<RealMatrix<T>> inverse(const RealMatrix<T> &, double);

ROTH_INSTANTIATE(double)
ROTH_INSTANTIATE(Rational)
#undef ROTH_INSTANTIATE

} // namespace roth
