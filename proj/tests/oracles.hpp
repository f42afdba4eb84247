#pragma once

// Test-only reference computations, written independently of the library's
// code paths (no Scalar::operator*, no elimination kernels).

#include "roth/matrix.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace oracle {

using roth::Rational;

/// Hamilton's table: e_p e_q = sign · e_index for the basis (1, i, j, k).
struct Unit {
  int index;
  int sign;
};

inline Unit hamilton(int p, int q) {
  static constexpr int idx[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static constexpr int sgn[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  return {idx[p][q], sgn[p][q]};
}

/// Product of component tuples by expanding over basis pairs.
template <class T> std::array<T, 4> quat_product(const std::array<T, 4> &a, const std::array<T, 4> &b) {
  std::array<T, 4> r{T(0), T(0), T(0), T(0)};
  for (int p = 0; p < 4; ++p)
    for (int q = 0; q < 4; ++q) {
      auto u = hamilton(p, q);
      T v = a[p] * b[q];
      if (u.sign > 0)
        r[u.index] += v;
      else
        r[u.index] -= v;
    }
  return r;
}

/// Determinant by cofactor expansion (exact; fine for n ≤ 6).
inline Rational det(const std::vector<std::vector<Rational>> &m) {
  const std::size_t n = m.size();
  if (n == 0) return Rational(1);
  if (n == 1) return m[0][0];
  Rational d(0);
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c].is_zero()) continue;
    std::vector<std::vector<Rational>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Rational> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(std::move(row));
    }
    Rational term = m[0][c] * det(minor);
    if (c % 2)
      d -= term;
    else
      d += term;
  }
  return d;
}

/// Rank as the largest k with a nonzero k×k minor, enumerating subsets.
inline std::size_t brute_rank(const roth::RealMatrix<Rational> &m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::size_t best = 0;
  for (std::uint32_t rmask = 1; rmask < (1u << rows); ++rmask)
    for (std::uint32_t cmask = 1; cmask < (1u << cols); ++cmask) {
      const auto k = static_cast<std::size_t>(__builtin_popcount(rmask));
      if (k != static_cast<std::size_t>(__builtin_popcount(cmask)) || k <= best) continue;
      std::vector<std::vector<Rational>> sub;
      for (std::size_t r = 0; r < rows; ++r) {
        if (!(rmask >> r & 1u)) continue;
        std::vector<Rational> row;
        for (std::size_t c = 0; c < cols; ++c)
          if (cmask >> c & 1u) row.push_back(m(r, c));
        sub.push_back(std::move(row));
      }
      if (!det(sub).is_zero()) best = k;
    }
  return best;
}

/// Kronecker product of real matrices.
template <class T> roth::RealMatrix<T> kron(const roth::RealMatrix<T> &a, const roth::RealMatrix<T> &b) {
  roth::RealMatrix<T> k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q) k(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
  return k;
}

template <class T> roth::RealMatrix<T> real_transpose(const roth::RealMatrix<T> &a) {
  roth::RealMatrix<T> t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

/// Column-major vec.
template <class T> std::vector<T> vec(const roth::RealMatrix<T> &a) {
  std::vector<T> v;
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i) v.push_back(a(i, j));
  return v;
}

} // namespace oracle
