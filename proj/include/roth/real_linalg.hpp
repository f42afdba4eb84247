#pragma once

#include "roth/numeric.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace roth {

inline constexpr double kDefaultTol = 1e-10;

/// Execution policy for the data-parallel kernels. `Serial` is the reference
/// path; `Parallel` must produce bit-identical results.
enum class Exec { Serial, Parallel };

template <class T> class RealMatrix {
public:
  RealMatrix() = default;
  RealMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static RealMatrix identity(std::size_t n) {
    RealMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<const T> data() const { return data_; }

  friend bool operator==(const RealMatrix &, const RealMatrix &) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class T> using RealVector = std::vector<T>;

template <class T> RealMatrix<T> multiply(const RealMatrix<T> &a, const RealMatrix<T> &b);
template <class T> RealVector<T> multiply(const RealMatrix<T> &a, std::span<const T> x);

struct RankReport {
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_columns;  // original column indices, in pivot order
  double max_abs_pivot = 0.0;
  double min_accepted_pivot = 0.0;
};

/// Numerical rank by complete-pivoting elimination. A float pivot is accepted
/// iff |p| > tol · max(1, max |M_ij|); the exact backend accepts any nonzero.
template <class T>
RankReport rank(const RealMatrix<T> &m, double tol = kDefaultTol, Exec exec = Exec::Parallel);

template <class T> struct ConsistentSolve {
  std::size_t rank_m = 0;
  std::size_t rank_aug = 0;
  RankReport pivots;
  std::optional<RealVector<T>> x;  // set iff rank_m == rank_aug
  double residual = 0.0;           // ‖Mx − b‖₂ when x is set
};

/// Solves Mx = b when rank M = rank [M|b]; free variables are set to zero.
template <class T>
ConsistentSolve<T> solve_consistent(const RealMatrix<T> &m, std::span<const T> b,
                                    double tol = kDefaultTol, Exec exec = Exec::Parallel);

/// Gauss–Jordan inverse; nullopt when singular at `tol`.
template <class T>
std::optional<RealMatrix<T>> inverse(const RealMatrix<T> &m, double tol = kDefaultTol);

template <class T> double norm2(std::span<const T> v);

} // namespace roth
