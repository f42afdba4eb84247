#pragma once

#include "roth/real_linalg.hpp"

#include <cstddef>
#include <utility>
#include <vector>

// Inner loops of the elimination, with a serial reference and an OpenMP
// variant. Both operate row-by-row with identical arithmetic, so results are
// bit-identical regardless of thread count.
namespace roth::kernels {

/// Largest |w(i,j)| over i ≥ k, k ≤ j < pivot_cols; the first in row-major
/// order wins ties.
template <class T>
std::pair<std::size_t, std::size_t> find_pivot(const RealMatrix<T> &w, std::size_t k,
                                               std::size_t pivot_cols);

template <class T> void swap_rows(RealMatrix<T> &w, std::size_t a, std::size_t b);
template <class T> void swap_cols(RealMatrix<T> &w, std::size_t a, std::size_t b);

/// Clears column k below the pivot w(k,k) by subtracting multiples of row k.
template <class T> void eliminate_below_serial(RealMatrix<T> &w, std::size_t k);
template <class T> void eliminate_below_parallel(RealMatrix<T> &w, std::size_t k);

template <class T> void eliminate_below(RealMatrix<T> &w, std::size_t k, Exec exec) {
  if (exec == Exec::Parallel)
    eliminate_below_parallel(w, k);
  else
    eliminate_below_serial(w, k);
}

/// Result of running complete-pivoting elimination on the leading
/// `pivot_cols` columns of a working matrix.
template <class T> struct Echelon {
  RealMatrix<T> w;                     // upper-trapezoidal in its first `rank` rows
  std::vector<std::size_t> col_perm;   // col_perm[k] = original index of column k
  RankReport report;
};

/// Elimination with acceptance threshold `threshold` (ignored for exact T,
/// where any nonzero pivot is accepted).
template <class T>
Echelon<T> echelon(RealMatrix<T> w, std::size_t pivot_cols, double threshold, Exec exec);

} // namespace roth::kernels
