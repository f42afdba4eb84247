#include "roth/kernels.hpp"

#include <algorithm>
#include <cstddef>

namespace roth::kernels {
namespace {

// Columns > k where the pivot row is nonzero; rows update only there.
template <class T> std::vector<std::size_t> pivot_support(const RealMatrix<T> &w, std::size_t k) {
  std::vector<std::size_t> nz;
  auto row = w.row(k);
  for (std::size_t j = k + 1; j < w.cols(); ++j)
    if (!NumTraits<T>::is_zero(row[j])) nz.push_back(j);
  return nz;
}

template <class T>
void update_row(RealMatrix<T> &w, std::size_t k, std::size_t i, const std::vector<std::size_t> &nz) {
  if (NumTraits<T>::is_zero(w(i, k))) return;
  T f = w(i, k) / w(k, k);
  auto target = w.row(i);
  auto pivot = w.row(k);
  for (std::size_t j : nz) target[j] -= f * pivot[j];
  target[k] = T(0);
}

} // namespace

template <class T>
std::pair<std::size_t, std::size_t> find_pivot(const RealMatrix<T> &w, std::size_t k,
                                               std::size_t pivot_cols) {
  std::pair<std::size_t, std::size_t> best{k, k};
  T best_abs(-1);
  for (std::size_t i = k; i < w.rows(); ++i)
    for (std::size_t j = k; j < pivot_cols; ++j) {
      T a = NumTraits<T>::abs(w(i, j));
      if (a > best_abs) {
        best_abs = a;
        best = {i, j};
      }
    }
  return best;
}

template <class T> void swap_rows(RealMatrix<T> &w, std::size_t a, std::size_t b) {
  if (a == b) return;
  auto ra = w.row(a);
  auto rb = w.row(b);
  std::swap_ranges(ra.begin(), ra.end(), rb.begin());
}

template <class T> void swap_cols(RealMatrix<T> &w, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < w.rows(); ++i) std::swap(w(i, a), w(i, b));
}

template <class T> void eliminate_below_serial(RealMatrix<T> &w, std::size_t k) {
  auto nz = pivot_support(w, k);
  for (std::size_t i = k + 1; i < w.rows(); ++i) update_row(w, k, i, nz);
}

template <class T> void eliminate_below_parallel(RealMatrix<T> &w, std::size_t k) {
  auto nz = pivot_support(w, k);
  const auto first = static_cast<std::ptrdiff_t>(k + 1);
  const auto last = static_cast<std::ptrdiff_t>(w.rows());
#pragma omp parallel for schedule(static) if (last - first > 32)
  for (std::ptrdiff_t i = first; i < last; ++i) update_row(w, k, static_cast<std::size_t>(i), nz);
}

template <class T>
Echelon<T> echelon(RealMatrix<T> w, std::size_t pivot_cols, double threshold, Exec exec) {
  Echelon<T> e;
  e.col_perm.resize(pivot_cols);
  for (std::size_t j = 0; j < pivot_cols; ++j) e.col_perm[j] = j;
  const std::size_t steps = std::min(w.rows(), pivot_cols);
  for (std::size_t k = 0; k < steps; ++k) {
    auto [pr, pc] = find_pivot(w, k, pivot_cols);
    double mag = NumTraits<T>::to_double(NumTraits<T>::abs(w(pr, pc)));
    bool accept = NumTraits<T>::exact ? !NumTraits<T>::is_zero(w(pr, pc)) : mag > threshold;
    if (!accept) break;
    swap_rows(w, k, pr);
    swap_cols(w, k, pc);
    std::swap(e.col_perm[k], e.col_perm[pc]);
    eliminate_below(w, k, exec);
    e.report.pivot_columns.push_back(e.col_perm[k]);
    e.report.max_abs_pivot = std::max(e.report.max_abs_pivot, mag);
    e.report.min_accepted_pivot = e.report.rank == 0 ? mag : std::min(e.report.min_accepted_pivot, mag);
    ++e.report.rank;
  }
  e.w = std::move(w);
  return e;
}

#define ROTH_INSTANTIATE(T)                                                                      \
  template std::pair<std::size_t, std::size_t> find_pivot(const RealMatrix<T> &, std::size_t,    \
                                                          std::size_t);                          \
  template void swap_rows(RealMatrix<T> &, std::size_t, std::size_t);                            \
  template void swap_cols(RealMatrix<T> &, std::size_t, std::size_t);                            \
  template void eliminate_below_serial(RealMatrix<T> &, std::size_t);                            \
  template void eliminate_below_parallel(RealMatrix<T> &, std::size_t);                          \
  template Echelon<T> echelon(RealMatrix<T>, std::size_t, double, Exec);

ROTH_INSTANTIATE(double)
ROTH_INSTANTIATE(Rational)
#undef ROTH_INSTANTIATE

} // namespace roth::kernels
