#pragma once

#include "roth/vectorizer.hpp"

#include <cstdint>
#include <vector>

namespace roth {

/// SplitMix64 (Steele, Lea & Flood). Fixed algorithm so generated instances
/// are identical on every platform for a given seed.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  /// Uniform integer in [lo, hi] by rejection.
  long uniform_int(long lo, long hi);
  /// Uniform double in [lo, hi).
  double uniform_real(double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

private:
  std::uint64_t state_;
};

enum class GenForm { Sylvester, General };

struct GenConfig {
  std::uint64_t seed = 1;
  ScalarKind kind = ScalarKind::Real;
  std::size_t t = 1;
  std::size_t s = 1;
  std::size_t dim_lo = 1;
  std::size_t dim_hi = 3;
  std::vector<SigmaOp> sigma_pool{SigmaOp::Identity};
  long entry_range = 3;
  bool float_entries = false;  // uniform reals instead of integers
  GenForm form = GenForm::Sylvester;
  bool strict_corollary = true;
};

template <class T> struct PlantedInstance {
  EquationSystem<T> system;
  std::vector<Matrix<T>> solution;
};

/// Random system built around a random solution: C_i := lhs_i(X).
template <class T> PlantedInstance<T> gen_solvable(const GenConfig &cfg);

/// A planted system with C perturbed off the column space of the vectorized
/// operator; post-checked to have rank [M|b] = rank M + 1. Throws
/// GenerationError when every tried shape had full row rank.
template <class T> EquationSystem<T> gen_unsolvable(const GenConfig &cfg, double tol = kDefaultTol);

template <class T> Matrix<T> random_matrix(SplitMix64 &rng, ScalarKind kind, std::size_t rows, std::size_t cols,
                                           long range, bool float_entries = false);

} // namespace roth
