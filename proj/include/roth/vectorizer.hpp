#pragma once

#include "roth/matrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace roth {

struct UnknownSpec {
  std::string name;
  std::size_t rows = 0;
  std::size_t cols = 0;
  friend bool operator==(const UnknownSpec &, const UnknownSpec &) = default;
};

/// A·X_left^eps·M − N·X_right^delta·B = C. Absent M or N means identity, so an
/// equation without either is in Sylvester form A·X^eps − X^delta·B = C.
template <class T> struct Equation {
  Matrix<T> a;
  std::optional<Matrix<T>> m;
  std::optional<Matrix<T>> n;
  Matrix<T> b;
  Matrix<T> c;
  std::size_t left = 0;
  SigmaOp eps = SigmaOp::Identity;
  std::size_t right = 0;
  SigmaOp delta = SigmaOp::Identity;

  bool sylvester_form() const { return !m && !n; }
  friend bool operator==(const Equation &, const Equation &) = default;
};

template <class T> struct EquationSystem {
  ScalarKind kind = ScalarKind::Real;
  std::vector<UnknownSpec> unknowns;
  std::vector<Equation<T>> equations;
  // Over ℍ, restrict eps/delta to {1, ⁎}. Derived systems turn this off.
  bool strict_corollary = true;

  bool sylvester_form() const {
    for (const auto &eq : equations)
      if (!eq.sylvester_form()) return false;
    return true;
  }
  friend bool operator==(const EquationSystem &, const EquationSystem &) = default;
};

/// Throws ValidationError naming the first offending equation.
template <class T> void validate(const EquationSystem<T> &sys);

/// Column layout of the stacked unknown vector: unknown j occupies
/// [offset[j], offset[j] + rows·cols·e); inside, component p (order 1,i,j,k)
/// holds the column-major vec of X_j's p-th real part.
struct ComponentLayout {
  std::size_t arity = 1;
  std::vector<std::size_t> offset;
  std::vector<std::size_t> length;
  std::size_t total = 0;

  static ComponentLayout of(ScalarKind kind, const std::vector<UnknownSpec> &unknowns);
};

/// Stacked components of a matrix in the layout convention above.
template <class T> RealVector<T> stack_components(const Matrix<T> &x);
template <class T>
Matrix<T> unstack_components(ScalarKind kind, std::size_t rows, std::size_t cols, std::span<const T> v);

/// perm with (K·vec X)[i] = vec(X)[perm[i]] for X m×n, column-major vec.
std::vector<std::size_t> commutation_permutation(std::size_t m, std::size_t n);

/// The mn×mn 0/1 matrix K with K·vec(X) = vec(Xᵀ).
template <class T> RealMatrix<T> commutation_matrix(std::size_t m, std::size_t n);

/// Real operator L with L·stack(X) = stack(A·X^σ·M) for X shaped like `unknown`.
template <class T>
RealMatrix<T> term_operator(const Matrix<T> &a, SigmaOp s, const Matrix<T> &m, const UnknownSpec &unknown);

template <class T> struct AssembledSystem {
  RealMatrix<T> m;
  RealVector<T> b;
  ComponentLayout layout;
  std::vector<std::size_t> row_offset;  // first row of each equation's block
};

template <class T> AssembledSystem<T> assemble_system(const EquationSystem<T> &sys, Exec exec = Exec::Parallel);

enum class SolveStatus { Solvable, Inconsistent };

template <class T> struct SolveReport {
  SolveStatus status = SolveStatus::Inconsistent;
  std::size_t rank_m = 0;
  std::size_t rank_aug = 0;
  RankReport pivots;
  std::optional<double> residual;  // max relative residual, solvable only
  std::optional<std::vector<Matrix<T>>> solution;
};

template <class T>
SolveReport<T> solve_system(const EquationSystem<T> &sys, double tol = kDefaultTol, Exec exec = Exec::Parallel);

/// A·X^eps·M − N·X^delta·B evaluated directly.
template <class T> Matrix<T> evaluate_lhs(const Equation<T> &eq, const std::vector<Matrix<T>> &xs);

/// ‖lhs − C‖_F / max(1, ‖C‖_F) for one equation; exact zero test via
/// `residual_is_zero` in the rational backend.
template <class T> double relative_residual(const Equation<T> &eq, const std::vector<Matrix<T>> &xs);
template <class T> double max_relative_residual(const EquationSystem<T> &sys, const std::vector<Matrix<T>> &xs);
template <class T> bool residual_is_zero(const EquationSystem<T> &sys, const std::vector<Matrix<T>> &xs);

/// True when `xs` solves `sys`: exactly for the rational backend, to `tol` otherwise.
template <class T> bool satisfies(const EquationSystem<T> &sys, const std::vector<Matrix<T>> &xs, double tol);

template <class To, class From> EquationSystem<To> convert_system(const EquationSystem<From> &sys);

} // namespace roth
