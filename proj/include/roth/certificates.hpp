#pragma once

#include "roth/vectorizer.hpp"

#include <vector>

// Block-matrix certificates of solvability. For a system
//   A_i X_{i'}^{ε_i} − X_{i''}^{δ_i} B_i = C_i
// a certificate is a tuple of nonsingular P_j with
//   [A_i 0; 0 B_i] P_{i'}^⟪ε_i⟫ = P_{i''}^⟪δ_i⟫ [A_i C_i; 0 B_i],
// where P^⟪σ⟫ = P^σ for σ ∈ {1, ∁} and J (P^σ)⁻¹ J⁻¹ for σ ∈ {†, ⁎}.
namespace roth {

template <class T> struct Thm1Certificate {
  std::vector<Partitioned<T>> p;  // one per unknown, split at the unknown's row count
  friend bool operator==(const Thm1Certificate &, const Thm1Certificate &) = default;
};

template <class T> struct Thm2Certificate {
  std::vector<Partitioned<T>> p;  // per unknown
  std::vector<Partitioned<T>> q;  // per equation, split (cols A_i, cols C_i)
  std::vector<Partitioned<T>> r;  // per equation, split (rows C_i, rows B_i)
  friend bool operator==(const Thm2Certificate &, const Thm2Certificate &) = default;
};

/// Which explicit equality was checked for an equation.
enum class RemarkForm {
  Plain,        // ε, δ ∈ {1, ∁}
  RightTwisted, // ε ∈ {1, ∁}, δ ∈ {†, ⁎}
  LeftTwisted,  // ε ∈ {†, ⁎}, δ ∈ {1, ∁}
  BothTwisted,  // ε, δ ∈ {†, ⁎}
};

RemarkForm remark_form(SigmaOp eps, SigmaOp delta);

struct VerifyReport {
  bool ok = false;
  bool nonsingular = false;
  std::vector<double> residuals;  // one per checked equality
  double max_residual = 0.0;
  std::vector<RemarkForm> forms;  // verify_remark_forms only
};

/// [[I_m, X], [0, I_n]] for an m×n X, split at m.
template <class T> Partitioned<T> unit_upper(const Matrix<T> &x);

/// Certificate P_j = [[I, X_j], [0, I]] built from a solution.
template <class T>
Thm1Certificate<T> certificate_from_solution(const EquationSystem<T> &sys, const std::vector<Matrix<T>> &sol,
                                             double tol = kDefaultTol);

/// P^⟪σ⟫; the result of a twisted σ is split at the complementary size.
template <class T> Partitioned<T> bracket_sigma(const Partitioned<T> &p, SigmaOp s, double tol = kDefaultTol);

template <class T>
VerifyReport verify_thm1(const EquationSystem<T> &sys, const Thm1Certificate<T> &cert, double tol = kDefaultTol,
                         Exec exec = Exec::Parallel);

/// The same condition written per case without inverses.
template <class T>
VerifyReport verify_remark_forms(const EquationSystem<T> &sys, const Thm1Certificate<T> &cert,
                                 double tol = kDefaultTol);

template <class T> struct ReducedSystem {
  EquationSystem<T> system;
  std::vector<std::size_t> x_index;  // original unknown j
  std::vector<std::size_t> y_index;  // Y_i = X_{i'}^{ε_i} M_i
  std::vector<std::size_t> z_index;  // Z_i = N_i X_{i''}^{δ_i}
};

/// The 3s-equation Sylvester-form system equivalent to a general one.
template <class T> ReducedSystem<T> reduce_to_triple(const EquationSystem<T> &sys);

/// Lifts a solution of `sys` to the reduced system (X, Y, Z).
template <class T>
std::vector<Matrix<T>> lift_to_triple(const EquationSystem<T> &sys, const std::vector<Matrix<T>> &sol);

template <class T>
Thm2Certificate<T> certificate_thm2_from_solution(const EquationSystem<T> &sys, const std::vector<Matrix<T>> &sol,
                                                  double tol = kDefaultTol);

template <class T>
VerifyReport verify_thm2(const EquationSystem<T> &sys, const Thm2Certificate<T> &cert, double tol = kDefaultTol);

/// Theorem 2 certificates are Theorem 1 certificates of the reduced system.
template <class T> Thm1Certificate<T> flatten(const ReducedSystem<T> &red, const Thm2Certificate<T> &cert);

/// Sylvester-form system over unknowns Y_{1,j}, Y_{†,j} whose involutions all
/// lie in {1, ∁}; built by splitting ε = αλ, δ = βμ.
template <class T> struct DoubledSystem {
  EquationSystem<T> system;
  std::size_t original_unknowns = 0;

  std::size_t index(SigmaOp kappa, std::size_t j) const {
    return kappa == SigmaOp::Identity ? j : original_unknowns + j;
  }
};

template <class T> DoubledSystem<T> split_dagger_system(const EquationSystem<T> &sys);

/// Y_{κ,j} ↦ P_j^⟪κ⟫. Throws InvalidCertificate unless `cert` verifies on `sys`.
template <class T>
Thm1Certificate<T> doubled_certificate(const EquationSystem<T> &sys, const Thm1Certificate<T> &cert,
                                       const DoubledSystem<T> &doubled, double tol = kDefaultTol);

/// Solution of a {1, ∁}-system from a verified certificate, by solving for
/// U_j = [[I, U_j2], [0, U_j4]] satisfying the certificate equalities and
/// reading off U_j2.
template <class T>
std::vector<Matrix<T>> extract_from_certificate_conj(const EquationSystem<T> &sys, const Thm1Certificate<T> &cert,
                                                     double tol = kDefaultTol);

/// Solution of a Sylvester-form system from a verified certificate: double the
/// system, extract Y, and average X_j = (Y_{1,j} + Y_{†,j}^†) / 2.
template <class T>
std::vector<Matrix<T>> extract_solution(const EquationSystem<T> &sys, const Thm1Certificate<T> &cert,
                                        double tol = kDefaultTol);

} // namespace roth
