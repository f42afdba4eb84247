#include "roth/vectorizer.hpp"

#include <exception>
#include <set>

namespace roth {
namespace {

struct BasisProduct {
  std::size_t index;
  int sign;
};

// e_p · e_q = sign · e_index, read off the scalar multiplication.
template <class T> BasisProduct basis_product(ScalarKind kind, std::size_t p, std::size_t q) {
  auto prod = Scalar<T>::unit(kind, p) * Scalar<T>::unit(kind, q);
  for (std::size_t k = 0; k < arity(kind); ++k) {
    if (NumTraits<T>::is_zero(prod[k])) continue;
    return {k, prod[k] > T(0) ? 1 : -1};
  }
  throw Error("basis product vanished");
}

template <class T> void check_kind(ScalarKind kind, const Matrix<T> &m, std::size_t eq, const char *what) {
  if (m.kind() != kind)
    throw ValidationError(eq, std::string(what) + " has kind " + std::string(kind_name(m.kind())) +
                                  ", system is " + std::string(kind_name(kind)));
}

std::string shape(std::size_t r, std::size_t c) { return std::to_string(r) + "x" + std::to_string(c); }

} // namespace

template <class T> void validate(const EquationSystem<T> &sys) {
  std::set<std::string> names;
  for (const auto &u : sys.unknowns) {
    if (u.rows == 0 || u.cols == 0) throw Error("unknown '" + u.name + "' has an empty shape");
    if (!names.insert(u.name).second) throw Error("duplicate unknown '" + u.name + "'");
  }
  for (std::size_t i = 0; i < sys.equations.size(); ++i) {
    const auto &eq = sys.equations[i];
    check_kind(sys.kind, eq.a, i, "A");
    check_kind(sys.kind, eq.b, i, "B");
    check_kind(sys.kind, eq.c, i, "C");
    if (eq.m) check_kind(sys.kind, *eq.m, i, "M");
    if (eq.n) check_kind(sys.kind, *eq.n, i, "N");
    if (eq.left >= sys.unknowns.size() || eq.right >= sys.unknowns.size())
      throw ValidationError(i, "unknown index out of range");
    if (sys.strict_corollary && sys.kind == ScalarKind::Quaternion) {
      for (SigmaOp s : {eq.eps, eq.delta})
        if (s != SigmaOp::Identity && s != SigmaOp::Star)
          throw ValidationError(i, "involution '" + std::string(sigma_name(s)) +
                                       "' not allowed over H in strict-corollary mode");
    }
    const auto &xl = sys.unknowns[eq.left];
    const auto &xr = sys.unknowns[eq.right];
    auto [lm, ln] = sigma_shape(xl.rows, xl.cols, eq.eps);
    auto [rm, rn] = sigma_shape(xr.rows, xr.cols, eq.delta);
    if (eq.a.cols() != lm)
      throw ValidationError(i, "A is " + eq.a.shape_string() + " but " + xl.name + "^" +
                                   std::string(sigma_name(eq.eps)) + " is " + shape(lm, ln));
    if (eq.m && eq.m->rows() != ln)
      throw ValidationError(i, "M is " + eq.m->shape_string() + " but " + xl.name + "^" +
                                   std::string(sigma_name(eq.eps)) + " is " + shape(lm, ln));
    if (eq.n && eq.n->cols() != rm)
      throw ValidationError(i, "N is " + eq.n->shape_string() + " but " + xr.name + "^" +
                                   std::string(sigma_name(eq.delta)) + " is " + shape(rm, rn));
    if (eq.b.rows() != rn)
      throw ValidationError(i, "B is " + eq.b.shape_string() + " but " + xr.name + "^" +
                                   std::string(sigma_name(eq.delta)) + " is " + shape(rm, rn));
    const std::size_t left_rows = eq.a.rows();
    const std::size_t left_cols = eq.m ? eq.m->cols() : ln;
    const std::size_t right_rows = eq.n ? eq.n->rows() : rm;
    const std::size_t right_cols = eq.b.cols();
    if (left_rows != eq.c.rows() || left_cols != eq.c.cols())
      throw ValidationError(i, "left term is " + shape(left_rows, left_cols) + " but C is " + eq.c.shape_string());
    if (right_rows != eq.c.rows() || right_cols != eq.c.cols())
      throw ValidationError(i, "right term is " + shape(right_rows, right_cols) + " but C is " + eq.c.shape_string());
  }
}

ComponentLayout ComponentLayout::of(ScalarKind kind, const std::vector<UnknownSpec> &unknowns) {
  ComponentLayout l;
  l.arity = roth::arity(kind);
  for (const auto &u : unknowns) {
    l.offset.push_back(l.total);
    l.length.push_back(u.rows * u.cols * l.arity);
    l.total += l.length.back();
  }
  return l;
}

template <class T> RealVector<T> stack_components(const Matrix<T> &x) {
  const std::size_t e = arity(x.kind());
  const std::size_t mn = x.rows() * x.cols();
  RealVector<T> v(mn * e, T(0));
  for (std::size_t c = 0; c < x.cols(); ++c)
    for (std::size_t r = 0; r < x.rows(); ++r)
      for (std::size_t p = 0; p < e; ++p) v[p * mn + c * x.rows() + r] = x(r, c)[p];
  return v;
}

template <class T>
Matrix<T> unstack_components(ScalarKind kind, std::size_t rows, std::size_t cols, std::span<const T> v) {
  const std::size_t e = arity(kind);
  const std::size_t mn = rows * cols;
  if (v.size() != mn * e) throw ShapeError("unstack_components: length mismatch");
  Matrix<T> x(kind, rows, cols);
  for (std::size_t c = 0; c < cols; ++c)
    for (std::size_t r = 0; r < rows; ++r) {
      std::array<T, 4> s{T(0), T(0), T(0), T(0)};
      for (std::size_t p = 0; p < e; ++p) s[p] = v[p * mn + c * rows + r];
      x.set(r, c, Scalar<T>(kind, s));
    }
  return x;
}

std::vector<std::size_t> commutation_permutation(std::size_t m, std::size_t n) {
  // vec(Xᵀ)[c'·n + r'] = Xᵀ(r', c') = X(c', r') = vec(X)[r'·m + c'].
  std::vector<std::size_t> perm(m * n);
  for (std::size_t cp = 0; cp < m; ++cp)
    for (std::size_t rp = 0; rp < n; ++rp) perm[cp * n + rp] = rp * m + cp;
  return perm;
}

template <class T> RealMatrix<T> commutation_matrix(std::size_t m, std::size_t n) {
  auto perm = commutation_permutation(m, n);
  RealMatrix<T> k(m * n, m * n);
  for (std::size_t i = 0; i < perm.size(); ++i) k(i, perm[i]) = T(1);
  return k;
}

// Expands A = Σ A_p e_p, X = Σ X_q e_q, M = Σ M_r e_r. Each monomial adds
// sign(e_p e_q e_r)·s_q·(M_rᵀ ⊗ A_p), composed with K when σ transposes,
// into the (output component, q) block.
template <class T>
RealMatrix<T> term_operator(const Matrix<T> &a, SigmaOp s, const Matrix<T> &m, const UnknownSpec &unknown) {
  require_same_kind(a.kind(), m.kind());
  const ScalarKind kind = a.kind();
  const std::size_t e = arity(kind);
  auto [xr, xc] = sigma_shape(unknown.rows, unknown.cols, s);
  if (a.cols() != xr || m.rows() != xc)
    throw ShapeError("term_operator: A " + a.shape_string() + ", X^sigma " + shape(xr, xc) + ", M " +
                     m.shape_string());
  const bool t = transposes(s);
  const auto signs = component_signs(kind, s);
  const std::size_t out_rows = a.rows();
  const std::size_t out_cols = m.cols();
  const std::size_t out_block = out_rows * out_cols;
  const std::size_t in_block = unknown.rows * unknown.cols;
  const auto perm = t ? commutation_permutation(unknown.rows, unknown.cols) : std::vector<std::size_t>{};

  auto ap = components(a);
  auto mp = components(m);
  RealMatrix<T> l(out_block * e, in_block * e);
  for (std::size_t p = 0; p < e; ++p)
    for (std::size_t q = 0; q < e; ++q) {
      auto pq = basis_product<T>(kind, p, q);
      for (std::size_t r = 0; r < e; ++r) {
        auto pqr = basis_product<T>(kind, pq.index, r);
        const int sign = pq.sign * pqr.sign * signs[q];
        const std::size_t row0 = pqr.index * out_block;
        const std::size_t col0 = q * in_block;
        for (std::size_t orow = 0; orow < out_rows; ++orow)
          for (std::size_t k = 0; k < xr; ++k) {
            const T &av = ap[p](orow, k);
            if (NumTraits<T>::is_zero(av)) continue;
            for (std::size_t j = 0; j < xc; ++j)
              for (std::size_t ocol = 0; ocol < out_cols; ++ocol) {
                const T &mv = mp[r](j, ocol);
                if (NumTraits<T>::is_zero(mv)) continue;
                // X^σ(k, j) sits at vec index j·xr + k; route through K when transposed.
                std::size_t in = j * xr + k;
                if (t) in = perm[in];
                T v = av * mv;
                if (sign < 0)
                  l(row0 + ocol * out_rows + orow, col0 + in) -= v;
                else
                  l(row0 + ocol * out_rows + orow, col0 + in) += v;
              }
          }
      }
    }
  return l;
}

namespace {

template <class T> Matrix<T> left_post(const Equation<T> &eq, const UnknownSpec &x) {
  if (eq.m) return *eq.m;
  return Matrix<T>::identity(eq.a.kind(), sigma_shape(x.rows, x.cols, eq.eps).second);
}

template <class T> Matrix<T> right_pre(const Equation<T> &eq, const UnknownSpec &x) {
  if (eq.n) return *eq.n;
  return Matrix<T>::identity(eq.b.kind(), sigma_shape(x.rows, x.cols, eq.delta).first);
}

template <class T>
void assemble_equation(const EquationSystem<T> &sys, std::size_t i, const ComponentLayout &layout,
                       std::size_t row0, AssembledSystem<T> &out) {
  const auto &eq = sys.equations[i];
  const auto &xl = sys.unknowns[eq.left];
  const auto &xr = sys.unknowns[eq.right];
  auto lop = term_operator(eq.a, eq.eps, left_post(eq, xl), xl);
  auto rop = term_operator(right_pre(eq, xr), eq.delta, eq.b, xr);
  const std::size_t lc = layout.offset[eq.left];
  const std::size_t rc = layout.offset[eq.right];
  for (std::size_t r = 0; r < lop.rows(); ++r) {
    auto dst = out.m.row(row0 + r);
    for (std::size_t c = 0; c < lop.cols(); ++c) dst[lc + c] += lop(r, c);
    for (std::size_t c = 0; c < rop.cols(); ++c) dst[rc + c] -= rop(r, c);
  }
  auto cv = stack_components(eq.c);
  for (std::size_t r = 0; r < cv.size(); ++r) out.b[row0 + r] = cv[r];
}

} // namespace

template <class T> AssembledSystem<T> assemble_system(const EquationSystem<T> &sys, Exec exec) {
  validate(sys);
  AssembledSystem<T> out;
  out.layout = ComponentLayout::of(sys.kind, sys.unknowns);
  const std::size_t e = out.layout.arity;
  std::size_t rows = 0;
  for (const auto &eq : sys.equations) {
    out.row_offset.push_back(rows);
    rows += eq.c.rows() * eq.c.cols() * e;
  }
  out.m = RealMatrix<T>(rows, out.layout.total);
  out.b.assign(rows, T(0));

  const auto count = static_cast<std::ptrdiff_t>(sys.equations.size());
  if (exec == Exec::Serial) {
    for (std::ptrdiff_t i = 0; i < count; ++i)
      assemble_equation(sys, static_cast<std::size_t>(i), out.layout, out.row_offset[i], out);
    return out;
  }
  // Each equation owns a disjoint row block, so blocks are filled independently.
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      assemble_equation(sys, static_cast<std::size_t>(i), out.layout, out.row_offset[i], out);
    } catch (...) {
#pragma omp critical(roth_assemble_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

template <class T> Matrix<T> evaluate_lhs(const Equation<T> &eq, const std::vector<Matrix<T>> &xs) {
  Matrix<T> left = eq.a * apply_sigma(xs.at(eq.left), eq.eps);
  if (eq.m) left = left * *eq.m;
  Matrix<T> right = apply_sigma(xs.at(eq.right), eq.delta) * eq.b;
  if (eq.n) right = *eq.n * right;
  return left - right;
}

template <class T> double relative_residual(const Equation<T> &eq, const std::vector<Matrix<T>> &xs) {
  return frobenius(evaluate_lhs(eq, xs) - eq.c) / std::max(1.0, frobenius(eq.c));
}

template <class T> double max_relative_residual(const EquationSystem<T> &sys, const std::vector<Matrix<T>> &xs) {
  double worst = 0.0;
  for (const auto &eq : sys.equations) worst = std::max(worst, relative_residual(eq, xs));
  return worst;
}

template <class T> bool residual_is_zero(const EquationSystem<T> &sys, const std::vector<Matrix<T>> &xs) {
  for (const auto &eq : sys.equations)
    if (!(evaluate_lhs(eq, xs) - eq.c).is_zero()) return false;
  return true;
}

template <class T> bool satisfies(const EquationSystem<T> &sys, const std::vector<Matrix<T>> &xs, double tol) {
  if (xs.size() != sys.unknowns.size()) return false;
  for (std::size_t j = 0; j < xs.size(); ++j)
    if (xs[j].rows() != sys.unknowns[j].rows || xs[j].cols() != sys.unknowns[j].cols) return false;
  if constexpr (NumTraits<T>::exact)
    return residual_is_zero(sys, xs);
  else
    return max_relative_residual(sys, xs) <= tol;
}

template <class T> SolveReport<T> solve_system(const EquationSystem<T> &sys, double tol, Exec exec) {
  auto asm_ = assemble_system(sys, exec);
  auto cs = solve_consistent(asm_.m, std::span<const T>(asm_.b), tol, exec);
  SolveReport<T> rep;
  rep.rank_m = cs.rank_m;
  rep.rank_aug = cs.rank_aug;
  rep.pivots = std::move(cs.pivots);
  if (!cs.x) {
    rep.status = SolveStatus::Inconsistent;
    return rep;
  }
  std::vector<Matrix<T>> xs;
  for (std::size_t j = 0; j < sys.unknowns.size(); ++j) {
    const auto &u = sys.unknowns[j];
    std::span<const T> seg(cs.x->data() + asm_.layout.offset[j], asm_.layout.length[j]);
    xs.push_back(unstack_components(sys.kind, u.rows, u.cols, seg));
  }
  if (!satisfies(sys, xs, tol))
    throw NumericalError("solution failed direct substitution (relative residual " +
                         std::to_string(max_relative_residual(sys, xs)) + ")");
  rep.status = SolveStatus::Solvable;
  rep.residual = max_relative_residual(sys, xs);
  rep.solution = std::move(xs);
  return rep;
}

template <class To, class From> EquationSystem<To> convert_system(const EquationSystem<From> &sys) {
  EquationSystem<To> out;
  out.kind = sys.kind;
  out.unknowns = sys.unknowns;
  out.strict_corollary = sys.strict_corollary;
  for (const auto &eq : sys.equations) {
    Equation<To> e;
    e.a = convert<To>(eq.a);
    e.b = convert<To>(eq.b);
    e.c = convert<To>(eq.c);
    if (eq.m) e.m = convert<To>(*eq.m);
    if (eq.n) e.n = convert<To>(*eq.n);
    e.left = eq.left;
    e.right = eq.right;
    e.eps = eq.eps;
    e.delta = eq.delta;
    out.equations.push_back(std::move(e));
  }
  return out;
}

#define ROTH_INSTANTIATE(T)                                                                       \
  template void validate(const EquationSystem<T> &);                                              \
  template RealVector<T> stack_components(const Matrix<T> &);                                     \
  template Matrix<T> unstack_components(ScalarKind, std::size_t, std::size_t, std::span<const T>); \
  template RealMatrix<T> commutation_matrix(std::size_t, std::size_t);                            \
  template RealMatrix<T> term_operator(const Matrix<T> &, SigmaOp, const Matrix<T> &,             \
                                       const UnknownSpec &);                                      \
  template AssembledSystem<T> assemble_system(const EquationSystem<T> &, Exec);                   \
  template SolveReport<T> solve_system(const EquationSystem<T> &, double, Exec);                  \
  template Matrix<T> evaluate_lhs(const Equation<T> &, const std::vector<Matrix<T>> &);           \
  template double relative_residual(const Equation<T> &, const std::vector<Matrix<T>> &);         \
  template double max_relative_residual(const EquationSystem<T> &, const std::vector<Matrix<T>> &); \
  template bool residual_is_zero(const EquationSystem<T> &, const std::vector<Matrix<T>> &);      \
  template bool satisfies(const EquationSystem<T> &, const std::vector<Matrix<T>> &, double);

ROTH_INSTANTIATE(double)
ROTH_INSTANTIATE(Rational)
#undef ROTH_INSTANTIATE

template EquationSystem<double> convert_system(const EquationSystem<Rational> &);
template EquationSystem<Rational> convert_system(const EquationSystem<double> &);
template EquationSystem<double> convert_system(const EquationSystem<double> &);
template EquationSystem<Rational> convert_system(const EquationSystem<Rational> &);

} // namespace roth
