#include "roth/certificates.hpp"

#include <algorithm>
#include <array>
#include <exception>
#include <optional>
#include <set>

namespace roth {
namespace {

template <class T> using M = Matrix<T>;

struct EqualityCheck {
  double residual = 0.0;
  bool holds = false;
};

// ‖L − R‖_F / max(1, ‖L‖_F, ‖R‖_F); exact backends require L = R.
template <class T> EqualityCheck check_equality(const Matrix<T> &l, const Matrix<T> &r, double tol) {
  auto diff = l - r;
  EqualityCheck c;
  c.residual = frobenius(diff) / std::max({1.0, frobenius(l), frobenius(r)});
  c.holds = NumTraits<T>::exact ? diff.is_zero() : c.residual <= tol;
  return c;
}

template <class T> Matrix<T> diag2(const Matrix<T> &a, const Matrix<T> &b) {
  return block2x2(a, M<T>::zero(a.kind(), a.rows(), b.cols()), M<T>::zero(a.kind(), b.rows(), a.cols()), b).matrix;
}

// [[A, C], [0, B]]
template <class T> Matrix<T> roth_block(const Matrix<T> &a, const Matrix<T> &b, const Matrix<T> &c) {
  return block2x2(a, c, M<T>::zero(a.kind(), b.rows(), a.cols()), b).matrix;
}

template <class T> void require_sylvester(const EquationSystem<T> &sys, const char *op) {
  if (!sys.sylvester_form())
    throw Error(std::string(op) + " requires the form A X^eps - X^delta B = C (no M or N factors)");
}

template <class T>
void check_partitions(const EquationSystem<T> &sys, const std::vector<Partitioned<T>> &ps, const char *what) {
  if (ps.size() != sys.unknowns.size())
    throw ShapeError(std::string(what) + ": expected " + std::to_string(sys.unknowns.size()) + " matrices, got " +
                     std::to_string(ps.size()));
  for (std::size_t j = 0; j < ps.size(); ++j) {
    const auto &u = sys.unknowns[j];
    const auto &p = ps[j];
    const std::size_t n = u.rows + u.cols;
    if (p.matrix.kind() != sys.kind) throw KindMismatch(std::string(what) + " kind differs from the system");
    if (p.matrix.rows() != n || p.matrix.cols() != n || p.partition.row_split != u.rows ||
        p.partition.col_split != u.rows)
      throw ShapeError(std::string(what) + " " + std::to_string(j) + " must be " + std::to_string(n) + "x" +
                       std::to_string(n) + " split at " + std::to_string(u.rows) + " for unknown '" + u.name + "'");
  }
}

template <class T> bool all_nonsingular(const std::vector<Partitioned<T>> &ps, double tol) {
  return std::all_of(ps.begin(), ps.end(), [&](const auto &p) { return nonsingular(p.matrix, tol); });
}

// P_j^⟪σ⟫ for every (j, σ) an equation uses, computed once up front.
template <class T> class BracketCache {
public:
  BracketCache(const EquationSystem<T> &sys, const std::vector<Partitioned<T>> &ps, double tol)
      : cache_(ps.size()) {
    auto want = [&](std::size_t j, SigmaOp s) {
      auto &slot = cache_[j][static_cast<std::size_t>(s)];
      if (!slot) slot = bracket_sigma(ps[j], s, tol).matrix;
    };
    for (const auto &eq : sys.equations) {
      want(eq.left, eq.eps);
      want(eq.right, eq.delta);
    }
  }
  const Matrix<T> &operator()(std::size_t j, SigmaOp s) const { return *cache_[j][static_cast<std::size_t>(s)]; }

private:
  std::vector<std::array<std::optional<Matrix<T>>, 4>> cache_;
};

template <class F> void for_each_index(std::size_t count, Exec exec, F &&body) {
  const auto n = static_cast<std::ptrdiff_t>(count);
  if (exec == Exec::Serial) {
    for (std::ptrdiff_t i = 0; i < n; ++i) body(static_cast<std::size_t>(i));
    return;
  }
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(roth_certificate_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

void finish(VerifyReport &rep, const std::vector<EqualityCheck> &checks) {
  rep.ok = rep.nonsingular;
  for (const auto &c : checks) {
    rep.residuals.push_back(c.residual);
    rep.max_residual = std::max(rep.max_residual, c.residual);
    rep.ok = rep.ok && c.holds;
  }
}

std::string fresh_name(std::set<std::string> &taken, const std::string &base) {
  std::string name = base;
  while (taken.count(name)) name += "_";
  taken.insert(name);
  return name;
}

} // namespace

RemarkForm remark_form(SigmaOp eps, SigmaOp delta) {
  const bool te = transposes(eps);
  const bool td = transposes(delta);
  if (!te && !td) return RemarkForm::Plain;
  if (!te && td) return RemarkForm::RightTwisted;
  if (te && !td) return RemarkForm::LeftTwisted;
  return RemarkForm::BothTwisted;
}

template <class T> Partitioned<T> unit_upper(const Matrix<T> &x) {
  const auto k = x.kind();
  return block2x2(M<T>::identity(k, x.rows()), x, M<T>::zero(k, x.cols(), x.rows()), M<T>::identity(k, x.cols()));
}

template <class T>
Thm1Certificate<T> certificate_from_solution(const EquationSystem<T> &sys, const std::vector<Matrix<T>> &sol,
                                             double tol) {
  require_sylvester(sys, "certificate_from_solution");
  if (!satisfies(sys, sol, tol)) throw NotASolution("matrices do not solve the system");
  Thm1Certificate<T> cert;
  for (const auto &x : sol) cert.p.push_back(unit_upper(x));
  return cert;
}

template <class T> Partitioned<T> bracket_sigma(const Partitioned<T> &p, SigmaOp s, double tol) {
  if (!p.matrix.square() || p.partition.row_split != p.partition.col_split ||
      p.partition.row_split > p.matrix.rows())
    throw ShapeError("bracket_sigma: needs a square matrix with a symmetric split");
  if (!transposes(s)) return {apply_sigma(p.matrix, s), p.partition};
  const std::size_t m = p.partition.row_split;
  const std::size_t n = p.matrix.rows() - m;
  const auto kind = p.matrix.kind();
  auto inv = inverse(apply_sigma(p.matrix, s), tol);
  return {make_J<T>(m, n, kind) * inv * make_J_inverse<T>(m, n, kind), {n, n}};
}

template <class T>
VerifyReport verify_thm1(const EquationSystem<T> &sys, const Thm1Certificate<T> &cert, double tol, Exec exec) {
  require_sylvester(sys, "verify_thm1");
  validate(sys);
  check_partitions(sys, cert.p, "P");
  VerifyReport rep;
  rep.nonsingular = all_nonsingular(cert.p, tol);
  if (!rep.nonsingular) return rep;
  BracketCache<T> br(sys, cert.p, tol);
  std::vector<EqualityCheck> checks(sys.equations.size());
  for_each_index(sys.equations.size(), exec, [&](std::size_t i) {
    const auto &eq = sys.equations[i];
    auto lhs = diag2(eq.a, eq.b) * br(eq.left, eq.eps);
    auto rhs = br(eq.right, eq.delta) * roth_block(eq.a, eq.b, eq.c);
    checks[i] = check_equality(lhs, rhs, tol);
  });
  finish(rep, checks);
  return rep;
}

template <class T>
VerifyReport verify_remark_forms(const EquationSystem<T> &sys, const Thm1Certificate<T> &cert, double tol) {
  require_sylvester(sys, "verify_remark_forms");
  validate(sys);
  check_partitions(sys, cert.p, "P");
  VerifyReport rep;
  rep.nonsingular = all_nonsingular(cert.p, tol);
  std::vector<EqualityCheck> checks;
  for (const auto &eq : sys.equations) {
    const auto &a = eq.a;
    const auto &b = eq.b;
    const auto &c = eq.c;
    const auto k = sys.kind;
    auto pl = apply_sigma(cert.p[eq.left].matrix, eq.eps);
    auto pr = apply_sigma(cert.p[eq.right].matrix, eq.delta);
    auto z = [&](std::size_t r, std::size_t cc) { return M<T>::zero(k, r, cc); };
    const auto form = remark_form(eq.eps, eq.delta);
    rep.forms.push_back(form);
    switch (form) {
    case RemarkForm::Plain:
      checks.push_back(check_equality(diag2(a, b) * pl, pr * roth_block(a, b, c), tol));
      break;
    case RemarkForm::RightTwisted: {
      auto mid = block2x2(z(b.rows(), a.cols()), -b, a, z(a.rows(), b.cols())).matrix;
      auto rhs = block2x2(z(b.rows(), a.cols()), -b, a, c).matrix;
      checks.push_back(check_equality(pr * mid * pl, rhs, tol));
      break;
    }
    case RemarkForm::LeftTwisted: {
      auto lhs = block2x2(z(a.rows(), b.cols()), -a, b, z(b.rows(), a.cols())).matrix;
      auto mid = block2x2(c, -a, b, z(b.rows(), a.cols())).matrix;
      checks.push_back(check_equality(lhs, pr * mid * pl, tol));
      break;
    }
    case RemarkForm::BothTwisted: {
      auto lmid = block2x2(b, z(b.rows(), a.cols()), z(a.rows(), b.cols()), a).matrix;
      auto rmid = block2x2(b, z(b.rows(), a.cols()), -c, a).matrix;
      checks.push_back(check_equality(pr * lmid, rmid * pl, tol));
      break;
    }
    }
  }
  finish(rep, checks);
  return rep;
}

template <class T> ReducedSystem<T> reduce_to_triple(const EquationSystem<T> &sys) {
  validate(sys);
  ReducedSystem<T> red;
  auto &out = red.system;
  out.kind = sys.kind;
  out.strict_corollary = sys.strict_corollary;
  out.unknowns = sys.unknowns;
  std::set<std::string> taken;
  for (std::size_t j = 0; j < sys.unknowns.size(); ++j) {
    taken.insert(sys.unknowns[j].name);
    red.x_index.push_back(j);
  }
  const auto k = sys.kind;
  for (std::size_t i = 0; i < sys.equations.size(); ++i) {
    const auto &eq = sys.equations[i];
    red.y_index.push_back(out.unknowns.size());
    out.unknowns.push_back({fresh_name(taken, "Y" + std::to_string(i + 1)), eq.a.cols(), eq.c.cols()});
  }
  for (std::size_t i = 0; i < sys.equations.size(); ++i) {
    const auto &eq = sys.equations[i];
    red.z_index.push_back(out.unknowns.size());
    out.unknowns.push_back({fresh_name(taken, "Z" + std::to_string(i + 1)), eq.c.rows(), eq.b.rows()});
  }
  for (std::size_t i = 0; i < sys.equations.size(); ++i) {
    const auto &eq = sys.equations[i];
    const auto &xl = sys.unknowns[eq.left];
    const auto &xr = sys.unknowns[eq.right];
    const std::size_t y = red.y_index[i];
    const std::size_t z = red.z_index[i];
    const std::size_t a_cols = eq.a.cols();
    const std::size_t b_rows = eq.b.rows();
    const std::size_t ln = sigma_shape(xl.rows, xl.cols, eq.eps).second;
    const std::size_t rm = sigma_shape(xr.rows, xr.cols, eq.delta).first;

    // A_i Y_i − Z_i B_i = C_i
    out.equations.push_back({eq.a, std::nullopt, std::nullopt, eq.b, eq.c, y, SigmaOp::Identity, z, SigmaOp::Identity});
    // Y_i − X_{i'}^{ε_i} M_i = 0
    out.equations.push_back({M<T>::identity(k, a_cols), std::nullopt, std::nullopt,
                             eq.m ? *eq.m : M<T>::identity(k, ln), M<T>::zero(k, a_cols, eq.c.cols()), y,
                             SigmaOp::Identity, eq.left, eq.eps});
    // N_i X_{i''}^{δ_i} − Z_i = 0
    out.equations.push_back({eq.n ? *eq.n : M<T>::identity(k, rm), std::nullopt, std::nullopt,
                             M<T>::identity(k, b_rows), M<T>::zero(k, eq.c.rows(), b_rows), eq.right, eq.delta, z,
                             SigmaOp::Identity});
  }
  return red;
}

template <class T>
std::vector<Matrix<T>> lift_to_triple(const EquationSystem<T> &sys, const std::vector<Matrix<T>> &sol) {
  std::vector<Matrix<T>> out = sol;
  std::vector<Matrix<T>> zs;
  for (const auto &eq : sys.equations) {
    auto y = apply_sigma(sol.at(eq.left), eq.eps);
    if (eq.m) y = y * *eq.m;
    auto z = apply_sigma(sol.at(eq.right), eq.delta);
    if (eq.n) z = *eq.n * z;
    out.push_back(std::move(y));
    zs.push_back(std::move(z));
  }
  out.insert(out.end(), zs.begin(), zs.end());
  return out;
}

template <class T>
Thm2Certificate<T> certificate_thm2_from_solution(const EquationSystem<T> &sys, const std::vector<Matrix<T>> &sol,
                                                  double tol) {
  validate(sys);
  if (!satisfies(sys, sol, tol)) throw NotASolution("matrices do not solve the system");
  auto lifted = lift_to_triple(sys, sol);
  const std::size_t t = sys.unknowns.size();
  const std::size_t s = sys.equations.size();
  Thm2Certificate<T> cert;
  for (std::size_t j = 0; j < t; ++j) cert.p.push_back(unit_upper(lifted[j]));
  for (std::size_t i = 0; i < s; ++i) cert.q.push_back(unit_upper(lifted[t + i]));
  for (std::size_t i = 0; i < s; ++i) cert.r.push_back(unit_upper(lifted[t + s + i]));
  return cert;
}

template <class T> Thm1Certificate<T> flatten(const ReducedSystem<T> &red, const Thm2Certificate<T> &cert) {
  Thm1Certificate<T> flat;
  flat.p.resize(red.system.unknowns.size());
  if (cert.p.size() != red.x_index.size() || cert.q.size() != red.y_index.size() ||
      cert.r.size() != red.z_index.size())
    throw ShapeError("certificate does not match the system's unknown and equation counts");
  for (std::size_t j = 0; j < cert.p.size(); ++j) flat.p[red.x_index[j]] = cert.p[j];
  for (std::size_t i = 0; i < cert.q.size(); ++i) flat.p[red.y_index[i]] = cert.q[i];
  for (std::size_t i = 0; i < cert.r.size(); ++i) flat.p[red.z_index[i]] = cert.r[i];
  return flat;
}

template <class T>
VerifyReport verify_thm2(const EquationSystem<T> &sys, const Thm2Certificate<T> &cert, double tol) {
  validate(sys);
  check_partitions(sys, cert.p, "P");
  const std::size_t s = sys.equations.size();
  if (cert.q.size() != s || cert.r.size() != s) throw ShapeError("need one Q and one R per equation");
  const auto k = sys.kind;
  for (std::size_t i = 0; i < s; ++i) {
    const auto &eq = sys.equations[i];
    const std::size_t qn = eq.a.cols() + eq.c.cols();
    const std::size_t rn = eq.c.rows() + eq.b.rows();
    if (cert.q[i].matrix.rows() != qn || cert.q[i].matrix.cols() != qn || cert.q[i].partition.row_split != eq.a.cols())
      throw ShapeError("Q " + std::to_string(i) + " has the wrong shape or split");
    if (cert.r[i].matrix.rows() != rn || cert.r[i].matrix.cols() != rn || cert.r[i].partition.row_split != eq.c.rows())
      throw ShapeError("R " + std::to_string(i) + " has the wrong shape or split");
  }
  VerifyReport rep;
  rep.nonsingular = all_nonsingular(cert.p, tol) && all_nonsingular(cert.q, tol) && all_nonsingular(cert.r, tol);
  if (!rep.nonsingular) return rep;
  BracketCache<T> br(sys, cert.p, tol);
  std::vector<EqualityCheck> checks;
  for (std::size_t i = 0; i < s; ++i) {
    const auto &eq = sys.equations[i];
    const auto &xl = sys.unknowns[eq.left];
    const auto &xr = sys.unknowns[eq.right];
    const auto mi = eq.m ? *eq.m : M<T>::identity(k, sigma_shape(xl.rows, xl.cols, eq.eps).second);
    const auto ni = eq.n ? *eq.n : M<T>::identity(k, sigma_shape(xr.rows, xr.cols, eq.delta).first);
    const auto &q = cert.q[i].matrix;
    const auto &r = cert.r[i].matrix;
    checks.push_back(check_equality(diag2(eq.a, eq.b) * q, r * roth_block(eq.a, eq.b, eq.c), tol));
    auto im = diag2(M<T>::identity(k, eq.a.cols()), mi);
    checks.push_back(check_equality(im * q, br(eq.left, eq.eps) * im, tol));
    auto ni_ = diag2(ni, M<T>::identity(k, eq.b.rows()));
    checks.push_back(check_equality(ni_ * br(eq.right, eq.delta), r * ni_, tol));
  }
  finish(rep, checks);
  return rep;
}

template <class T> DoubledSystem<T> split_dagger_system(const EquationSystem<T> &sys) {
  require_sylvester(sys, "split_dagger_system");
  validate(sys);
  DoubledSystem<T> d;
  d.original_unknowns = sys.unknowns.size();
  auto &out = d.system;
  out.kind = sys.kind;
  out.strict_corollary = false;
  std::set<std::string> taken;
  for (const auto &u : sys.unknowns) taken.insert(u.name);
  for (const auto &u : sys.unknowns) out.unknowns.push_back({fresh_name(taken, u.name + "_1"), u.rows, u.cols});
  for (const auto &u : sys.unknowns) out.unknowns.push_back({fresh_name(taken, u.name + "_dag"), u.cols, u.rows});
  const SigmaOp dag = SigmaOp::Dagger;
  for (const auto &eq : sys.equations) {
    const auto [alpha, lambda] = sigma_decompose(eq.eps);
    const auto [beta, mu] = sigma_decompose(eq.delta);
    // A Y_{λ,i'}^α − Y_{μ,i''}^β B = C
    out.equations.push_back({eq.a, std::nullopt, std::nullopt, eq.b, eq.c, d.index(lambda, eq.left), alpha,
                             d.index(mu, eq.right), beta});
    // B^† Y_{μ†,i''}^β − Y_{λ†,i'}^α A^† = −C^†
    out.equations.push_back({apply_sigma(eq.b, dag), std::nullopt, std::nullopt, apply_sigma(eq.a, dag),
                             -apply_sigma(eq.c, dag), d.index(sigma_compose(mu, dag), eq.right), beta,
                             d.index(sigma_compose(lambda, dag), eq.left), alpha});
  }
  return d;
}

template <class T>
Thm1Certificate<T> doubled_certificate(const EquationSystem<T> &sys, const Thm1Certificate<T> &cert,
                                       const DoubledSystem<T> &doubled, double tol) {
  if (!verify_thm1(sys, cert, tol).ok) throw InvalidCertificate("certificate does not verify on the system");
  Thm1Certificate<T> out;
  out.p.resize(doubled.system.unknowns.size());
  for (std::size_t j = 0; j < cert.p.size(); ++j) {
    out.p[doubled.index(SigmaOp::Identity, j)] = cert.p[j];
    out.p[doubled.index(SigmaOp::Dagger, j)] = bracket_sigma(cert.p[j], SigmaOp::Dagger, tol);
  }
  return out;
}

template <class T>
std::vector<Matrix<T>> extract_from_certificate_conj(const EquationSystem<T> &sys, const Thm1Certificate<T> &cert,
                                                     double tol) {
  require_sylvester(sys, "extract_from_certificate_conj");
  for (const auto &eq : sys.equations)
    if (transposes(eq.eps) || transposes(eq.delta))
      throw Error("extract_from_certificate_conj: involutions must lie in {1, conj}");
  const auto rep = verify_thm1(sys, cert, tol);
  if (!rep.ok)
    throw InvalidCertificate("certificate does not verify (max residual " + std::to_string(rep.max_residual) +
                             (rep.nonsingular ? "" : ", singular block matrix") + ")");

  // With U_j = [[I, U_j2], [0, U_j4]], equating blocks of
  //   [A 0; 0 B] U_{i'}^α = U_{i''}^β [A C; 0 B]
  // leaves (1,2): A U_{i'2}^α − U_{i''2}^β B = C and (2,2): B U_{i'4}^α − U_{i''4}^β B = 0;
  // the (1,1) and (2,1) blocks hold identically. The two families share no
  // unknowns, and the homogeneous (2,2) family is met by U_j4 = 0.
  EquationSystem<T> inner;
  inner.kind = sys.kind;
  inner.strict_corollary = false;
  for (const auto &u : sys.unknowns) inner.unknowns.push_back({u.name + "_12", u.rows, u.cols});
  for (const auto &eq : sys.equations)
    inner.equations.push_back({eq.a, std::nullopt, std::nullopt, eq.b, eq.c, eq.left, eq.eps, eq.right, eq.delta});
  auto solved = solve_system(inner, tol);
  if (solved.status != SolveStatus::Solvable)
    throw InconsistentSystem("certificate block system is inconsistent (rank " + std::to_string(solved.rank_m) +
                             " vs " + std::to_string(solved.rank_aug) + ")");
  auto u2 = std::move(*solved.solution);

  Thm1Certificate<T> u;
  for (std::size_t j = 0; j < u2.size(); ++j) {
    const auto &x = u2[j];
    const auto k = sys.kind;
    u.p.push_back(block2x2(M<T>::identity(k, x.rows()), x, M<T>::zero(k, x.cols(), x.rows()),
                           M<T>::zero(k, x.cols(), x.cols())));
  }
  for (const auto &eq : sys.equations) {
    auto lhs = diag2(eq.a, eq.b) * apply_sigma(u.p[eq.left].matrix, eq.eps);
    auto rhs = apply_sigma(u.p[eq.right].matrix, eq.delta) * roth_block(eq.a, eq.b, eq.c);
    if (!check_equality(lhs, rhs, tol).holds)
      throw NumericalError("extracted block tuple violates the certificate equalities");
  }
  return u2;
}

template <class T>
std::vector<Matrix<T>> extract_solution(const EquationSystem<T> &sys, const Thm1Certificate<T> &cert, double tol) {
  auto doubled = split_dagger_system(sys);
  auto dcert = doubled_certificate(sys, cert, doubled, tol);
  auto ys = extract_from_certificate_conj(doubled.system, dcert, tol);
  std::vector<Matrix<T>> xs;
  for (std::size_t j = 0; j < sys.unknowns.size(); ++j) {
    auto sum = ys[doubled.index(SigmaOp::Identity, j)] +
               apply_sigma(ys[doubled.index(SigmaOp::Dagger, j)], SigmaOp::Dagger);
    xs.push_back(sum.scaled(NumTraits<T>::half(T(1))));
  }
  if (!satisfies(sys, xs, tol))
    throw NumericalError("averaged solution fails the system (relative residual " +
                         std::to_string(max_relative_residual(sys, xs)) + ")");
  return xs;
}

#define ROTH_INSTANTIATE(T)                                                                               \
  template Partitioned<T> unit_upper(const Matrix<T> &);                                                  \
  template Thm1Certificate<T> certificate_from_solution(const EquationSystem<T> &,                        \
                                                        const std::vector<Matrix<T>> &, double);          \
  template Partitioned<T> bracket_sigma(const Partitioned<T> &, SigmaOp, double);                         \
  template VerifyReport verify_thm1(const EquationSystem<T> &, const Thm1Certificate<T> &, double, Exec); \
  template VerifyReport verify_remark_forms(const EquationSystem<T> &, const Thm1Certificate<T> &, double); \
  template ReducedSystem<T> reduce_to_triple(const EquationSystem<T> &);                                  \
  template std::vector<Matrix<T>> lift_to_triple(const EquationSystem<T> &, const std::vector<Matrix<T>> &); \
  template Thm2Certificate<T> certificate_thm2_from_solution(const EquationSystem<T> &,                   \
                                                             const std::vector<Matrix<T>> &, double);     \
  template VerifyReport verify_thm2(const EquationSystem<T> &, const Thm2Certificate<T> &, double);       \
  template Thm1Certificate<T> flatten(const ReducedSystem<T> &, const Thm2Certificate<T> &);              \
  template DoubledSystem<T> split_dagger_system(const EquationSystem<T> &);                               \
  template Thm1Certificate<T> doubled_certificate(const EquationSystem<T> &, const Thm1Certificate<T> &,  \
                                                  const DoubledSystem<T> &, double);                      \
  template std::vector<Matrix<T>> extract_from_certificate_conj(const EquationSystem<T> &,                \
                                                                const Thm1Certificate<T> &, double);      \
  template std::vector<Matrix<T>> extract_solution(const EquationSystem<T> &, const Thm1Certificate<T> &, \
                                                   double);

ROTH_INSTANTIATE(double)
ROTH_INSTANTIATE(Rational)
#undef ROTH_INSTANTIATE

} // namespace roth
