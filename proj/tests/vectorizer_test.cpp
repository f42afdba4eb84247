#include "oracles.hpp"
#include "test_util.hpp"

#include "roth/instance_gen.hpp"
#include "roth/vectorizer.hpp"

#include <doctest.h>

using namespace roth;
using testing::cx;
using testing::mat;
using testing::qt;
using testing::re;

namespace {

constexpr ScalarKind kKinds[] = {ScalarKind::Real, ScalarKind::Complex, ScalarKind::Quaternion};

template <class T>
EquationSystem<T> one_by_one(ScalarKind kind, Scalar<T> a, SigmaOp eps, Scalar<T> b, SigmaOp delta, Scalar<T> c) {
  EquationSystem<T> sys;
  sys.kind = kind;
  sys.strict_corollary = false;
  sys.unknowns = {{"x", 1, 1}};
  Equation<T> eq;
  eq.a = mat<T>(kind, {{a}});
  eq.b = mat<T>(kind, {{b}});
  eq.c = mat<T>(kind, {{c}});
  eq.eps = eps;
  eq.delta = delta;
  sys.equations.push_back(eq);
  return sys;
}

} // namespace

TEST_CASE("commutation matrix") {
  CHECK(commutation_matrix<double>(1, 1) == RealMatrix<double>::identity(1));
  auto k = commutation_matrix<double>(2, 2);
  std::vector<double> v{1, 3, 2, 4};  // vec([[1,2],[3,4]])
  CHECK(multiply(k, std::span<const double>(v)) == std::vector<double>{1, 2, 3, 4});
  for (std::size_t m = 1; m <= 4; ++m)
    for (std::size_t n = 1; n <= 4; ++n) {
      CHECK(multiply(commutation_matrix<Rational>(m, n), commutation_matrix<Rational>(n, m)) ==
            RealMatrix<Rational>::identity(m * n));
      RealMatrix<Rational> x(m, n);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) x(i, j) = Rational(static_cast<long>(10 * i + j));
      auto vx = oracle::vec(x);
      CHECK(multiply(commutation_matrix<Rational>(m, n), std::span<const Rational>(vx)) ==
            oracle::vec(oracle::real_transpose(x)));
    }
}

TEST_CASE("term_operator examples") {
  auto id3 = Matrix<double>::identity(ScalarKind::Real, 3);
  auto id2 = Matrix<double>::identity(ScalarKind::Real, 2);
  CHECK(term_operator(id2, SigmaOp::Identity, id3, UnknownSpec{"x", 2, 3}) == RealMatrix<double>::identity(6));
  // X is 2×3, X^T is 3×2: A = I_3, M = I_2.
  CHECK(term_operator(id3, SigmaOp::Dagger, id2, UnknownSpec{"x", 2, 3}) == commutation_matrix<double>(2, 3));

  auto ci = mat<double>(ScalarKind::Complex, {{cx(0.0, 1.0)}});
  auto c1 = mat<double>(ScalarKind::Complex, {{cx(1.0, 0.0)}});
  CHECK(term_operator(ci, SigmaOp::Conj, c1, UnknownSpec{"x", 1, 1}) == testing::rmat<double>({{0, 1}, {1, 0}}));
}

TEST_CASE("assemble_system examples") {
  auto sys = one_by_one<double>(ScalarKind::Real, re(1.0), SigmaOp::Identity, re(1.0), SigmaOp::Identity, re(0.0));
  auto as = assemble_system(sys);
  CHECK(as.m == RealMatrix<double>(1, 1));
  CHECK(as.b == std::vector<double>{0});

  // i·x − x·i over ℍ. Brute force: i·(a+bi+cj+dk) − (a+bi+cj+dk)·i = 2c·k − 2d·j.
  auto q = one_by_one<double>(ScalarKind::Quaternion, qt(0.0, 1.0, 0.0, 0.0), SigmaOp::Identity,
                              qt(0.0, 1.0, 0.0, 0.0), SigmaOp::Identity, qt(0.0, 0.0, 0.0, 0.0));
  CHECK(assemble_system(q).m == testing::rmat<double>({{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, -2}, {0, 0, 2, 0}}));
}

TEST_CASE("real Sylvester operator is the Kronecker sum") {
  SplitMix64 rng(53);
  for (int n = 0; n < 30; ++n) {
    const std::size_t m = rng.uniform_int(1, 4), k = rng.uniform_int(1, 4);
    auto a = random_matrix<Rational>(rng, ScalarKind::Real, m, m, 4);
    auto b = random_matrix<Rational>(rng, ScalarKind::Real, k, k, 4);
    EquationSystem<Rational> sys;
    sys.unknowns = {{"X", m, k}};
    sys.equations.push_back({a, std::nullopt, std::nullopt, b, Matrix<Rational>::zero(ScalarKind::Real, m, k)});
    auto ra = components(a)[0];
    auto rb = components(b)[0];
    auto lhs = oracle::kron(RealMatrix<Rational>::identity(k), ra);
    auto rhs = oracle::kron(oracle::real_transpose(rb), RealMatrix<Rational>::identity(m));
    for (std::size_t i = 0; i < lhs.rows(); ++i)
      for (std::size_t j = 0; j < lhs.cols(); ++j) lhs(i, j) -= rhs(i, j);
    REQUIRE(assemble_system(sys).m == lhs);
  }
}

TEST_CASE("term_operator matches direct evaluation") {
  for (auto kind : kKinds) {
    SplitMix64 rng(60 + static_cast<int>(kind));
    for (int n = 0; n < 100; ++n) {
      const auto s = all_sigmas[rng.uniform_int(0, 3)];
      const std::size_t xr = rng.uniform_int(1, 4), xc = rng.uniform_int(1, 4);
      auto [sr, sc] = sigma_shape(xr, xc, s);
      const std::size_t ar = rng.uniform_int(1, 4), mc = rng.uniform_int(1, 4);
      auto a = random_matrix<Rational>(rng, kind, ar, sr, 5);
      auto mm = random_matrix<Rational>(rng, kind, sc, mc, 5);
      auto x = random_matrix<Rational>(rng, kind, xr, xc, 5);
      auto op = term_operator(a, s, mm, UnknownSpec{"X", xr, xc});
      auto sx = stack_components(x);
      REQUIRE(multiply(op, std::span<const Rational>(sx)) == stack_components(a * apply_sigma(x, s) * mm));

      auto ad = convert<double>(a), md = convert<double>(mm), xd = convert<double>(x);
      auto opd = term_operator(ad, s, md, UnknownSpec{"X", xr, xc});
      auto sxd = stack_components(xd);
      auto got = multiply(opd, std::span<const double>(sxd));
      auto want = stack_components(ad * apply_sigma(xd, s) * md);
      double err = 0, scale = 0;
      for (std::size_t i = 0; i < got.size(); ++i) {
        err += (got[i] - want[i]) * (got[i] - want[i]);
        scale += want[i] * want[i];
      }
      REQUIRE(std::sqrt(err) <= 1e-12 * std::max(1.0, std::sqrt(scale)));
    }
  }
}

TEST_CASE("stack and unstack invert each other") {
  SplitMix64 rng(2);
  for (auto kind : kKinds) {
    auto x = random_matrix<Rational>(rng, kind, 3, 2, 9);
    auto v = stack_components(x);
    CHECK(v.size() == 6 * arity(kind));
    CHECK(unstack_components<Rational>(kind, 3, 2, v) == x);
  }
  auto c = mat<double>(ScalarKind::Complex, {{cx(1.0, 2.0)}, {cx(3.0, 4.0)}});
  CHECK(stack_components(c) == std::vector<double>{1, 3, 2, 4});
}

TEST_CASE("solve_system examples") {
  auto sys = one_by_one<double>(ScalarKind::Real, re(1.0), SigmaOp::Identity, re(-1.0), SigmaOp::Identity, re(4.0));
  auto rep = solve_system(sys);
  REQUIRE(rep.status == SolveStatus::Solvable);
  CHECK((*rep.solution)[0](0, 0) == re(2.0));

  auto one = cx(1.0, 0.0);
  auto conj_i = one_by_one<double>(ScalarKind::Complex, one, SigmaOp::Conj, one, SigmaOp::Identity, cx(0.0, 1.0));
  auto r2 = solve_system(conj_i);
  REQUIRE(r2.status == SolveStatus::Solvable);
  CHECK((*r2.solution)[0](0, 0) == cx(0.0, -0.5));
  CHECK(r2.residual.has_value());

  auto conj_1 = one_by_one<double>(ScalarKind::Complex, one, SigmaOp::Conj, one, SigmaOp::Identity, cx(1.0, 0.0));
  auto r3 = solve_system(conj_1);
  CHECK(r3.status == SolveStatus::Inconsistent);
  CHECK(r3.rank_aug == r3.rank_m + 1);
  CHECK_FALSE(r3.solution.has_value());
  CHECK_FALSE(r3.residual.has_value());
}

TEST_CASE("conjugate family is solvable iff c is imaginary") {
  SplitMix64 rng(71);
  auto one = cx(1.0, 0.0);
  for (int n = 0; n < 100; ++n) {
    const double re_c = n % 2 ? 0.0 : rng.uniform_real(-3, 3);
    const double im_c = rng.uniform_real(-3, 3);
    auto sys = one_by_one<double>(ScalarKind::Complex, one, SigmaOp::Conj, one, SigmaOp::Identity, cx(re_c, im_c));
    auto rep = solve_system(sys);
    CHECK((rep.status == SolveStatus::Solvable) == (re_c == 0.0));
  }
}

TEST_CASE("validation names the offending equation") {
  auto sys = one_by_one<double>(ScalarKind::Real, re(1.0), SigmaOp::Identity, re(1.0), SigmaOp::Identity, re(1.0));
  sys.equations.push_back(sys.equations[0]);
  sys.equations[1].c = Matrix<double>::zero(ScalarKind::Real, 2, 1);
  try {
    validate(sys);
    FAIL("expected ValidationError");
  } catch (const ValidationError &e) {
    CHECK(e.equation() == 1);
  }
  auto q = one_by_one<double>(ScalarKind::Quaternion, qt(1.0, 0.0, 0.0, 0.0), SigmaOp::Conj,
                              qt(1.0, 0.0, 0.0, 0.0), SigmaOp::Identity, qt(0.0, 0.0, 0.0, 0.0));
  q.strict_corollary = true;
  CHECK_THROWS_AS(validate(q), ValidationError);
  q.strict_corollary = false;
  CHECK_NOTHROW(validate(q));

  auto dup = sys;
  dup.equations.resize(1);
  dup.unknowns.push_back({"x", 1, 1});
  CHECK_THROWS_WITH_AS(validate(dup), "duplicate unknown 'x'", Error);
  auto range = sys;
  range.equations.resize(1);
  range.equations[0].right = 3;
  CHECK_THROWS_AS(validate(range), ValidationError);
}

TEST_CASE("complex systems with real data degenerate to real ones") {
  SplitMix64 rng(79);
  for (int n = 0; n < 40; ++n) {
    GenConfig cfg;
    cfg.seed = 1000 + n;
    cfg.kind = ScalarKind::Real;
    cfg.t = rng.uniform_int(1, 2);
    cfg.s = rng.uniform_int(1, 3);
    cfg.sigma_pool = {SigmaOp::Identity, SigmaOp::Dagger};
    auto real_sys = n % 2 ? gen_solvable<Rational>(cfg).system : gen_unsolvable<Rational>(cfg);

    EquationSystem<Rational> cplx = real_sys;
    cplx.kind = ScalarKind::Complex;
    auto lift = [](const Matrix<Rational> &m) {
      Matrix<Rational> c(ScalarKind::Complex, m.rows(), m.cols());
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
          c.set(i, j, Scalar<Rational>(ScalarKind::Complex, {m(i, j).components()[0], 0, 0, 0}));
      return c;
    };
    for (auto &eq : cplx.equations) {
      eq.a = lift(eq.a);
      eq.b = lift(eq.b);
      eq.c = lift(eq.c);
    }
    auto rr = solve_system(real_sys);
    auto rc = solve_system(cplx);
    REQUIRE(rr.status == rc.status);
    if (rr.status == SolveStatus::Solvable)
      for (std::size_t j = 0; j < real_sys.unknowns.size(); ++j) {
        auto xc = components((*rc.solution)[j]);
        REQUIRE(xc[0] == components((*rr.solution)[j])[0]);
      }
  }
}

TEST_CASE("float and exact backends agree on status and ranks") {
  for (int n = 0; n < 200; ++n) {
    GenConfig cfg;
    cfg.seed = 5000 + n;
    cfg.kind = kKinds[n % 3];
    SplitMix64 rng(cfg.seed);
    cfg.t = rng.uniform_int(1, 3);
    cfg.s = rng.uniform_int(1, 4);
    cfg.sigma_pool = {all_sigmas.begin(), all_sigmas.end()};
    cfg.strict_corollary = false;
    auto sys = n % 2 ? gen_solvable<Rational>(cfg).system : gen_unsolvable<Rational>(cfg);
    auto exact = solve_system(sys);
    auto fl = solve_system(convert_system<double>(sys), 1e-10);
    REQUIRE(exact.status == fl.status);
    REQUIRE(exact.rank_m == fl.rank_m);
    REQUIRE(exact.rank_aug == fl.rank_aug);
  }
}

TEST_CASE("planted instances are solvable and solutions verify") {
  for (auto kind : kKinds) {
    for (int n = 0; n < 20; ++n) {
      GenConfig cfg;
      cfg.seed = 300 + n;
      cfg.kind = kind;
      cfg.t = 2;
      cfg.s = 3;
      cfg.form = n % 2 ? GenForm::General : GenForm::Sylvester;
      cfg.sigma_pool = {SigmaOp::Identity, SigmaOp::Star};
      auto inst = gen_solvable<double>(cfg);
      auto rep = solve_system(inst.system);
      REQUIRE(rep.status == SolveStatus::Solvable);
      CHECK(max_relative_residual(inst.system, *rep.solution) <= 1e-8);
    }
  }
}

TEST_CASE("serial and parallel assembly are identical") {
  GenConfig cfg;
  cfg.seed = 4;
  cfg.kind = ScalarKind::Quaternion;
  cfg.t = 3;
  cfg.s = 6;
  cfg.dim_hi = 4;
  cfg.float_entries = true;
  auto sys = gen_solvable<double>(cfg).system;
  auto a = assemble_system(sys, Exec::Serial);
  auto b = assemble_system(sys, Exec::Parallel);
  CHECK(a.m == b.m);
  CHECK(a.b == b.b);
  CHECK(a.row_offset == b.row_offset);
}
