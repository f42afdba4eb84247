#include "test_util.hpp"

#include "roth/certificates.hpp"
#include "roth/instance_gen.hpp"

#include <doctest.h>

using namespace roth;
using testing::cx;
using testing::mat;
using testing::real_mat;

namespace {

std::vector<SigmaOp> pool_for(ScalarKind kind, bool strict) {
  if (kind == ScalarKind::Real) return {SigmaOp::Identity, SigmaOp::Dagger};
  if (kind == ScalarKind::Quaternion && strict) return {SigmaOp::Identity, SigmaOp::Star};
  return {all_sigmas.begin(), all_sigmas.end()};
}

GenConfig config(std::uint64_t seed, ScalarKind kind, bool strict = false) {
  GenConfig cfg;
  cfg.seed = seed;
  cfg.kind = kind;
  SplitMix64 rng(seed ^ 0x5eed);
  cfg.t = rng.uniform_int(1, 3);
  cfg.s = rng.uniform_int(1, 4);
  cfg.dim_hi = 4;
  cfg.sigma_pool = pool_for(kind, strict);
  cfg.strict_corollary = strict;
  return cfg;
}

template <class T> Thm1Certificate<T> corrupt(Thm1Certificate<T> cert, SplitMix64 &rng, double by) {
  auto &p = cert.p[rng.uniform_int(0, static_cast<long>(cert.p.size()) - 1)].matrix;
  const std::size_t i = rng.uniform_int(0, static_cast<long>(p.rows()) - 1);
  const std::size_t j = rng.uniform_int(0, static_cast<long>(p.cols()) - 1);
  auto v = p(i, j);
  auto c = v.components();
  c[rng.uniform_int(0, static_cast<long>(arity(p.kind())) - 1)] += T(by);
  p.set(i, j, Scalar<T>(p.kind(), c));
  return cert;
}

EquationSystem<double> classic(const Matrix<double> &a, const Matrix<double> &b, const Matrix<double> &c,
                               SigmaOp eps = SigmaOp::Identity) {
  EquationSystem<double> sys;
  sys.kind = a.kind();
  sys.unknowns = {{"X", a.cols(), b.rows()}};
  Equation<double> eq{a, std::nullopt, std::nullopt, b, c};
  eq.eps = eps;
  sys.equations.push_back(eq);
  return sys;
}

constexpr ScalarKind kKinds[] = {ScalarKind::Real, ScalarKind::Complex, ScalarKind::Quaternion};

} // namespace

TEST_CASE("certificate_from_solution examples") {
  auto sys = classic(real_mat<double>({{1}}), real_mat<double>({{-1}}), real_mat<double>({{4}}));
  auto cert = certificate_from_solution(sys, {real_mat<double>({{2}})});
  CHECK(cert.p[0].matrix == real_mat<double>({{1, 2}, {0, 1}}));
  CHECK(cert.p[0].partition == BlockPartition{1, 1});
  CHECK_THROWS_AS(certificate_from_solution(sys, {real_mat<double>({{1}})}), NotASolution);

  auto zero = classic(real_mat<double>({{1}}), real_mat<double>({{2}}), real_mat<double>({{0}}));
  CHECK(certificate_from_solution(zero, {real_mat<double>({{0}})}).p[0].matrix ==
        Matrix<double>::identity(ScalarKind::Real, 2));

  auto x = real_mat<double>({{1, 2, 3}, {4, 5, 6}});
  auto u = unit_upper(x);
  CHECK(u.matrix.rows() == 5);
  CHECK(u.block11() == Matrix<double>::identity(ScalarKind::Real, 2));
  CHECK(u.block12() == x);
  CHECK(u.block21().is_zero());
}

TEST_CASE("bracket_sigma examples") {
  auto x = real_mat<Rational>({{1, 2, 3}, {4, 5, 6}});
  auto p = unit_upper(x);
  CHECK(bracket_sigma(p, SigmaOp::Identity) == p);
  auto pd = bracket_sigma(p, SigmaOp::Dagger);
  CHECK(pd == unit_upper(transpose(x)));

  auto c = mat<double>(ScalarKind::Complex, {{cx(1.0, 2.0), cx(0.0, -1.0)}, {cx(3.0, 0.0), cx(1.0, 1.0)}});
  Partitioned<double> pc{c, {1, 1}};
  CHECK(bracket_sigma(pc, SigmaOp::Conj).matrix == apply_sigma(c, SigmaOp::Conj));

  Partitioned<double> singular{Matrix<double>::zero(ScalarKind::Real, 2, 2), {1, 1}};
  CHECK_THROWS_AS(bracket_sigma(singular, SigmaOp::Dagger), SingularMatrix);
}

TEST_CASE("bracket_sigma acts on unit triangular certificates") {
  for (auto kind : kKinds) {
    SplitMix64 rng(90 + static_cast<int>(kind));
    for (int n = 0; n < 25; ++n) {
      auto x = random_matrix<Rational>(rng, kind, rng.uniform_int(1, 3), rng.uniform_int(1, 3), 5);
      for (auto s : all_sigmas) REQUIRE(bracket_sigma(unit_upper(x), s) == unit_upper(apply_sigma(x, s)));
    }
  }
}

TEST_CASE("verify_thm1 examples") {
  auto a = real_mat<double>({{1, 2}, {0, 3}});
  auto b = real_mat<double>({{4}});
  auto c = real_mat<double>({{1}, {1}});
  auto sys = classic(a, b, c);
  auto rep = solve_system(sys);
  REQUIRE(rep.status == SolveStatus::Solvable);
  auto cert = certificate_from_solution(sys, *rep.solution);
  CHECK(verify_thm1(sys, cert).ok);

  Thm1Certificate<double> ident{{Partitioned<double>{Matrix<double>::identity(ScalarKind::Real, 3), {2, 2}}}};
  auto bad = verify_thm1(sys, ident);
  CHECK_FALSE(bad.ok);
  CHECK(bad.nonsingular);

  auto perturbed = cert;
  auto m = perturbed.p[0].matrix;
  m.set(0, 2, m(0, 2) + Scalar<double>::real(ScalarKind::Real, 1.0));
  perturbed.p[0].matrix = m;
  CHECK_FALSE(verify_thm1(sys, perturbed, 1e-8).ok);

  Thm1Certificate<double> wrong{{Partitioned<double>{Matrix<double>::identity(ScalarKind::Real, 3), {1, 1}}}};
  CHECK_THROWS_AS(verify_thm1(sys, wrong), ShapeError);
}

TEST_CASE("classic Roth similarity and consimilarity") {
  // Over ℝ the single equality is [A 0; 0 B] P = P [A C; 0 B].
  auto a = real_mat<double>({{2, 1}, {0, 2}});
  auto b = real_mat<double>({{2}});
  auto c = real_mat<double>({{0}, {1}});
  auto sys = classic(a, b, c);
  auto rep = solve_system(sys);
  // AX − XB = C with A, B sharing eigenvalue 2 and C off the range: unsolvable.
  CHECK(rep.status == SolveStatus::Inconsistent);

  auto a2 = real_mat<double>({{1, 0}, {0, 3}});
  auto sys2 = classic(a2, b, c);
  auto rep2 = solve_system(sys2);
  REQUIRE(rep2.status == SolveStatus::Solvable);
  auto cert = certificate_from_solution(sys2, *rep2.solution);
  auto p = cert.p[0].matrix;
  auto lhs = block2x2(a2, Matrix<double>::zero(ScalarKind::Real, 2, 1), Matrix<double>::zero(ScalarKind::Real, 1, 2), b)
                 .matrix * p;
  auto rhs = p * block2x2(a2, c, Matrix<double>::zero(ScalarKind::Real, 1, 2), b).matrix;
  CHECK(frobenius(lhs - rhs) <= 1e-12);

  // Over ℂ with ε = ∁: [A 0; 0 B] P̄ = P [A C; 0 B].
  auto ac = mat<double>(ScalarKind::Complex, {{cx(1.0, 1.0)}});
  auto bc = mat<double>(ScalarKind::Complex, {{cx(3.0, 0.0)}});
  auto cc = mat<double>(ScalarKind::Complex, {{cx(2.0, -1.0)}});
  auto csys = classic(ac, bc, cc, SigmaOp::Conj);
  auto crep = solve_system(csys);
  REQUIRE(crep.status == SolveStatus::Solvable);
  auto cp = certificate_from_solution(csys, *crep.solution).p[0].matrix;
  auto z = Matrix<double>::zero(ScalarKind::Complex, 1, 1);
  auto cl = block2x2(ac, z, z, bc).matrix * apply_sigma(cp, SigmaOp::Conj);
  auto cr = cp * block2x2(ac, cc, z, bc).matrix;
  CHECK(frobenius(cl - cr) <= 1e-12);
}

TEST_CASE("forward direction and remark forms on planted systems") {
  for (auto kind : kKinds) {
    for (int n = 0; n < 100; ++n) {
      auto inst = gen_solvable<Rational>(config(700 + n, kind));
      auto cert = certificate_from_solution(inst.system, inst.solution);
      auto v1 = verify_thm1(inst.system, cert);
      auto v2 = verify_remark_forms(inst.system, cert);
      REQUIRE(v1.ok);
      REQUIRE(v2.ok);
      REQUIRE(v2.forms.size() == inst.system.equations.size());
      for (std::size_t i = 0; i < v2.forms.size(); ++i) {
        const auto &eq = inst.system.equations[i];
        CHECK(v2.forms[i] == remark_form(eq.eps, eq.delta));
      }
    }
  }
}

TEST_CASE("remark_form case split") {
  CHECK(remark_form(SigmaOp::Identity, SigmaOp::Conj) == RemarkForm::Plain);
  CHECK(remark_form(SigmaOp::Conj, SigmaOp::Star) == RemarkForm::RightTwisted);
  CHECK(remark_form(SigmaOp::Dagger, SigmaOp::Identity) == RemarkForm::LeftTwisted);
  CHECK(remark_form(SigmaOp::Star, SigmaOp::Dagger) == RemarkForm::BothTwisted);
}

TEST_CASE("verifiers agree on valid and corrupted certificates") {
  SplitMix64 rng(123);
  int valid = 0, invalid = 0;
  for (int n = 0; n < 200; ++n) {
    auto kind = kKinds[n % 3];
    auto inst = gen_solvable<double>(config(900 + n, kind));
    auto cert = certificate_from_solution(inst.system, inst.solution);
    if (n % 2) cert = corrupt(cert, rng, 1e-3 + rng.uniform_real(0, 1));
    auto v1 = verify_thm1(inst.system, cert);
    auto v2 = verify_remark_forms(inst.system, cert);
    REQUIRE(v1.ok == v2.ok);
    (v1.ok ? valid : invalid)++;
  }
  CHECK(valid >= 100);
  CHECK(invalid > 50);
}

TEST_CASE("reduce_to_triple") {
  GenConfig cfg = config(31, ScalarKind::Complex);
  cfg.form = GenForm::General;
  auto inst = gen_solvable<Rational>(cfg);
  auto red = reduce_to_triple(inst.system);
  CHECK(red.system.equations.size() == 3 * inst.system.equations.size());
  CHECK(red.system.unknowns.size() == inst.system.unknowns.size() + 2 * inst.system.equations.size());
  CHECK(red.system.sylvester_form());
  auto lifted = lift_to_triple(inst.system, inst.solution);
  CHECK(residual_is_zero(red.system, lifted));
  for (std::size_t i = 0; i < inst.system.equations.size(); ++i) {
    const auto &eq = inst.system.equations[i];
    CHECK(lifted[red.y_index[i]] == apply_sigma(inst.solution[eq.left], eq.eps) * *eq.m);
    CHECK(lifted[red.z_index[i]] == *eq.n * apply_sigma(inst.solution[eq.right], eq.delta));
  }
}

TEST_CASE("reduction preserves solvability") {
  for (int n = 0; n < 100; ++n) {
    GenConfig cfg = config(1500 + n, kKinds[n % 3]);
    cfg.form = GenForm::General;
    auto sys = n % 2 ? gen_solvable<double>(cfg).system : gen_unsolvable<double>(cfg);
    auto a = solve_system(sys);
    auto b = solve_system(reduce_to_triple(sys).system);
    REQUIRE(a.status == b.status);
    if (a.status == SolveStatus::Solvable) {
      auto cert = certificate_thm2_from_solution(sys, *a.solution);
      REQUIRE(verify_thm2(sys, cert, 1e-10).ok);
    }
  }
}

TEST_CASE("Theorem 2 certificate examples") {
  // M = N = I, ε = δ = 1: Q_i coincides with P_{i'}.
  auto i2 = Matrix<double>::identity(ScalarKind::Real, 2);
  auto a = real_mat<double>({{1, 2}, {3, 4}});
  auto b = real_mat<double>({{1, 0}, {0, 2}});
  auto x = real_mat<double>({{1, -1}, {0, 2}});
  EquationSystem<double> sys;
  sys.unknowns = {{"X", 2, 2}};
  Equation<double> eq{a, i2, i2, b, a * x - x * b};
  sys.equations.push_back(eq);
  auto cert = certificate_thm2_from_solution(sys, {x});
  CHECK(cert.q[0] == cert.p[0]);
  CHECK(verify_thm2(sys, cert).ok);

  auto wrong = cert;
  wrong.r[0] = Partitioned<double>{Matrix<double>::identity(ScalarKind::Real, 4), {2, 2}};
  CHECK_FALSE(verify_thm2(sys, wrong).ok);

  auto zsys = sys;
  zsys.equations[0].c = Matrix<double>::zero(ScalarKind::Real, 2, 2);
  auto zc = certificate_thm2_from_solution(zsys, {Matrix<double>::zero(ScalarKind::Real, 2, 2)});
  auto i4 = Matrix<double>::identity(ScalarKind::Real, 4);
  CHECK(zc.p[0].matrix == i4);
  CHECK(zc.q[0].matrix == i4);
  CHECK(zc.r[0].matrix == i4);
}

TEST_CASE("split_dagger_system") {
  GenConfig cfg = config(3, ScalarKind::Quaternion);
  cfg.sigma_pool = {all_sigmas.begin(), all_sigmas.end()};
  auto inst = gen_solvable<Rational>(cfg);
  auto d = split_dagger_system(inst.system);
  CHECK(d.system.unknowns.size() == 2 * inst.system.unknowns.size());
  CHECK(d.system.equations.size() == 2 * inst.system.equations.size());
  for (const auto &eq : d.system.equations) {
    CHECK_FALSE(transposes(eq.eps));
    CHECK_FALSE(transposes(eq.delta));
  }
  std::vector<Matrix<Rational>> y(d.system.unknowns.size());
  for (std::size_t j = 0; j < inst.solution.size(); ++j) {
    y[d.index(SigmaOp::Identity, j)] = inst.solution[j];
    y[d.index(SigmaOp::Dagger, j)] = apply_sigma(inst.solution[j], SigmaOp::Dagger);
  }
  CHECK(residual_is_zero(d.system, y));

  // ε = ⁎ lands on Y_† with α = ∁.
  EquationSystem<double> star;
  star.kind = ScalarKind::Complex;
  star.unknowns = {{"X", 2, 2}};
  Equation<double> eq{Matrix<double>::identity(ScalarKind::Complex, 2), std::nullopt, std::nullopt,
                      Matrix<double>::identity(ScalarKind::Complex, 2),
                      Matrix<double>::zero(ScalarKind::Complex, 2, 2)};
  eq.eps = SigmaOp::Star;
  star.equations.push_back(eq);
  auto ds = split_dagger_system(star);
  CHECK(ds.system.equations[0].left == ds.index(SigmaOp::Dagger, 0));
  CHECK(ds.system.equations[0].eps == SigmaOp::Conj);
}

TEST_CASE("doubled certificate verifies") {
  for (auto kind : kKinds) {
    for (int n = 0; n < 30; ++n) {
      auto inst = gen_solvable<Rational>(config(2100 + n, kind));
      auto cert = certificate_from_solution(inst.system, inst.solution);
      auto d = split_dagger_system(inst.system);
      auto dc = doubled_certificate(inst.system, cert, d);
      REQUIRE(verify_thm1(d.system, dc).ok);
      for (std::size_t j = 0; j < inst.solution.size(); ++j) {
        CHECK(dc.p[d.index(SigmaOp::Identity, j)] == cert.p[j]);
        CHECK(dc.p[d.index(SigmaOp::Dagger, j)] == unit_upper(apply_sigma(inst.solution[j], SigmaOp::Dagger)));
      }
    }
  }
  auto inst = gen_solvable<double>(config(5, ScalarKind::Real));
  auto cert = certificate_from_solution(inst.system, inst.solution);
  SplitMix64 rng(1);
  auto bad = corrupt(cert, rng, 0.5);
  if (!verify_thm1(inst.system, bad).ok)
    CHECK_THROWS_AS(doubled_certificate(inst.system, bad, split_dagger_system(inst.system)), InvalidCertificate);
}

TEST_CASE("extraction round trip") {
  for (auto kind : kKinds) {
    for (int n = 0; n < 40; ++n) {
      auto inst = gen_solvable<Rational>(config(2500 + n, kind, n % 2 == 0));
      auto cert = certificate_from_solution(inst.system, inst.solution);
      auto x = extract_solution(inst.system, cert);
      REQUIRE(residual_is_zero(inst.system, x));

      auto fsys = convert_system<double>(inst.system);
      std::vector<Matrix<double>> fsol;
      for (const auto &s : inst.solution) fsol.push_back(convert<double>(s));
      auto fx = extract_solution(fsys, certificate_from_solution(fsys, fsol));
      REQUIRE(max_relative_residual(fsys, fx) <= 1e-8);
    }
  }
}

TEST_CASE("extraction edge cases") {
  auto z = real_mat<double>({{0}});
  auto sys = classic(z, z, z);
  auto cert = certificate_from_solution(sys, {real_mat<double>({{5}})});
  auto x = extract_solution(sys, cert);
  CHECK(max_relative_residual(sys, x) == 0.0);
  auto direct = extract_from_certificate_conj(sys, Thm1Certificate<double>{{unit_upper(z)}});
  CHECK(direct[0] == z);

  auto a = real_mat<double>({{1}});
  auto b = real_mat<double>({{3}});
  auto c = real_mat<double>({{4}});
  auto s2 = classic(a, b, c);
  auto good = certificate_from_solution(s2, {real_mat<double>({{-2}})});
  auto broken = good;
  broken.p[0] = unit_upper(real_mat<double>({{7}}));
  CHECK_THROWS_AS(extract_from_certificate_conj(s2, broken), InvalidCertificate);
  CHECK_THROWS_AS(extract_solution(s2, broken), InvalidCertificate);

  // ℂ with ε = ⁎ on a planted instance.
  GenConfig cfg = config(77, ScalarKind::Complex);
  cfg.sigma_pool = {SigmaOp::Star};
  cfg.float_entries = true;
  auto inst = gen_solvable<double>(cfg);
  auto fx = extract_solution(inst.system, certificate_from_solution(inst.system, inst.solution));
  CHECK(max_relative_residual(inst.system, fx) <= 1e-8);
}
