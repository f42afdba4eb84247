#include "roth/selftest.hpp"

#include "roth/certificates.hpp"
#include "roth/cli.hpp"
#include "roth/document.hpp"
#include "roth/instance_gen.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace roth {
namespace {

constexpr ScalarKind kKinds[] = {ScalarKind::Real, ScalarKind::Complex, ScalarKind::Quaternion};

class Suite {
public:
  explicit Suite(const AcceptanceOptions &o) : o_(o) {}

  int count(int base) const { return std::max(1, static_cast<int>(std::lround(base * o_.scale))); }
  std::uint64_t seed(int criterion, int n) const {
    return o_.seed * 1000003ULL + static_cast<std::uint64_t>(criterion) * 100000ULL + static_cast<std::uint64_t>(n);
  }
  bool exact() const { return o_.exact; }

private:
  const AcceptanceOptions &o_;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

std::vector<SigmaOp> all_four() { return {all_sigmas.begin(), all_sigmas.end()}; }

/// Tallies failures and keeps the first message.
struct Tally {
  int failures = 0;
  std::string first;
  void fail(const std::string &why) {
    if (failures++ == 0) first = why;
  }
  bool ok() const { return failures == 0; }
  std::string suffix() const { return ok() ? "" : "; " + std::to_string(failures) + " failed, first: " + first; }
};

template <class F> void guarded(Tally &t, const std::string &label, F &&f) {
  try {
    f();
  } catch (const std::exception &e) {
    t.fail(label + ": " + e.what());
  }
}

// 1 and 2 share the solve-then-certify check.
void solve_and_certify(const EquationSystem<double> &sys, Tally &t, const std::string &label, double &worst_solve,
                       double &worst_cert) {
  guarded(t, label, [&] {
    auto rep = solve_system(sys, 1e-10);
    if (rep.status != SolveStatus::Solvable) return t.fail(label + ": reported inconsistent");
    const double res = max_relative_residual(sys, *rep.solution);
    worst_solve = std::max(worst_solve, res);
    if (res > 1e-8) return t.fail(label + ": solve residual " + sci(res));
    auto cert = certificate_from_solution(sys, *rep.solution, 1e-8);
    auto v = verify_thm1(sys, cert, 1e-10);
    worst_cert = std::max(worst_cert, v.max_residual);
    if (!v.ok || v.max_residual > 1e-10) t.fail(label + ": certificate residual " + sci(v.max_residual));
  });
}

CriterionResult classic_real(const Suite &s) {
  Tally t;
  double ws = 0, wc = 0;
  const int n = s.count(100);
  for (int k = 0; k < n; ++k) {
    GenConfig cfg;
    cfg.seed = s.seed(1, k);
    cfg.dim_hi = 5;
    cfg.float_entries = true;
    solve_and_certify(gen_solvable<double>(cfg).system, t, "seed " + std::to_string(cfg.seed), ws, wc);
  }
  return {1, "real Sylvester AX - XB = C: solve and certify", t.ok(),
          std::to_string(n) + " instances, max solve residual " + sci(ws) + ", max certificate residual " + sci(wc) +
              t.suffix()};
}

CriterionResult consimilarity(const Suite &s) {
  Tally t;
  double ws = 0, wc = 0;
  const int n = s.count(100);
  for (int k = 0; k < n; ++k) {
    GenConfig cfg;
    cfg.seed = s.seed(2, k);
    cfg.kind = ScalarKind::Complex;
    cfg.dim_hi = 5;
    cfg.float_entries = true;
    auto inst = gen_solvable<double>(cfg);
    auto &eq = inst.system.equations[0];
    // Redraw A for X̄ (same shape for a square unknown's conjugate) and replant C.
    eq.eps = SigmaOp::Conj;
    eq.c = evaluate_lhs(eq, inst.solution);
    solve_and_certify(inst.system, t, "seed " + std::to_string(cfg.seed), ws, wc);
  }
  // x̄ − x = c is solvable exactly when Re c = 0.
  int family = 0;
  SplitMix64 rng(s.seed(2, 99999));
  for (int k = 0; k < n; ++k) {
    double re = 0.0;
    if (k % 2) {
      const double mag = k % 4 == 1 ? rng.uniform_real(1e-6, 1e-3) : rng.uniform_real(1e-3, 3.0);
      re = rng.uniform_int(0, 1) ? mag : -mag;
    }
    const double im = rng.uniform_real(-3.0, 3.0);
    EquationSystem<double> sys;
    sys.kind = ScalarKind::Complex;
    sys.unknowns = {{"x", 1, 1}};
    auto one = Matrix<double>::identity(ScalarKind::Complex, 1);
    Matrix<double> c(ScalarKind::Complex, 1, 1);
    c.set(0, 0, Scalar<double>(ScalarKind::Complex, {re, im, 0.0, 0.0}));
    Equation<double> eq{one, std::nullopt, std::nullopt, one, c};
    eq.eps = SigmaOp::Conj;
    sys.equations.push_back(eq);
    guarded(t, "conj family", [&] {
      const bool solvable = solve_system(sys, 1e-10).status == SolveStatus::Solvable;
      if (solvable != (re == 0.0)) t.fail("x̄ - x = " + sci(re) + " + " + sci(im) + "i misclassified");
      ++family;
    });
  }
  return {2, "consimilarity AX̄ - XB = C and the x̄ - x = c family", t.ok(),
          std::to_string(n) + " instances, max solve residual " + sci(ws) + ", max certificate residual " + sci(wc) +
              ", " + std::to_string(family) + " family cases" + t.suffix()};
}

struct KindConfig {
  ScalarKind kind;
  bool strict;
  std::vector<SigmaOp> pool;
  const char *label;
};

std::vector<KindConfig> round_trip_configs() {
  return {{ScalarKind::Real, true, {SigmaOp::Identity, SigmaOp::Dagger}, "R"},
          {ScalarKind::Complex, true, all_four(), "C"},
          {ScalarKind::Quaternion, true, {SigmaOp::Identity, SigmaOp::Star}, "H strict"},
          {ScalarKind::Quaternion, false, all_four(), "H permissive"}};
}

CriterionResult round_trip(const Suite &s) {
  Tally t;
  double worst = 0;
  int exact_done = 0;
  const int n = s.count(100);
  const auto configs = round_trip_configs();
  for (std::size_t ci = 0; ci < configs.size(); ++ci) {
    const auto &kc = configs[ci];
    for (int k = 0; k < n; ++k) {
      GenConfig cfg;
      cfg.seed = s.seed(3, static_cast<int>(ci) * 1000 + k);
      cfg.kind = kc.kind;
      cfg.strict_corollary = kc.strict;
      cfg.sigma_pool = kc.pool;
      SplitMix64 rng(cfg.seed ^ 0xabcdef);
      cfg.t = rng.uniform_int(1, 3);
      cfg.s = rng.uniform_int(1, 4);
      cfg.dim_hi = 4;
      auto inst = gen_solvable<Rational>(cfg);
      const auto label = std::string(kc.label) + " seed " + std::to_string(cfg.seed);
      guarded(t, label, [&] {
        auto fsys = convert_system<double>(inst.system);
        std::vector<Matrix<double>> fsol;
        for (const auto &x : inst.solution) fsol.push_back(convert<double>(x));
        auto x = extract_solution(fsys, certificate_from_solution(fsys, fsol));
        const double r = max_relative_residual(fsys, x);
        worst = std::max(worst, r);
        if (r > 1e-8) t.fail(label + ": residual " + sci(r));
      });
      if (!s.exact()) continue;
      guarded(t, label + " (exact)", [&] {
        auto x = extract_solution(inst.system, certificate_from_solution(inst.system, inst.solution));
        if (!residual_is_zero(inst.system, x)) t.fail(label + " (exact): nonzero residual");
        ++exact_done;
      });
    }
  }
  return {3, "solution -> certificate -> extracted solution", t.ok(),
          std::to_string(4 * n) + " systems over R, C, H strict, H permissive, max float residual " + sci(worst) +
              (s.exact() ? ", " + std::to_string(exact_done) + " exact round trips with zero residual"
                         : ", exact pass skipped") +
              t.suffix()};
}

GenConfig mixed_config(std::uint64_t seed, ScalarKind kind, bool strict, std::size_t dim_hi) {
  GenConfig cfg;
  cfg.seed = seed;
  cfg.kind = kind;
  cfg.strict_corollary = strict;
  if (kind == ScalarKind::Real)
    cfg.sigma_pool = {SigmaOp::Identity, SigmaOp::Dagger};
  else if (kind == ScalarKind::Quaternion && strict)
    cfg.sigma_pool = {SigmaOp::Identity, SigmaOp::Star};
  else
    cfg.sigma_pool = all_four();
  SplitMix64 rng(seed ^ 0x1234567);
  cfg.t = rng.uniform_int(1, 3);
  cfg.s = rng.uniform_int(1, 4);
  cfg.dim_hi = dim_hi;
  return cfg;
}

CriterionResult reduction(const Suite &s) {
  Tally t;
  int solvable = 0, agree = 0;
  double worst = 0;
  const int n = s.count(100);
  for (int k = 0; k < n; ++k) {
    auto cfg = mixed_config(s.seed(4, k), kKinds[k % 3], true, 3);
    cfg.form = GenForm::General;
    const bool want = k % 2 == 0;
    const auto label = "seed " + std::to_string(cfg.seed);
    guarded(t, label, [&] {
      auto sys = want ? gen_solvable<double>(cfg).system : gen_unsolvable<double>(cfg);
      auto a = solve_system(sys, 1e-10);
      auto b = solve_system(reduce_to_triple(sys).system, 1e-10);
      if (a.status != b.status) return t.fail(label + ": verdicts differ");
      if ((a.status == SolveStatus::Solvable) != want) return t.fail(label + ": verdict contradicts construction");
      ++agree;
      if (a.status != SolveStatus::Solvable) return;
      ++solvable;
      auto v = verify_thm2(sys, certificate_thm2_from_solution(sys, *a.solution, 1e-8), 1e-10);
      worst = std::max(worst, v.max_residual);
      if (!v.ok) t.fail(label + ": certificate residual " + sci(v.max_residual));
    });
  }
  return {4, "general system vs its 3s-equation reduction", t.ok(),
          std::to_string(agree) + "/" + std::to_string(n) + " verdicts agree, " + std::to_string(solvable) +
              " solvable certified, max residual " + sci(worst) + t.suffix()};
}

CriterionResult remark_agreement(const Suite &s) {
  Tally t;
  int accepted_valid = 0, rejected_corrupt = 0;
  const int n = s.count(100);
  for (int k = 0; k < 2 * n; ++k) {
    const auto kind = kKinds[k % 3];
    auto cfg = mixed_config(s.seed(5, k), kind, false, 4);
    const bool corrupt = k >= n;
    const auto label = "seed " + std::to_string(cfg.seed);
    guarded(t, label, [&] {
      auto inst = gen_solvable<double>(cfg);
      auto cert = certificate_from_solution(inst.system, inst.solution);
      if (corrupt) {
        SplitMix64 rng(cfg.seed ^ 0xfeed);
        auto &p = cert.p[static_cast<std::size_t>(rng.uniform_int(0, static_cast<long>(cert.p.size()) - 1))].matrix;
        const auto i = static_cast<std::size_t>(rng.uniform_int(0, static_cast<long>(p.rows()) - 1));
        const auto j = static_cast<std::size_t>(rng.uniform_int(0, static_cast<long>(p.cols()) - 1));
        auto c = p(i, j).components();
        const double by = rng.uniform_real(1e-3, 1.0);
        c[static_cast<std::size_t>(rng.uniform_int(0, static_cast<long>(arity(kind)) - 1))] +=
            rng.uniform_int(0, 1) ? by : -by;
        p.set(i, j, Scalar<double>(kind, c));
      }
      auto a = verify_thm1(inst.system, cert, 1e-10);
      auto b = verify_remark_forms(inst.system, cert, 1e-10);
      if (a.ok != b.ok) return t.fail(label + ": verdicts differ");
      if (!corrupt && a.ok) ++accepted_valid;
      if (corrupt && !a.ok) ++rejected_corrupt;
    });
  }
  return {5, "block-inverse and explicit certificate checks agree", t.ok(),
          std::to_string(2 * n) + " certificates, " + std::to_string(accepted_valid) + " valid accepted, " +
              std::to_string(rejected_corrupt) + " corrupted rejected" + t.suffix()};
}

CriterionResult backend_agreement(const Suite &s) {
  Tally t;
  int solvable = 0;
  const int n = s.count(200);
  for (int k = 0; k < n; ++k) {
    auto cfg = mixed_config(s.seed(6, k), kKinds[k % 3], false, 3);
    const auto label = "seed " + std::to_string(cfg.seed);
    guarded(t, label, [&] {
      auto sys = k % 2 ? gen_unsolvable<Rational>(cfg) : gen_solvable<Rational>(cfg).system;
      auto ex = solve_system(sys);
      auto fl = solve_system(convert_system<double>(sys), 1e-10);
      if (ex.status != fl.status || ex.rank_m != fl.rank_m || ex.rank_aug != fl.rank_aug)
        return t.fail(label + ": exact ranks " + std::to_string(ex.rank_m) + "/" + std::to_string(ex.rank_aug) +
                      ", float " + std::to_string(fl.rank_m) + "/" + std::to_string(fl.rank_aug));
      solvable += ex.status == SolveStatus::Solvable;
    });
  }
  return {6, "float and exact backends agree on status and ranks", t.ok(),
          std::to_string(n) + " integer instances, " + std::to_string(solvable) + " solvable" + t.suffix()};
}

CriterionResult vectorizer(const Suite &s) {
  Tally t;
  double worst = 0;
  int transposed = 0;
  const int n = s.count(100);
  for (auto kind : kKinds) {
    SplitMix64 rng(s.seed(7, static_cast<int>(kind)));
    for (int k = 0; k < n; ++k) {
      const auto sg = all_sigmas[static_cast<std::size_t>(k % 4)];
      const auto xr = static_cast<std::size_t>(rng.uniform_int(1, 4));
      const auto xc = static_cast<std::size_t>(rng.uniform_int(1, 4));
      auto [sr, sc] = sigma_shape(xr, xc, sg);
      auto a = random_matrix<Rational>(rng, kind, static_cast<std::size_t>(rng.uniform_int(1, 4)), sr, 5);
      auto m = random_matrix<Rational>(rng, kind, sc, static_cast<std::size_t>(rng.uniform_int(1, 4)), 5);
      auto x = random_matrix<Rational>(rng, kind, xr, xc, 5);
      transposed += transposes(sg);
      const UnknownSpec u{"X", xr, xc};
      auto sx = stack_components(x);
      if (multiply(term_operator(a, sg, m, u), std::span<const Rational>(sx)) !=
          stack_components(a * apply_sigma(x, sg) * m))
        t.fail(std::string(kind_name(kind)) + " " + std::string(sigma_name(sg)) + ": exact mismatch");

      // The float pass draws its own real-valued data so rounding actually occurs.
      auto ad = random_matrix<double>(rng, kind, a.rows(), a.cols(), 5, true);
      auto md = random_matrix<double>(rng, kind, m.rows(), m.cols(), 5, true);
      auto xd = random_matrix<double>(rng, kind, xr, xc, 5, true);
      auto sxd = stack_components(xd);
      auto got = multiply(term_operator(ad, sg, md, u), std::span<const double>(sxd));
      auto want = stack_components(ad * apply_sigma(xd, sg) * md);
      double err = 0, scale = 0;
      for (std::size_t i = 0; i < got.size(); ++i) {
        err += (got[i] - want[i]) * (got[i] - want[i]);
        scale += want[i] * want[i];
      }
      const double rel = std::sqrt(err) / std::max(1.0, std::sqrt(scale));
      worst = std::max(worst, rel);
      if (rel > 1e-12) t.fail(std::string(kind_name(kind)) + " " + std::string(sigma_name(sg)) + ": float error " + sci(rel));
    }
  }
  return {7, "vectorized term operators match direct evaluation", t.ok(),
          std::to_string(3 * n) + " triples (" + std::to_string(transposed) +
              " through the commutation matrix), exact agreement, max float error " + sci(worst) + t.suffix()};
}

CriterionResult involutions(const Suite &s) {
  Tally t;
  int triples = 0;
  for (auto a : all_sigmas)
    for (auto b : all_sigmas)
      for (auto c : all_sigmas) {
        ++triples;
        if (sigma_compose(sigma_compose(a, b), c) != sigma_compose(a, sigma_compose(b, c)))
          t.fail("composition is not associative");
        if (sigma_compose(a, b) != sigma_compose(b, a)) t.fail("composition is not commutative");
        if (sigma_compose(a, a) != SigmaOp::Identity) t.fail("an element is not its own inverse");
        // Matrix action must follow the group law on a fixed asymmetric matrix.
        Matrix<Rational> m(ScalarKind::Quaternion, 1, 2);
        m.set(0, 0, Scalar<Rational>(ScalarKind::Quaternion, {1, 2, 3, 4}));
        m.set(0, 1, Scalar<Rational>(ScalarKind::Quaternion, {-5, 6, -7, 8}));
        if (apply_sigma(apply_sigma(apply_sigma(m, a), b), c) != apply_sigma(m, sigma_compose(sigma_compose(a, b), c)))
          t.fail("matrix action breaks the law for " + std::string(sigma_name(a)) + "," +
                 std::string(sigma_name(b)) + "," + std::string(sigma_name(c)));
      }
  const int n = s.count(1000);
  for (auto kind : kKinds) {
    SplitMix64 rng(s.seed(8, static_cast<int>(kind)));
    auto draw = [&] {
      std::array<Rational, 4> c{0, 0, 0, 0};
      for (std::size_t p = 0; p < arity(kind); ++p) c[p] = Rational(rng.uniform_int(-50, 50), rng.uniform_int(1, 7));
      return Scalar<Rational>(kind, c);
    };
    for (int k = 0; k < n; ++k) {
      auto x = draw(), y = draw();
      const auto tag = std::string(kind_name(kind)) + " pair " + std::to_string(k);
      if (conj_auto(x * y) != conj_auto(x) * conj_auto(y)) t.fail(tag + ": conj is not multiplicative");
      if (anti_auto(x * y) != anti_auto(y) * anti_auto(x)) t.fail(tag + ": anti-automorphism fails");
      if (bar(x * y) != bar(y) * bar(x)) t.fail(tag + ": bar fails");
      if (conj_auto(x + y) != conj_auto(x) + conj_auto(y) || anti_auto(x + y) != anti_auto(x) + anti_auto(y))
        t.fail(tag + ": not additive");
      if (conj_auto(conj_auto(x)) != x || anti_auto(anti_auto(x)) != x) t.fail(tag + ": not an involution");
    }
  }
  return {8, "involution laws", t.ok(),
          std::to_string(triples) + " group triples, " + std::to_string(3 * n) + " exact scalar pairs" + t.suffix()};
}

CriterionResult unsolvable(const Suite &s) {
  Tally t;
  int exit2 = 0;
  const int n = s.count(100);
  for (int k = 0; k < n; ++k) {
    auto cfg = mixed_config(s.seed(9, k), kKinds[k % 3], true, 3);
    const auto label = "seed " + std::to_string(cfg.seed);
    guarded(t, label, [&] {
      auto sys = gen_unsolvable<double>(cfg);
      auto rep = solve_system(sys, 1e-10);
      if (rep.status != SolveStatus::Inconsistent || rep.rank_aug != rep.rank_m + 1)
        return t.fail(label + ": ranks " + std::to_string(rep.rank_m) + "/" + std::to_string(rep.rank_aug));
      std::istringstream in(print_json_document(from_system(sys)));
      std::ostringstream out, err;
      const int code = run_command({"solve", "-"}, in, out, err);
      if (code != kExitInconsistent) return t.fail(label + ": solve exited " + std::to_string(code) + " " + err.str());
      ++exit2;
    });
  }
  return {9, "generated unsolvable systems are detected", t.ok(),
          std::to_string(n) + " instances with rank [M|b] = rank M + 1, " + std::to_string(exit2) +
              " solve runs exited 2" + t.suffix()};
}

} // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions &opts,
                                            const std::function<void(const CriterionResult &)> &on_result) {
  const Suite suite(opts);
  using Fn = CriterionResult (*)(const Suite &);
  const Fn criteria[] = {classic_real,     consimilarity,     round_trip, reduction,  remark_agreement,
                         backend_agreement, vectorizer,       involutions, unsolvable};
  std::vector<CriterionResult> out;
  for (auto fn : criteria) {
    const auto start = std::chrono::steady_clock::now();
    auto r = fn(suite);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (on_result) on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_result(const CriterionResult &r) {
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.1fs", r.seconds);
  return std::string(r.pass ? "[PASS] " : "[FAIL] ") + std::to_string(r.id) + " " + r.title + " (" + r.detail + ", " +
         secs + ")";
}

} // namespace roth
