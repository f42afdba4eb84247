#include "roth/instance_gen.hpp"

#include <limits>

namespace roth {
namespace {

constexpr int kMaxAttempts = 64;

void check_config(const GenConfig &cfg) {
  if (cfg.dim_lo == 0 || cfg.dim_hi < cfg.dim_lo) throw GenerationError("dimension range must satisfy 1 <= lo <= hi");
  if (cfg.t == 0) throw GenerationError("need at least one unknown");
  if (cfg.sigma_pool.empty()) throw GenerationError("empty involution pool");
  if (cfg.entry_range <= 0) throw GenerationError("entry range must be positive");
  if (cfg.strict_corollary && cfg.kind == ScalarKind::Quaternion)
    for (auto s : cfg.sigma_pool)
      if (s != SigmaOp::Identity && s != SigmaOp::Star)
        throw GenerationError("involution '" + std::string(sigma_name(s)) + "' not allowed over H in strict mode");
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t attempt) {
  SplitMix64 mix(seed ^ (0xd1b54a32d192ed03ULL * (attempt + 1)));
  return mix.next();
}

// Makes X_j = E_11 (for every j at once) a kernel element of the homogeneous
// operator by forcing A[:,0] M[0,:] = N[:,0] B[0,:], then replants C. Square
// operators are almost never singular otherwise.
template <class T> void plant_kernel(PlantedInstance<T> &inst) {
  const auto kind = inst.system.kind;
  const auto one = Scalar<T>::real(kind, T(1));
  const auto zero = Scalar<T>(kind);
  for (auto &eq : inst.system.equations) {
    for (std::size_t r = 0; r < eq.a.rows(); ++r) {
      const auto u = eq.n ? eq.a(r, 0) : (r == 0 ? one : zero);
      eq.a.set(r, 0, u);
      if (eq.n) eq.n->set(r, 0, u);
    }
    for (std::size_t c = 0; c < eq.b.cols(); ++c) {
      const auto v = eq.m ? eq.b(0, c) : (c == 0 ? one : zero);
      eq.b.set(0, c, v);
      if (eq.m) eq.m->set(0, c, v);
    }
    eq.c = evaluate_lhs(eq, inst.solution);
  }
}

} // namespace

long SplitMix64::uniform_int(long lo, long hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t v;
  do v = next();
  while (v >= limit);
  return lo + static_cast<long>(v % span);
}

template <class T>
Matrix<T> random_matrix(SplitMix64 &rng, ScalarKind kind, std::size_t rows, std::size_t cols, long range,
                        bool float_entries) {
  Matrix<T> m(kind, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      std::array<T, 4> c{T(0), T(0), T(0), T(0)};
      for (std::size_t p = 0; p < arity(kind); ++p) {
        if (float_entries)
          c[p] = T(rng.uniform_real(-static_cast<double>(range), static_cast<double>(range)));
        else
          c[p] = T(rng.uniform_int(-range, range));
      }
      m.set(i, j, Scalar<T>(kind, c));
    }
  return m;
}

template <class T> PlantedInstance<T> gen_solvable(const GenConfig &cfg) {
  check_config(cfg);
  SplitMix64 rng(cfg.seed);
  auto dim = [&] { return static_cast<std::size_t>(rng.uniform_int(static_cast<long>(cfg.dim_lo), static_cast<long>(cfg.dim_hi))); };
  auto mat = [&](std::size_t r, std::size_t c) {
    return random_matrix<T>(rng, cfg.kind, r, c, cfg.entry_range, cfg.float_entries);
  };
  auto sigma = [&] { return cfg.sigma_pool[static_cast<std::size_t>(rng.uniform_int(0, static_cast<long>(cfg.sigma_pool.size()) - 1))]; };

  PlantedInstance<T> out;
  auto &sys = out.system;
  sys.kind = cfg.kind;
  sys.strict_corollary = cfg.strict_corollary;
  for (std::size_t j = 0; j < cfg.t; ++j) {
    std::size_t r = dim();
    std::size_t c = dim();
    sys.unknowns.push_back({"X" + std::to_string(j + 1), r, c});
  }
  for (const auto &u : sys.unknowns) out.solution.push_back(mat(u.rows, u.cols));

  for (std::size_t i = 0; i < cfg.s; ++i) {
    Equation<T> eq;
    eq.left = static_cast<std::size_t>(rng.uniform_int(0, static_cast<long>(cfg.t) - 1));
    eq.right = static_cast<std::size_t>(rng.uniform_int(0, static_cast<long>(cfg.t) - 1));
    eq.eps = sigma();
    eq.delta = sigma();
    const auto &xl = sys.unknowns[eq.left];
    const auto &xr = sys.unknowns[eq.right];
    auto [lm, ln] = sigma_shape(xl.rows, xl.cols, eq.eps);
    auto [rm, rn] = sigma_shape(xr.rows, xr.cols, eq.delta);
    if (cfg.form == GenForm::Sylvester) {
      eq.a = mat(rm, lm);
      eq.b = mat(rn, ln);
    } else {
      std::size_t rows = dim();
      std::size_t cols = dim();
      eq.a = mat(rows, lm);
      eq.m = mat(ln, cols);
      eq.n = mat(rows, rm);
      eq.b = mat(rn, cols);
    }
    eq.c = evaluate_lhs(eq, out.solution);
    sys.equations.push_back(std::move(eq));
  }
  validate(sys);
  return out;
}

template <class T> EquationSystem<T> gen_unsolvable(const GenConfig &cfg, double tol) {
  check_config(cfg);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    GenConfig c = cfg;
    c.seed = attempt == 0 ? cfg.seed : derive_seed(cfg.seed, static_cast<std::uint64_t>(attempt));
    auto inst = gen_solvable<T>(c);
    if (attempt % 2 == 1) plant_kernel(inst);
    auto &sys = inst.system;
    auto asm_ = assemble_system(sys);
    const auto rm = rank(asm_.m, tol).rank;
    if (rm == asm_.m.rows()) continue;  // every right-hand side is reachable

    SplitMix64 rng(derive_seed(c.seed, 0xb0b));
    for (int tries = 0; tries < 8; ++tries) {
      RealVector<T> b = asm_.b;
      for (auto &x : b) x += T(rng.uniform_int(-cfg.entry_range, cfg.entry_range));
      auto cs = solve_consistent(asm_.m, std::span<const T>(b), tol);
      if (cs.rank_aug != cs.rank_m + 1) continue;
      for (std::size_t i = 0; i < sys.equations.size(); ++i) {
        auto &eq = sys.equations[i];
        const std::size_t len = eq.c.rows() * eq.c.cols() * asm_.layout.arity;
        std::span<const T> seg(b.data() + asm_.row_offset[i], len);
        eq.c = unstack_components(sys.kind, eq.c.rows(), eq.c.cols(), seg);
      }
      auto check = solve_system(sys, tol);
      if (check.status == SolveStatus::Inconsistent && check.rank_aug == check.rank_m + 1) return sys;
    }
  }
  throw GenerationError("no unsolvable instance found: every sampled operator had full row rank");
}

#define ROTH_INSTANTIATE(T)                                                                          \
  template PlantedInstance<T> gen_solvable(const GenConfig &);                                       \
  template EquationSystem<T> gen_unsolvable(const GenConfig &, double);                              \
  template Matrix<T> random_matrix(SplitMix64 &, ScalarKind, std::size_t, std::size_t, long, bool);

ROTH_INSTANTIATE(double)
ROTH_INSTANTIATE(Rational)
#undef ROTH_INSTANTIATE

} // namespace roth
